"""markbench: blind DWT-DCT image watermarking, attacks, and robustness bench."""

from ._version import __version__
from .attacks import AttackSpec, apply_attack, make_spec, parse_spec
from .bench import BenchRow, BenchRun, check_golden, run_suite, write_report
from .codec import DEFAULT_STRENGTH, EmbedConfig, calibrate_strength, embed, extract
from .errors import (
    CalibrationError,
    CapacityError,
    DimensionError,
    IncompatibleGoldenError,
    MarkbenchError,
    ParamError,
    ParseError,
)
from .metrics import QualityReport, ber, image_report, mae, mse, nc, psnr
from .netpbm import load_pbm, load_pgm, save_pbm, save_pgm
from .transforms import WaveletPyramid, assemble4, dct2_4, dwt2, idct2_4, idwt2, partition4

__all__ = [
    "__version__",
    "AttackSpec",
    "apply_attack",
    "make_spec",
    "parse_spec",
    "BenchRow",
    "BenchRun",
    "check_golden",
    "run_suite",
    "write_report",
    "DEFAULT_STRENGTH",
    "EmbedConfig",
    "calibrate_strength",
    "embed",
    "extract",
    "MarkbenchError",
    "ParseError",
    "DimensionError",
    "ParamError",
    "CapacityError",
    "CalibrationError",
    "IncompatibleGoldenError",
    "QualityReport",
    "ber",
    "image_report",
    "mae",
    "mse",
    "nc",
    "psnr",
    "load_pbm",
    "load_pgm",
    "save_pbm",
    "save_pgm",
    "WaveletPyramid",
    "assemble4",
    "dct2_4",
    "dwt2",
    "idct2_4",
    "idwt2",
    "partition4",
]
