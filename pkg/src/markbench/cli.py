"""Command-line front end.

Subcommands: embed, extract, attack, metrics, bench.  All image I/O is
binary PGM, logos are binary PBM.  Output files are written atomically
(temp file + rename) so a failing command never leaves a partial file.

Exit codes: 0 success (and golden pass), 1 usage error, 2 I/O or parse
error, 3 domain error (capacity/dimension/parameter/calibration), 4 golden
check failure.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import tempfile

from ._version import __version__
from .attacks import apply_attack, parse_spec
from .bench import check_golden, parse_suite_config, run_suite, write_report
from .codec import EmbedConfig, calibrate_strength, embed, extract
from .errors import (
    CalibrationError,
    CapacityError,
    DimensionError,
    IncompatibleGoldenError,
    MarkbenchError,
    ParamError,
    ParseError,
)
from .metrics import image_report
from .netpbm import load_pbm, load_pgm, save_pbm, save_pgm

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_IO = 2
EXIT_DOMAIN = 3
EXIT_GOLDEN = 4


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # noqa: A003 - argparse API
        raise _UsageError(message)


def _read(path: str) -> bytes:
    with open(path, "rb") as fh:
        return fh.read()


def _write_atomic(path: str, data: bytes) -> None:
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".markbench-")
    try:
        with os.fdopen(fd, "wb") as fh:
            fh.write(data)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _thread_count() -> int:
    raw = os.environ.get("MARKBENCH_THREADS")
    if raw is None:
        return 1
    try:
        threads = int(raw)
    except ValueError:
        threads = 0
    if threads < 1:
        raise _UsageError(f"MARKBENCH_THREADS must be a positive integer, got {raw!r}")
    return threads


def _build_parser() -> _Parser:
    parser = _Parser(prog="markbench", description=__doc__)
    parser.add_argument("--version", action="version", version=f"markbench {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("embed", help="embed a logo into a cover image")
    p.add_argument("--cover", required=True)
    p.add_argument("--logo", required=True)
    p.add_argument("--out", required=True)
    group = p.add_mutually_exclusive_group()
    group.add_argument("--delta", type=float, help="embedding strength")
    group.add_argument(
        "--target-psnr", type=float, help="calibrate strength for this PSNR (dB)"
    )

    p = sub.add_parser("extract", help="recover the logo from a stego image")
    p.add_argument("--stego", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--delta", type=float, help="embedding strength (layout only)")

    p = sub.add_parser("attack", help="apply one attack to an image")
    p.add_argument("--in", dest="in_path", required=True)
    p.add_argument("--spec", required=True, help="attack spec, e.g. gaussian:mean=0,var=0.001,seed=7")
    p.add_argument("--out", required=True)

    p = sub.add_parser("metrics", help="quality metrics between two images")
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)

    p = sub.add_parser("bench", help="run an attack suite and write a report")
    p.add_argument("--cover", required=True)
    p.add_argument("--logo", required=True)
    p.add_argument("--config", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--golden", help="golden JSON report to compare against")
    return parser


def _cmd_embed(args) -> int:
    cover = load_pgm(_read(args.cover))
    logo = load_pbm(_read(args.logo))
    if args.target_psnr is not None:
        strength = calibrate_strength(cover, logo, args.target_psnr)
    elif args.delta is not None:
        strength = args.delta
    else:
        strength = EmbedConfig().strength
    cfg = EmbedConfig(strength=strength)
    stego = embed(cover, logo, cfg)
    _write_atomic(args.out, save_pgm(stego))
    report = image_report(cover, stego)
    psnr_text = "inf" if report.psnr == float("inf") else f"{report.psnr:.4f}"
    print(f"delta={strength!r} psnr_db={psnr_text} mae={report.mae:.6g}")
    return EXIT_OK


def _cmd_extract(args) -> int:
    stego = load_pgm(_read(args.stego))
    cfg = EmbedConfig() if args.delta is None else EmbedConfig(strength=args.delta)
    bits = extract(stego, cfg)
    _write_atomic(args.out, save_pbm(bits))
    return EXIT_OK


def _cmd_attack(args) -> int:
    img = load_pgm(_read(args.in_path))
    spec = parse_spec(args.spec)
    _write_atomic(args.out, save_pgm(apply_attack(img, spec)))
    return EXIT_OK


def _cmd_metrics(args) -> int:
    a = load_pgm(_read(args.a))
    b = load_pgm(_read(args.b))
    print(json.dumps(image_report(a, b).to_dict()))
    return EXIT_OK


def _cmd_bench(args) -> int:
    cover = load_pgm(_read(args.cover))
    logo = load_pbm(_read(args.logo))
    cfg, attacks, seeds = parse_suite_config(_read(args.config).decode("utf-8"))
    run = run_suite(
        cover,
        logo,
        cfg,
        attacks,
        seeds,
        cover_id=os.path.basename(args.cover),
        logo_id=os.path.basename(args.logo),
        threads=_thread_count(),
    )
    _write_atomic(args.out, write_report(run, "json"))
    print(f"wrote {args.out} ({len(run.rows)} rows)")
    if args.golden:
        result = check_golden(run, _read(args.golden))
        if not result.passed:
            for failure in result.failures:
                print(f"golden mismatch: {failure}", file=sys.stderr)
            return EXIT_GOLDEN
        print("golden check: pass")
    return EXIT_OK


_COMMANDS = {
    "embed": _cmd_embed,
    "extract": _cmd_extract,
    "attack": _cmd_attack,
    "metrics": _cmd_metrics,
    "bench": _cmd_bench,
}


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        return _COMMANDS[args.command](args)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as exc:  # argparse --help / --version
        return int(exc.code or 0)
    except (OSError, ParseError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except IncompatibleGoldenError as exc:
        print(f"golden incompatible: {exc}", file=sys.stderr)
        return EXIT_GOLDEN
    except (CapacityError, DimensionError, ParamError, CalibrationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except MarkbenchError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
