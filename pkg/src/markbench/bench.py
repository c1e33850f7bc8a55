"""Embed -> attack -> extract -> measure orchestration with golden regression.

A suite run embeds once, records a no-attack baseline row, then produces one
row per (attack, seed) cell.  Image metrics (psnr/mse/mae) always compare the
cover against the stego image; payload metrics (nc/ber) compare the original
logo against the bits extracted from the attacked stego.  Reports serialize
to CSV (human table, 6 significant digits) or JSON (full precision, stamped
with a manifest identifying the random stream and embed configuration), and a
frozen JSON report acts as a golden file for regression checks.
"""

from __future__ import annotations

import csv
import io
import json
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import rng
from ._version import __version__
from .attacks import AttackSpec, apply_attack, parse_spec
from .codec import EmbedConfig, embed, extract
from .errors import IncompatibleGoldenError, MarkbenchError, ParseError
from .metrics import ber, mae, mse, nc, psnr

PSNR_TOLERANCE_DB = 1e-6
NC_TOLERANCE = 1e-9


@dataclass(frozen=True)
class BenchRow:
    """One report line: provenance plus the merged metric bundle."""

    attack: str
    params: str
    seed: int
    psnr_cover_stego_db: float
    mse: float
    mae: float
    nc: float
    ber: float

    def key(self) -> tuple[str, str, int]:
        return (self.attack, self.params, self.seed)


@dataclass(frozen=True)
class BenchRun:
    """A completed suite: inputs, configuration and all result rows."""

    cover_id: str
    logo_id: str
    cfg: EmbedConfig
    attacks: tuple[AttackSpec, ...]
    seeds: tuple[int, ...]
    rows: tuple[BenchRow, ...]


def run_suite(
    cover: np.ndarray,
    logo: np.ndarray,
    cfg: EmbedConfig | None = None,
    attacks: tuple[AttackSpec, ...] = (),
    seeds: tuple[int, ...] = tuple(range(1, 11)),
    cover_id: str = "cover",
    logo_id: str = "logo",
    threads: int = 1,
) -> BenchRun:
    """Run the full suite; deterministic given the seed list."""
    cfg = cfg or EmbedConfig()
    stego = embed(cover, logo, cfg)
    image_quality = (psnr(cover, stego), mse(cover, stego), mae(cover, stego))

    def payload_row(attack: str, params: str, seed: int, bits: np.ndarray) -> BenchRow:
        return BenchRow(
            attack=attack,
            params=params,
            seed=seed,
            psnr_cover_stego_db=image_quality[0],
            mse=image_quality[1],
            mae=image_quality[2],
            nc=nc(logo, bits),
            ber=ber(logo, bits),
        )

    baseline = payload_row("none", "", 0, extract(stego, cfg))

    cells = [(spec, seed) for spec in attacks for seed in seeds]

    def run_cell(cell: tuple[AttackSpec, int]) -> BenchRow:
        spec, seed = cell
        try:
            attacked = apply_attack(stego, spec.with_seed(seed))
            return payload_row(spec.name, spec.params_text(), seed, extract(attacked, cfg))
        except MarkbenchError as exc:
            raise type(exc)(f"{exc} [attack={spec.render()}, seed={seed}]") from exc

    if threads > 1 and len(cells) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            rows = list(pool.map(run_cell, cells))
    else:
        rows = [run_cell(cell) for cell in cells]

    return BenchRun(
        cover_id=cover_id,
        logo_id=logo_id,
        cfg=cfg,
        attacks=tuple(attacks),
        seeds=tuple(seeds),
        rows=(baseline, *rows),
    )


def _num(value: float) -> float | str:
    return "inf" if math.isinf(value) else value


def _fmt6(value: float) -> str:
    return "inf" if math.isinf(value) else f"{value:.6g}"


CSV_HEADER = "attack,params,seed,psnr_cover_stego_db,mse,mae,nc,ber"


def write_report(run: BenchRun, fmt: str = "json") -> bytes:
    """Serialize a run to CSV or JSON bytes."""
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(CSV_HEADER.split(","))
        for r in run.rows:
            writer.writerow(
                [
                    r.attack,
                    r.params,
                    r.seed,
                    _fmt6(r.psnr_cover_stego_db),
                    _fmt6(r.mse),
                    _fmt6(r.mae),
                    _fmt6(r.nc),
                    _fmt6(r.ber),
                ]
            )
        return buf.getvalue().encode("ascii")
    if fmt == "json":
        doc = {
            "manifest": {
                "prng_name": rng.PRNG_NAME,
                "prng_version": rng.PRNG_VERSION,
                "code_version": __version__,
                "cfg": run.cfg.to_dict(),
            },
            "cover_id": run.cover_id,
            "logo_id": run.logo_id,
            "rows": [
                {
                    "attack": r.attack,
                    "params": r.params,
                    "seed": r.seed,
                    "psnr_cover_stego_db": _num(r.psnr_cover_stego_db),
                    "mse": r.mse,
                    "mae": r.mae,
                    "nc": r.nc,
                    "ber": r.ber,
                }
                for r in run.rows
            ],
        }
        return (json.dumps(doc, indent=1) + "\n").encode("ascii")
    raise ParseError(f"unknown report format {fmt!r}")


def read_report(data: bytes) -> tuple[dict, list[BenchRow]]:
    """Parse a JSON report back into (manifest, rows)."""
    try:
        doc = json.loads(data.decode("utf-8"))
        manifest = doc["manifest"]
        rows = [
            BenchRow(
                attack=r["attack"],
                params=r["params"],
                seed=int(r["seed"]),
                psnr_cover_stego_db=(
                    math.inf if r["psnr_cover_stego_db"] == "inf" else float(r["psnr_cover_stego_db"])
                ),
                mse=float(r["mse"]),
                mae=float(r["mae"]),
                nc=float(r["nc"]),
                ber=float(r["ber"]),
            )
            for r in doc["rows"]
        ]
    except (KeyError, TypeError, ValueError, json.JSONDecodeError) as exc:
        raise ParseError(f"malformed report: {exc}") from exc
    return manifest, rows


@dataclass(frozen=True)
class GoldenCheck:
    """Outcome of a golden comparison; failures name each deviating row."""

    passed: bool
    failures: tuple[str, ...]


def check_golden(run: BenchRun, golden: bytes) -> GoldenCheck:
    """Compare a run against a frozen golden report.

    psnr within 1e-6 dB, nc within 1e-9, ber bit-exact.  A golden produced
    under a different random stream or embed configuration is rejected.
    """
    manifest, golden_rows = read_report(golden)
    for field in ("prng_name", "prng_version"):
        ours = getattr(rng, field.upper())
        if manifest.get(field) != ours:
            raise IncompatibleGoldenError(
                f"golden {field}={manifest.get(field)!r}, current={ours!r}"
            )
    if manifest.get("cfg") != run.cfg.to_dict():
        raise IncompatibleGoldenError(
            f"golden cfg={manifest.get('cfg')!r} differs from run cfg={run.cfg.to_dict()!r}"
        )

    failures: list[str] = []
    expected = {r.key(): r for r in golden_rows}
    seen = set()
    for row in run.rows:
        want = expected.get(row.key())
        if want is None:
            failures.append(f"{row.key()}: not present in golden")
            continue
        seen.add(row.key())
        psnr_ok = (
            math.isinf(row.psnr_cover_stego_db) and math.isinf(want.psnr_cover_stego_db)
        ) or abs(row.psnr_cover_stego_db - want.psnr_cover_stego_db) <= PSNR_TOLERANCE_DB
        if not psnr_ok:
            failures.append(
                f"{row.key()}: psnr {row.psnr_cover_stego_db!r} != {want.psnr_cover_stego_db!r}"
            )
        if abs(row.nc - want.nc) > NC_TOLERANCE:
            failures.append(f"{row.key()}: nc {row.nc!r} != {want.nc!r}")
        if row.ber != want.ber:
            failures.append(f"{row.key()}: ber {row.ber!r} != {want.ber!r}")
    for key in expected:
        if key not in seen:
            failures.append(f"{key}: in golden but not in run")
    return GoldenCheck(passed=not failures, failures=tuple(failures))


def parse_suite_config(text: str) -> tuple[EmbedConfig, tuple[AttackSpec, ...], tuple[int, ...]]:
    """Parse the plain key=value suite config.

    Recognized keys: `strength` (float, optional), `seeds` (comma-separated
    ints, optional), `attack` (repeatable attack-spec strings).  Blank lines
    and # comments are ignored.
    """
    strength: float | None = None
    seeds: tuple[int, ...] = tuple(range(1, 11))
    attacks: list[AttackSpec] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, eq, value = line.partition("=")
        key = key.strip()
        value = value.strip()
        if not eq or not value:
            raise ParseError(f"config line {lineno}: expected key = value, got {raw!r}")
        try:
            if key == "strength":
                strength = float(value)
            elif key == "seeds":
                seeds = tuple(int(s.strip()) for s in value.split(","))
            elif key == "attack":
                attacks.append(parse_spec(value))
            else:
                raise ParseError(f"config line {lineno}: unknown key {key!r}")
        except ValueError as exc:
            raise ParseError(f"config line {lineno}: {exc}") from exc
    cfg = EmbedConfig() if strength is None else EmbedConfig(strength=strength)
    return cfg, tuple(attacks), seeds
