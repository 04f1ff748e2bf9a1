"""Command-line front end: scenario config in, machine-readable results out.

Every command honors ``--seed`` and is byte-reproducible for a fixed seed.
CSV output carries a single ``#``-prefixed header line; a JSON provenance
record (config hash, seed, version) is written alongside file output, or
to stderr when results go to stdout. Exit codes: 0 success, 1 runtime
failure, 2 bad arguments or config.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys

from . import __version__
from .calibration import calibrate_operating_point
from .config import ConfigError, ScenarioConfig, load_config
from .identity_checks import run_algebra_checks
from .interferometer import fading_scan
from .qkd_engine import (
    ChannelConfig,
    analytic_operating_point,
    simulate_session,
)


def _fmt(value) -> str:
    if isinstance(value, float):
        return format(value, ".12g")
    return str(value)


def _config_hash(doc: dict | None) -> str | None:
    if doc is None:
        return None
    canonical = json.dumps(doc, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(canonical.encode("utf-8")).hexdigest()


def _dump_json(doc) -> str:
    return json.dumps(doc, sort_keys=True, separators=(",", ":")) + "\n"


def _emit(args, command: str, columns: list[str], rows: list[tuple], summary: dict,
          raw_config: dict | None, seed: int | None) -> None:
    provenance = {
        "command": command,
        "config_sha256": _config_hash(raw_config),
        "seed": seed,
        "version": __version__,
    }
    if args.format == "json":
        text = _dump_json(
            {
                "provenance": provenance,
                "columns": columns,
                "rows": [[_fmt(v) for v in row] for row in rows],
                "summary": summary,
            }
        )
    else:
        lines = ["# " + ",".join(columns)]
        lines.extend(",".join(_fmt(v) for v in row) for row in rows)
        text = "\n".join(lines) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        with open(args.out + ".provenance.json", "w", encoding="utf-8", newline="\n") as fh:
            fh.write(_dump_json(provenance))
    else:
        sys.stdout.write(text)
        sys.stderr.write(_dump_json(provenance))
    if args.format == "csv":
        sys.stdout.write(_dump_json(summary))


def _resolve_receiver(cfg: ScenarioConfig):
    """Detector and intrinsic visibility, running the calibration if asked."""
    if cfg.calibration is None:
        return cfg.detector, cfg.intrinsic_visibility, None
    ref = cfg.calibration.reference_channel or cfg.channel
    cal = calibrate_operating_point(
        cfg.source,
        ref,
        cfg.detector,
        cfg.calibration.target_qber,
        cfg.calibration.target_rate_bps,
        receiver_loss_bounds_db=(0.0, cfg.calibration.max_receiver_loss_db),
    )
    return cal.detector, cal.intrinsic_visibility, cal


def cmd_algebra_check(args) -> int:
    checks = run_algebra_checks(samples=args.samples, seed=args.seed, tol=args.tol)
    for c in checks:
        status = "PASS" if c.passed else "FAIL"
        print(
            f"{status} {c.name} value={c.value:.3e} threshold={c.threshold:.1e} "
            f"relation={c.relation}"
        )
    failed = sum(not c.passed for c in checks)
    print(f"{'OK' if failed == 0 else 'FAILED'} {len(checks) - failed}/{len(checks)} checks passed")
    return 0 if failed == 0 else 1


def cmd_fading_scan(args) -> int:
    cfg, raw = load_config(args.config)
    seed = cfg.seed if args.seed is None else args.seed
    samples = cfg.samples if args.samples is None else args.samples
    rows: list[tuple] = []
    summary_schemes: dict[str, dict] = {}
    for scheme in cfg.schemes:
        result = fading_scan(scheme, samples, seed, sweep_points=cfg.sweep_points)
        rows.extend(
            (scheme.value, i, float(v)) for i, v in enumerate(result.visibilities)
        )
        summary_schemes[scheme.value] = {
            "min": float(result.min_visibility),
            "mean": float(result.mean_visibility),
            "p5": float(result.p5_visibility),
        }
    summary = {"samples": samples, "schemes": summary_schemes, "seed": seed}
    _emit(args, "fading-scan", ["scheme", "sample", "visibility"], rows, summary, raw, seed)
    return 0


def cmd_session(args) -> int:
    cfg, raw = load_config(args.config)
    seed = cfg.seed if args.seed is None else args.seed
    detector, visibility, cal = _resolve_receiver(cfg)
    result = simulate_session(
        cfg.source,
        cfg.channel,
        detector,
        cfg.drift,
        cfg.session.duration_s,
        cfg.session.bin_s,
        seed,
        intrinsic_visibility=visibility,
        shot_noise=cfg.session.shot_noise,
    )
    rows = [
        (float(t), float(q), float(r))
        for t, q, r in zip(result.times_s, result.qber, result.rate_bps)
    ]
    summary = {
        "bins": len(rows),
        "intrinsic_visibility": visibility,
        "mean_qber": result.mean_qber,
        "mean_rate_bps": result.mean_rate_bps,
        "receiver_insertion_loss_db": detector.receiver_insertion_loss_db,
        "seed": seed,
        "std_qber": result.std_qber,
        "std_rate_bps": result.std_rate_bps,
    }
    if cal is not None:
        summary["calibrated_e_opt"] = cal.e_opt
    _emit(args, "session", ["t", "qber", "rate_bps"], rows, summary, raw, seed)
    return 0


def _parse_lengths(text: str) -> list[float]:
    try:
        lengths = [float(v) for v in text.split(",") if v.strip() != ""]
    except ValueError:
        raise ConfigError(f"--lengths must be a comma-separated list of numbers: {text!r}")
    if not lengths:
        raise ConfigError("--lengths must be non-empty")
    return lengths


def cmd_sweep_distance(args) -> int:
    cfg, raw = load_config(args.config)
    seed = cfg.seed if args.seed is None else args.seed
    if args.lengths is not None:
        lengths = _parse_lengths(args.lengths)
        loss_per_km = cfg.sweep.loss_db_per_km if cfg.sweep else 0.2
        fixed_db = cfg.sweep.fixed_loss_db if cfg.sweep else 0.0
    elif cfg.sweep is not None:
        lengths = list(cfg.sweep.lengths_km)
        loss_per_km = cfg.sweep.loss_db_per_km
        fixed_db = cfg.sweep.fixed_loss_db
    else:
        raise ConfigError("config has no sweep section and no --lengths given")
    detector, visibility, cal = _resolve_receiver(cfg)
    e_opt = (1.0 - visibility) / 2.0
    rows = []
    for length in lengths:
        ch = ChannelConfig(length_km=length, loss_db_per_km=loss_per_km, fixed_loss_db=fixed_db)
        point = analytic_operating_point(cfg.source, ch, detector, e_opt)
        rows.append((float(length), float(ch.total_loss_db), float(point.secure_rate_bps)))
    summary = {
        "lengths": len(rows),
        "loss_db_per_km": loss_per_km,
        "max_rate_bps": max(r[2] for r in rows),
        "min_rate_bps": min(r[2] for r in rows),
        "seed": seed,
    }
    if cal is not None:
        summary["calibrated_e_opt"] = cal.e_opt
    _emit(args, "sweep-distance", ["length_km", "loss_db", "rate_bps"], rows, summary, raw, seed)
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="michelsonqkd",
        description="Interferometric QKD fading analysis and decoy-state rate model",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("algebra-check", help="verify the operator-algebra identities")
    p.add_argument("--tol", type=float, default=1e-10, help="residual threshold")
    p.add_argument("--samples", type=int, default=1000, help="random samples per check")
    p.add_argument("--seed", type=int, default=0, help="random seed")
    p.set_defaults(func=cmd_algebra_check)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", required=True, help="scenario file or preset name")
    common.add_argument("--seed", type=int, default=None, help="override the config seed")
    common.add_argument("--out", default=None, help="output file (stdout when omitted)")
    common.add_argument("--format", choices=("csv", "json"), default="csv")

    p = sub.add_parser("fading-scan", parents=[common],
                       help="visibility statistics under random channel polarization")
    p.add_argument("--samples", type=int, default=None, help="override the config sample count")
    p.set_defaults(func=cmd_fading_scan)

    p = sub.add_parser("session", parents=[common],
                       help="simulate a keyed session and report QBER/rate per bin")
    p.set_defaults(func=cmd_session)

    p = sub.add_parser("sweep-distance", parents=[common],
                       help="analytic secure rate as a function of fiber length")
    p.add_argument("--lengths", default=None,
                   help="comma-separated lengths in km (overrides the config sweep list)")
    p.set_defaults(func=cmd_sweep_distance)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # noqa: BLE001 - single boundary for exit-code mapping
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
