"""Command line entry point: ``partition-lab <kind> --config file.json``."""

from __future__ import annotations

import argparse
import os
import sys

from .errors import ConfigInvalid
from .harness import FORMATS, KINDS, ExperimentConfig, emit, run


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="partition-lab", description="Seeded finite experiments on pair colorings.")
    ap.add_argument("kind", choices=sorted(KINDS))
    ap.add_argument("--config", help="JSON config; its kind must match when given")
    ap.add_argument("--seed", type=int)
    ap.add_argument("--trials", type=int)
    ap.add_argument("--out", help="write the report here instead of stdout")
    ap.add_argument("--format", choices=FORMATS)
    ap.add_argument("--workers", type=int, help="process count (default 1; 0 means all cores)")
    return ap


def _config(args) -> ExperimentConfig:
    if args.config:
        cfg = ExperimentConfig.load(args.config)
        if cfg.kind != args.kind:
            raise ConfigInvalid(f"config is for {cfg.kind!r}, not {args.kind!r}")
    else:
        cfg = ExperimentConfig(args.kind)
    for name in ("seed", "trials", "out", "format"):
        value = getattr(args, name)
        if value is not None:
            setattr(cfg, name, value)
    if args.workers is not None:
        cfg.workers = args.workers or os.cpu_count() or 1
    return cfg


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    try:
        cfg = _config(args)
        report = run(cfg)
    except ConfigInvalid as exc:
        print(f"partition-lab: {exc}", file=sys.stderr)
        return 2
    data = emit(report, cfg.format)
    if cfg.out:
        with open(cfg.out, "wb") as fh:
            fh.write(data)
    else:
        sys.stdout.buffer.write(data)
        sys.stdout.flush()
    agg = report.aggregates()
    print(f"{cfg.kind}: {agg['ok']}/{agg['trials']} ok, {agg['violations']} violations, "
          f"{report.elapsed:.2f}s", file=sys.stderr)
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())
