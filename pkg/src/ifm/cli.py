"""Command line entry point: ``ifm <kind> --config PATH [--seed N] [--out DIR]``.

Exit status is 0 on success, 2 for configuration errors and 3 for failures
while running. ``IFM_THREADS`` caps the number of Monte Carlo workers; it
never changes the results.
"""

from __future__ import annotations

import argparse
import sys

from . import __version__, streams
from .config import KINDS, SCHEMA, ConfigError, parse_config
from .harness import run

EXIT_OK, EXIT_CONFIG, EXIT_RUNTIME = 0, 2, 3
DEFAULT_OUT = "ifm_output"


def _kind_help(kind: str) -> str:
    lines = []
    for p in SCHEMA[kind]:
        if p.required:
            note = "required"
        else:
            note = f"default {p.default}"
        rule = f"; {p.rule}" if p.rule else ""
        lines.append(f"  {p.name} ({note}{rule})")
    return "config keys:\n" + "\n".join(lines)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ifm", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"ifm {__version__}")
    sub = parser.add_subparsers(dest="kind", required=True, metavar="kind")
    for kind in KINDS:
        sp = sub.add_parser(
            kind,
            help=f"run a {kind} experiment",
            epilog=_kind_help(kind),
            formatter_class=argparse.RawDescriptionHelpFormatter,
        )
        sp.add_argument("--config", required=True, help="key = value configuration file")
        sp.add_argument("--seed", type=lambda s: int(s, 0), default=None, help="64-bit unsigned seed")
        sp.add_argument("--out", default=None, help=f"output directory (default {DEFAULT_OUT})")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        with open(args.config, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        print(f"ifm: config-unreadable: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    try:
        cfg = parse_config(text, kind=args.kind, seed=args.seed)
        workers = streams.worker_count()
    except (ConfigError, ValueError) as exc:
        print(f"ifm: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    out = args.out or cfg.out or DEFAULT_OUT
    try:
        summary = run(cfg, out_dir=out, workers=workers)
    except Exception as exc:  # noqa: BLE001 - any failure maps to the runtime exit code
        print(f"ifm: runtime-error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_RUNTIME
    sys.stdout.write(summary.to_json())
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
