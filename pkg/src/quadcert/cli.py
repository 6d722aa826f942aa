"""Command-line entry point.

Subcommands select which checks run; flags select the group, the parameter
triples, and where the JSON report goes.  A config file can carry the same
fields as the flags, with explicit flags taking precedence.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .reporting import (
    CHECK_IDS,
    GROUP_CHOICES,
    VerificationConfig,
    render_report,
    run,
)

_SUBCOMMANDS = (
    ("groups", "certify group orders, structure claims, and involution localization"),
    ("invariance", "certify that each generator maps the quadric ideal to itself"),
    ("orbit", "certify the singular orbit: 64 distinct points, all ordinary double points"),
    ("freeness", "certify that no non-identity element fixes a point of the variety"),
    ("all", "run every check in dependency order"),
)

# config-file keys mirror the flag names; the subcommand itself is not a key
_CONFIG_KEYS = (
    "group",
    "y",
    "specializations",
    "seed",
    "scope",
    "json",
    "custom_group",
    "custom_quadrics",
    "canonical",
)


def parse_triple(text: str) -> tuple[Fraction, Fraction, Fraction]:
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != 3:
        raise ValueError(f"expected three comma-separated rationals, got {text!r}")
    try:
        return tuple(Fraction(p) for p in parts)
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"bad rational in {text!r}: {exc}") from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="quadcert",
        description="Exact certification of monomial group actions on an "
        "intersection of four quadrics in P^7.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in _SUBCOMMANDS:
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--group", choices=GROUP_CHOICES, default=None)
        p.add_argument(
            "--y",
            action="append",
            metavar="a/b,c/d,e/f",
            help="explicit parameter triple; repeatable",
        )
        p.add_argument("--specializations", type=int, default=None, metavar="N")
        p.add_argument("--seed", type=int, default=None, metavar="S")
        p.add_argument("--scope", choices=("involutions", "all"), default=None)
        p.add_argument("--json", default=None, metavar="PATH", help="write the JSON report here")
        p.add_argument("--custom-group", default=None, metavar="PATH")
        p.add_argument("--custom-quadrics", default=None, metavar="PATH")
        p.add_argument(
            "--canonical",
            action="store_const",
            const=True,
            default=None,
            help="zero out timings so identical runs serialize identically",
        )
        p.add_argument("--config", default=None, metavar="PATH", help="JSON config file")
    return parser


def _load_config_file(path: str) -> dict:
    with open(path, "r", encoding="utf-8") as fh:
        data = json.load(fh)
    if not isinstance(data, dict):
        raise ValueError(f"{path}: config must be a JSON object")
    unknown = [k for k in data if k not in _CONFIG_KEYS]
    if unknown:
        raise ValueError(f"{path}: unknown config keys {unknown}")
    return data


def assemble_config(args: argparse.Namespace) -> VerificationConfig:
    """Merge precedence: explicit flag, then config file, then default."""
    file_values = _load_config_file(args.config) if args.config else {}

    def pick(flag_value, key, default):
        if flag_value is not None:
            return flag_value
        if key in file_values:
            return file_values[key]
        return default

    checks = CHECK_IDS if args.command == "all" else (args.command,)
    raw_y = pick(args.y, "y", [])
    triples = tuple(parse_triple(t) for t in raw_y)
    return VerificationConfig(
        checks=tuple(checks),
        group=pick(args.group, "group", "all"),
        y_triples=triples,
        specializations=int(pick(args.specializations, "specializations", 3)),
        seed=int(pick(args.seed, "seed", 0)),
        scope=pick(args.scope, "scope", "involutions"),
        output_path=pick(args.json, "json", None),
        custom_group_path=pick(args.custom_group, "custom_group", None),
        custom_quadrics_path=pick(args.custom_quadrics, "custom_quadrics", None),
        canonical=bool(pick(args.canonical, "canonical", False)),
    )


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        config = assemble_config(args)
    except (OSError, ValueError, json.JSONDecodeError) as exc:
        print(f"quadcert: bad configuration: {exc}", file=sys.stderr)
        return 2
    try:
        report = run(config)
    except (OSError, ValueError, json.JSONDecodeError, KeyError) as exc:
        print(f"quadcert: {exc}", file=sys.stderr)
        return 2
    print(render_report(report, "text"), end="")
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())
