#!/usr/bin/env python3
"""Run the full verification campaign over all three groups and write the
JSON certificate.  This is the programmatic twin of `quadcert all`."""

import argparse
import sys

from quadcert.reporting import VerificationConfig, render_report, run


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--specializations", type=int, default=3)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--scope", choices=("involutions", "all"), default="involutions")
    parser.add_argument("--out", default="campaign_report.json")
    args = parser.parse_args(argv)

    config = VerificationConfig(
        checks=("groups", "invariance", "orbit", "freeness"),
        group="all",
        specializations=args.specializations,
        seed=args.seed,
        scope=args.scope,
        output_path=args.out,
    )
    report = run(config)
    print(render_report(report, "text"), end="")
    print(f"json certificate written to {args.out}")
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())
