"""
pyradical --input job.json [--tolerance 1e-9] [--samples 200] [--emit report samples]
          [--extra-breakpoints 0] [--output-dir out] [--verbose]

Exit codes: 0 success, 2 parse or configuration error, 3 numerical failure
"""

import argparse
import logging
import sys
from typing import List, Optional

from sympy.polys.polyerrors import BasePolynomialError

from .Pipeline import EMIT_CHOICES, JobConfig, run_pipeline, write_outputs

logger = logging.getLogger("pyradical")

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NUMERICAL = 3


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pyradical",
        description="Optimal piecewise radical reparameterization of a rational curve",
    )
    parser.add_argument("--input", required=True, help="JSON job file")
    parser.add_argument("--tolerance", type=float, help="quadrature tolerance")
    parser.add_argument("--samples", type=int, help="points per sample table")
    parser.add_argument(
        "--emit", nargs="+", choices=sorted(EMIT_CHOICES), help="artifacts to write"
    )
    parser.add_argument(
        "--extra-breakpoints",
        type=int,
        dest="extra_breakpoints",
        help="evenly spaced breakpoints added inside every interval",
    )
    parser.add_argument("--output-dir", default=".", dest="output_dir")
    parser.add_argument("--verbose", "-v", action="store_true", help="log at DEBUG level")
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        format="%(asctime)s %(name)s %(levelname)s %(message)s",
    )

    try:
        cfg = JobConfig.from_json(args.input).with_overrides(
            tolerance=args.tolerance,
            samples=args.samples,
            emit=frozenset(args.emit) if args.emit else None,
            extra_breakpoints=args.extra_breakpoints,
        )
        output = run_pipeline(cfg)
        write_outputs(output, args.output_dir, cfg.emit)
    except (OSError, ValueError, TypeError) as e:
        logger.error("%s", e)
        return EXIT_CONFIG
    except (ArithmeticError, BasePolynomialError) as e:
        logger.error("%s", e)
        return EXIT_NUMERICAL

    report = output.report()
    print(
        f"u_p = {report['u_p']:.3f}, u_phi = {report['u_phi_star']:.3f}, "
        f"u_final = {report['u_final']:.3f}"
    )
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
