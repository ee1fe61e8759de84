import argparse
import logging
import sys

from gapcert import __version__
from gapcert.config import EXPERIMENTS, load_experiment_config
from gapcert.errors import ConfigError, GapCertError
from gapcert.experiments import run

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_CONFIG = 2
EXIT_CHECK = 3


def build_parser():
    parser = argparse.ArgumentParser(prog="gapcert", description="Percentile solutions with certified optimality gaps.")
    parser.add_argument("experiment", choices=EXPERIMENTS)
    parser.add_argument("--config", help="JSON experiment config")
    parser.add_argument("--seed", type=int)
    parser.add_argument("--out", help="output directory")
    parser.add_argument("--check", action="store_true", help="exit 3 when an acceptance threshold fails")
    parser.add_argument("--log-level", default="INFO", choices=["DEBUG", "INFO", "WARNING", "ERROR"])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=getattr(logging, args.log_level),
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )
    try:
        config = load_experiment_config(args.config, experiment=args.experiment, seed=args.seed, out=args.out)
    except ConfigError as exc:
        for field, message in exc.fields.items():
            print(f"config error: {field}: {message}", file=sys.stderr)
        if not exc.fields:
            print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    try:
        report = run(config)
    except GapCertError as exc:
        print(f"gapcert: {exc}", file=sys.stderr)
        return EXIT_ERROR
    if args.check and not report.passed:
        failed = [check.name for check in report.checks if not check.passed]
        print(f"acceptance check failed: {', '.join(failed)}", file=sys.stderr)
        return EXIT_CHECK
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
