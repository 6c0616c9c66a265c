"""
Command-line entry point: verify <suite> [--order N] [--weight W] [--window K] [--n N]
[--degree D] [--primes 2,3,5] [--lattice PATH] [--json] [--cache-dir PATH]
"""
import argparse
import logging
import sys
from typing import List, Optional

from rich.console import Console

from services.runner import SuiteRunner, run_suite
from services.status import ReportTable
from utils.config import Config, SuiteConfig
from utils.constants import SUITES, ErrorCode, ExitCode
from utils.errors import VerificationError
from utils.logger import get_console, set_quiet_mode

logger = logging.getLogger("zlift")

CONFIG_ERRORS = {ErrorCode.CONFIG_INVALID, ErrorCode.PARSE_ERROR, ErrorCode.ODD_LATTICE}


def _primes(text: str) -> List[int]:
    try:
        return [int(p) for p in text.split(",") if p.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"prime list must be comma separated integers, got {text!r}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="verify", description="Exact integrality certificates")
    parser.add_argument("suite", choices=list(SUITES) + ["all"], help="suite to run")
    parser.add_argument("--order", type=int, help="curve truncation order")
    parser.add_argument("--weight", type=int, help="weight bound (lattice-va) or density weight range (witt)")
    parser.add_argument("--window", type=int, help="sector or index window")
    parser.add_argument("--n", type=int, help="degree or multi-index size")
    parser.add_argument("--degree", type=int, help="total degree bound (necklace)")
    parser.add_argument("--primes", type=_primes, help="comma separated primes for Verschiebung checks")
    parser.add_argument("--lattice", help="lattice .cfg name or path")
    parser.add_argument("--json", action="store_true", help="print the JSON report on stdout")
    parser.add_argument("--cache-dir", help="content-addressed cache directory")
    return parser


def suite_config(args: argparse.Namespace) -> SuiteConfig:
    overrides = {
        "order": args.order, "weight": args.weight, "window": args.window, "n": args.n,
        "degree": args.degree, "primes": args.primes, "lattice": args.lattice,
    }
    return SuiteConfig.with_defaults(args.suite, overrides, cache_dir=args.cache_dir, json_output=args.json)


def main(argv: Optional[List[str]] = None, config: Optional[Config] = None) -> int:
    args = build_parser().parse_args(argv)
    set_quiet_mode(args.json)
    console = get_console()
    try:
        cfg = suite_config(args)
        cfg.validate()
        runner = SuiteRunner(config, cache_dir=cfg.cache_dir)
        report = run_suite(cfg, runner)
    except VerificationError as e:
        if e.code in CONFIG_ERRORS:
            console.print(f"[red]Configuration error:[/red] {e}")
            return int(ExitCode.CONFIG)
        logger.error(f"verification aborted: {e}")
        return int(ExitCode.FAIL)
    finally:
        set_quiet_mode(False)

    if cfg.json_output:
        sys.stdout.write(report.to_json() + "\n")
    else:
        Console().print(ReportTable(report).generate_table())
    return int(report.exit_code)


def run():
    sys.exit(main())


if __name__ == "__main__":
    run()
