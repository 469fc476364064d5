"""Command-line driver

::

    fgm-sandwich <subcommand> --config <path> [--out <dir>] [--set section:key=value ...]

Exit status: 0 on success, 2 for configuration or parameter errors, 3
when a solve fails and 4 when ``--check golden`` finds values outside
tolerance.

"""

from __future__ import print_function

import argparse
import logging
import sys

from . import __version__
from .errors import (AcceptanceError, ConfigError, DomainError, FGMPlateError, InvalidParameterError,
                     SolverError)
from .golden import check
from .options import config_from_dict, parse_config
from .studies import run_study

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_CONFIG = 2
EXIT_SOLVER = 3
EXIT_ACCEPTANCE = 4

# Subcommand -> analysis:type
SUBCOMMANDS = {"static": "static", "modal": "modal", "converge": "convergence", "profile": "profile"}


def build_parser():
    parser = argparse.ArgumentParser(
        prog="fgm-sandwich",
        description="Finite element bending and free vibration of functionally graded sandwich plates")
    parser.add_argument("--version", action="version", version="%(prog)s " + __version__)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-c", "--config", metavar="PATH",
                        help="JSON analysis configuration (default: built-in defaults)")
    common.add_argument("-s", "--set", dest="overrides", action="append", default=[],
                        metavar="SECTION:KEY=VALUE",
                        help="Override one option; VALUE is parsed as JSON. May be repeated")
    verbosity = common.add_mutually_exclusive_group()
    verbosity.add_argument("-v", "--verbose", action="store_true", help="Debug output")
    verbosity.add_argument("-q", "--quiet", action="store_true", help="Warnings and errors only")

    run = argparse.ArgumentParser(add_help=False, parents=[common])
    run.add_argument("-o", "--out", metavar="DIR", help="Output directory (overrides output:directory)")
    run.add_argument("--check", choices=["golden"],
                     help="Compare results with the bundled reference values")

    sub = parser.add_subparsers(dest="command", metavar="subcommand")
    sub.required = True
    sub.add_parser("static", parents=[run], help="Static bending under mechanical or thermal load")
    sub.add_parser("modal", parents=[run], help="Free vibration frequency parameters")
    sub.add_parser("converge", parents=[run], help="Mesh convergence of the frequency parameters")
    sub.add_parser("profile", parents=[run], help="Through-thickness profiles for plotting")
    sub.add_parser("validate-config", parents=[common],
                   help="Check a configuration and print it with defaults filled in")
    return parser


def setup_logging(verbose=False, quiet=False):
    level = logging.DEBUG if verbose else logging.WARNING if quiet else logging.INFO
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter("%(levelname)s: %(message)s"))
    root = logging.getLogger("fgmplate")
    root.handlers = [handler]
    root.setLevel(level)
    root.propagate = False


def load_config(args):
    if args.config is None:
        return config_from_dict({}, args.overrides)
    return parse_config(args.config, args.overrides)


def run(args):
    config = load_config(args)
    if args.command == "validate-config":
        print(config.canonical_json())
        logger.info("%s is valid: %d case(s), hash %s", args.config or "default configuration",
                    len(config.cases()), config.config_hash()[:12])
        return EXIT_OK

    config = config.with_analysis(SUBCOMMANDS[args.command])
    directory = args.out if args.out is not None else config["output"]["directory"]
    result = run_study(config, directory=directory, progress=not args.quiet)
    if config.analysis_type == "profile":
        logger.info("Wrote %d profile file(s) to %s", len(result), directory)
        if args.check:
            logger.warning("Profile studies have no reference values to check")
        return EXIT_OK

    name = config["output"]["case"] or result.title
    result.write(directory, name)
    sys.stdout.write(result.to_csv())
    if args.check == "golden":
        check(result)
    return EXIT_OK


def main(argv=None):
    args = build_parser().parse_args(argv)
    setup_logging(args.verbose, args.quiet)
    try:
        return run(args)
    except (ConfigError, DomainError, InvalidParameterError) as err:
        logger.error("%s", err)
        return EXIT_CONFIG
    except SolverError as err:
        logger.error("%s", err)
        return EXIT_SOLVER
    except AcceptanceError as err:
        logger.error("%s", err)
        return EXIT_ACCEPTANCE
    except FGMPlateError as err:
        logger.error("%s", err)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
