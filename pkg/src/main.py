import argparse
import logging
import sys

import lupa
from lupa import LuaError

from approx.backend import ToleranceUnreachable
from chordal.sequence import ChordalTargetError
from commands.config import ConfigError, RunConfig, load_config
from commands.run import COMMANDS, EXIT_BUDGET, EXIT_CONFIG, EXIT_HYPOTHESIS
from expr.parser import ExprSyntaxError
from geometry.hypotheses import HypothesisError
from series.rules import InsufficientBoundsError
from utils import resources

VERSION = resources.read_text('VERSION', 'unknown')

lua = lupa.LuaRuntime()
FULL_LUA_VERSION = LUA_VERSION = lua.eval('_VERSION')
LUAJIT_VERSION = lua.eval('jit and jit.version')
if LUAJIT_VERSION:
    FULL_LUA_VERSION += f' ({LUAJIT_VERSION})'


def build_parser():
    parser = argparse.ArgumentParser(
        prog='merglift',
        description="Polynomial approximation of holomorphic functions and their derivatives on product domains.",
    )
    parser.add_argument('-V', '--version', help="display version info", action='store_true')
    parser.add_argument('-v', '--verbose', help="log progress at debug level", action='store_true')
    parser.add_argument('command', nargs='?', choices=sorted(COMMANDS), help="what to run")
    parser.add_argument('--config', metavar='PATH', help="Lua run config")
    parser.add_argument('--out', metavar='DIR', help="output directory (default: current directory)")
    parser.add_argument('--seed', metavar='N', type=int, help="seed for all random sampling")
    parser.add_argument('--resolution', metavar='H', type=float, help="grid spacing for geometric checks")
    parser.add_argument('--validate-density', metavar='K', type=int,
                        help="validation samples per fit sample, per factor")
    return parser


def run(args):
    """Load the config, apply flags, run the command and map errors to exit
    codes."""
    log = logging.getLogger('merglift')
    try:
        config = load_config(args.config) if args.config else RunConfig()
        config = config.merged(
            out=args.out,
            seed=args.seed,
            resolution=args.resolution,
            validate_density=args.validate_density,
        )
        return COMMANDS[args.command](config)
    except HypothesisError as e:
        log.error("hypothesis failure: %s", e)
        return EXIT_HYPOTHESIS
    except (ToleranceUnreachable, ChordalTargetError) as e:
        log.error("budget failure: %s", e)
        return EXIT_BUDGET
    except (ConfigError, ExprSyntaxError, InsufficientBoundsError, LuaError) as e:
        log.error("config error: %s", e)
        return EXIT_CONFIG
    except ValueError as e:
        # Bad domains and the like surface as plain ValueErrors.
        log.error("invalid input: %s", e)
        return EXIT_CONFIG


def main(argv=None):
    parser = build_parser()
    if argv is None and len(sys.argv) == 1:
        parser.print_help(sys.stderr)
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.INFO,
        format='%(levelname)s %(name)s: %(message)s',
    )
    if args.version:
        print(f"merglift {VERSION}")
        print(f"Python {sys.version.split()[0]}")
        print(f"{FULL_LUA_VERSION}")
        return 0
    if args.command is None:
        return 0
    return run(args)


if __name__ == '__main__':
    sys.exit(main())
