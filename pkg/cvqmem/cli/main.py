from __future__ import annotations
import argparse
import logging
from typing import Optional, Sequence

from ..global_defs import set_random_seed
from .config import ConfigError, FORMATS, load_config
from .commands import COMMANDS, EXIT_FAILED, EXIT_IO

logger = logging.getLogger(__name__)

LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cvqmem",
        description="Reproductions for the continuous-variable atomic memory.",
    )
    parser.add_argument("command", choices=sorted(COMMANDS))
    parser.add_argument("--config", metavar="PATH", help="INI file with run settings")
    parser.add_argument("--out", metavar="DIR", help="output directory")
    parser.add_argument("--format", choices=FORMATS)
    parser.add_argument("--seed", type=int, metavar="N")
    parser.add_argument("-v", "--verbose", action="store_true", help="debug logging")
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Runs one command. Exit codes: 0 success, 1 invalid input or failed check, 2 I/O error."""
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as e:
        # argparse exits with 2 on usage errors, which is reserved for I/O
        return EXIT_FAILED if e.code else EXIT_OK
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.INFO, format=LOG_FORMAT
    )
    logging.captureWarnings(True)

    try:
        config = load_config(args.config, args.out, args.format, args.seed)
        set_random_seed(config.seed)
        logger.info("running '%s' with seed %d", args.command, config.seed)
        return COMMANDS[args.command](config)
    except OSError as e:
        logger.error("%s", e)
        return EXIT_IO
    except (ConfigError, ValueError, RuntimeError) as e:
        logger.error("%s", e)
        return EXIT_FAILED


if __name__ == "__main__":
    raise SystemExit(main())
