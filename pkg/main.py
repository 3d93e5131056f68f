import argparse
import sys
import time
from typing import List, Optional

import config
from handlers import register_all_handlers
from handlers.common import RunConfig
from metrics import classify_error_type, dump_metrics, exit_code_for, track_command, track_error
from utils.export import write_report
from utils.logger import get_logger, log_command, log_error, log_event

logger = get_logger("main")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="harmonic-toolkit",
        description="Poisson extensions on the unit disk: derivatives, Hardy and Bergman norms, "
                    "ellipticity and numerical checks of the derivative inequalities.",
    )
    subparsers = parser.add_subparsers(dest="command", metavar="COMMAND")
    register_all_handlers(subparsers)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    """Главная точка входа; возвращает код выхода"""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        # --help выходит с 0, ошибки разбора argparse - с 2
        return e.code if isinstance(e.code, int) else 2
    if not args.command:
        parser.print_help(sys.stderr)
        return 2

    command = args.command
    track_command(command)
    log_command(logger, command, preset=getattr(args, "preset", None), statement=getattr(args, "statement", None))
    start = time.perf_counter()
    try:
        run_config = RunConfig.from_args(args)
        with run_config.applied():
            payload, exit_code = args.handler(args, run_config)
        write_report(payload, run_config.out, run_config.format)
    except Exception as e:
        error_type = classify_error_type(e)
        track_error(command, error_type)
        log_error(logger, e, "command_failed", duration_ms=(time.perf_counter() - start) * 1000,
                  command=command, error_category=error_type)
        print(f"error: {e}", file=sys.stderr)
        exit_code = exit_code_for(e)
    else:
        log_event(logger, "command_finished", command=command, exit_code=exit_code,
                  duration_ms=(time.perf_counter() - start) * 1000)
    finally:
        dump_metrics(config.METRICS_FILE)
    return exit_code


if __name__ == '__main__':
    sys.exit(main())
