"""
Команда constants: таблица C(p) и её гамма-оценки
"""

import argparse
from typing import Any, Dict, Tuple

from handlers.common import RunConfig, parse_exponents
from utils.constants import c_of_p
from utils.logger import get_logger, log_event

logger = get_logger("handlers.constants")

DEFAULT_EXPONENTS = "1,1.5,2,3,5"


def handle_constants(args: argparse.Namespace, run_config: RunConfig) -> Tuple[Dict[str, Any], int]:
    reports = [c_of_p(p) for p in parse_exponents(args.p or DEFAULT_EXPONENTS)]
    violated = [report.p for report in reports if not report.holds]
    log_event(logger, "constants_done", exponents=[report.p for report in reports], violated=violated)
    return {"reports": reports}, 1 if violated else 0


def register_constants_handlers(subparsers, parents) -> None:
    parser = subparsers.add_parser("constants", parents=parents,
                                   help=f"table of p, C(p), its bound and the margin (default p = {DEFAULT_EXPONENTS})")
    parser.set_defaults(handler=handle_constants)
