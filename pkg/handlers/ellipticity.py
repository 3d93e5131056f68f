"""
Команда ellipticity: классификация поля как квазирегулярного или (K, K')-эллиптического
"""

import argparse
from typing import Any, Dict, Tuple

from handlers.common import RunConfig, load_spec, parse_floats
from utils.ellipticity import classify
from utils.extension import extend


def handle_ellipticity(args: argparse.Namespace, run_config: RunConfig) -> Tuple[Dict[str, Any], int]:
    spec = load_spec(args)
    field = extend(spec, run_config.truncation)
    report = classify(field, parse_floats(args.K) or (1.0,), levels=run_config.levels)
    return {"spec": spec.describe(), "report": report}, 0


def register_ellipticity_handlers(subparsers, parents) -> None:
    parser = subparsers.add_parser("ellipticity", parents=parents,
                                   help="quasiregular constant or K' estimates for a K scan (--K 1,2,4)")
    parser.set_defaults(handler=handle_ellipticity)
