"""
Команды extend, derive и norm: значения продолжения, производные и нормы
"""

import argparse
from typing import Any, Dict, List, Tuple

from handlers.common import RunConfig, load_spec, parse_exponents, parse_points
from utils.boundary import boundary_derivative, lp_circle_norm
from utils.calculus import QUANTITIES, DiskScalar, local_geometry, polar, second_dilatation
from utils.errors import ConfigurationError, ConvergenceError
from utils.extension import extend, extend_oracle_with_error
from utils.logger import get_logger, log_error, log_event
from utils.norms import NORM_KINDS, bergman_norm, circle_mean, hardy_norm

logger = get_logger("handlers.field")

BOUNDARY_QUANTITIES = ("F", "F_dot")


def _points(args: argparse.Namespace) -> List[complex]:
    points = parse_points(args.z)
    if not points:
        raise ConfigurationError("at least one point is required: pass --z 0.3+0.4j")
    return points


def handle_extend(args: argparse.Namespace, run_config: RunConfig) -> Tuple[Dict[str, Any], int]:
    spec = load_spec(args)
    field = extend(spec, run_config.truncation)
    rows = []
    for z in _points(args):
        sample = field.sample(z)
        row = {
            "z": z,
            "value": complex(sample.f),
            "truncation": int(sample.truncation),
            "tail_bound": float(sample.tail_bound),
            "degraded": bool(sample.degraded),
        }
        if args.oracle:
            try:
                oracle = extend_oracle_with_error(spec, z, tol=run_config.tolerance)
            except ConvergenceError as e:
                # Остальные точки всё равно считаем, отказ оракула виден в строке
                log_error(logger, e, "oracle_failed", z=[z.real, z.imag])
                row["oracle_error"] = str(e)
            else:
                row["oracle"] = oracle.value
                row["oracle_error_estimate"] = oracle.error
                row["difference"] = abs(oracle.value - complex(sample.f))
        rows.append(row)
    log_event(logger, "extend_done", spec=spec.label, points=len(rows))
    return {"spec": spec.describe(), "points": rows}, 0


def handle_derive(args: argparse.Namespace, run_config: RunConfig) -> Tuple[Dict[str, Any], int]:
    spec = load_spec(args)
    field = extend(spec, run_config.truncation)
    rows = []
    for z in _points(args):
        pack = polar(field, z)
        row = pack.to_dict()
        row["geometry"] = local_geometry(field, z).to_dict()
        row["dilatation"] = second_dilatation(field, z)
        row["tail_bound"] = pack.tail_bound
        rows.append(row)
    return {"spec": spec.describe(), "points": rows}, 0


def handle_norm(args: argparse.Namespace, run_config: RunConfig) -> Tuple[Dict[str, Any], int]:
    spec = load_spec(args)
    exponents = parse_exponents(args.p) or [2.0]
    kind = args.kind

    if kind == "circle-Lp":
        quantity = args.quantity or "F"
        if quantity not in BOUNDARY_QUANTITIES:
            raise ConfigurationError(f"circle-Lp measures {BOUNDARY_QUANTITIES}, got '{quantity}'")
        target = boundary_derivative(spec) if quantity == "F_dot" else spec
        reports = [lp_circle_norm(target, p) for p in exponents]
    else:
        quantity = args.quantity or "f"
        scalar = DiskScalar(extend(spec, run_config.truncation), quantity)
        if kind == "circle-mean":
            if args.r is None:
                raise ConfigurationError("circle-mean needs a radius: pass --r 0.9")
            reports = [circle_mean(scalar, args.r, p) for p in exponents]
        elif kind == "hardy":
            reports = [hardy_norm(scalar, p, levels=run_config.levels) for p in exponents]
        else:
            reports = [bergman_norm(scalar, p, levels=run_config.levels) for p in exponents]

    log_event(logger, "norm_done", spec=spec.label, kind=kind, quantity=quantity,
              divergent=sum(1 for report in reports if report.divergent))
    return {"spec": spec.describe(), "quantity": quantity, "reports": reports}, 0


def register_field_handlers(subparsers, parents) -> None:
    """Регистрирует подкоманды extend, derive и norm"""
    parser = subparsers.add_parser("extend", parents=parents,
                                   help="evaluate the Poisson extension at points")
    parser.add_argument("--z", action="append", metavar="POINT", help="point in the open disk, repeatable")
    parser.add_argument("--oracle", action="store_true", help="also evaluate the Poisson integral directly")
    parser.set_defaults(handler=handle_extend)

    parser = subparsers.add_parser("derive", parents=parents,
                                   help="Wirtinger and polar derivatives at points")
    parser.add_argument("--z", action="append", metavar="POINT", help="point in the open disk, repeatable")
    parser.set_defaults(handler=handle_derive)

    parser = subparsers.add_parser("norm", parents=parents, help="circle means, Hardy, Bergman or boundary norms")
    parser.add_argument("--kind", choices=NORM_KINDS, default="hardy")
    parser.add_argument("--quantity", choices=QUANTITIES + BOUNDARY_QUANTITIES,
                        help="measured quantity (default f, or F for circle-Lp)")
    parser.add_argument("--r", type=float, metavar="RADIUS", help="radius for circle-mean")
    parser.set_defaults(handler=handle_norm)
