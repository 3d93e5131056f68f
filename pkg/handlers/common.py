"""
Общие части обработчиков команд: RunConfig, общий родительский парсер,
разбор списков показателей и загрузка граничной функции.
"""

import argparse
import math
from contextlib import contextmanager
from dataclasses import dataclass, asdict
from typing import Any, Dict, Iterator, List, Optional

import config
from utils.boundary import BoundarySpec, PRESETS, load_boundary_file, preset_spec
from utils.errors import ConfigurationError, InvalidInputError
from utils.export import REPORT_FORMATS


@dataclass
class RunConfig:
    truncation: Optional[int] = None
    tolerance: float = config.ORACLE_TOLERANCE
    levels: int = config.RADIAL_LEVELS
    angular_nodes: int = config.ANGULAR_BASE_NODES
    seed: int = config.RANDOM_SEED
    out: Optional[str] = None
    format: str = config.DEFAULT_REPORT_FORMAT

    def __post_init__(self):
        if self.truncation is not None and self.truncation < 1:
            raise ConfigurationError(f"--N must be positive, got {self.truncation}")
        if not self.tolerance > 0:
            raise ConfigurationError(f"--tol must be positive, got {self.tolerance}")
        if self.levels < 2:
            raise ConfigurationError(f"--levels must be at least 2, got {self.levels}")
        nodes = self.angular_nodes
        if nodes < 16 or nodes & (nodes - 1) or nodes > config.MAX_ANGULAR_NODES:
            raise ConfigurationError(
                f"--angular must be a power of two in [16, {config.MAX_ANGULAR_NODES}], got {nodes}"
            )
        if self.seed < 0:
            raise ConfigurationError(f"--seed must be non-negative, got {self.seed}")
        if self.format not in REPORT_FORMATS:
            raise ConfigurationError(f"--format must be one of {REPORT_FORMATS}, got {self.format}")

    @classmethod
    def from_args(cls, args: argparse.Namespace) -> "RunConfig":
        defaults = cls()
        return cls(
            truncation=getattr(args, "N", None),
            tolerance=getattr(args, "tol", None) or defaults.tolerance,
            levels=getattr(args, "levels", None) or defaults.levels,
            angular_nodes=getattr(args, "angular", None) or defaults.angular_nodes,
            seed=defaults.seed if getattr(args, "seed", None) is None else args.seed,
            out=getattr(args, "out", None),
            format=getattr(args, "format", None) or defaults.format,
        )

    def to_dict(self) -> Dict[str, Any]:
        data = asdict(self)
        data.pop("out")
        return data

    @contextmanager
    def applied(self) -> Iterator["RunConfig"]:
        """Базовое число углов на время одной команды (сетки читают его из config)."""
        previous = config.ANGULAR_BASE_NODES
        config.ANGULAR_BASE_NODES = self.angular_nodes
        try:
            yield self
        finally:
            config.ANGULAR_BASE_NODES = previous


def parse_exponents(text: Optional[str]) -> List[float]:
    """'1,1.5,inf' -> [1.0, 1.5, inf]."""
    if text is None:
        return []
    values = []
    for item in text.split(","):
        item = item.strip().lower()
        if not item:
            continue
        if item in ("inf", "infinity", "∞"):
            values.append(math.inf)
            continue
        try:
            values.append(float(item))
        except ValueError:
            raise InvalidInputError(f"exponent '{item}' is not a number")
    return values


def parse_floats(text: Optional[str]) -> List[float]:
    if text is None:
        return []
    try:
        return [float(item) for item in text.split(",") if item.strip()]
    except ValueError:
        raise InvalidInputError(f"cannot parse number list '{text}'")


def parse_points(values: Optional[List[str]]) -> List[complex]:
    """Точки вида 0.3+0.4j, 0.5, -0.2j."""
    points = []
    for item in values or []:
        try:
            points.append(complex(item.replace(" ", "").replace("i", "j")))
        except ValueError:
            raise InvalidInputError(f"cannot parse point '{item}', expected e.g. 0.3+0.4j")
    return points


def parse_params(items: Optional[List[str]]) -> Dict[str, Any]:
    """--param k=3 --param q=0.25 -> {'k': 3, 'q': 0.25}."""
    params: Dict[str, Any] = {}
    for item in items or []:
        key, sep, raw = item.partition("=")
        if not sep or not key:
            raise InvalidInputError(f"preset parameter '{item}' must look like name=value")
        try:
            value: Any = int(raw)
        except ValueError:
            try:
                value = float(raw)
            except ValueError:
                raise InvalidInputError(f"preset parameter '{item}' is not numeric")
        params[key.strip()] = value
    return params


def load_spec(args: argparse.Namespace) -> BoundarySpec:
    """Граничная функция из --input или --preset (с --param)."""
    if getattr(args, "input", None):
        return load_boundary_file(args.input)
    if getattr(args, "preset", None):
        return preset_spec(args.preset, **parse_params(getattr(args, "param", None)))
    raise ConfigurationError("a boundary function is required: pass --input <file> or --preset <name>")


def common_parser() -> argparse.ArgumentParser:
    """Родительский парсер с флагами, общими для всех подкоманд."""
    parser = argparse.ArgumentParser(add_help=False)
    group = parser.add_argument_group("common options")
    group.add_argument("--input", metavar="FILE", help="boundary function as JSON (kind preset|fourier|sampled)")
    group.add_argument("--preset", choices=sorted(PRESETS), help="named boundary function")
    group.add_argument("--param", action="append", metavar="NAME=VALUE",
                       help="preset parameter, repeatable (e.g. --param q=0.25)")
    group.add_argument("--p", metavar="LIST", help="comma separated exponents, 'inf' allowed (e.g. 1,2,inf)")
    group.add_argument("--K", metavar="LIST", help="ellipticity constant K (comma list for scans)")
    group.add_argument("--Kprime", type=float, metavar="VALUE", help="ellipticity constant K'")
    group.add_argument("--levels", type=int, metavar="N",
                       help=f"radial levels r_k = 1 - 2^-k (default {config.RADIAL_LEVELS})")
    group.add_argument("--angular", type=int, metavar="M",
                       help=f"base angular nodes per circle, a power of two (default {config.ANGULAR_BASE_NODES})")
    group.add_argument("--N", type=int, metavar="N",
                       help="fixed series truncation for |z| <= 0.99 (default: adaptive from "
                            f"{config.DEFAULT_TRUNCATION})")
    group.add_argument("--tol", type=float, metavar="TOL",
                       help=f"quadrature oracle tolerance (default {config.ORACLE_TOLERANCE:g})")
    group.add_argument("--seed", type=int, help=f"random seed (default {config.RANDOM_SEED})")
    group.add_argument("--out", metavar="FILE", help="write the report to FILE instead of stdout")
    group.add_argument("--format", choices=REPORT_FORMATS, help="report format (default json)")
    return parser
