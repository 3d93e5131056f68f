"""
Команды verify и suite: проверка утверждений по одному и полный прогон матрицы
"""

import argparse
import asyncio
import functools
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Tuple

import config
from handlers.common import RunConfig, load_spec, parse_exponents, parse_floats
from metrics import classify_error_type, exit_code_for
from utils.boundary import PRESETS, preset_spec
from utils.ellipticity import elliptic_constants
from utils.errors import ConfigurationError, InvalidInputError
from utils.export import summarize
from utils.extension import DiskField, extend
from utils.logger import get_logger, log_error, log_event
from utils.verify import STATEMENTS, STATEMENT_ALIASES, resolve_statement, run_check

logger = get_logger("handlers.verify")

SUITE_EXPONENTS = {
    "lemma-ft": (1.0, 1.5, 2.0, 3.0, math.inf),
    "lemma-fr": (1.0, 2.0, 3.0),
    "thm1-bergman": (1.0, 2.0, 3.0, 5.0),
    "thm2-finite": (1.0, 2.0, 3.0),
}

# (пресет, K, K') для второй теоремы
ELLIPTIC_TRIPLES = (
    ("identity", 1.0, 0.0),
    ("elliptic-trace", 1.0, 4.0),
    ("affine-qr", 3.0, 0.0),
)


@dataclass(frozen=True)
class SuiteJob:
    statement_id: str
    preset: Optional[str] = None
    p: Optional[float] = None
    K: Optional[float] = None
    Kprime: Optional[float] = None

    def describe(self) -> Dict[str, Any]:
        return {"statement_id": self.statement_id, "preset": self.preset, "p": self.p,
                "K": self.K, "Kprime": self.Kprime}


def parse_presets(text: Optional[str]) -> List[str]:
    if text is None:
        return list(config.SUITE_PRESETS)
    presets = [item.strip() for item in text.split(",") if item.strip()]
    if not presets:
        raise ConfigurationError("--presets is empty: the suite needs at least one preset")
    unknown = [name for name in presets if name not in PRESETS]
    if unknown:
        raise InvalidInputError(f"unknown presets {unknown}, expected some of {sorted(PRESETS)}")
    return presets


def suite_matrix(presets: List[str]) -> List[SuiteJob]:
    """Все проверки полного прогона в порядке (утверждение, пресет, p)."""
    if not presets:
        raise ConfigurationError("the suite needs at least one preset")
    jobs: List[SuiteJob] = []
    for statement_id in ("lemma-ft", "lemma-fr", "thm1-bergman"):
        for preset in presets:
            jobs.extend(SuiteJob(statement_id, preset, p) for p in SUITE_EXPONENTS[statement_id])
    jobs.append(SuiteJob("thm1-counterexample"))
    triples = [triple for triple in ELLIPTIC_TRIPLES if triple[0] in presets]
    for preset, K, Kprime in triples:
        jobs.extend(SuiteJob("thm2-finite", preset, p, K, Kprime) for p in SUITE_EXPONENTS["thm2-finite"])
    for preset, K, Kprime in triples:
        jobs.append(SuiteJob("thm2-infinite", preset, None, K, Kprime))
    return jobs


def shared_fields(presets: List[str], run_config: RunConfig) -> Dict[str, DiskField]:
    """Одно поле на пресет: кэши окружностей и усечений общие для всех его задач."""
    return {preset: extend(preset_spec(preset), run_config.truncation) for preset in presets}


def run_job(job: SuiteJob, run_config: RunConfig, fields: Optional[Dict[str, DiskField]] = None):
    field = (fields or {}).get(job.preset) if job.preset else None
    if field is not None:
        spec = field.spec
    else:
        spec = preset_spec(job.preset) if job.preset else None
    return run_check(job.statement_id, spec, job.p, K=job.K, Kprime=job.Kprime,
                     levels=run_config.levels, N=run_config.truncation, seed=run_config.seed, field=field)


async def run_suite(run_config: RunConfig, presets: List[str],
                    workers: Optional[int] = None) -> Tuple[Dict[str, Any], int]:
    """
    Прогоняет матрицу в пуле потоков. Порядок отчётов не зависит от
    порядка завершения задач; упавшие задачи попадают в список errors.
    """
    jobs = suite_matrix(presets)
    fields = shared_fields(presets, run_config)
    log_event(logger, "suite_started", jobs=len(jobs), presets=presets)
    loop = asyncio.get_running_loop()
    with ThreadPoolExecutor(max_workers=workers or config.SUITE_WORKERS) as pool:
        results = await asyncio.gather(
            *(loop.run_in_executor(pool, functools.partial(run_job, job, run_config, fields)) for job in jobs),
            return_exceptions=True,
        )

    reports, errors, codes = [], [], [0]
    for job, result in zip(jobs, results):
        if isinstance(result, Exception):
            log_error(logger, result, "suite_job_failed", **job.describe())
            errors.append({**job.describe(), "error": str(result), "error_type": classify_error_type(result)})
            codes.append(max(exit_code_for(result), 1))
            continue
        reports.append(result)
        if not result.passed:
            codes.append(1)

    summary = summarize(reports)
    exit_code = max(codes)
    log_event(logger, "suite_finished", reports=len(reports), errors=len(errors), exit_code=exit_code)
    payload = {
        "config": run_config.to_dict(),
        "presets": presets,
        "summary": summary,
        "passed": not errors and all(report.passed for report in reports),
        "reports": reports,
        "errors": errors,
    }
    return payload, exit_code


def handle_suite(args: argparse.Namespace, run_config: RunConfig) -> Tuple[Dict[str, Any], int]:
    return asyncio.run(run_suite(run_config, parse_presets(args.presets)))


def handle_verify(args: argparse.Namespace, run_config: RunConfig) -> Tuple[Dict[str, Any], int]:
    statement_id = resolve_statement(args.statement)
    spec = None if statement_id == "thm1-counterexample" else load_spec(args)
    field = None if spec is None else extend(spec, run_config.truncation)
    K_values = parse_floats(args.K)
    K = K_values[0] if K_values else None

    certificate = None
    if statement_id.startswith("thm2") and (K is None or args.Kprime is None):
        certificate = elliptic_constants(field, levels=run_config.levels, K=K)

    if statement_id in ("thm1-counterexample", "thm2-infinite"):
        exponents: List[Optional[float]] = [None]
    else:
        exponents = parse_exponents(args.p)
        if not exponents:
            raise ConfigurationError(f"statement '{statement_id}' needs --p")

    reports = [
        run_check(statement_id, spec, p, K=K, Kprime=args.Kprime, certificate=certificate,
                  levels=run_config.levels, N=run_config.truncation, seed=run_config.seed, field=field)
        for p in exponents
    ]
    payload = {"config": run_config.to_dict(), "summary": summarize(reports), "reports": reports}
    return payload, 0 if all(report.passed for report in reports) else 1


def register_verify_handlers(subparsers, parents) -> None:
    """Регистрирует подкоманды verify и suite"""
    parser = subparsers.add_parser("verify", parents=parents, help="check one statement")
    parser.add_argument("statement", choices=STATEMENTS + tuple(STATEMENT_ALIASES))
    parser.set_defaults(handler=handle_verify)

    parser = subparsers.add_parser("suite", parents=parents, help="run every check over the preset matrix")
    parser.add_argument("--presets", metavar="LIST",
                        help=f"comma separated presets (default {','.join(config.SUITE_PRESETS)})")
    parser.set_defaults(handler=handle_suite)
