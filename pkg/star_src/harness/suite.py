"""
Seeded execution of the verification suite.
"""
import time
import zlib
from typing import Dict, List, Optional

import numpy as np
import pandas as pd
from tqdm import tqdm

from star_src.algebra.eset import ESETStructure, validate
from star_src.constants import GATE_FACTOR, SUITE_LOG_FILENAME
from star_src.entity.artifact_entity import CheckResult, VerificationReport
from star_src.entity.config_entity import SuiteConfig
from star_src.exception import BoundaryError, StarQuantError, UnknownCheckError
from star_src.harness.checks import GROUPS, REGISTRY, CheckContext, available_checks
from star_src.logger import get_logger

logger = get_logger(__name__, log_filename=SUITE_LOG_FILENAME)


def check_rng(seed: int, name: str) -> np.random.Generator:
    """Per-check generator, independent of which other checks run and in which order."""
    return np.random.default_rng([seed, zlib.crc32(name.encode("utf-8"))])


def _status(residual: float, tolerance: float) -> str:
    return "pass" if np.isfinite(residual) and residual <= tolerance else "fail"


def run_suite(e: ESETStructure, config: SuiteConfig, progress: bool = False) -> VerificationReport:
    """
    Run the configured checks against a structure.

    Checks execute grouped (structure, geometry, transform, product) so the
    gates are known before dependent checks start; the report lists them in
    configuration order.

    Raises:
        UnknownCheckError: a configured check name is not registered.
    """
    known = available_checks()
    for name in config.checks:
        if name not in known:
            raise UnknownCheckError(name)

    report = VerificationReport(suite=config.name, structure=e.name, seed=config.seed,
                                hbar=list(config.hbar_list), grid=config.grid.to_dict())
    if not config.checks:
        return report

    structure_ok = not validate(e)
    transform_ok = True
    cache: Dict[str, object] = {}
    results: Dict[str, CheckResult] = {}
    order = sorted(dict.fromkeys(config.checks), key=lambda n: GROUPS.index(REGISTRY[n].group))

    for name in tqdm(order, desc=f"suite {config.name}", disable=not progress, leave=False):
        spec = REGISTRY[name]
        tolerance = config.tolerances.get(name, spec.tolerance)
        if spec.group != "structure" and not structure_ok:
            results[name] = CheckResult(name, "skipped", float("nan"), tolerance, "structure failed validation")
            logger.warning("%s skipped: structure failed validation", name)
            continue
        if spec.group == "product" and not transform_ok:
            results[name] = CheckResult(name, "skipped", float("nan"), tolerance,
                                        "intertwiner round trip outside the gate")
            logger.warning("%s skipped: intertwiner round trip outside the gate", name)
            continue

        ctx = CheckContext(e=e, config=config, rng=check_rng(config.seed, name), cache=cache)
        start = time.perf_counter()
        status = None
        try:
            residual, details = spec.func(ctx)
        except BoundaryError as err:
            residual, details, status = float("nan"), f"fixture rejected: {err.message}", "skipped"
            logger.warning("%s skipped: %s", name, err.message)
        except StarQuantError as err:
            residual, details = float("nan"), str(err)
            logger.warning("%s raised %s", name, err)
        except Exception as err:
            logger.exception("%s failed unexpectedly", name)
            residual, details = float("nan"), f"{type(err).__name__}: {err}"
        seconds = time.perf_counter() - start

        result = CheckResult(name, status or _status(residual, tolerance), float(residual), tolerance,
                             details, seconds)
        results[name] = result
        logger.info("%-24s %-4s residual=%.3e tol=%.1e (%.2fs)", name, result.status, residual, tolerance, seconds)
        if name == "intertwiner_roundtrip" and not residual <= GATE_FACTOR * tolerance:
            transform_ok = False

    report.checks = [results[name] for name in dict.fromkeys(config.checks)]
    return report


def summary_table(report: VerificationReport) -> pd.DataFrame:
    rows: List[Dict] = [{"check": c.name, "status": c.status, "residual": c.residual,
                         "tolerance": c.tolerance, "seconds": round(c.seconds, 2)} for c in report.checks]
    return pd.DataFrame(rows, columns=["check", "status", "residual", "tolerance", "seconds"])


def format_summary(report: VerificationReport, path: Optional[str] = None) -> str:
    table = summary_table(report)
    text = table.to_string(index=False) if len(table) else "(no checks configured)"
    verdict = "PASS" if report.ok else "FAIL"
    passed = sum(c.passed for c in report.checks)
    lines = [f"suite {report.suite} on {report.structure}: {verdict} ({passed}/{len(report.checks)} passed)", text]
    if path:
        lines.append(f"report written to {path}")
    return "\n".join(lines)
