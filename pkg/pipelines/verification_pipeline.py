#!/usr/bin/env python3
"""
Dagster Pipeline for quadzeros
Orchestrates the acceptance checks as independent ops and collects a summary
"""

import json
import os
import sys
from typing import Any, Dict, List

from dagster import (
    Config,
    DefaultScheduleStatus,
    get_dagster_logger,
    graph,
    job,
    op,
    schedule,
)

# Add the project root to the path
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from scripts.validate_results import ResultValidator  # noqa: E402


# Configuration for the checks
class VerificationConfig(Config):
    m_max: int = 40
    m_cap: int = 60
    grid: int = 4096
    monotonicity_grid: int = 10_000
    factorization_samples: int = 1000
    density_levels: List[int] = [40, 80, 160]


def _run_step(config: VerificationConfig, step: str) -> Dict[str, Any]:
    logger = get_dagster_logger()
    logger.info(f"Starting {step} check...")
    validator = ResultValidator(
        m_max=config.m_max, density_levels=tuple(config.density_levels), grid=config.grid, m_cap=config.m_cap)
    runners = {
        'sufficiency': validator.validate_sufficiency,
        'necessity': validator.validate_necessity,
        'containment': validator.validate_containment,
        'endpoints': validator.validate_endpoints,
        'closed_form': validator.validate_closed_form,
        'monotonicity': lambda: validator.validate_monotonicity(config.monotonicity_grid),
        'factorization': lambda: validator.validate_factorization(config.factorization_samples),
        'zero_counts': validator.validate_zero_counts,
        'limit_points': validator.validate_limit_points,
        'density': validator.validate_density,
    }
    try:
        passed = runners[step]()
    except Exception as e:
        logger.error(f"{step} check failed with exception: {e}")
        return {"status": "failed", "step": step, "error": str(e)}

    details = validator.validation_results.get(step, {})
    if passed:
        logger.info(f"{step} check passed")
    else:
        logger.warning(f"{step} check failed")
    return {"status": "success" if passed else "failed", "step": step, "details": details}


@op
def check_sufficiency(context, config: VerificationConfig) -> Dict[str, Any]:
    """Exact Sturm verdicts on the closed condition region"""
    return _run_step(config, 'sufficiency')


@op
def check_necessity(context, config: VerificationConfig) -> Dict[str, Any]:
    """A nonreal zero appears when the condition fails"""
    return _run_step(config, 'necessity')


@op
def check_containment(context, config: VerificationConfig) -> Dict[str, Any]:
    return _run_step(config, 'containment')


@op
def check_endpoints(context, config: VerificationConfig) -> Dict[str, Any]:
    """z(pi - eps) approaches the interval endpoint; b = 0 closed form agrees"""
    result = _run_step(config, 'endpoints')
    closed = _run_step(config, 'closed_form')
    if closed["status"] != "success":
        result["status"] = "failed"
    result["closed_form"] = closed
    return result


@op
def check_monotonicity(context, config: VerificationConfig) -> Dict[str, Any]:
    return _run_step(config, 'monotonicity')


@op
def check_theta_machinery(context, config: VerificationConfig) -> Dict[str, Any]:
    """Factorization residuals and g_m zero counts"""
    result = _run_step(config, 'factorization')
    counts = _run_step(config, 'zero_counts')
    if counts["status"] != "success":
        result["status"] = "failed"
    result["zero_counts"] = counts
    return result


@op
def check_limit_points(context, config: VerificationConfig) -> Dict[str, Any]:
    return _run_step(config, 'limit_points')


@op
def check_density(context, config: VerificationConfig) -> Dict[str, Any]:
    return _run_step(config, 'density')


@op
def summarize_results(
    context,
    sufficiency: Dict[str, Any],
    necessity: Dict[str, Any],
    containment: Dict[str, Any],
    endpoints: Dict[str, Any],
    monotonicity: Dict[str, Any],
    theta_machinery: Dict[str, Any],
    limit_points: Dict[str, Any],
    density: Dict[str, Any],
) -> Dict[str, Any]:
    """Collect every check into one overall status"""
    logger = get_dagster_logger()
    results = {
        "sufficiency": sufficiency,
        "necessity": necessity,
        "containment": containment,
        "endpoints": endpoints,
        "monotonicity": monotonicity,
        "theta_machinery": theta_machinery,
        "limit_points": limit_points,
        "density": density,
    }
    failed = [name for name, r in results.items() if r.get("status") != "success"]
    overall = "passed" if not failed else "failed"
    logger.info(f"Verification {overall}; failed checks: {failed}")
    return {"status": overall, "failed_steps": failed, "total_steps": len(results)}


@graph
def verification_graph():
    """All checks run independently; the summary waits for every one"""
    return summarize_results(
        check_sufficiency(),
        check_necessity(),
        check_containment(),
        check_endpoints(),
        check_monotonicity(),
        check_theta_machinery(),
        check_limit_points(),
        check_density(),
    )


@job
def verification_job():
    """Dagster job running the full verification"""
    verification_graph()


@schedule(
    cron_schedule="0 3 * * 0",  # Weekly, Sunday 3 AM
    job=verification_job,
    execution_timezone="UTC",
    default_status=DefaultScheduleStatus.STOPPED,
)
def weekly_verification():
    """Weekly scheduled verification run"""
    return {}


CHECK_OPS = (
    "check_sufficiency", "check_necessity", "check_containment", "check_endpoints",
    "check_monotonicity", "check_theta_machinery", "check_limit_points", "check_density",
)


def run_config_for(config: VerificationConfig) -> Dict[str, Any]:
    """run_config applying one VerificationConfig to every check op"""
    values = config.model_dump() if hasattr(config, 'model_dump') else config.dict()
    return {"ops": {"verification_graph": {"ops": {name: {"config": values} for name in CHECK_OPS}}}}


if __name__ == "__main__":
    result = verification_job.execute_in_process(run_config=run_config_for(VerificationConfig()))
    summary = result.output_for_node("verification_graph")
    print(json.dumps(summary, indent=2, default=str))
    sys.exit(0 if summary["status"] == "passed" else 1)
