from fastapi import APIRouter, HTTPException, Query
from typing import Optional
import logging

from app.core.config import settings
from app.models.models import SuiteReport
from app.services.verify import SUITES, run_suite

logger = logging.getLogger(__name__)

router = APIRouter()


@router.get("/verify/{suite}", response_model=SuiteReport)
def verify_suite(
    suite: str,
    seed: int = Query(settings.DEFAULT_SEED, description="Seed for the random cases"),
    cases: int = Query(settings.DEFAULT_CASES, ge=0, description="Number of random cases"),
    max_crossings: Optional[int] = Query(None, description="Override for the state-sum crossing cap"),
):
    """
    Run one property suite and report every failed check.

    **Suites:** relations, group, monoid, calibration, linking, connected_sum,
    unknot, disjoint, counting, pointed, treelink, reidemeister.
    """
    if suite not in SUITES:
        raise HTTPException(status_code=404, detail=f"Unknown suite '{suite}'")
    return run_suite(suite, seed=seed, cases=cases, max_crossings=max_crossings)
