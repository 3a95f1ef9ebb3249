"""Count plan mentions of entities that are not in the sandbox."""

import logging
from collections.abc import Sequence

from src.plans import Plan, iter_mentions
from src.sandbox import EntityKind, Sandbox

from .models import HallucinationReport

logger = logging.getLogger(__name__)

COUNTED_KINDS: tuple[EntityKind, ...] = (
    EntityKind.FLIGHT,
    EntityKind.HOTEL,
    EntityKind.RESTAURANT,
    EntityKind.ATTRACTION,
)


def count_hallucinations(plans: Sequence[Plan | None], sandbox: Sandbox) -> HallucinationReport:
    """Per-kind counts of mentions failing `entity_exists`, across a task set.

    Undelivered tasks (None) name nothing and count toward no kind, but they
    are part of the plan count behind the share.
    """
    counts = dict.fromkeys((kind.value for kind in COUNTED_KINDS), 0)
    affected = 0
    for plan in plans:
        if plan is None:
            continue
        found = 0
        for mention in iter_mentions(plan):
            if not sandbox.entity_exists(mention.kind, mention.name):
                counts[mention.kind.value] += 1
                found += 1
        if found:
            affected += 1

    report = HallucinationReport(
        counts=counts, plans_with_hallucination=affected, plan_count=len(plans)
    )
    logger.debug(
        f"Counted {report.total} hallucinated mentions in {affected} of {len(plans)} plans",
        extra={"counts": counts},
    )
    return report
