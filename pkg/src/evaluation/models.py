"""Constraint results, per-task evaluations and benchmark metrics."""

from enum import Enum
from typing import Self

from pydantic import BaseModel, ConfigDict, Field, model_validator


class EvaluationError(ValueError):
    """Raised when a metric cannot be computed from the given evaluations."""


class ConstraintKind(str, Enum):
    COMMONSENSE = "commonsense"
    HARD = "hard"


class Area(str, Enum):
    """Expert domain a validation category is charged to."""

    HOTEL = "Hotel"
    RESTAURANT = "Restaurant"
    ATTRACTION = "Attraction"
    TRANSPORTATION = "Transportation"
    OTHER = "Other"


# Commonsense categories, in report order
WITHIN_SANDBOX = "Within Sandbox (No Hallucination)"
COMPLETE_INFORMATION = "Complete Information"
WITHIN_CURRENT_CITY = "Within Current City"
REASONABLE_CITY_ROUTE = "Reasonable City Route"
TRANSPORTATION_CONSISTENCY = "Transportation Consistency"
CITY_VALID_TRANSPORTATION = "City Valid - Transportation"
CITY_VALID_ACCOMMODATION = "City Valid - Accommodation"
CITY_VALID_RESTAURANT = "City Valid - Restaurant"
CITY_VALID_ATTRACTION = "City Valid - Attraction"
DIVERSE_RESTAURANTS = "Diverse Restaurants"
DIVERSE_ATTRACTIONS = "Diverse Attractions"
ACCOMMODATION_RULES = "Accommodation Rules"

# Hard categories, in report order
BUDGET = "Budget/Cost Compliance"
ROOM_TYPE = "Room Type Preferences"
ROOM_RULE = "Room Rule Compliance"
CUISINE = "Cuisine Preferences"
TRANSPORTATION_PREFERENCE = "Transportation Preferences"

COMMONSENSE_CATEGORIES: tuple[str, ...] = (
    WITHIN_SANDBOX,
    COMPLETE_INFORMATION,
    WITHIN_CURRENT_CITY,
    REASONABLE_CITY_ROUTE,
    TRANSPORTATION_CONSISTENCY,
    CITY_VALID_TRANSPORTATION,
    CITY_VALID_ACCOMMODATION,
    CITY_VALID_RESTAURANT,
    CITY_VALID_ATTRACTION,
    DIVERSE_RESTAURANTS,
    DIVERSE_ATTRACTIONS,
    ACCOMMODATION_RULES,
)

HARD_CATEGORIES: tuple[str, ...] = (
    BUDGET,
    ROOM_TYPE,
    ROOM_RULE,
    CUISINE,
    TRANSPORTATION_PREFERENCE,
)

# "Within Sandbox" sits under Attraction in the category table even though
# hallucinations span every entity kind; the hallucination counter reports
# per kind separately.
CATEGORY_AREAS: dict[str, Area] = {
    ACCOMMODATION_RULES: Area.HOTEL,
    CITY_VALID_ACCOMMODATION: Area.HOTEL,
    ROOM_RULE: Area.HOTEL,
    ROOM_TYPE: Area.HOTEL,
    BUDGET: Area.HOTEL,
    CITY_VALID_RESTAURANT: Area.RESTAURANT,
    DIVERSE_RESTAURANTS: Area.RESTAURANT,
    CUISINE: Area.RESTAURANT,
    CITY_VALID_ATTRACTION: Area.ATTRACTION,
    DIVERSE_ATTRACTIONS: Area.ATTRACTION,
    WITHIN_CURRENT_CITY: Area.ATTRACTION,
    WITHIN_SANDBOX: Area.ATTRACTION,
    COMPLETE_INFORMATION: Area.ATTRACTION,
    CITY_VALID_TRANSPORTATION: Area.TRANSPORTATION,
    REASONABLE_CITY_ROUTE: Area.TRANSPORTATION,
    TRANSPORTATION_CONSISTENCY: Area.TRANSPORTATION,
    TRANSPORTATION_PREFERENCE: Area.OTHER,
}

NOT_DELIVERED = "plan not delivered"
NOT_REQUESTED = "not requested"


class ConstraintResult(BaseModel):
    """Verdict of one validation category on one plan."""

    model_config = ConfigDict(frozen=True)

    name: str
    kind: ConstraintKind
    area: Area
    passed: bool
    detail: str = ""
    violations: tuple[str, ...] = ()

    @model_validator(mode="after")
    def validate_area(self) -> Self:
        expected = CATEGORY_AREAS.get(self.name)
        if expected is None:
            raise ValueError(f"Unknown validation category: {self.name}")
        if self.area is not expected:
            raise ValueError(f"{self.name} belongs to {expected.value}, not {self.area.value}")
        return self

    @classmethod
    def verdict(
        cls,
        name: str,
        kind: ConstraintKind,
        violations: list[str],
        ok_detail: str = "ok",
    ) -> "ConstraintResult":
        """Build a result that passes exactly when there are no violations."""
        return cls(
            name=name,
            kind=kind,
            area=CATEGORY_AREAS[name],
            passed=not violations,
            detail="; ".join(violations) if violations else ok_detail,
            violations=tuple(violations),
        )


class TaskEvaluation(BaseModel):
    """All constraint verdicts for one task."""

    model_config = ConfigDict(frozen=True)

    task_id: str = Field(..., min_length=1)
    delivered: bool
    commonsense: tuple[ConstraintResult, ...]
    hard: tuple[ConstraintResult, ...]

    @model_validator(mode="after")
    def validate_undelivered(self) -> Self:
        if not self.delivered and any(r.passed for r in self.results):
            raise ValueError("An undelivered task must fail every constraint")
        return self

    @property
    def results(self) -> tuple[ConstraintResult, ...]:
        return self.commonsense + self.hard

    @property
    def commonsense_passed(self) -> bool:
        return self.delivered and all(r.passed for r in self.commonsense)

    @property
    def hard_passed(self) -> bool:
        return self.delivered and all(r.passed for r in self.hard)

    @property
    def final_passed(self) -> bool:
        return self.commonsense_passed and self.hard_passed


class BenchmarkMetrics(BaseModel):
    """The six benchmark rates, as percentages rounded to two decimals."""

    model_config = ConfigDict(frozen=True)

    delivery_rate: float = Field(..., ge=0, le=100)
    commonsense_micro: float = Field(..., ge=0, le=100)
    commonsense_macro: float = Field(..., ge=0, le=100)
    hard_micro: float = Field(..., ge=0, le=100)
    hard_macro: float = Field(..., ge=0, le=100)
    final_pass_rate: float = Field(..., ge=0, le=100)
    task_count: int = Field(..., ge=1)

    @model_validator(mode="after")
    def validate_final(self) -> Self:
        if self.final_pass_rate > min(self.commonsense_macro, self.hard_macro):
            raise ValueError("final_pass_rate cannot exceed either macro pass rate")
        return self


# Display names of the metrics, in table order
METRIC_LABELS: dict[str, str] = {
    "delivery_rate": "Delivery Rate",
    "commonsense_micro": "Commonsense Micro Pass Rate",
    "commonsense_macro": "Commonsense Macro Pass Rate",
    "hard_micro": "Hard Constraint Micro Pass Rate",
    "hard_macro": "Hard Constraint Macro Pass Rate",
    "final_pass_rate": "Final Pass Rate",
}


class HallucinationReport(BaseModel):
    """Plan mentions that fail the sandbox check, per entity kind."""

    model_config = ConfigDict(frozen=True)

    counts: dict[str, int]
    plans_with_hallucination: int = Field(default=0, ge=0)
    plan_count: int = Field(default=0, ge=0)

    @property
    def total(self) -> int:
        return sum(self.counts.values())

    @property
    def share(self) -> float:
        """Percentage of plans naming at least one entity outside the sandbox."""
        if not self.plan_count:
            return 0.0
        return round(100 * self.plans_with_hallucination / self.plan_count, 2)
