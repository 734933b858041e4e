"""Domain types for performance requirements models.

Everything here is an immutable value. Construction validates the
cross-field rules, so an invalid parameter, model or defect never exists.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional


class PerformanceAspect(enum.Enum):
    TIME_BEHAVIOR = "time_behavior"
    RESOURCE_CONSTRAINT = "resource_constraint"
    CAPACITY = "capacity"
    SPEED_THROUGHPUT = "speed_throughput"
    EFFICIENCY = "efficiency"

    @property
    def label(self) -> str:
        return _ASPECT_LABELS[self]

    @classmethod
    def parse(cls, text: str) -> "PerformanceAspect":
        """Accept the snake_case id or the human label, case-insensitively."""
        key = "_".join(text.strip().lower().replace("-", " ").replace("/", " ").split())
        key = _ASPECT_ALIASES.get(key, key)
        try:
            return cls(key)
        except ValueError:
            legal = ", ".join(a.value for a in cls)
            raise ValueError(f"unknown performance aspect {text!r}; expected one of: {legal}") from None


_ASPECT_LABELS = {
    PerformanceAspect.TIME_BEHAVIOR: "Time behavior",
    PerformanceAspect.RESOURCE_CONSTRAINT: "Resource constraints",
    PerformanceAspect.CAPACITY: "Capacity",
    PerformanceAspect.SPEED_THROUGHPUT: "Speed/throughput",
    PerformanceAspect.EFFICIENCY: "Efficiency",
}

_ASPECT_ALIASES = {
    "resource_constraints": "resource_constraint",
    "resource_utilization": "resource_constraint",
    "resource_utilisation": "resource_constraint",
    "time_behaviour": "time_behavior",
    "throughput": "speed_throughput",
    "speed": "speed_throughput",
    "throughput_speed": "speed_throughput",
}


class ParameterRole(enum.Enum):
    INDEPENDENT = "independent"
    DEPENDENT = "dependent"


COMPARATORS = ("<=", "<", "==", ">", ">=")


@dataclass(frozen=True)
class PerformanceParameter:
    """One coded fragment of a performance requirement.

    ``target`` names the object(s) of the enclosing model this parameter is
    attached to, as a comma-separated list; empty means every object of the
    model. ``comparator_source`` records whether the comparator was written
    explicitly or filled in by a default rule; it does not take part in
    equality.
    """

    id: str
    requirement_id: str
    aspect: PerformanceAspect
    description: str
    value: Optional[Fraction] = None
    unit: Optional[str] = None
    comparator: Optional[str] = None
    quantifiable: bool = True
    target: str = ""
    comparator_source: str = field(default="explicit", compare=False)

    def __post_init__(self):
        if self.value is not None:
            if not isinstance(self.value, Fraction):
                object.__setattr__(self, "value", Fraction(self.value))
            if self.value < 0:
                raise ValueError(f"{self.requirement_id}: value must be non-negative, got {self.value}")
            if not self.quantifiable:
                raise ValueError(f"{self.requirement_id}: a parameter with a value cannot be marked not quantifiable")
            if not self.unit:
                raise ValueError(f"{self.requirement_id}: value {self.value} has no unit")
            if self.comparator is None:
                raise ValueError(f"{self.requirement_id}: value {self.value} has no comparator")
        elif self.unit:
            raise ValueError(f"{self.requirement_id}: unit {self.unit!r} given without a value")
        if self.comparator is not None and self.comparator not in COMPARATORS:
            raise ValueError(f"{self.requirement_id}: comparator must be one of {COMPARATORS}, got {self.comparator!r}")

    @property
    def quantified(self) -> bool:
        return quantified(self)

    @property
    def targets(self) -> tuple[str, ...]:
        return split_objects(self.target)


def quantified(p: PerformanceParameter) -> bool:
    return p.value is not None


def split_objects(text: str) -> tuple[str, ...]:
    return tuple(part.strip() for part in text.split(",") if part.strip())


def normalize_name(text: str) -> str:
    return " ".join(text.lower().split())


@dataclass(frozen=True)
class PerformanceModel:
    """An object (or group of objects) with its independent and dependent parameters."""

    model_id: str
    object: str
    condition: str = ""
    independent: tuple[PerformanceParameter, ...] = ()
    dependent: tuple[PerformanceParameter, ...] = ()

    def __post_init__(self):
        from .taxonomy import classify_role

        object.__setattr__(self, "independent", tuple(self.independent))
        object.__setattr__(self, "dependent", tuple(self.dependent))
        if not self.objects:
            raise ValueError(f"model {self.model_id!r}: object must be non-empty")
        for side, role in ((self.independent, ParameterRole.INDEPENDENT), (self.dependent, ParameterRole.DEPENDENT)):
            for p in side:
                if classify_role(p.aspect) is not role:
                    raise ValueError(
                        f"model {self.model_id!r}: {p.aspect.value} parameter {p.id!r} "
                        f"cannot be placed among {role.value} parameters"
                    )

    @property
    def objects(self) -> tuple[str, ...]:
        return split_objects(self.object)

    @property
    def parameters(self) -> tuple[PerformanceParameter, ...]:
        return self.independent + self.dependent

    @property
    def merge_key(self) -> tuple[tuple[str, ...], str]:
        return tuple(normalize_name(o) for o in self.objects), normalize_name(self.condition)

    def aspects(self) -> set[PerformanceAspect]:
        return {p.aspect for p in self.parameters}

    def applies_to(self, p: PerformanceParameter) -> tuple[str, ...]:
        """The model objects a parameter is attached to."""
        if not p.targets:
            return self.objects
        wanted = {normalize_name(t) for t in p.targets}
        return tuple(o for o in self.objects if normalize_name(o) in wanted)


class DefectCategory(enum.Enum):
    NOT_QUANTIFIABLE = "NotQuantifiable"
    NOT_QUANTIFIED = "NotQuantified"
    UNDER_SPECIFIED_PARAMETER = "UnderSpecifiedParameter"
    CONFLICT = "Conflict"
    INFEASIBLE_REQUIREMENT = "InfeasibleRequirement"
    MISSING_DEPENDENT_METRIC = "MissingDependentMetric"
    EMPTY_MODEL = "EmptyModel"


class Severity(enum.Enum):
    BLOCKING = "Blocking"
    WARNING = "Warning"


@dataclass(frozen=True)
class Defect:
    category: DefectCategory
    message: str
    severity: Severity
    aspect: Optional[PerformanceAspect] = None
    model_id: Optional[str] = None
    requirement_ids: tuple[str, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "requirement_ids", tuple(self.requirement_ids))
        if self.category in (DefectCategory.UNDER_SPECIFIED_PARAMETER, DefectCategory.CONFLICT) and self.aspect is None:
            raise ValueError(f"{self.category.value} defect requires an aspect")
        if self.category is DefectCategory.CONFLICT and len(self.requirement_ids) < 2:
            raise ValueError("Conflict defect requires at least two requirement ids")
        if (
            self.category is DefectCategory.UNDER_SPECIFIED_PARAMETER
            and self.aspect is PerformanceAspect.EFFICIENCY
        ):
            raise ValueError("efficiency is never reported as under-specified")

    def sort_key(self):
        return (self.model_id or "", self.requirement_ids, self.category.value, self.aspect.value if self.aspect else "")

    def to_dict(self) -> dict:
        return {
            "category": self.category.value,
            "severity": self.severity.value,
            "aspect": self.aspect.value if self.aspect else None,
            "model_id": self.model_id,
            "requirement_ids": list(self.requirement_ids),
            "message": self.message,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "Defect":
        return cls(
            category=DefectCategory(data["category"]),
            severity=Severity(data["severity"]),
            aspect=PerformanceAspect(data["aspect"]) if data.get("aspect") else None,
            model_id=data.get("model_id"),
            requirement_ids=tuple(data.get("requirement_ids", ())),
            message=data.get("message", ""),
        )


@dataclass(frozen=True)
class Constraint:
    description: str
    att_class: str


@dataclass(frozen=True)
class Metric:
    description: str
    att_class: str


@dataclass(frozen=True)
class ObjectMetricPair:
    object: str
    metric: Optional[Metric]


@dataclass(frozen=True)
class TestEnvironment:
    constraints: tuple[Constraint, ...] = ()
    object_metric_pairs: tuple[ObjectMetricPair, ...] = ()
    errors: tuple[str, ...] = ()

    __test__ = False  # keep pytest from collecting this as a test class

    def __post_init__(self):
        for name in ("constraints", "object_metric_pairs", "errors"):
            object.__setattr__(self, name, tuple(getattr(self, name)))
        for c in self.constraints:
            if c.att_class not in INDEPENDENT_IDS:
                raise ValueError(f"constraint att_class must be independent, got {c.att_class!r}")
        for pair in self.object_metric_pairs:
            if pair.metric is not None and pair.metric.att_class not in DEPENDENT_IDS:
                raise ValueError(f"metric att_class must be dependent, got {pair.metric.att_class!r}")


INDEPENDENT_IDS = frozenset({"capacity", "resource_constraint"})
DEPENDENT_IDS = frozenset({"time_behavior", "speed_throughput", "efficiency"})
