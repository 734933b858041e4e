"""Model verification: merging, quantification, completeness and conflicts."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Sequence

from .ingestion import INFEASIBLE, ParseError
from .model import (
    Defect,
    DefectCategory,
    PerformanceAspect,
    PerformanceModel,
    PerformanceParameter,
    Severity,
    normalize_name,
)
from .taxonomy import classify_role, expected_aspects

# Aspects every model is compared against. Efficiency is derived from the
# others, so its absence is never reported.
MANDATORY_ASPECTS = tuple(
    a for a in PerformanceAspect if (a, classify_role(a)) in expected_aspects() and a is not PerformanceAspect.EFFICIENCY
)
METRIC_ASPECTS = (PerformanceAspect.TIME_BEHAVIOR, PerformanceAspect.SPEED_THROUGHPUT)


@dataclass(frozen=True)
class VerificationReport:
    defects: tuple[Defect, ...] = ()
    models_checked: int = 0
    merged_models: tuple[PerformanceModel, ...] = ()
    parse_errors: tuple[ParseError, ...] = field(default=())

    def by_category(self, category: DefectCategory) -> list[Defect]:
        return [d for d in self.defects if d.category is category]

    def blocking(self, strict: bool = False) -> list[Defect]:
        return [d for d in self.defects if strict or d.severity is Severity.BLOCKING]

    def to_dict(self) -> dict:
        return {
            "models_checked": self.models_checked,
            "defects": [d.to_dict() for d in self.defects],
            "merged_models": [model_to_dict(m) for m in self.merged_models],
            "parse_errors": [{"line": e.line, "kind": e.kind, "message": e.message} for e in self.parse_errors],
        }


def model_to_dict(model: PerformanceModel) -> dict:
    def param(p: PerformanceParameter) -> dict:
        return {
            "id": p.id,
            "requirement_id": p.requirement_id,
            "aspect": p.aspect.value,
            "description": p.description,
            "value": None if p.value is None else str(p.value),
            "unit": p.unit,
            "comparator": p.comparator,
            "quantifiable": p.quantifiable,
            "target": p.target,
        }

    return {
        "model_id": model.model_id,
        "object": model.object,
        "condition": model.condition,
        "independent": [param(p) for p in model.independent],
        "dependent": [param(p) for p in model.dependent],
    }


def merge_models(models: Iterable[PerformanceModel]) -> list[PerformanceModel]:
    """Merge models sharing the same object list and condition.

    Objects and conditions are compared case-insensitively with whitespace
    collapsed. The first model of each group supplies id and spelling;
    parameters are concatenated, dropping repeated parameter ids.
    """
    groups: dict[tuple, list[PerformanceModel]] = {}
    for m in models:
        groups.setdefault(m.merge_key, []).append(m)
    merged = []
    for group in groups.values():
        first = group[0]
        if len(group) == 1:
            merged.append(first)
            continue
        seen: set[str] = set()
        sides: dict[str, list[PerformanceParameter]] = {"independent": [], "dependent": []}
        for m in group:
            for name in sides:
                for p in getattr(m, name):
                    if p.id not in seen:
                        seen.add(p.id)
                        sides[name].append(p)
        merged.append(
            PerformanceModel(
                model_id=first.model_id,
                object=first.object,
                condition=first.condition,
                independent=sides["independent"],
                dependent=sides["dependent"],
            )
        )
    return merged


def check_quantification(models: Iterable[PerformanceModel]) -> list[Defect]:
    defects = []
    for m in models:
        for p in m.parameters:
            if not p.quantifiable:
                defects.append(
                    Defect(
                        DefectCategory.NOT_QUANTIFIABLE,
                        f"{p.requirement_id}: '{p.description}' cannot carry a target value",
                        Severity.BLOCKING,
                        aspect=p.aspect,
                        model_id=m.model_id,
                        requirement_ids=(p.requirement_id,),
                    )
                )
            elif p.value is None:
                defects.append(
                    Defect(
                        DefectCategory.NOT_QUANTIFIED,
                        f"{p.requirement_id}: '{p.description}' has no target value",
                        Severity.BLOCKING,
                        aspect=p.aspect,
                        model_id=m.model_id,
                        requirement_ids=(p.requirement_id,),
                    )
                )
    return defects


def check_completeness(model: PerformanceModel) -> list[Defect]:
    """Compare one merged model with the taxonomy.

    Each missing mandatory aspect is a warning, escalated to blocking when
    the model has no independent parameter at all. A model without a time
    behavior or throughput metric gets one blocking MissingDependentMetric.
    """
    if not model.parameters:
        return [
            Defect(
                DefectCategory.EMPTY_MODEL,
                f"model {model.model_id} ({model.object}) has no parameters",
                Severity.BLOCKING,
                model_id=model.model_id,
            )
        ]
    present = model.aspects()
    defects = []
    for aspect in MANDATORY_ASPECTS:
        if aspect in present:
            continue
        independent_side = aspect in (PerformanceAspect.CAPACITY, PerformanceAspect.RESOURCE_CONSTRAINT)
        severity = Severity.BLOCKING if independent_side and not model.independent else Severity.WARNING
        defects.append(
            Defect(
                DefectCategory.UNDER_SPECIFIED_PARAMETER,
                f"model {model.model_id} ({model.object}) has no {aspect.label.lower()} parameter",
                severity,
                aspect=aspect,
                model_id=model.model_id,
            )
        )
    if not any(a in present for a in METRIC_ASPECTS):
        if model.dependent:
            reason = "has no time behavior or throughput metric to measure"
        else:
            reason = "has independent parameters but no dependent parameter to measure"
        defects.append(
            Defect(
                DefectCategory.MISSING_DEPENDENT_METRIC,
                f"model {model.model_id} ({model.object}) {reason}",
                Severity.BLOCKING,
                model_id=model.model_id,
            )
        )
    return defects


def in_conflict(model: PerformanceModel, p: PerformanceParameter, q: PerformanceParameter) -> bool:
    """Two quantified parameters state different targets for the same thing.

    Same aspect, same unit (exact string), overlapping objects, and a
    different comparator or value. Units are never converted.
    """
    if p.value is None or q.value is None:
        return False
    if p.aspect is not q.aspect or p.unit != q.unit:
        return False
    if (p.comparator, p.value) == (q.comparator, q.value):
        return False
    shared = {normalize_name(o) for o in model.applies_to(p)} & {normalize_name(o) for o in model.applies_to(q)}
    return bool(shared)


def check_conflicts(models: Iterable[PerformanceModel]) -> list[Defect]:
    defects = []
    for m in models:
        for p, q in combinations(m.parameters, 2):
            if in_conflict(m, p, q):
                defects.append(
                    Defect(
                        DefectCategory.CONFLICT,
                        f"{p.requirement_id} ('{p.description}') and {q.requirement_id} "
                        f"('{q.description}') state different {p.aspect.label.lower()} targets",
                        Severity.BLOCKING,
                        aspect=p.aspect,
                        model_id=m.model_id,
                        requirement_ids=(p.requirement_id, q.requirement_id),
                    )
                )
    return defects


def exclusion_defects(errors: Iterable[ParseError]) -> list[Defect]:
    """Rows dropped at ingestion because their aspect is outside the taxonomy."""
    out = []
    for e in errors:
        if e.kind != INFEASIBLE:
            continue
        out.append(
            Defect(
                DefectCategory.INFEASIBLE_REQUIREMENT,
                f"{e.requirement_id or 'row ' + str(e.line)}: aspect {e.aspect_text!r} "
                "does not fit any performance aspect; excluded",
                Severity.BLOCKING,
                requirement_ids=(e.requirement_id,) if e.requirement_id else (),
            )
        )
    return out


def verify(models: Sequence[PerformanceModel], parse_errors: Iterable[ParseError] = ()) -> VerificationReport:
    parse_errors = tuple(parse_errors)
    merged = merge_models(models)
    defects = exclusion_defects(parse_errors)
    defects += check_quantification(merged)
    for m in merged:
        defects += check_completeness(m)
    defects += check_conflicts(merged)
    defects.sort(key=Defect.sort_key)
    return VerificationReport(
        defects=tuple(defects),
        models_checked=len(merged),
        merged_models=tuple(merged),
        parse_errors=tuple(e for e in parse_errors if e.kind != INFEASIBLE),
    )

