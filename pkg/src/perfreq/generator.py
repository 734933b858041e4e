"""Test environment generation from merged performance requirements models.

For each model, constraints (resource constraints, then capacity) and
metrics (time behavior, throughput, efficiency) are collected; one
environment is built per constraint, each with every metric, followed by
one environment holding all constraints. Identical environments are
emitted once.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Sequence

from .model import (
    Constraint,
    Metric,
    ObjectMetricPair,
    PerformanceAspect,
    PerformanceModel,
    PerformanceParameter,
    TestEnvironment,
    normalize_name,
)
from .verifier import in_conflict

CONSTRAINT_ORDER = (PerformanceAspect.RESOURCE_CONSTRAINT, PerformanceAspect.CAPACITY)
METRIC_ORDER = (PerformanceAspect.TIME_BEHAVIOR, PerformanceAspect.SPEED_THROUGHPUT, PerformanceAspect.EFFICIENCY)
UNQUANTIFIED_MARK = "?"


@dataclass(frozen=True)
class GenerationResult:
    environments: tuple[TestEnvironment, ...]
    source_model_id: str


def _more_demanding(p: PerformanceParameter, q: PerformanceParameter) -> PerformanceParameter:
    # Higher load for capacity, scarcer resources for resource constraints; ties keep q.
    if p.aspect is PerformanceAspect.CAPACITY:
        return p if p.value > q.value else q
    return p if p.value < q.value else q


def _same_quantity(p: PerformanceParameter, q: PerformanceParameter) -> bool:
    if p.aspect is not q.aspect:
        return False
    if p.value is None or q.value is None:
        return p.value is None and q.value is None and normalize_name(p.description) == normalize_name(q.description)
    return (p.value, p.unit, p.comparator) == (q.value, q.unit, q.comparator)


def _collect(model: PerformanceModel):
    constraints: list[PerformanceParameter] = []
    conflict_groups: dict[int, list[str]] = {}
    for aspect in CONSTRAINT_ORDER:
        for p in model.independent:
            if p.aspect is not aspect or any(_same_quantity(p, q) for q in constraints):
                continue
            slot = next((i for i, q in enumerate(constraints) if in_conflict(model, p, q)), None)
            if slot is None:
                constraints.append(p)
                continue
            group = conflict_groups.setdefault(slot, [constraints[slot].requirement_id])
            if p.requirement_id not in group:
                group.append(p.requirement_id)
            constraints[slot] = _more_demanding(p, constraints[slot])

    metrics: list[PerformanceParameter] = []
    for aspect in METRIC_ORDER:
        for p in model.dependent:
            if p.aspect is not aspect:
                continue
            if any(_same_quantity(p, q) and model.applies_to(p) == model.applies_to(q) for q in metrics):
                continue
            metrics.append(p)

    notes = []
    for slot, rids in sorted(conflict_groups.items()):
        kept = constraints[slot]
        notes.append(
            f"conflicting {kept.aspect.value} constraints {', '.join(rids)}: using '{kept.description}'"
        )
    return constraints, metrics, notes


def build_lists(model: PerformanceModel) -> tuple[list[PerformanceParameter], list[PerformanceParameter]]:
    """The constraints and metrics lists for one model.

    Constraints that repeat an earlier one are dropped. Quantified
    constraints in conflict collapse onto the most demanding value.
    """
    constraints, metrics, _ = _collect(model)
    return constraints, metrics


def _label(p: PerformanceParameter) -> str:
    return p.description if p.value is not None else f"{UNQUANTIFIED_MARK} {p.description}"


def _param_error(p: PerformanceParameter) -> str | None:
    if not p.quantifiable:
        return f"{p.requirement_id}: '{p.description}' is not quantifiable"
    if p.value is None:
        return f"{p.requirement_id}: '{p.description}' is not quantified"
    return None


def generate(model: PerformanceModel) -> GenerationResult:
    constraints, metrics, notes = _collect(model)
    present = {p.aspect for p in constraints + metrics}

    model_errors = list(notes)
    for aspect in (PerformanceAspect.CAPACITY, PerformanceAspect.RESOURCE_CONSTRAINT):
        if aspect not in present:
            model_errors.append(f"missing {aspect.value} constraint")
    if not metrics:
        model_errors.append("no dependent metric")
    elif not present & {PerformanceAspect.TIME_BEHAVIOR, PerformanceAspect.SPEED_THROUGHPUT}:
        model_errors.append("no time_behavior or speed_throughput metric")

    pairs = []
    for obj in model.objects:
        measured = [m for m in metrics if obj in model.applies_to(m)]
        if not measured:
            pairs.append(ObjectMetricPair(obj, None))
            if metrics:
                model_errors.append(f"no dependent metric for object '{obj}'")
        for m in measured:
            pairs.append(ObjectMetricPair(obj, Metric(_label(m), m.aspect.value)))

    metric_errors = [e for e in map(_param_error, metrics) if e]

    def environment(chosen: Sequence[PerformanceParameter]) -> TestEnvironment:
        errors = [e for e in map(_param_error, chosen) if e]
        return TestEnvironment(
            constraints=[Constraint(_label(c), c.aspect.value) for c in chosen],
            object_metric_pairs=pairs,
            errors=errors + metric_errors + model_errors,
        )

    candidates = [[c] for c in constraints] + [constraints]
    environments, seen = [], set()
    for chosen in candidates:
        key = tuple(c.id for c in chosen)
        if key in seen:
            continue
        seen.add(key)
        environments.append(environment(chosen))
    return GenerationResult(tuple(environments), model.model_id)


def generate_all(models: Iterable[PerformanceModel]) -> list[GenerationResult]:
    return [generate(m) for m in models]


def environment_to_dict(env: TestEnvironment) -> dict:
    return {
        "constraints": [{"description": c.description, "att_class": c.att_class} for c in env.constraints],
        "object_metric_pairs": [
            {
                "object": pair.object,
                "metric": None
                if pair.metric is None
                else {"description": pair.metric.description, "att_class": pair.metric.att_class},
            }
            for pair in env.object_metric_pairs
        ],
        "errors": list(env.errors),
    }


def environment_from_dict(data: dict) -> TestEnvironment:
    return TestEnvironment(
        constraints=[Constraint(c["description"], c["att_class"]) for c in data.get("constraints", [])],
        object_metric_pairs=[
            ObjectMetricPair(
                pair["object"],
                None if pair.get("metric") is None else Metric(pair["metric"]["description"], pair["metric"]["att_class"]),
            )
            for pair in data.get("object_metric_pairs", [])
        ],
        errors=data.get("errors", []),
    )


def serialize(results: Iterable[GenerationResult]) -> str:
    envs = [environment_to_dict(env) for r in results for env in r.environments]
    return json.dumps({"test_environments": envs}, indent=2, ensure_ascii=False) + "\n"


def parse_environments(text: str) -> list[TestEnvironment]:
    data = json.loads(text)
    return [environment_from_dict(d) for d in data["test_environments"]]
