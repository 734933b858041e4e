import json
from collections import Counter

from hypothesis import given, settings

from perfreq.generator import build_lists, generate, parse_environments, serialize
from perfreq.model import (
    INDEPENDENT_IDS,
    ParameterRole,
    PerformanceAspect,
    PerformanceModel,
    PerformanceParameter,
)
from perfreq.taxonomy import classify_role
from oracles import expected_count, listing1
from strategies import conflict_free_models, model_from, models

A = PerformanceAspect


def P(pid, aspect, value=None, unit=None, comparator="<=", target="", description=None):
    return PerformanceParameter(
        id=pid,
        requirement_id=pid,
        aspect=aspect,
        description=description or pid,
        value=value,
        unit=unit if value is not None else None,
        comparator=comparator if value is not None else None,
        target=target,
    )


def descriptions(params):
    return [p.description for p in params]


def test_build_lists_software(telescope_models):
    constraints, metrics = build_lists(telescope_models["A"])
    assert descriptions(constraints) == ["10 nodes", "100 simultaneous users"]
    assert descriptions(metrics) == ["≤ 2 sec", "≤ 4 sec", "≤ 5 sec"]


def test_build_lists_user_interface(telescope_models):
    constraints, metrics = build_lists(telescope_models["B"])
    assert len(constraints) == 4 and metrics == []
    assert constraints[0].aspect is A.RESOURCE_CONSTRAINT


def test_build_lists_metrics_only():
    m = model_from([P("t", A.TIME_BEHAVIOR, 2, "sec")])
    assert build_lists(m) == ([], list(m.dependent))


def test_build_lists_order_follows_aspects():
    m = model_from(
        [
            P("e", A.EFFICIENCY, 1, "x"),
            P("c", A.CAPACITY, 1, "u"),
            P("s", A.SPEED_THROUGHPUT, 1, "rps"),
            P("r", A.RESOURCE_CONSTRAINT, 1, "MB"),
            P("t", A.TIME_BEHAVIOR, 1, "sec"),
        ]
    )
    constraints, metrics = build_lists(m)
    assert [p.id for p in constraints] == ["r", "c"]
    assert [p.id for p in metrics] == ["t", "s", "e"]


def test_conflicting_constraints_keep_most_demanding():
    m = model_from(
        [
            P("lo", A.CAPACITY, 8, "nodes"),
            P("hi", A.CAPACITY, 10, "nodes"),
            P("big", A.RESOURCE_CONSTRAINT, 4, "GB"),
            P("small", A.RESOURCE_CONSTRAINT, 2, "GB"),
        ]
    )
    constraints, _ = build_lists(m)
    assert [p.id for p in constraints] == ["small", "hi"]
    env = generate(m).environments[0]
    assert any("conflicting capacity constraints lo, hi" in e for e in env.errors)


def test_repeated_constraint_dropped():
    m = model_from([P("a", A.CAPACITY, 10, "nodes"), P("b", A.CAPACITY, 10, "nodes")])
    assert [p.id for p in build_lists(m)[0]] == ["a"]


def test_generate_software_environments(telescope_models):
    envs = generate(telescope_models["A"]).environments
    assert [[c.description for c in e.constraints] for e in envs] == [
        ["10 nodes"],
        ["100 simultaneous users"],
        ["10 nodes", "100 simultaneous users"],
    ]
    pairs = [(p.object, p.metric.description if p.metric else None) for p in envs[0].object_metric_pairs]
    assert pairs == [
        ("command response", "≤ 2 sec"),
        ("status display update", "≤ 4 sec"),
        ("request for status info", "≤ 5 sec"),
        ("software", None),
    ]


def test_generate_user_interface_marks_unquantified(telescope_models):
    envs = generate(telescope_models["B"]).environments
    assert len(envs) == 5
    marked = [e for e in envs if any(c.description.startswith("? ") for c in e.constraints)]
    assert len(marked) == 4  # three singles plus the aggregate
    for e in marked:
        assert e.errors
    for e in envs:
        assert [(p.object, p.metric) for p in e.object_metric_pairs] == [("user interface", None)]
        assert "no dependent metric" in e.errors


def test_one_constraint_one_metric_is_one_environment():
    m = model_from([P("c", A.CAPACITY, 5, "users"), P("t", A.TIME_BEHAVIOR, 1, "sec")])
    constraints, metrics = build_lists(m)
    assert len(listing1(constraints, metrics)) == 1
    assert len(generate(m).environments) == 1


def test_no_constraints_single_environment_with_errors():
    m = model_from([P("t", A.TIME_BEHAVIOR, 1, "sec")])
    (env,) = generate(m).environments
    assert env.constraints == ()
    assert "missing capacity constraint" in env.errors
    assert "missing resource_constraint constraint" in env.errors


def test_fully_specified_model_has_clean_environments():
    m = model_from(
        [
            P("c", A.CAPACITY, 10, "users"),
            P("r", A.RESOURCE_CONSTRAINT, 3, "MB"),
            P("t", A.TIME_BEHAVIOR, 2, "sec"),
        ],
        obj="svc",
    )
    envs = generate(m).environments
    assert len(envs) == 3
    assert all(e.errors == () for e in envs)


def test_metric_pairs_cross_product_by_default():
    m = model_from([P("t", A.TIME_BEHAVIOR, 1, "sec"), P("s", A.SPEED_THROUGHPUT, 9, "rps", ">=")], obj="a, b")
    pairs = generate(m).environments[0].object_metric_pairs
    assert [(p.object, p.metric.description) for p in pairs] == [("a", "t"), ("a", "s"), ("b", "t"), ("b", "s")]


# serialization


def test_serialize_empty():
    assert json.loads(serialize([])) == {"test_environments": []}


def test_serialize_row_one(telescope_models):
    data = json.loads(serialize([generate(telescope_models["A"])]))
    first = data["test_environments"][0]
    assert list(first) == ["constraints", "object_metric_pairs", "errors"]
    assert first["constraints"] == [{"description": "10 nodes", "att_class": "capacity"}]
    assert len(first["object_metric_pairs"]) == 4
    assert list(first["object_metric_pairs"][0]) == ["object", "metric"]
    assert list(first["object_metric_pairs"][0]["metric"]) == ["description", "att_class"]


def test_serialize_round_trip(telescope_models):
    results = [generate(m) for m in telescope_models.values()]
    text = serialize(results)
    assert parse_environments(text) == [e for r in results for e in r.environments]
    assert serialize(results) == text


# properties


def label(c):
    return (c.description if c.value is not None else f"? {c.description}", c.aspect.value)


@settings(max_examples=300)
@given(models())
def test_count_matches_listing_simulation(m):
    constraints, metrics = build_lists(m)
    envs = generate(m).environments
    simulated = listing1([c.id for c in constraints], [x.id for x in metrics])
    assert len(envs) == len(simulated) == expected_count(len(constraints))
    by_id = {c.id: label(c) for c in constraints}
    sim = Counter(tuple(sorted(by_id[i] for i in env)) for env in simulated)
    got = Counter(tuple(sorted((c.description, c.att_class) for c in e.constraints)) for e in envs)
    assert got == sim


@settings(max_examples=300)
@given(conflict_free_models())
def test_count_law_without_resolution(m):
    k = len(m.independent)
    assert len(generate(m).environments) == expected_count(k)


@settings(max_examples=300)
@given(models())
def test_roles_of_generated_entries(m):
    for env in generate(m).environments:
        for c in env.constraints:
            assert classify_role(A(c.att_class)) is ParameterRole.INDEPENDENT
        for pair in env.object_metric_pairs:
            if pair.metric is not None:
                assert classify_role(A(pair.metric.att_class)) is ParameterRole.DEPENDENT


@settings(max_examples=300)
@given(models())
def test_constraint_and_metric_coverage(m):
    constraints, metrics = build_lists(m)
    envs = generate(m).environments
    if len(constraints) >= 2:
        for c in constraints:
            label = c.description if c.value is not None else f"? {c.description}"
            hits = [e for e in envs if (label, c.aspect.value) in {(x.description, x.att_class) for x in e.constraints}]
            assert len(hits) >= 2
        assert [len(e.constraints) for e in envs] == [1] * len(constraints) + [len(constraints)]
    pairs = envs[0].object_metric_pairs
    for e in envs:
        assert e.object_metric_pairs == pairs
    measured = {p.metric.description.removeprefix("? ") for p in pairs if p.metric}
    assert measured == {x.description for x in metrics if m.applies_to(x)}


@settings(max_examples=300)
@given(models())
def test_errors_present_iff_defective(m):
    constraints, metrics = build_lists(m)
    collapsed = any(
        p is not q and q.value is not None and p.value is not None and q.aspect is p.aspect and q.unit == p.unit
        and (q.value, q.comparator) != (p.value, p.comparator)
        for p in m.independent for q in m.independent
    )
    model_level = (
        not {A.CAPACITY, A.RESOURCE_CONSTRAINT} <= {c.aspect for c in constraints}
        or not {A.TIME_BEHAVIOR, A.SPEED_THROUGHPUT} & {x.aspect for x in metrics}
        or any(not [x for x in metrics if o in m.applies_to(x)] for o in m.objects)
    )
    result = generate(m)
    candidates = [[c] for c in constraints] + ([constraints] if len(constraints) != 1 else [])
    assert len(candidates) == len(result.environments)
    for env, chosen in zip(result.environments, candidates):
        unquantified = any(p.value is None for p in list(chosen) + metrics)
        if model_level or unquantified:
            assert env.errors
        elif not collapsed:
            assert env.errors == ()


def test_generation_is_deterministic(telescope_models):
    m = telescope_models["B"]
    assert generate(m) == generate(m)
