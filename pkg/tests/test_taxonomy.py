import pytest

from perfreq.model import ParameterRole, PerformanceAspect
from perfreq.taxonomy import TREE, classify_role, expected_aspects

IND, DEP = ParameterRole.INDEPENDENT, ParameterRole.DEPENDENT


@pytest.mark.parametrize(
    "aspect, role",
    [
        (PerformanceAspect.CAPACITY, IND),
        (PerformanceAspect.RESOURCE_CONSTRAINT, IND),
        (PerformanceAspect.TIME_BEHAVIOR, DEP),
        (PerformanceAspect.SPEED_THROUGHPUT, DEP),
        (PerformanceAspect.EFFICIENCY, DEP),
    ],
)
def test_classify_role(aspect, role):
    assert classify_role(aspect) is role


def test_expected_aspects_has_five_pairs():
    pairs = expected_aspects()
    assert len(pairs) == 5
    assert sorted(a.value for a, _ in pairs) == sorted(a.value for a in PerformanceAspect)


def test_expected_aspects_partition():
    pairs = expected_aspects()
    assert len([a for a, r in pairs if r is IND]) == 2
    assert len([a for a, r in pairs if r is DEP]) == 3


def test_classify_consistent_with_expected():
    for aspect in PerformanceAspect:
        assert (aspect, classify_role(aspect)) in expected_aspects()


def test_tree_children_disjoint_and_cover():
    ind, dep = TREE.aspects_of(IND), TREE.aspects_of(DEP)
    assert not ind & dep
    assert ind | dep == set(PerformanceAspect)
