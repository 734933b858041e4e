"""Performance parameters taxonomy.

Two role nodes (independent, dependent), each with its aspect children.
Aspect nodes may carry sub-nodes; none are defined yet, but lookups walk
the whole tree so deeper categories can be added without touching callers.
"""

from __future__ import annotations

from dataclasses import dataclass

from .model import ParameterRole, PerformanceAspect


@dataclass(frozen=True)
class TaxonomyNode:
    name: str
    aspect: PerformanceAspect | None = None
    children: tuple["TaxonomyNode", ...] = ()

    def walk(self):
        yield self
        for child in self.children:
            yield from child.walk()


@dataclass(frozen=True)
class TaxonomyTree:
    roots: tuple[tuple[ParameterRole, TaxonomyNode], ...]

    def aspects_of(self, role: ParameterRole) -> frozenset[PerformanceAspect]:
        for r, node in self.roots:
            if r is role:
                return frozenset(n.aspect for n in node.walk() if n.aspect is not None)
        return frozenset()

    def role_of(self, aspect: PerformanceAspect) -> ParameterRole:
        for role, node in self.roots:
            if any(n.aspect is aspect for n in node.walk()):
                return role
        raise KeyError(aspect)


def _leaf(aspect: PerformanceAspect) -> TaxonomyNode:
    return TaxonomyNode(aspect.label, aspect)


TREE = TaxonomyTree(
    roots=(
        (
            ParameterRole.INDEPENDENT,
            TaxonomyNode(
                "Independent parameters",
                children=(_leaf(PerformanceAspect.CAPACITY), _leaf(PerformanceAspect.RESOURCE_CONSTRAINT)),
            ),
        ),
        (
            ParameterRole.DEPENDENT,
            TaxonomyNode(
                "Dependent parameters",
                children=(
                    _leaf(PerformanceAspect.TIME_BEHAVIOR),
                    _leaf(PerformanceAspect.SPEED_THROUGHPUT),
                    _leaf(PerformanceAspect.EFFICIENCY),
                ),
            ),
        ),
    )
)

_ROLE = {aspect: TREE.role_of(aspect) for aspect in PerformanceAspect}


def classify_role(aspect: PerformanceAspect) -> ParameterRole:
    return _ROLE[aspect]


def expected_aspects() -> frozenset[tuple[PerformanceAspect, ParameterRole]]:
    """Every (aspect, role) pair a complete model is compared against."""
    return frozenset((aspect, role) for role, _ in TREE.roots for aspect in TREE.aspects_of(role))
