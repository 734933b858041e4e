"""Independent reference computations used by the property and acceptance tests."""

from collections import Counter


def listing1(constraints, metrics):
    """Literal simulation of the generation listing, then duplicate removal.

    The listing emits the all-constraints environment first and then one
    per constraint; environments with the same constraint set are kept once.
    Returns the surviving constraint tuples in emission order.
    """
    emitted = [tuple(constraints)]
    for c in constraints:
        emitted.append((c,))
    unique = []
    for env in emitted:
        if frozenset(env) not in {frozenset(u) for u in unique}:
            unique.append(env)
    return unique


def expected_count(k):
    return k + 1 if k >= 2 else 1


def recount(defect_dicts):
    """Brute-force tally over raw defect records (dicts as serialized)."""
    counts = Counter()
    for d in defect_dicts:
        if d["category"] == "NotQuantified":
            counts["not_quantified"] += 1
        if d["category"] == "NotQuantifiable":
            counts["not_quantifiable"] += 1
        if d["category"] == "UnderSpecifiedParameter":
            counts["under_specified_total"] += 1
            counts["under:" + d["aspect"]] += 1
    return counts
