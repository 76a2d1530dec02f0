"""The five context-to-context similarity measures.

Three operate on ontology-tree nodes (weighted path product, inverse
intermediate-node distance, shared root-path ratio) and two on alternative
context representations (keyword sets, task attribute vectors).
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterable

from .errors import ArityError, DomainError, InvalidContextError, MissingWeightError
from .ontology import OntologyTree, intermediate_count, path_between, root_path


class PathMode(str, Enum):
    """How edge weights along a path combine into a similarity."""

    PRODUCT = "product"
    RECIPROCAL = "reciprocal"


TREE_MEASURES = ("weighted", "eq1", "shared")
ALL_MEASURES = TREE_MEASURES + ("keyword", "task")


@dataclass(frozen=True)
class KeywordContext:
    """A context described by a set of keywords."""

    keywords: frozenset[str]

    def __init__(self, keywords: Iterable[str]):
        normalized = frozenset(k.strip().lower() for k in keywords)
        if not normalized:
            raise InvalidContextError("keyword context must have at least one keyword")
        if "" in normalized:
            raise InvalidContextError("keyword context contains an empty keyword")
        object.__setattr__(self, "keywords", normalized)


@dataclass(frozen=True)
class TaskContext:
    """A context described by an attribute vector, each attribute in [0, 1]."""

    attributes: tuple[float, ...]

    def __init__(self, attributes: Iterable[float]):
        values = tuple(float(a) for a in attributes)
        if not values:
            raise InvalidContextError("task context must have at least one attribute")
        for value in values:
            if not 0.0 <= value <= 1.0:
                raise InvalidContextError(f"task attribute {value} outside [0, 1]")
        object.__setattr__(self, "attributes", values)


def weighted_path_similarity(
    tree: OntologyTree,
    a: str,
    b: str,
    mode: PathMode = PathMode.PRODUCT,
) -> float:
    """Similarity from the edge weights on the unique a-b path.

    Product mode multiplies the weights (a value in (0, 1]); reciprocal mode
    returns one over that product (a value >= 1).  Identical nodes give 1 in
    both modes, the empty product.
    """
    path = path_between(tree, a, b)
    product = 1.0
    for parent, child in path.edges:
        weight = tree.weights.get((parent, child))
        if weight is None:
            raise MissingWeightError(f"edge ({parent!r}, {child!r}) carries no weight")
        product *= weight
    if mode is PathMode.RECIPROCAL:
        return 1.0 / product
    return product


def inverse_distance_similarity(tree: OntologyTree, a: str, b: str) -> float:
    """One over the number of intermediate nodes between a and b, floored at 1.

    The floor makes adjacent nodes (and a node with itself) maximally similar.
    """
    return 1.0 / max(1, intermediate_count(tree, a, b))


def shared_path_ratio(tree: OntologyTree, a: str, b: str) -> float:
    """Shared over total nodes of the two inclusive root paths."""
    set_a = set(root_path(tree, a))
    set_b = set(root_path(tree, b))
    return len(set_a & set_b) / len(set_a | set_b)


def keyword_similarity(ka: KeywordContext, kb: KeywordContext) -> float:
    """Intersection over union of the two keyword sets."""
    return len(ka.keywords & kb.keywords) / len(ka.keywords | kb.keywords)


def task_similarity(ta: TaskContext, tb: TaskContext) -> float:
    """One minus the mean absolute difference of paired attributes."""
    if len(ta.attributes) != len(tb.attributes):
        raise ArityError(
            f"attribute counts differ: {len(ta.attributes)} vs {len(tb.attributes)}"
        )
    n = len(ta.attributes)
    return 1.0 - sum(abs(p - q) for p, q in zip(ta.attributes, tb.attributes)) / n


def tree_similarity(
    tree: OntologyTree,
    a: str,
    b: str,
    measure: str,
    mode: PathMode = PathMode.PRODUCT,
) -> float:
    """Dispatch one of the tree-based measures by name."""
    if measure == "weighted":
        return weighted_path_similarity(tree, a, b, mode)
    if measure == "eq1":
        return inverse_distance_similarity(tree, a, b)
    if measure == "shared":
        return shared_path_ratio(tree, a, b)
    raise DomainError(
        f"measure {measure!r} does not apply to tree nodes; expected one of {TREE_MEASURES}"
    )
