"""Rooted concept trees: parsing, validation, path queries, edge weighting.

A tree document is UTF-8 text, one edge per line as ``parent<TAB>child``
with an optional third tab-separated weight in (0, 1].  Lines whose first
non-blank character is ``#`` are comments.  A line with a single token
declares an isolated root and is only legal for a one-node tree.  The root
is inferred as the unique node that never appears as a child.

Loaded trees are immutable; every operation that "changes" a tree returns a
new one, so concurrent reads need no coordination.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Optional

from .errors import (
    ContextTrustError,
    ProviderError,
    TreeParseError,
    TreeValidationError,
    UnknownNodeError,
)
from .semantic import DEFAULT_EPSILON, CountProvider, nss

Edge = tuple[str, str]


@dataclass(frozen=True)
class ConceptNode:
    """One concept (context) in the tree."""

    id: str
    label: str

    def __post_init__(self) -> None:
        if not self.label.strip():
            raise TreeValidationError("node label is empty")


@dataclass(frozen=True)
class NodePath:
    """The unique simple path between two nodes, through their lowest common ancestor.

    ``edges`` holds the traversed edges in path order, each in its canonical
    (parent, child) orientation.
    """

    nodes: tuple[str, ...]
    edges: tuple[Edge, ...]


@dataclass(frozen=True)
class OntologyTree:
    root: str
    nodes: dict[str, ConceptNode]
    parents: dict[str, str]
    children: dict[str, tuple[str, ...]]
    weights: dict[Edge, Optional[float]]

    @classmethod
    def from_edges(
        cls,
        edges: Iterable[tuple[str, str, Optional[float]]],
        lone_root: Optional[str] = None,
    ) -> "OntologyTree":
        """Build and validate a tree from (parent, child, weight) triples.

        ``lone_root`` declares a single-node tree and excludes any edges.
        """
        edge_list = list(edges)
        if lone_root is not None and edge_list:
            raise TreeValidationError(
                f"isolated root {lone_root!r} declared alongside edges"
            )
        if lone_root is not None:
            node = ConceptNode(lone_root, lone_root)
            return cls(root=lone_root, nodes={lone_root: node}, parents={}, children={}, weights={})
        if not edge_list:
            raise TreeValidationError("tree has no nodes")

        nodes: dict[str, ConceptNode] = {}
        parents: dict[str, str] = {}
        children: dict[str, list[str]] = {}
        weights: dict[Edge, Optional[float]] = {}
        for parent, child, weight in edge_list:
            for name in (parent, child):
                if name not in nodes:
                    nodes[name] = ConceptNode(name, name)
            if parent == child:
                raise TreeValidationError(f"self-loop on node {parent!r}")
            if child in parents:
                raise TreeValidationError(
                    f"node {child!r} is assigned to two parents "
                    f"({parents[child]!r} and {parent!r})"
                )
            if weight is not None and not 0.0 < weight <= 1.0:
                raise TreeValidationError(
                    f"edge ({parent!r}, {child!r}) weight {weight} outside (0, 1]"
                )
            parents[child] = parent
            children.setdefault(parent, []).append(child)
            weights[(parent, child)] = weight

        roots = [name for name in nodes if name not in parents]
        if not roots:
            raise TreeValidationError("no root: every node has a parent (cycle)")
        if len(roots) > 1:
            raise TreeValidationError(f"multiple roots: {', '.join(repr(r) for r in roots)}")
        root = roots[0]

        reachable = set()
        frontier = [root]
        while frontier:
            name = frontier.pop()
            reachable.add(name)
            frontier.extend(children.get(name, ()))
        if len(reachable) != len(nodes):
            missing = sorted(set(nodes) - reachable)
            raise TreeValidationError(
                f"nodes unreachable from root {root!r}: {', '.join(repr(n) for n in missing)}"
            )

        return cls(
            root=root,
            nodes=nodes,
            parents=parents,
            children={p: tuple(c) for p, c in children.items()},
            weights=weights,
        )

    def edge_list(self) -> list[tuple[str, str, Optional[float]]]:
        """Edges with weights, in document (insertion) order."""
        return [(p, c, w) for (p, c), w in self.weights.items()]

    def require(self, node_id: str) -> str:
        if node_id not in self.nodes:
            raise UnknownNodeError(f"unknown node {node_id!r}")
        return node_id

    def find_node(self, text: str, ignore_case: bool = False) -> str:
        """Resolve a label to a node id; optionally case-insensitive."""
        if text in self.nodes:
            return text
        if ignore_case:
            matches = [name for name in self.nodes if name.lower() == text.lower()]
            if len(matches) == 1:
                return matches[0]
            if len(matches) > 1:
                raise UnknownNodeError(
                    f"label {text!r} is ambiguous case-insensitively: {matches}"
                )
        raise UnknownNodeError(f"unknown node {text!r}")


def parse_tree(text: str, source: str = "<string>") -> OntologyTree:
    """Parse a tree document from text."""
    edges: list[tuple[str, str, Optional[float]]] = []
    lone_roots: list[str] = []
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = [f.strip() for f in raw.split("\t")]
        if any(not f for f in fields):
            raise TreeParseError(f"{source}: line {number}: empty field")
        if len(fields) == 1:
            lone_roots.append(fields[0])
            continue
        if len(fields) not in (2, 3):
            raise TreeParseError(
                f"{source}: line {number}: expected 'parent<TAB>child[<TAB>weight]'"
            )
        weight: Optional[float] = None
        if len(fields) == 3:
            try:
                weight = float(fields[2])
            except ValueError as exc:
                raise TreeParseError(
                    f"{source}: line {number}: weight {fields[2]!r} is not a number"
                ) from exc
        edges.append((fields[0], fields[1], weight))

    if len(lone_roots) > 1:
        raise TreeValidationError(
            f"{source}: multiple isolated roots declared: {lone_roots}"
        )
    try:
        return OntologyTree.from_edges(edges, lone_root=lone_roots[0] if lone_roots else None)
    except TreeValidationError as exc:
        raise TreeValidationError(f"{source}: {exc}") from exc


def load_tree(path: str | Path) -> OntologyTree:
    """Load and validate a tree document from a file."""
    path = Path(path)
    return parse_tree(path.read_text(encoding="utf-8"), source=str(path))


def dump_tree(tree: OntologyTree) -> str:
    """Serialize a tree back to the document format (weights at full precision)."""
    if not tree.weights:
        return tree.root + "\n"
    lines = []
    for parent, child, weight in tree.edge_list():
        if weight is None:
            lines.append(f"{parent}\t{child}")
        else:
            lines.append(f"{parent}\t{child}\t{weight!r}")
    return "\n".join(lines) + "\n"


def save_tree(tree: OntologyTree, path: str | Path) -> None:
    Path(path).write_text(dump_tree(tree), encoding="utf-8")


def root_path(tree: OntologyTree, a: str) -> list[str]:
    """Inclusive node sequence from a up to the root."""
    tree.require(a)
    path = [a]
    while path[-1] != tree.root:
        path.append(tree.parents[path[-1]])
    return path


def path_between(tree: OntologyTree, a: str, b: str) -> NodePath:
    """The unique path a -> lowest common ancestor -> b."""
    up_a = root_path(tree, a)
    up_b = root_path(tree, b)
    ancestors_a = {name: depth for depth, name in enumerate(up_a)}
    for depth_b, name in enumerate(up_b):
        if name in ancestors_a:
            lca, depth_a = name, ancestors_a[name]
            break
    else:  # pragma: no cover - both paths end at the root
        raise TreeValidationError("paths share no ancestor; tree is corrupt")

    ascending = up_a[: depth_a + 1]  # a .. lca
    descending = up_b[:depth_b][::-1]  # child of lca .. b
    nodes = tuple(ascending + descending)

    edges: list[Edge] = []
    for u, v in zip(nodes, nodes[1:]):
        if tree.parents.get(u) == v:
            edges.append((v, u))
        else:
            edges.append((u, v))
    return NodePath(nodes=nodes, edges=tuple(edges))


def intermediate_count(tree: OntologyTree, a: str, b: str) -> int:
    """Number of nodes strictly between a and b on their unique path."""
    return max(0, len(path_between(tree, a, b).nodes) - 2)


@dataclass(frozen=True)
class EdgeAnnotation:
    """Why an edge weight was forced to the floor value."""

    parent: str
    child: str
    reason: str


def weigh_tree(
    tree: OntologyTree,
    provider: CountProvider,
    epsilon: float = DEFAULT_EPSILON,
) -> tuple[OntologyTree, list[EdgeAnnotation]]:
    """Weight every edge with the similarity score of its end labels.

    Returns a new tree of identical shape plus annotations for the edges
    whose score degenerated to the floor (zero co-occurrence, or a distance
    past 1 clamped back up).
    """
    weights: dict[Edge, Optional[float]] = {}
    annotations: list[EdgeAnnotation] = []
    for parent, child, _ in tree.edge_list():
        pair = (tree.nodes[parent].label, tree.nodes[child].label)
        try:
            counts = provider.counts(*pair)
        except ContextTrustError as exc:
            raise type(exc)(f"edge ({parent!r} -> {child!r}): {exc}") from exc
        except Exception as exc:
            raise ProviderError(f"edge ({parent!r} -> {child!r}): {exc}") from exc
        if counts.fxy == 0:
            # Covers unseen terms too: a zero single-term count forces fxy to 0.
            weights[(parent, child)] = epsilon
            annotations.append(EdgeAnnotation(parent, child, "zero co-occurrence"))
            continue
        weight = nss(counts, epsilon)
        weights[(parent, child)] = weight
        if weight == epsilon:
            annotations.append(EdgeAnnotation(parent, child, "similarity clamped to floor"))
    reweighted = OntologyTree(
        root=tree.root,
        nodes=dict(tree.nodes),
        parents=dict(tree.parents),
        children=dict(tree.children),
        weights=weights,
    )
    return reweighted, annotations
