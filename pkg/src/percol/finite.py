"""
Finite simple graphs, lexicographic products and finite perfectness checks.

The multipath module works on periodic block profiles. This module is the
independent, vertex-level view: a coloring is a plain map from vertices to
colors, and perfectness is checked vertex by vertex. Graphs are
``networkx.Graph`` instances on the integer vertices ``0..V-1``. Periodic
colorings can be unrolled onto the finite cycle product C_m·K̄n or C_m·Kn with
``to_cycle_product`` to cross-check the two representations.
"""

from dataclasses import dataclass
from typing import Iterable, List, Optional, Sequence, Tuple, TypeAlias, Union

import networkx as nx

from .multipath import (
    Kind,
    NotPerfect,
    NotPerfectError,
    ParameterMatrix,
    PeriodicColoring,
)


class GraphError(ValueError):
    """Raised when a finite graph or vertex coloring is malformed."""

    pass


class PreconditionViolated(ValueError):
    """Raised when an operation's input does not meet its stated precondition."""

    pass


class InvariantViolation(AssertionError):
    """Raised when a result that must hold by construction does not."""

    pass


Edge = Tuple[int, int]

FiniteGraph: TypeAlias = nx.Graph


def check_graph(graph: FiniteGraph) -> None:
    """Raise GraphError unless ``graph`` is simple on the vertices ``0..V-1``."""
    if set(graph.nodes) != set(range(graph.number_of_nodes())):
        raise GraphError("Vertices must be the integers 0..V-1")
    loops = sorted(nx.nodes_with_selfloops(graph))
    if loops:
        raise GraphError(f"Loop at vertex {loops[0]}")


def graph_from_edges(order: int, edges: Iterable[Edge]) -> FiniteGraph:
    """Build a simple graph on ``0..order-1`` from an explicit edge list.

    Raises
    ------
    GraphError
        On a loop, a repeated edge or an endpoint outside ``0..order-1``.
    """
    if order < 0:
        raise GraphError(f"Vertex count must be nonnegative, got {order}")
    graph = nx.empty_graph(order)
    for u, v in edges:
        if u == v:
            raise GraphError(f"Loop at vertex {u}")
        if not (0 <= u < order and 0 <= v < order):
            raise GraphError(f"Edge ({u}, {v}) is outside 0..{order - 1}")
        if graph.has_edge(u, v):
            raise GraphError(f"Repeated edge ({u}, {v})")
        graph.add_edge(u, v)
    return graph


def sorted_edges(graph: FiniteGraph) -> Tuple[Edge, ...]:
    """Edges as ``(u, v)`` pairs with ``u < v``, in lexicographic order."""
    return tuple(sorted((min(u, v), max(u, v)) for u, v in graph.edges))


def cycle_graph(order: int) -> FiniteGraph:
    """C_m for m >= 3."""
    if order < 3:
        raise GraphError(f"A simple cycle needs at least 3 vertices, got {order}")
    return nx.cycle_graph(order)


@dataclass(frozen=True)
class VertexColoring:
    """Total map from vertices to colors ``0..k-1``; every color is used."""

    colors: Tuple[int, ...]

    def __post_init__(self) -> None:
        colors = tuple(int(c) for c in self.colors)
        object.__setattr__(self, "colors", colors)
        if colors and set(colors) != set(range(max(colors) + 1)):
            raise GraphError(f"Colors must be contiguous from 0, got {sorted(set(colors))}")

    @classmethod
    def normalized(cls, labels: Sequence[int]) -> "VertexColoring":
        """Compact arbitrary integer labels to ``0..k-1`` by sorted value."""
        ranks = {label: rank for rank, label in enumerate(sorted(set(labels)))}
        return cls(tuple(ranks[label] for label in labels))

    @property
    def k(self) -> int:
        return len(set(self.colors))

    def __len__(self) -> int:
        return len(self.colors)

    def __getitem__(self, vertex: int) -> int:
        return self.colors[vertex]


@dataclass(frozen=True)
class ColoredGraph:
    """A finite graph together with a vertex coloring of it."""

    graph: FiniteGraph
    coloring: VertexColoring

    def __post_init__(self) -> None:
        check_graph(self.graph)
        if len(self.coloring) != self.graph.number_of_nodes():
            raise GraphError(
                f"Coloring has {len(self.coloring)} entries for "
                f"{self.graph.number_of_nodes()} vertices"
            )


def lexicographic_product(g: FiniteGraph, h: FiniteGraph) -> FiniteGraph:
    """The lexicographic product G·H.

    Vertex ``(u, v)`` is indexed ``u * |V(H)| + v``. ``(u1, v1)`` and
    ``(u2, v2)`` are adjacent iff ``u1 ~ u2`` in G, or ``u1 == u2`` and
    ``v1 ~ v2`` in H.
    """
    check_graph(g)
    check_graph(h)
    product = nx.lexicographic_product(g, h)
    # sorted (u, v) pairs number exactly as u * |V(H)| + v
    return nx.convert_node_labels_to_integers(product, ordering="sorted")


def _neighbor_counts(graph: FiniteGraph, coloring: VertexColoring, v: int) -> Tuple[int, ...]:
    counts = [0] * coloring.k
    for w in graph.neighbors(v):
        counts[coloring[w]] += 1
    return tuple(counts)


def check_perfect_finite(
    graph: FiniteGraph, coloring: VertexColoring
) -> Union[ParameterMatrix, NotPerfect]:
    """Parameter matrix of ``coloring``, or the first pair of conflicting vertices."""
    check_graph(graph)
    order = graph.number_of_nodes()
    if len(coloring) != order:
        raise GraphError(f"Coloring has {len(coloring)} entries for {order} vertices")
    rows: List[Optional[Tuple[int, ...]]] = [None] * coloring.k
    first = [0] * coloring.k
    for v in range(order):
        color = coloring[v]
        seen = _neighbor_counts(graph, coloring, v)
        row = rows[color]
        if row is None:
            rows[color] = seen
            first[color] = v
        elif row != seen:
            return NotPerfect(color, first[color], v, row, seen)
    return ParameterMatrix(tuple(row for row in rows if row is not None))


def verify_perfect_finite(graph: FiniteGraph, coloring: VertexColoring) -> ParameterMatrix:
    """Parameter matrix of a perfect coloring of a finite graph.

    Raises
    ------
    NotPerfectError
        If two vertices of one color see different color counts.
    """
    result = check_perfect_finite(graph, coloring)
    if isinstance(result, NotPerfect):
        raise NotPerfectError(result)
    return result


def disjunctive_finite(
    g: FiniteGraph,
    psi: VertexColoring,
    phis: Sequence[Sequence[int]],
    h: FiniteGraph,
) -> VertexColoring:
    """The disjunctive coloring ψ·Φ of G·H.

    Vertex ``(u, v)`` gets ``phis[psi(u)][v]``. The result is compacted to
    contiguous colors in sorted label order.

    Parameters
    ----------
    g : FiniteGraph
        Outer graph G.
    psi : VertexColoring
        Perfect coloring of G.
    phis : sequence of label sequences
        One coloring of H per color of ``psi``. Labels are raw integers so
        that the color sets can be made pairwise disjoint.
    h : FiniteGraph
        Inner graph H.

    Returns
    -------
    VertexColoring
        Perfect coloring of ``lexicographic_product(g, h)``.

    Raises
    ------
    PreconditionViolated
        If ``psi`` or some φ is not perfect, the number of φ does not match
        the colors of ``psi``, or two φ share a color.
    """
    if len(phis) != psi.k:
        raise PreconditionViolated(f"Expected {psi.k} colorings of H, got {len(phis)}")
    if isinstance(check_perfect_finite(g, psi), NotPerfect):
        raise PreconditionViolated("psi is not a perfect coloring of G")
    used: set = set()
    for index, phi in enumerate(phis):
        if len(phi) != h.number_of_nodes():
            raise PreconditionViolated(
                f"Coloring {index} of H has {len(phi)} entries for {h.number_of_nodes()} vertices"
            )
        if isinstance(check_perfect_finite(h, VertexColoring.normalized(phi)), NotPerfect):
            raise PreconditionViolated(f"Coloring {index} of H is not perfect")
        labels = set(phi)
        if labels & used:
            raise PreconditionViolated(
                f"Coloring {index} of H shares colors {sorted(labels & used)} with another"
            )
        used |= labels
    labels = [
        phis[psi[u]][v] for u in range(g.number_of_nodes()) for v in range(h.number_of_nodes())
    ]
    result = VertexColoring.normalized(labels)
    witness = check_perfect_finite(lexicographic_product(g, h), result)
    if isinstance(witness, NotPerfect):
        raise InvariantViolation(f"Disjunctive coloring is not perfect: {witness}")
    return result


def to_cycle_product(c: PeriodicColoring, copies: int = 1) -> ColoredGraph:
    """Unroll a periodic coloring onto the finite cycle product C_m·K̄n or C_m·Kn.

    ``m = copies * p``, raised by whole periods until it is at least 3. Block
    ``i`` of the period sits over cycle vertex ``i``; inside a block the
    colors are laid out in nondecreasing order.
    """
    if copies < 1:
        raise GraphError(f"Copy count must be positive, got {copies}")
    while copies * c.p < 3:
        copies += 1
    m = copies * c.p
    n = c.family.n
    inner = nx.empty_graph(n) if c.family.kind is Kind.EMPTY else nx.complete_graph(n)
    graph = lexicographic_product(cycle_graph(m), inner)
    blocks = c.block_colors()
    colors = tuple(blocks[u % c.p][v] for u in range(m) for v in range(n))
    return ColoredGraph(graph, VertexColoring(colors))
