"""Tests for percol.finite module."""

import random

import networkx as nx
import pytest

from percol import (
    Family,
    GraphError,
    NotPerfect,
    NotPerfectError,
    PeriodicColoring,
    PreconditionViolated,
    check_perfect,
    infer_matrix,
    theorem_enumerate,
)
from percol.finite import (
    ColoredGraph,
    VertexColoring,
    check_graph,
    check_perfect_finite,
    cycle_graph,
    disjunctive_finite,
    graph_from_edges,
    lexicographic_product,
    sorted_edges,
    to_cycle_product,
    verify_perfect_finite,
)


def _random_graph(rnd: random.Random, order: int) -> nx.Graph:
    return nx.gnp_random_graph(order, 0.5, seed=rnd.randrange(2**32))


def _random_outer_graph(rnd: random.Random) -> nx.Graph:
    choice = rnd.randrange(4)
    if choice == 0:
        return _random_graph(rnd, rnd.randint(1, 8))
    if choice == 1:
        return nx.random_regular_graph(2, rnd.randint(3, 8), seed=rnd.randrange(2**32))
    if choice == 2:
        return nx.random_regular_graph(3, rnd.choice([4, 6, 8]), seed=rnd.randrange(2**32))
    return nx.complete_graph(rnd.randint(1, 6))


def _random_inner_graph(rnd: random.Random) -> nx.Graph:
    order = rnd.randint(1, 4)
    choice = rnd.randrange(4)
    if choice == 0:
        return nx.empty_graph(order)
    if choice == 1:
        return nx.complete_graph(order)
    if choice == 2 and order >= 3:
        return nx.cycle_graph(order)
    return _random_graph(rnd, order)


def _equitable_refinement(g: nx.Graph, labels) -> VertexColoring:
    """Stable color refinement of ``labels``; the result is an equitable partition."""
    colors = list(labels)
    while True:
        signatures = [
            (colors[v], tuple(sorted(colors[w] for w in g.neighbors(v))))
            for v in range(g.number_of_nodes())
        ]
        ranks = {s: r for r, s in enumerate(sorted(set(signatures)))}
        refined = [ranks[s] for s in signatures]
        if len(ranks) == len(set(colors)):
            return VertexColoring(tuple(refined))
        colors = refined


def _random_labels(rnd: random.Random, order: int):
    palette = rnd.randint(1, 3)
    return [rnd.randrange(palette) for _ in range(order)]


class TestFiniteGraph:
    """Tests for graph construction and validation."""

    def test_edges_are_normalized(self):
        g = graph_from_edges(3, [(2, 0), (1, 2)])
        assert sorted_edges(g) == ((0, 2), (1, 2))
        assert sorted(g.neighbors(2)) == [0, 1]

    def test_isolated_vertices_kept(self):
        g = graph_from_edges(4, [(0, 1)])
        assert g.number_of_nodes() == 4

    def test_loop_rejected(self):
        with pytest.raises(GraphError, match="Loop"):
            graph_from_edges(2, [(1, 1)])

    def test_repeated_edge_rejected(self):
        with pytest.raises(GraphError, match="Repeated"):
            graph_from_edges(2, [(0, 1), (1, 0)])

    def test_out_of_range(self):
        with pytest.raises(GraphError, match="outside"):
            graph_from_edges(2, [(0, 2)])

    def test_negative_order(self):
        with pytest.raises(GraphError, match="nonnegative"):
            graph_from_edges(-1, [])

    def test_check_graph_labels(self):
        with pytest.raises(GraphError, match="0..V-1"):
            check_graph(nx.path_graph(["a", "b"]))

    def test_check_graph_loop(self):
        g = nx.cycle_graph(3)
        g.add_edge(1, 1)
        with pytest.raises(GraphError, match="Loop at vertex 1"):
            check_graph(g)

    def test_cycle_graph(self):
        g = cycle_graph(5)
        assert g.has_edge(4, 0)
        assert not g.has_edge(0, 2)
        assert all(d == 2 for _, d in g.degree)

    def test_cycle_needs_three_vertices(self):
        with pytest.raises(GraphError, match="at least 3"):
            cycle_graph(2)


class TestVertexColoring:
    """Tests for VertexColoring."""

    def test_gaps_rejected(self):
        with pytest.raises(GraphError, match="contiguous"):
            VertexColoring((0, 2))

    def test_normalized(self):
        assert VertexColoring.normalized([30, 10, 30]).colors == (1, 0, 1)

    def test_k(self):
        assert VertexColoring((0, 1, 1, 2)).k == 3

    def test_colored_graph_size_mismatch(self):
        with pytest.raises(GraphError, match="3 entries for 4 vertices"):
            ColoredGraph(cycle_graph(4), VertexColoring((0, 1, 0)))

    def test_colored_graph_rejects_relabeled_graph(self):
        with pytest.raises(GraphError):
            ColoredGraph(nx.path_graph([1, 2]), VertexColoring((0, 1)))


class TestLexicographicProduct:
    """Tests for lexicographic_product."""

    def test_edge_times_empty_is_c4(self):
        g = lexicographic_product(nx.complete_graph(2), nx.empty_graph(2))
        assert g.number_of_nodes() == 4
        assert sorted_edges(g) == ((0, 2), (0, 3), (1, 2), (1, 3))
        assert all(d == 2 for _, d in g.degree)

    def test_edge_times_edge_is_k4(self):
        product = lexicographic_product(nx.complete_graph(2), nx.complete_graph(2))
        assert sorted_edges(product) == sorted_edges(nx.complete_graph(4))

    def test_path_times_empty(self):
        g, h = nx.path_graph(3), nx.empty_graph(2)
        product = lexicographic_product(g, h)
        assert product.number_of_nodes() == 6
        assert product.number_of_edges() == 8
        expected = set()
        for u1 in range(3):
            for v1 in range(2):
                for u2 in range(3):
                    for v2 in range(2):
                        adjacent = g.has_edge(u1, u2) if u1 != u2 else h.has_edge(v1, v2)
                        a, b = u1 * 2 + v1, u2 * 2 + v2
                        if adjacent and a < b:
                            expected.add((a, b))
        assert set(sorted_edges(product)) == expected

    def test_vertex_numbering(self):
        product = lexicographic_product(nx.path_graph(3), nx.path_graph(2))
        assert product.has_edge(0, 1)
        assert product.has_edge(4, 5)
        assert not product.has_edge(1, 4)
        assert product.has_edge(1, 2)

    def test_degree_law(self):
        rnd = random.Random(7)
        for _ in range(20):
            g = _random_graph(rnd, rnd.randint(1, 5))
            h = _random_graph(rnd, rnd.randint(1, 4))
            product = lexicographic_product(g, h)
            m = h.number_of_nodes()
            for u in range(g.number_of_nodes()):
                for v in range(m):
                    expected = g.degree(u) * m + h.degree(v)
                    assert product.degree(u * m + v) == expected


class TestVerifyPerfectFinite:
    """Tests for verify_perfect_finite and check_perfect_finite."""

    def test_alternating_c4(self):
        m = verify_perfect_finite(cycle_graph(4), VertexColoring((0, 1, 0, 1)))
        assert m.rows == ((0, 2), (2, 0))

    def test_c4_not_perfect(self):
        coloring = VertexColoring((0, 0, 0, 1))
        result = check_perfect_finite(cycle_graph(4), coloring)
        assert isinstance(result, NotPerfect)
        assert (result.color, result.first_site, result.site) == (0, 0, 1)
        with pytest.raises(NotPerfectError):
            verify_perfect_finite(cycle_graph(4), coloring)

    def test_c6_three_cyclic(self):
        m = verify_perfect_finite(cycle_graph(6), VertexColoring((0, 1, 2, 0, 1, 2)))
        assert m.rows == ((0, 1, 1), (1, 0, 1), (1, 1, 0))

    def test_size_mismatch(self):
        with pytest.raises(GraphError):
            check_perfect_finite(cycle_graph(4), VertexColoring((0, 1)))


class TestDisjunctiveFinite:
    """Tests for disjunctive_finite."""

    def test_alternating_c4_with_mixed_block(self):
        result = disjunctive_finite(
            cycle_graph(4), VertexColoring((0, 1, 0, 1)), [[10, 10], [20, 30]], nx.empty_graph(2)
        )
        assert result.colors == (0, 0, 1, 2, 0, 0, 1, 2)

    def test_monochrome_psi_copies_phi(self):
        result = disjunctive_finite(
            cycle_graph(5), VertexColoring((0,) * 5), [[1, 2, 2]], nx.empty_graph(3)
        )
        assert result.colors == (0, 1, 1) * 5

    def test_three_cyclic_on_c6_times_k2(self):
        h = nx.complete_graph(2)
        result = disjunctive_finite(
            cycle_graph(6), VertexColoring((0, 1, 2, 0, 1, 2)), [[5, 5], [6, 6], [7, 7]], h
        )
        assert result.colors == (0, 0, 1, 1, 2, 2) * 2
        m = verify_perfect_finite(lexicographic_product(cycle_graph(6), h), result)
        assert m.row_sums() == (5, 5, 5)

    def test_overlapping_colors(self):
        with pytest.raises(PreconditionViolated, match="shares colors"):
            disjunctive_finite(
                cycle_graph(4), VertexColoring((0, 1, 0, 1)), [[1, 1], [1, 2]], nx.empty_graph(2)
            )

    def test_psi_not_perfect(self):
        with pytest.raises(PreconditionViolated, match="psi"):
            disjunctive_finite(
                cycle_graph(4), VertexColoring((0, 0, 0, 1)), [[1], [2]], nx.empty_graph(1)
            )

    def test_phi_not_perfect(self):
        with pytest.raises(PreconditionViolated, match="Coloring 0 of H is not perfect"):
            disjunctive_finite(
                cycle_graph(3), VertexColoring((0, 0, 0)), [[4, 4, 4]], nx.path_graph(3)
            )

    def test_wrong_number_of_phis(self):
        with pytest.raises(PreconditionViolated, match="Expected 2"):
            disjunctive_finite(
                cycle_graph(4), VertexColoring((0, 1, 0, 1)), [[1]], nx.empty_graph(1)
            )

    @pytest.mark.parametrize("seed", [11, 12, 13, 14, 15])
    def test_random_instances_are_perfect(self, seed):
        rnd = random.Random(seed)
        mixed = 0
        for _ in range(200):
            g = _random_outer_graph(rnd)
            psi = _equitable_refinement(g, _random_labels(rnd, g.number_of_nodes()))
            if 1 < psi.k < g.number_of_nodes():
                mixed += 1
            h = _random_inner_graph(rnd)
            phis = []
            for color in range(psi.k):
                phi = _equitable_refinement(h, _random_labels(rnd, h.number_of_nodes()))
                phis.append([100 * color + label for label in phi.colors])
            result = disjunctive_finite(g, psi, phis, h)
            assert not isinstance(
                check_perfect_finite(lexicographic_product(g, h), result), NotPerfect
            )
        assert mixed > 0


class TestCycleProduct:
    """Tests for to_cycle_product."""

    def test_short_period_is_unrolled(self):
        c = PeriodicColoring.from_path([0, 1])
        ctx = to_cycle_product(c)
        assert ctx.graph.number_of_nodes() == 4
        assert ctx.coloring.colors == (0, 1, 0, 1)

    def test_block_layout(self):
        c = PeriodicColoring(Family.empty(2), 2, ((2, 0), (1, 1), (0, 2)))
        ctx = to_cycle_product(c)
        assert ctx.coloring.colors == (0, 0, 0, 1, 1, 1)

    def test_not_perfect_agrees(self):
        c = PeriodicColoring.from_path([0, 0, 0, 1])
        ctx = to_cycle_product(c)
        assert isinstance(check_perfect(c), NotPerfect)
        assert isinstance(check_perfect_finite(ctx.graph, ctx.coloring), NotPerfect)

    @pytest.mark.parametrize("family", [Family.empty(2), Family.complete(2)])
    def test_agrees_with_periodic_verification(self, family):
        catalog = theorem_enumerate(family, 3, 6)
        entries = [e.coloring for e in catalog if 3 <= e.coloring.p <= 6][:50]
        assert entries
        for c in entries:
            ctx = to_cycle_product(c)
            assert verify_perfect_finite(ctx.graph, ctx.coloring) == infer_matrix(c)
