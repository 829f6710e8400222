import math
from fractions import Fraction

import numpy as np
import pytest

from kochnet import (
    centrality_report,
    descendant_count,
    exact_edge_betweenness,
    exact_vertex_betweenness,
    firstorder_vertex_betweenness,
    paper_edge_betweenness,
    paper_vertex_betweenness,
)
from kochnet.centrality import CentralityReport, VertexRow, scaling_fit
from kochnet.errors import AnalysisError
from kochnet.routing import ancestor_chain

from conftest import cached_graph, python_betweenness


class TestDescendants:
    def test_leaf(self):
        assert descendant_count(2, 3, 3) == 0

    def test_hub_k11(self):
        assert descendant_count(1, 1, 0) == 2

    def test_formula_value(self):
        assert descendant_count(2, 2, 1) == 4

    @pytest.mark.parametrize("m,t", [(1, 2), (2, 2)])
    def test_matches_ancestor_chains(self, m, t):
        graph = cached_graph(m, t)
        below = {rec.id: 0 for rec in graph.vertices}
        for rec in graph.vertices:
            for anc in ancestor_chain(m, rec.label)[1:]:
                below[graph.vertex_by_label(anc)] += 1
        for rec in graph.vertices:
            assert below[rec.id] == descendant_count(m, t, rec.birth_step)


class TestExactOracle:
    def test_k11_hub(self):
        cb = exact_vertex_betweenness(cached_graph(1, 1))
        assert abs(cb[0] - 3 / 7) < 1e-15

    def test_k11_edges(self):
        graph = cached_graph(1, 1)
        eb = exact_edge_betweenness(graph)
        hub_son = graph.edge_ids[(0, 3)]  # "1" -- "10.1"
        comp = graph.edge_ids[(3, 4)]  # "10.1" -- "10.2"
        hubs = graph.edge_ids[(0, 1)]
        assert abs(eb[hub_son] - 1 / 4) < 1e-15
        assert abs(eb[comp] - 1 / 28) < 1e-15
        assert abs(eb[hubs] - 9 / 28) < 1e-15

    def test_triangle_edges(self):
        eb = exact_edge_betweenness(cached_graph(2, 0))
        assert np.allclose(eb, 1.0)

    def test_leaves_zero(self):
        graph = cached_graph(2, 2)
        cb = exact_vertex_betweenness(graph)
        for rec in graph.vertices:
            if rec.birth_step == 2:
                assert cb[rec.id] == 0.0

    def test_birth_step_symmetry(self):
        graph = cached_graph(2, 2)
        cb = exact_vertex_betweenness(graph)
        step1 = [cb[r.id] for r in graph.vertices if r.birth_step == 1]
        assert len(step1) == 12
        assert max(step1) - min(step1) <= 1e-15

    @pytest.mark.parametrize("m,t", [(1, 1), (1, 2), (2, 1)])
    def test_against_python_reference(self, m, t):
        graph = cached_graph(m, t)
        cb = exact_vertex_betweenness(graph)
        ref = python_betweenness(graph.adjacency)
        n = graph.n_vertices
        norm = (n - 1) * (n - 2) // 2
        for v in range(n):
            assert abs(cb[v] - float(ref[v] / norm)) < 1e-12


class TestPaperFormulas:
    def test_eq_vertex_vanishes_at_t1(self):
        assert paper_vertex_betweenness(1, 1, 0) == 0

    def test_eq_vertex_disagrees_with_oracle(self):
        cb = exact_vertex_betweenness(cached_graph(1, 1))
        assert abs(cb[0] - 3 / 7) < 1e-15  # oracle says 3/7, the printed form 0

    def test_eq_edge_value(self):
        assert paper_edge_betweenness(1, 1, 1) == Fraction(63, 504) == Fraction(1, 8)

    def test_eq_edge_disagrees_with_oracle(self):
        graph = cached_graph(1, 1)
        eb = exact_edge_betweenness(graph)
        assert abs(eb[graph.edge_ids[(0, 3)]] - 1 / 4) < 1e-15  # vs printed 1/8


class TestFirstOrder:
    def test_matches_exact_at_m1(self):
        graph = cached_graph(1, 1)
        cb = exact_vertex_betweenness(graph)
        assert firstorder_vertex_betweenness(1, 1, 0) == Fraction(3, 7)
        assert abs(cb[0] - 3 / 7) < 1e-15

    def test_leaf_zero(self):
        assert firstorder_vertex_betweenness(2, 3, 3) == 0

    def test_strictly_below_exact_at_depth_two(self):
        graph = cached_graph(1, 2)
        cb = exact_vertex_betweenness(graph)
        assert float(firstorder_vertex_betweenness(1, 2, 0)) < cb[0]

    def test_m1_equality_at_young_vertices(self):
        for t in (1, 2, 3):
            graph = cached_graph(1, t)
            cb = exact_vertex_betweenness(graph)
            for rec in graph.vertices:
                if t - rec.birth_step <= 1:
                    expected = float(firstorder_vertex_betweenness(1, t, rec.birth_step))
                    assert abs(cb[rec.id] - expected) < 1e-12

    def test_m2_young_vertices_break_equality(self):
        # sons of one father in different groups still route through it, so
        # the descendants-times-rest composition undershoots whenever m > 1
        graph = cached_graph(2, 1)
        cb = exact_vertex_betweenness(graph)
        assert cb[0] > float(firstorder_vertex_betweenness(2, 1, 0))
        norm = 14 * 13 // 2
        assert abs(cb[0] - 44 / norm) < 1e-12
        assert firstorder_vertex_betweenness(2, 1, 0) == Fraction(40, norm)


class TestReport:
    def test_rows_and_audit(self):
        report = centrality_report(cached_graph(1, 1))
        assert len(report.vertices) == 9
        assert len(report.edges) == 12
        audit = report.audit()
        assert audit["eq9_matches"] is False
        assert audit["eq12_matches"] is False
        assert audit["max_rel_gap"] > 0
        by_birth = report.by_birth()
        assert set(by_birth) == {0, 1}

    def test_edge_classes_partition(self):
        report = centrality_report(cached_graph(2, 2))
        counts = {"hub-hub": 0, "companion": 0, "father-child": 0}
        for row in report.edges:
            counts[row.edge_class] += 1
        assert counts == {"hub-hub": 3, "companion": 48, "father-child": 96}

    def test_monotone_in_birth(self):
        for m, t in [(1, 3), (2, 2)]:
            report = centrality_report(cached_graph(m, t))
            by_birth = report.by_birth()
            values = [by_birth[b][0].exact for b in range(t + 1)]
            assert all(a > b for a, b in zip(values, values[1:]))


class TestScalingFit:
    def test_recovers_synthetic_slope(self):
        rows = [
            VertexRow(None, birth, 2 ** (5 - birth), (2.0 ** (5 - birth)) ** 1.75, Fraction(0), Fraction(0))
            for birth in range(0, 6)
        ]
        report = CentralityReport(m=1, t=5, pair_norm=1, vertices=rows, edges=[])
        gamma, residual = scaling_fit(report)
        assert abs(gamma - 1.75) < 1e-12
        assert residual < 1e-12

    def test_needs_enough_classes(self):
        report = CentralityReport(m=1, t=2, pair_norm=1, vertices=[], edges=[])
        with pytest.raises(AnalysisError):
            scaling_fit(report)

    def test_m1_t4_sane(self):
        report = centrality_report(cached_graph(1, 4))
        assert report.gamma_hat is not None
        assert abs(report.gamma_hat - 2.0) / 2.0 < 0.25


def test_sum_rule_against_distances():
    from kochnet import _kernels

    graph = cached_graph(2, 2)
    n = graph.n_vertices
    cb = exact_vertex_betweenness(graph)
    interior = cb.sum() * ((n - 1) * (n - 2) // 2)
    indptr, indices = graph.csr
    expected = _kernels.all_distance_total(indptr, indices) / 2 - n * (n - 1) / 2
    assert math.isclose(interior, expected, rel_tol=1e-12)
