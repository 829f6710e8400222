"""Closed-form structural statistics and their measured counterparts.

Closed forms: order 2(3m+1)^t + 1, size 3(3m+1)^t, per-step growth
6m(3m+1)^(t-1), degree exponent ln(3m+1)/ln(m+1), and the average path
length rational

    [3m + 5 + (24mt + 24m + 4)(3m+1)^t] / [3(3m+1)(2(3m+1)^t + 1)]

(the printed source garbles one parenthesis; this reading is pinned by
exact equality with the all-pairs BFS oracle).  Every vertex sits in
deg/2 triangles, so its local clustering is exactly 1/(deg-1), giving the
network average as an exact rational sum.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import _kernels
from .errors import AnalysisError
from .graph import KochGraph, edge_count, vertex_count

APL_SAMPLE_SEED = 0x6B6F6368
APL_EXACT_MAX_N = 5000
CLUSTERING_LIMIT_M1 = 0.82008


def delta_v(m: int, step: int) -> int:
    """Vertices created at one growth step."""
    if step == 0:
        return 3
    return 6 * m * (3 * m + 1) ** (step - 1)


def degree_exponent(m: int) -> float:
    return math.log(3 * m + 1) / math.log(m + 1)


def apl_closed_form(m: int, t: int) -> Fraction:
    num = 3 * m + 5 + (24 * m * t + 24 * m + 4) * (3 * m + 1) ** t
    den = 3 * (3 * m + 1) * (2 * (3 * m + 1) ** t + 1)
    return Fraction(num, den)


def degree_histogram_closed_form(m: int, t: int) -> dict[int, int]:
    hist = {2 * (m + 1) ** t: 3}
    for i in range(1, t + 1):
        hist[2 * (m + 1) ** (t - i)] = hist.get(2 * (m + 1) ** (t - i), 0) + delta_v(m, i)
    return hist


def clustering_closed_form(m: int, t: int) -> Fraction:
    """Exact network average of C_v = 1/(deg(v) - 1)."""
    total = Fraction(3, 2 * (m + 1) ** t - 1)
    for i in range(1, t + 1):
        total += Fraction(delta_v(m, i), 2 * (m + 1) ** (t - i) - 1)
    return total / vertex_count(m, t)


@dataclass
class ClosedForms:
    m: int
    t: int
    n_vertices: int
    n_edges: int
    n_triangles: int
    delta_v: list[int]  # per step 1..t
    gamma: float
    apl: Fraction
    degree_histogram: dict[int, int]
    clustering: Fraction


def closed_forms(m: int, t: int) -> ClosedForms:
    if m < 1 or t < 0:
        raise ValueError(f"need m >= 1 and t >= 0, got m={m}, t={t}")
    return ClosedForms(
        m=m,
        t=t,
        n_vertices=vertex_count(m, t),
        n_edges=edge_count(m, t),
        n_triangles=(3 * m + 1) ** t,
        delta_v=[delta_v(m, i) for i in range(1, t + 1)],
        gamma=degree_exponent(m),
        apl=apl_closed_form(m, t),
        degree_histogram=degree_histogram_closed_form(m, t),
        clustering=clustering_closed_form(m, t),
    )


@dataclass
class EmpiricalStats:
    n_vertices: int
    n_edges: int
    degree_histogram: dict[int, int]
    clustering: Fraction
    apl: Fraction | None  # exact when computed over all pairs
    apl_estimate: float | None = None
    apl_stderr: float | None = None
    apl_sampled_pairs: int = 0
    local_clustering_is_inverse_degree: bool = True

    @property
    def apl_value(self) -> float:
        if self.apl is not None:
            return float(self.apl)
        return float(self.apl_estimate)


def triangle_memberships(graph: KochGraph) -> np.ndarray:
    counts = np.zeros(graph.n_vertices, np.int64)
    for a, b, c in graph.triangles:
        counts[a] += 1
        counts[b] += 1
        counts[c] += 1
    return counts


def _measured_triangles(graph: KochGraph) -> np.ndarray:
    """Triangle memberships per vertex, measured from adjacency alone."""
    sets = [set(nbrs) for nbrs in graph.adjacency]
    counts = np.zeros(graph.n_vertices, np.int64)
    for u, v in graph.edges:
        common = sets[u] & sets[v] if len(sets[u]) <= len(sets[v]) else sets[v] & sets[u]
        for w in common:
            counts[w] += 1
            counts[u] += 1
            counts[v] += 1
    # every triangle is met via each of its three edges, so corners count triple
    return counts // 3


def empirical_stats(
    graph: KochGraph,
    apl_exact_max_n: int = APL_EXACT_MAX_N,
    sample_pairs: int = 10**5,
    seed: int = APL_SAMPLE_SEED,
    measure_apl: bool = True,
) -> EmpiricalStats:
    n = graph.n_vertices
    hist = dict(sorted(Counter(len(a) for a in graph.adjacency).items()))
    tri = _measured_triangles(graph)
    clustering = Fraction(0)
    inverse_deg = True
    for v in range(n):
        deg = graph.degree(v)
        c_v = Fraction(int(tri[v]), deg * (deg - 1) // 2)
        clustering += c_v
        if c_v != Fraction(1, deg - 1):
            inverse_deg = False
    clustering /= n

    if not measure_apl:
        return EmpiricalStats(
            n_vertices=n,
            n_edges=len(graph.edges),
            degree_histogram=hist,
            clustering=clustering,
            apl=None,
            local_clustering_is_inverse_degree=inverse_deg,
        )

    indptr, indices = graph.csr
    if n <= apl_exact_max_n:
        total = _kernels.all_distance_total(indptr, indices)
        apl = Fraction(total, n * (n - 1))
        return EmpiricalStats(
            n_vertices=n,
            n_edges=len(graph.edges),
            degree_histogram=hist,
            clustering=clustering,
            apl=apl,
            local_clustering_is_inverse_degree=inverse_deg,
        )

    rng = np.random.default_rng(seed)
    samples = np.empty(sample_pairs, np.float64)
    sources = rng.integers(0, n, sample_pairs)
    targets = rng.integers(0, n - 1, sample_pairs)
    targets[targets >= sources] += 1  # distinct endpoints, uniform over ordered pairs
    order = np.argsort(sources, kind="stable")
    pos = 0
    for src in np.unique(sources):
        dist = _kernels.bfs_distances(indptr, indices, int(src))
        while pos < sample_pairs and sources[order[pos]] == src:
            samples[order[pos]] = dist[targets[order[pos]]]
            pos += 1
    est = float(samples.mean())
    stderr = float(samples.std(ddof=1) / math.sqrt(sample_pairs))
    return EmpiricalStats(
        n_vertices=n,
        n_edges=len(graph.edges),
        degree_histogram=hist,
        clustering=clustering,
        apl=None,
        apl_estimate=est,
        apl_stderr=stderr,
        apl_sampled_pairs=sample_pairs,
        local_clustering_is_inverse_degree=inverse_deg,
    )


@dataclass
class StatsReport:
    closed: ClosedForms
    empirical: EmpiricalStats
    counts_match: bool = field(init=False)
    histogram_matches: bool = field(init=False)
    apl_matches: bool | None = field(init=False)

    def __post_init__(self) -> None:
        self.counts_match = (
            self.closed.n_vertices == self.empirical.n_vertices
            and self.closed.n_edges == self.empirical.n_edges
        )
        self.histogram_matches = self.closed.degree_histogram == dict(
            self.empirical.degree_histogram
        )
        self.apl_matches = (
            None if self.empirical.apl is None else self.empirical.apl == self.closed.apl
        )


def stats_report(graph: KochGraph, **kwargs) -> StatsReport:
    return StatsReport(closed_forms(graph.m, graph.t), empirical_stats(graph, **kwargs))


def cumulative_degree_check(m: int, t: int, histogram: dict[int, int]) -> bool:
    """Fraction of vertices of degree >= 2(m+1)^(t-i) must be (2(3m+1)^i + 1)/N."""
    n = vertex_count(m, t)
    for i in range(0, t + 1):
        threshold = 2 * (m + 1) ** (t - i)
        measured = sum(c for k, c in histogram.items() if k >= threshold)
        if Fraction(measured, n) != Fraction(2 * (3 * m + 1) ** i + 1, n):
            return False
    return True


@dataclass
class ClaimAudit:
    m: int
    t: int
    apl_exact_match: bool | None
    clustering_value: float
    clustering_gap_vs_limit: float | None  # m = 1 only
    apl_increment: float
    apl_increment_target: float
    apl_increment_rel_dev: float
    cumulative_degree_ok: bool
    clustering_formula_matches_measurement: bool


def claim_audit(graph: KochGraph) -> ClaimAudit:
    """Compare measured statistics against every printed claim that has a number."""
    m, t = graph.m, graph.t
    if t < 2:
        raise AnalysisError("claim audit needs t >= 2 (increments are undefined below)")
    report = stats_report(graph)
    clustering = float(report.closed.clustering)
    gap = abs(clustering - CLUSTERING_LIMIT_M1) if m == 1 else None
    increment = float(apl_closed_form(m, t) - apl_closed_form(m, t - 1))
    target = 4 * m / (3 * m + 1)
    formula_matches = report.closed.clustering == report.empirical.clustering
    return ClaimAudit(
        m=m,
        t=t,
        apl_exact_match=report.apl_matches,
        clustering_value=clustering,
        clustering_gap_vs_limit=gap,
        apl_increment=increment,
        apl_increment_target=target,
        apl_increment_rel_dev=abs(increment - target) / target,
        cumulative_degree_ok=cumulative_degree_check(m, t, report.empirical.degree_histogram),
        clustering_formula_matches_measurement=formula_matches,
    )
