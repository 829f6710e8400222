"""Unit-resistor network analysis on built Koch graphs.

Every edge is a 1-ohm resistor.  Because each edge lies in exactly one
triangle and the triangles meet only at vertices, the current injected
between two vertices localizes to the chain of triangles along their
(unique) shortest path: each chain triangle behaves as 1 ohm in parallel
with a 2-ohm detour, so the pair resistance is (2/3) * distance, the
on-path voltages fall arithmetically, and each triangle splits current
2/3 (direct edge) versus 1/3 (detour).  ``path_profile`` measures all of
that against the solver; nothing is assumed.

Solver policy: dense grounded solve up to 2000 vertices, conjugate
gradients on the grounded sparse Laplacian above, residual max-norm
below 1e-10 either way (direct sparse factorization as a fallback polish
if CG stalls).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Literal

import numpy as np
import scipy.sparse as sp
import scipy.sparse.linalg as spla

from .errors import KochError, SizeCapError
from .graph import KochGraph
from .routing import route

DENSE_MAX_N = 2000
RESIDUAL_TOL = 1e-10
SUPPORT_EPS = 1e-9  # absolute current on unit injection
CFB_EXHAUSTIVE_MAX_N = 600

Mode = Literal["unit-current", "unit-voltage"]


@dataclass
class ElectricalProfile:
    source: int
    target: int
    mode: Mode
    potentials: np.ndarray
    edge_currents: np.ndarray  # oriented low-id -> high-id, aligned with graph.edges
    effective_resistance: float
    solver_residual: float
    support_edges: frozenset[int] = frozenset()
    on_path_voltages: list[float] = field(default_factory=list)
    companion_voltages: list[float] = field(default_factory=list)
    distance: int | None = None
    max_offpath_current: float | None = None
    current_split: list[tuple[float, float, float]] = field(default_factory=list)
    thm_support_ok: bool | None = None
    thm_voltages_ok: bool | None = None
    thm_split_ok: bool | None = None


def laplacian(graph: KochGraph) -> sp.csr_array:
    n = graph.n_vertices
    edges = np.asarray(graph.edges, np.int64)
    u, v = edges[:, 0], edges[:, 1]
    rows = np.concatenate((u, v, np.arange(n)))
    cols = np.concatenate((v, u, np.arange(n)))
    degs = np.fromiter((graph.degree(i) for i in range(n)), np.float64, n)
    vals = np.concatenate((-np.ones(len(edges)), -np.ones(len(edges)), degs))
    return sp.csr_array((vals, (rows, cols)), shape=(n, n))


def _solve_unit_current(graph: KochGraph, source: int, target: int) -> tuple[np.ndarray, float]:
    """Potentials for b = e_source - e_target, grounded so phi[target] = 0."""
    if source == target:
        raise ValueError("source and target must differ")
    n = graph.n_vertices
    lap = laplacian(graph)
    keep = np.arange(n) != target
    reduced = lap[keep][:, keep]
    b = np.zeros(n)
    b[source] = 1.0
    b[target] = -1.0
    b_red = b[keep]

    if n <= DENSE_MAX_N:
        x = np.linalg.solve(reduced.toarray(), b_red)
    else:
        x, info = spla.cg(reduced.tocsr(), b_red, rtol=0.0, atol=1e-13, maxiter=50 * n)
        if info != 0 or np.max(np.abs(reduced @ x - b_red)) > RESIDUAL_TOL:
            x = spla.splu(reduced.tocsc()).solve(b_red)

    phi = np.zeros(n)
    phi[keep] = x
    residual = float(np.max(np.abs(lap @ phi - b)))
    if residual > RESIDUAL_TOL:
        raise KochError(f"solver residual {residual:.2e} above {RESIDUAL_TOL:.0e}")
    return phi, residual


def _edge_currents(graph: KochGraph, phi: np.ndarray) -> np.ndarray:
    edges = np.asarray(graph.edges, np.int64)
    return phi[edges[:, 0]] - phi[edges[:, 1]]


def solve(
    graph: KochGraph, source: int, target: int, mode: Mode = "unit-current"
) -> ElectricalProfile:
    """Laplacian solve for one source/target pair.

    unit-current: one ampere in at the source, out at the target; the
    source potential equals the effective resistance (target grounded).
    unit-voltage: same field rescaled so the pair potential drop is 1.
    """
    phi, residual = _solve_unit_current(graph, source, target)
    r_eff = float(phi[source])
    currents = _edge_currents(graph, phi)
    support = frozenset(int(e) for e in np.flatnonzero(np.abs(currents) > SUPPORT_EPS))
    if mode == "unit-voltage":
        phi = phi / r_eff
        currents = currents / r_eff
    elif mode != "unit-current":
        raise ValueError(f"unknown mode {mode!r}")
    return ElectricalProfile(
        source=source,
        target=target,
        mode=mode,
        potentials=phi,
        edge_currents=currents,
        effective_resistance=r_eff,
        solver_residual=residual,
        support_edges=support,
    )


def _path_triangles(graph: KochGraph, ids: list[int]) -> list[tuple[int, int, int]]:
    tris = []
    for u, v in zip(ids, ids[1:]):
        key = (u, v) if u < v else (v, u)
        tris.append(graph.triangles[graph.triangle_of_edge[key]])
    return tris


def path_profile(graph: KochGraph, source: int, target: int, tol: float = 1e-9) -> ElectricalProfile:
    """Unit-voltage profile annotated with the triangle-chain checks.

    Verifies against the solved field that (a) current is confined to the
    3d edges of the d triangles along the shortest path, (b) on-path
    voltages fall 1, (d-1)/d, ..., 0 with the chain midpoints at the half
    steps, (c) every chain triangle splits its through-current 2/3 direct
    versus 1/3 detour, within ``tol``.
    """
    profile = solve(graph, source, target, mode="unit-voltage")
    path = route(graph.m, graph.t, graph.label_of(source), graph.label_of(target))
    ids = [graph.vertex_by_label(h) for h in path.hops]
    d = path.length
    tris = _path_triangles(graph, ids)

    support: set[int] = set()
    for tri in tris:
        a, b, c = sorted(tri)
        for e in ((a, b), (a, c), (b, c)):
            support.add(graph.edge_ids[e])
    off = [i for i in range(len(graph.edges)) if i not in support]
    # classification currents are taken at unit injection
    raw = profile.edge_currents * profile.effective_resistance
    max_off = float(np.max(np.abs(raw[off]))) if off else 0.0

    phi = profile.potentials
    on_path = [float(phi[v]) for v in ids]
    expected_path = [1.0 - k / d for k in range(d + 1)]
    midpoints = []
    for (u, v), tri in zip(zip(ids, ids[1:]), tris):
        (w,) = set(tri) - {u, v}
        midpoints.append(float(phi[w]))
    expected_mid = [1.0 - (2 * k + 1) / (2 * d) for k in range(d)]

    total = 1.0 / profile.effective_resistance  # pair current in unit-voltage mode
    splits = []
    split_ok = True
    for (u, v), tri in zip(zip(ids, ids[1:]), tris):
        (w,) = set(tri) - {u, v}
        direct = float(abs(profile.edge_currents[graph.edge_ids[(min(u, v), max(u, v))]]))
        detour_a = float(abs(profile.edge_currents[graph.edge_ids[(min(u, w), max(u, w))]]))
        detour_b = float(abs(profile.edge_currents[graph.edge_ids[(min(v, w), max(v, w))]]))
        splits.append((direct / total, detour_a / total, detour_b / total))
        split_ok = split_ok and (
            abs(direct / total - 2 / 3) < tol
            and abs(detour_a / total - 1 / 3) < tol
            and abs(detour_b / total - 1 / 3) < tol
        )

    profile.distance = d
    profile.on_path_voltages = on_path
    profile.companion_voltages = midpoints
    profile.max_offpath_current = max_off
    profile.current_split = splits
    profile.thm_support_ok = bool(max_off < tol and profile.support_edges == frozenset(support))
    profile.thm_voltages_ok = bool(
        all(abs(a - b) < tol for a, b in zip(on_path, expected_path))
        and all(abs(a - b) < tol for a, b in zip(midpoints, expected_mid))
    )
    profile.thm_split_ok = bool(split_ok)
    return profile


@dataclass
class CurrentFlowResult:
    values: np.ndarray
    pairs_used: int
    exhaustive: bool
    stderr: np.ndarray | None = None


def _pinv_potentials(graph: KochGraph) -> np.ndarray:
    return np.linalg.pinv(laplacian(graph).toarray())


def current_flow_betweenness(
    graph: KochGraph,
    policy: Literal["exhaustive", "sampled"] = "exhaustive",
    sample_pairs: int = 2000,
    seed: int = 0,
    endpoint_contribution: bool = False,
) -> CurrentFlowResult:
    """Average interior current per vertex over source/target pairs.

    For an interior vertex the pair current is half the absolute currents
    on its incident edges; endpoint pairs contribute 0 by default (set
    ``endpoint_contribution`` for the convention where they count as 1).
    """
    n = graph.n_vertices
    if policy == "exhaustive" and n > CFB_EXHAUSTIVE_MAX_N:
        raise SizeCapError(
            f"exhaustive current-flow betweenness capped at N={CFB_EXHAUSTIVE_MAX_N}; "
            f"got N={n} (use policy='sampled')"
        )
    pinv = _pinv_potentials(graph)
    edges = np.asarray(graph.edges, np.int64)
    u, v = edges[:, 0], edges[:, 1]
    col = pinv[u, :] - pinv[v, :]  # potential drop per edge for unit injection at column

    if policy == "exhaustive":
        pair_iter = [(s, t) for s in range(n) for t in range(s + 1, n)]
    elif policy == "sampled":
        rng = np.random.default_rng(seed)
        src = rng.integers(0, n, sample_pairs)
        dst = rng.integers(0, n - 1, sample_pairs)
        dst[dst >= src] += 1
        pair_iter = list(zip(src.tolist(), dst.tolist()))
    else:
        raise ValueError(f"unknown policy {policy!r}")

    totals = np.zeros(n)
    sq_totals = np.zeros(n) if policy == "sampled" else None
    for s, t in pair_iter:
        currents = np.abs(col[:, s] - col[:, t])
        through = np.zeros(n)
        np.add.at(through, u, currents)
        np.add.at(through, v, currents)
        through *= 0.5
        through[s] = 1.0 if endpoint_contribution else 0.0
        through[t] = 1.0 if endpoint_contribution else 0.0
        totals += through
        if sq_totals is not None:
            sq_totals += through**2

    if policy == "exhaustive":
        norm = n * (n - 1) // 2
        return CurrentFlowResult(values=totals / norm, pairs_used=len(pair_iter), exhaustive=True)
    k = len(pair_iter)
    mean = totals / k
    var = (sq_totals / k - mean**2) * k / (k - 1)
    stderr = np.sqrt(np.maximum(var, 0.0) / k)
    return CurrentFlowResult(values=mean, pairs_used=k, exhaustive=False, stderr=stderr)


@dataclass
class VoltageGap:
    source: int
    target: int
    gap: float
    spectrum: np.ndarray  # sorted potentials, normalized to a unit pair drop


def voltage_gap(graph: KochGraph, source: int, target: int) -> VoltageGap:
    """Largest jump in the sorted voltage spectrum, as a fraction of the pair drop.

    A strong two-community structure shows up as one dominant jump; the
    spectrum includes the probe vertices, so the statistic is 1/2 for a
    bare triangle probed across one edge.
    """
    profile = solve(graph, source, target, mode="unit-voltage")
    spectrum = np.sort(profile.potentials)
    gap = float(np.max(np.diff(spectrum)))
    return VoltageGap(source=source, target=target, gap=gap, spectrum=spectrum)
