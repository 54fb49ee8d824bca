"""Berge girth, regular linear hypergraphs of large girth, and Model 3 instances.

A hypergraph is a :class:`SetFamily` read as vertices ``1..n`` and hyperedges
``sets``. The Berge girth is half the girth of the vertex-edge incidence graph.
"""

from __future__ import annotations

import math
from collections import deque
from itertools import combinations

import numpy as np

from .errors import BadParameter, ConstructionFailure, EmptyEdge
from .family import PropertyReport, SetFamily, elements_of, popcount

Hypergraph = SetFamily


def _incidence(H: SetFamily) -> list[list[int]]:
    """Adjacency lists of the incidence graph; vertex ``v`` is node ``v - 1``, edge ``e`` is node ``n + e``."""
    adj: list[list[int]] = [[] for _ in range(H.n + len(H.sets))]
    for e, s in enumerate(H.sets):
        for v in elements_of(s):
            adj[v - 1].append(H.n + e)
            adj[H.n + e].append(v - 1)
    return adj


def berge_girth(H: SetFamily) -> float:
    """Length of the shortest Berge cycle, ``math.inf`` if there is none.

    Two hyperedges sharing two vertices form a Berge cycle of length 2.
    """
    if any(s == 0 for s in H.sets):
        raise EmptyEdge("hyperedges must be nonempty")
    adj = _incidence(H)
    best = math.inf
    for root in range(H.n):
        if not adj[root]:
            continue
        dist = {root: 0}
        parent = {root: -1}
        queue = deque([root])
        while queue:
            u = queue.popleft()
            if 2 * dist[u] + 1 >= best:
                break
            for w in adj[u]:
                if w not in dist:
                    dist[w] = dist[u] + 1
                    parent[w] = u
                    queue.append(w)
                elif parent[u] != w:
                    best = min(best, dist[u] + dist[w] + 1)
    return best / 2 if best != math.inf else math.inf


def validate_hypergraph(H: SetFamily, r: int, d: int, g: int) -> PropertyReport:
    """``r``-uniform, ``d``-regular, linear and Berge girth at least ``g``."""
    for e, s in enumerate(H.sets):
        if popcount(s) != r:
            return PropertyReport(False, {"clause": "not uniform", "edge": e + 1})
    degrees = [0] * H.n
    for s in H.sets:
        for v in elements_of(s):
            degrees[v - 1] += 1
    for v, deg in enumerate(degrees, start=1):
        if deg != d:
            return PropertyReport(False, {"clause": "not regular", "vertex": v, "degree": deg})
    for (i, a), (j, b) in combinations(enumerate(H.sets), 2):
        if popcount(a & b) > 1:
            return PropertyReport(False, {"clause": "not linear", "edges": [i + 1, j + 1]})
    girth = berge_girth(H)
    if girth < g:
        return PropertyReport(False, {"clause": "girth too small", "girth": girth})
    return PropertyReport(True)


def _short_cycle_cost(A: np.ndarray, deg: np.ndarray, g: int) -> float:
    """Excess non-backtracking walks of length ``< g`` in the incidence graph.

    Zero exactly when no two nodes are joined by two such walks and no node has a
    closed one, i.e. when the incidence graph has girth at least ``2g``.
    """
    eye_shift = np.diag(deg - 1.0)
    prev = np.eye(len(A))
    cur = A
    total = A.copy()
    for length in range(2, g):
        nxt = cur @ A - (np.diag(deg) if length == 2 else prev @ eye_shift)
        prev, cur = cur, nxt
        total += cur
    closed = np.trace(total)
    np.fill_diagonal(total, 0.0)
    return float(np.clip(total - 1.0, 0.0, None).sum() / 2.0 + closed)


def _move(A: np.ndarray, n: int, a: int, b: int, va: int, vb: int, sign: float) -> None:
    """Move ``va`` from edge ``a`` to ``b`` and ``vb`` the other way (``sign=-1`` undoes it)."""
    for v, e, delta in ((va, a, -sign), (vb, b, -sign), (vb, a, sign), (va, b, sign)):
        A[v, n + e] += delta
        A[n + e, v] += delta


def _anneal(n, r, d, g, rng: np.random.Generator, max_iter: int):
    stubs = np.repeat(np.arange(n), d)
    rng.shuffle(stubs)
    m = len(stubs) // r
    edges = stubs.reshape(m, r).copy()
    size = n + m
    A = np.zeros((size, size))
    for e in range(m):
        for v in edges[e]:
            A[v, n + e] += 1.0
            A[n + e, v] += 1.0
    deg = A.sum(axis=1)
    cost = _short_cycle_cost(A, deg, g)
    temperature = 2.0
    for _ in range(max_iter):
        if cost == 0:
            return edges, 0.0
        a, b = rng.integers(m, size=2)
        if a == b:
            continue
        i, j = rng.integers(r, size=2)
        va, vb = edges[a, i], edges[b, j]
        if va == vb:
            continue
        # swap the two incidences; vertex and edge degrees are preserved
        _move(A, n, a, b, va, vb, 1.0)
        new = _short_cycle_cost(A, deg, g)
        if new <= cost or rng.random() < math.exp((cost - new) / temperature):
            cost = new
            edges[a, i], edges[b, j] = vb, va
        else:
            _move(A, n, a, b, va, vb, -1.0)
        temperature = max(0.1, temperature * 0.9999)
    return edges, cost


def construct_girth_hypergraph(
    n: int,
    r: int,
    d: int,
    g: int,
    seed: int = 0,
    max_restarts: int = 5,
    max_iter: int = 100_000,
) -> SetFamily:
    """Linear, ``d``-regular, ``r``-uniform hypergraph on ``n`` vertices with Berge girth ``>= g``.

    Starts from a random configuration (every vertex gets ``d`` slots, slots are
    cut into edges of size ``r``) and anneals with degree-preserving incidence
    swaps until the short-cycle cost reaches zero. Each restart draws a fresh
    configuration. The result is re-validated independently before returning.

    Raises:
        BadParameter: ``r`` does not divide ``d * n`` or the sizes are degenerate.
        ConstructionFailure: no valid hypergraph within ``max_restarts``; ``best``
            holds the lowest residual cost reached.
    """
    if d < 1 or r < 2 or g < 3 or n < r:
        raise BadParameter(f"need d >= 1, r >= 2, g >= 3 and n >= r; got n={n}, r={r}, d={d}, g={g}")
    if (d * n) % r:
        raise BadParameter(f"r={r} must divide d*n={d * n}")
    best = math.inf
    for restart in range(max_restarts):
        rng = np.random.default_rng([seed, restart])
        edges, cost = _anneal(n, r, d, g, rng, max_iter)
        best = min(best, cost)
        if cost != 0:
            continue
        H = SetFamily.from_sets(n, [sorted(int(v) + 1 for v in e) for e in edges])
        H = SetFamily(n, tuple(sorted(H.sets, key=lambda s: elements_of(s))))
        if validate_hypergraph(H, r, d, g):
            return H
    raise ConstructionFailure(
        f"no {r}-uniform {d}-regular linear hypergraph with girth >= {g} on {n} vertices "
        f"after {max_restarts} restarts",
        best=best,
    )


def model3_construction(n: int, d: int, seed: int = 1, **search) -> SetFamily:
    """A family on ``[n]`` where no single element can name a defective.

    ``d >= 3`` uses edge size ``d``. ``d == 2`` uses edge size 4, building on
    ``n + 1`` vertices and dropping the last one when ``n`` is odd (edges then
    have size 3 or 4).
    """
    if d < 2:
        raise BadParameter("d must be at least 2")
    r = 4 if d == 2 else d
    if n < d * r + 2:
        raise BadParameter(f"need n >= d*r + 2 = {d * r + 2}, got n={n}")
    if d == 2 and n % 2:
        H = construct_girth_hypergraph(n + 1, r, d, 5, seed=seed, **search)
        keep = (1 << n) - 1
        return SetFamily(n, tuple(s & keep for s in H.sets))
    return construct_girth_hypergraph(n, r, d, 5, seed=seed, **search)
