"""Short vectors of positive definite integer lattices (Fincke-Pohst).

Gram matrices are polar forms, so a coordinate vector x has norm
``q(x) = x^T G x / 2``.  The float Cholesky factors only prune the search
tree (with a safety margin); every reported vector is re-checked with exact
integer arithmetic.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
import math

import numpy as np

from .linalg import lll_gram

_EPS = 1e-7


def _ldl(G):
    """G = U^T D U with U unit upper triangular; returns (d, U) as floats."""
    n = len(G)
    A = np.array(G, dtype=float)
    L = np.linalg.cholesky(A)  # A = L L^T
    d = np.diag(L) ** 2
    U = (L / np.diag(L)).T
    return d, U


def _search(d, U, budget, top_values):
    """Depth-first enumeration; yields coordinate tuples in reduced basis.

    Only representatives of +-pairs are produced: the last nonzero coordinate
    (in enumeration order, i.e. highest index) is positive.
    """
    n = len(d)
    out = []
    x = [0] * n
    slack = budget * (1 + _EPS) + _EPS
    Ul = U.tolist()
    dl = d.tolist()

    def rec(i, remaining, leading_zero):
        c = -sum(Ul[i][j] * x[j] for j in range(i + 1, n))
        r = math.sqrt(max(remaining, 0.0) / dl[i])
        lo = math.ceil(c - r - _EPS)
        hi = math.floor(c + r + _EPS)
        if leading_zero:
            lo = max(lo, 0)
        if i == 0:
            for v in range(lo, hi + 1):
                if leading_zero and v == 0:
                    continue
                x[0] = v
                out.append(tuple(x))
            x[0] = 0
            return
        for v in range(lo, hi + 1):
            x[i] = v
            rest = remaining - dl[i] * (v - c) ** 2
            if rest < -_EPS * (1 + budget):
                continue
            rec(i - 1, rest, leading_zero and v == 0)
        x[i] = 0

    i = n - 1
    if n == 1:
        r = math.sqrt(slack / dl[0])
        return [(v,) for v in range(1, math.floor(r + _EPS) + 1)]
    for v in top_values:
        x[i] = v
        rest = slack - dl[i] * v * v
        if rest < -_EPS * (1 + budget):
            continue
        rec(i - 1, rest, v == 0)
    return out


def _top_range(d, budget):
    r = math.sqrt(budget * (1 + _EPS) / d[-1]) + _EPS
    return list(range(0, math.floor(r) + 1))


def _worker(args):
    d, U, budget, values = args
    return _search(d, U, budget, values)


def enumerate_short(G, bound: int, workers: int = 1, reduce: bool = True):
    """All +-pair representatives x != 0 with q(x) <= bound.

    Returns ``(vectors, norms)``: an integer array of shape (k, m) in the
    coordinates of ``G`` and the q-values, sorted by (norm, coordinates).
    """
    G = [list(map(int, r)) for r in G]
    m = len(G)
    if bound <= 0 or m == 0:
        return np.zeros((0, m), dtype=np.int64), np.zeros(0, dtype=np.int64)
    if reduce:
        Gr, C = lll_gram(G)
    else:
        Gr, C = G, [[int(i == j) for j in range(m)] for i in range(m)]
    d, U = _ldl(Gr)
    budget = 2.0 * bound
    tops = _top_range(d, budget)
    if workers > 1 and len(tops) > 1:
        chunks = [tops[k::workers] for k in range(workers)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_worker, [(d, U, budget, c) for c in chunks if c]))
        raw = [v for p in parts for v in p]
    else:
        raw = _search(d, U, budget, tops)
    if not raw:
        return np.zeros((0, m), dtype=np.int64), np.zeros(0, dtype=np.int64)
    X = np.array(raw, dtype=np.int64)
    Gr_np = np.array(Gr, dtype=np.int64)
    polar = np.einsum("ij,jk,ik->i", X, Gr_np, X)
    keep = (polar > 0) & (polar <= 2 * bound)
    X, polar = X[keep], polar[keep]
    V = X @ np.array(C, dtype=np.int64).T
    norms = polar // 2
    order = np.lexsort(tuple(V.T[::-1]) + (norms,))
    return V[order], norms[order]


def norm_counts(G, bound: int, workers: int = 1) -> dict:
    """{q: number of vectors of norm q} for 0 < q <= bound (both signs)."""
    _, norms = enumerate_short(G, bound, workers)
    vals, counts = np.unique(norms, return_counts=True)
    return {int(v): 2 * int(c) for v, c in zip(vals, counts)}


def minimum(G, workers: int = 1, start: int = 1) -> tuple:
    """(min q, number of minimal vectors) by enumerating with growing bounds."""
    bound = start
    while True:
        _, norms = enumerate_short(G, bound, workers)
        if len(norms):
            m = int(norms.min())
            return m, 2 * int((norms == m).sum())
        bound *= 2
