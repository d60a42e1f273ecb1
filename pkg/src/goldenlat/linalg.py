"""Exact matrix helpers over Z, Q and R = Z[theta]."""

from __future__ import annotations

from fractions import Fraction
import math

from .ring import KElem, RElem, ONE, ZERO, as_relem, canonical_associate, euclid_divmod, exact_div


def identity(n: int) -> list:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def transpose(m) -> list:
    return [list(r) for r in zip(*m)]


def matmul(a, b) -> list:
    bt = list(zip(*b))
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def to_int_matrix(m) -> list:
    out = []
    for row in m:
        r = []
        for x in row:
            x = Fraction(x)
            if x.denominator != 1:
                raise ValueError(f"matrix entry {x} is not integral")
            r.append(x.numerator)
        out.append(r)
    return out


def int_det(m) -> int:
    """Bareiss fraction-free determinant of an integer matrix."""
    a = [list(map(int, r)) for r in m]
    n = len(a)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k]), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def rational_inverse(m) -> list:
    n = len(m)
    a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(m)]
    for c in range(n):
        p = next((r for r in range(c, n) if a[r][c]), None)
        if p is None:
            raise ZeroDivisionError("singular matrix")
        a[c], a[p] = a[p], a[c]
        inv = 1 / a[c][c]
        a[c] = [x * inv for x in a[c]]
        for r in range(n):
            if r != c and a[r][c]:
                f = a[r][c]
                a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    return [row[n:] for row in a]


def rational_solve(m, b) -> list:
    inv = rational_inverse(m)
    return [sum(Fraction(x) * y for x, y in zip(row, b)) for row in inv]


def rank(m) -> int:
    a = [[Fraction(x) for x in row] for row in m]
    r = 0
    cols = len(a[0]) if a else 0
    for c in range(cols):
        p = next((i for i in range(r, len(a)) if a[i][c]), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        for i in range(r + 1, len(a)):
            if a[i][c]:
                f = a[i][c] / a[r][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        r += 1
    return r


# ---------------------------------------------------------------------------
# Matrices over R
# ---------------------------------------------------------------------------

def det_R(m) -> RElem:
    """Bareiss determinant over the integral domain R."""
    a = [[as_relem(x) for x in row] for row in m]
    n = len(a)
    if n == 0:
        return ONE
    sign, prev = 1, ONE
    for k in range(n - 1):
        if not a[k][k]:
            swap = next((i for i in range(k + 1, n) if a[i][k]), None)
            if swap is None:
                return ZERO
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = exact_div(a[i][j] * a[k][k] - a[i][k] * a[k][j], prev)
        prev = a[k][k]
    return as_relem(a[n - 1][n - 1] * sign)


def leading_minors_R(m) -> list:
    """Leading principal minors over R (stops at the first zero)."""
    a = [[as_relem(x) for x in row] for row in m]
    n = len(a)
    out = []
    prev = ONE
    for k in range(n):
        piv = a[k][k]
        out.append(piv)
        if not piv:
            break
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = exact_div(a[i][j] * piv - a[i][k] * a[k][j], prev)
        prev = piv
    return out


def hnf_R(rows, pivot: str = "min_norm") -> list:
    """Row echelon basis over R of the R-span of ``rows``.

    ``pivot`` selects the row brought up for each column: ``"min_norm"`` takes
    the entry of smallest absolute norm, ``"last"`` the last nonzero one.
    Pivots are normalized to canonical associates and entries above a pivot
    are reduced modulo it, so the output is deterministic.
    """
    a = [[as_relem(x) for x in row] for row in rows]
    a = [r for r in a if any(r)]
    if not a:
        return []
    ncols = len(a[0])
    r = 0
    for c in range(ncols):
        while True:
            live = [i for i in range(r, len(a)) if a[i][c]]
            if not live:
                break
            if pivot == "min_norm":
                p = min(live, key=lambda i: (abs(a[i][c].norm()), i))
            elif pivot == "last":
                p = live[-1]
            else:
                raise ValueError(f"unknown pivot strategy {pivot!r}")
            a[r], a[p] = a[p], a[r]
            done = True
            for i in range(r + 1, len(a)):
                if a[i][c]:
                    q, rem = euclid_divmod(a[i][c], a[r][c])
                    a[i] = [as_relem(x - q * y) for x, y in zip(a[i], a[r])]
                    if rem:
                        done = False
            if done:
                break
        if r < len(a) and a[r][c]:
            unit = exact_div(canonical_associate(a[r][c]), a[r][c])
            a[r] = [as_relem(x * unit) for x in a[r]]
            for i in range(r):
                if a[i][c]:
                    q, _ = euclid_divmod(a[i][c], a[r][c])
                    a[i] = [as_relem(x - q * y) for x, y in zip(a[i], a[r])]
            r += 1
            a = a[:r] + [row for row in a[r:] if any(row)]
    return a[:r]


def k_solve(m, b) -> list:
    """Solve m x = b over K by Gauss-Jordan elimination."""
    n = len(m)
    a = [[KElem.coerce(x) for x in row] + [KElem.coerce(b[i])] for i, row in enumerate(m)]
    for c in range(n):
        p = next((r for r in range(c, n) if a[r][c]), None)
        if p is None:
            raise ZeroDivisionError("singular matrix over K")
        a[c], a[p] = a[p], a[c]
        inv = a[c][c].inverse()
        a[c] = [x * inv for x in a[c]]
        for r in range(n):
            if r != c and a[r][c]:
                f = a[r][c]
                a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    return [row[n] for row in a]


# ---------------------------------------------------------------------------
# LLL on Gram matrices
# ---------------------------------------------------------------------------

def lll_gram(gram, delta=Fraction(99, 100)):
    """LLL-reduce a positive definite integer Gram matrix.

    Returns ``(reduced, C)`` with ``reduced = C^T gram C`` and C unimodular.
    """
    G = [list(map(int, r)) for r in gram]
    n = len(G)
    C = identity(n)
    if n <= 1:
        return G, C

    mu = [[Fraction(0)] * n for _ in range(n)]
    bn = [Fraction(0)] * n

    def gso_row(i):
        for j in range(i):
            s = Fraction(G[i][j])
            for l in range(j):
                s -= mu[j][l] * mu[i][l] * bn[l]
            mu[i][j] = s / bn[j]
        s = Fraction(G[i][i])
        for l in range(i):
            s -= mu[i][l] * mu[i][l] * bn[l]
        bn[i] = s

    def sub(k, j, q):
        # b_k -= q b_j
        for r in range(n):
            C[r][k] -= q * C[r][j]
        gkj = G[k][j]
        G[k][k] += -2 * q * gkj + q * q * G[j][j]
        for r in range(n):
            if r != k:
                G[k][r] -= q * G[j][r]
                G[r][k] = G[k][r]

    def swap(k):
        for r in range(n):
            C[r][k], C[r][k - 1] = C[r][k - 1], C[r][k]
        G[k], G[k - 1] = G[k - 1], G[k]
        for r in range(n):
            G[r][k], G[r][k - 1] = G[r][k - 1], G[r][k]

    gso_row(0)
    gso_row(1)
    k = 1
    while k < n:
        for j in range(k - 1, -1, -1):
            q = round(mu[k][j])
            if q:
                sub(k, j, q)
                gso_row(k)
        if bn[k] >= (delta - mu[k][k - 1] ** 2) * bn[k - 1]:
            k += 1
            if k < n:
                gso_row(k)
        else:
            swap(k)
            k = max(k - 1, 1)
            for i in range(max(k - 1, 0), k + 1):
                gso_row(i)
    return G, C


def int_inverse(m) -> list:
    """Inverse of a unimodular integer matrix."""
    return to_int_matrix(rational_inverse(m))


def is_symmetric(m) -> bool:
    return all(m[i][j] == m[j][i] for i in range(len(m)) for j in range(i))


def gcd_list(xs) -> int:
    g = 0
    for x in xs:
        g = math.gcd(g, int(x))
    return g
