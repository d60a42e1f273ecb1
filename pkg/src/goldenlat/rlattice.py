"""Even unimodular Z[theta]-lattices and their trace lattices.

Conventions
-----------
* An R-lattice is stored as the Gram matrix of its polar form B over R, so
  Q(x) = B(x, x)/2 and the diagonal lies in 2R.
* ``trace_gram(g, alpha)`` uses the Z-basis b_1..b_n, theta*b_1..theta*b_n.
  A trace-lattice vector with coordinates (x, y) is the R-vector x + y*theta.
* All minima are Q-values: E8 has minimum 1 and the Leech lattice 2.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
import json
import time

import numpy as np

from . import enumeration
from .hmf import InsufficientPrecision, extremal_form
from .linalg import (
    det_R, hnf_R, identity, int_det, is_symmetric, k_solve, leading_minors_R,
    matmul, rank, rational_inverse, rational_solve, to_int_matrix, transpose,
)
from .qseries import QExp
from .ring import ETA_INV, THETA, KElem, RElem, as_relem


class RGram:
    """Gram matrix of the polar form of an R-lattice."""

    def __init__(self, entries):
        self.entries = [[as_relem(x) for x in row] for row in entries]
        self.n = len(self.entries)
        if any(len(r) != self.n for r in self.entries):
            raise ValueError("Gram matrix must be square")
        if not is_symmetric(self.entries):
            raise ValueError("Gram matrix must be symmetric")

    def __getitem__(self, kl):
        k, l = kl
        return self.entries[k][l]

    def __eq__(self, other):
        return isinstance(other, RGram) and self.entries == other.entries

    def __repr__(self):
        return f"RGram(n={self.n})"

    def det(self) -> RElem:
        return det_R(self.entries)

    def is_even(self) -> bool:
        return all((self.entries[k][k].a % 2, self.entries[k][k].b % 2) == (0, 0) for k in range(self.n))

    def is_totally_positive_definite(self) -> bool:
        minors = leading_minors_R(self.entries)
        return len(minors) == self.n and all(m.is_totally_positive() for m in minors)

    def Q(self, coords) -> KElem:
        """Q of the vector with R-coordinates ``coords``."""
        c = [KElem.coerce(x) for x in coords]
        total = KElem(0)
        for k in range(self.n):
            if not c[k]:
                continue
            for l in range(self.n):
                if c[l]:
                    total = total + c[k] * c[l] * self.entries[k][l]
        return total * Fraction(1, 2)

    def to_json(self) -> dict:
        return {"n": self.n, "entries": [[x.to_pair() for x in row] for row in self.entries]}

    @classmethod
    def from_json(cls, data) -> "RGram":
        if isinstance(data, str):
            data = json.loads(data)
        entries = [[RElem(*x) for x in row] for row in data["entries"]]
        if "n" in data and data["n"] != len(entries):
            raise ValueError(f"declared n={data['n']} but {len(entries)} rows given")
        return cls(entries)


def zgram_to_json(t) -> dict:
    t = [list(map(int, r)) for r in t]
    return {"m": len(t), "entries": t}


def zgram_from_json(data) -> list:
    if isinstance(data, str):
        data = json.loads(data)
    t = [list(map(int, r)) for r in data["entries"]]
    if "m" in data and data["m"] != len(t):
        raise ValueError(f"declared m={data['m']} but {len(t)} rows given")
    return t


def check_zgram(t) -> None:
    m = len(t)
    if any(len(r) != m for r in t):
        raise ValueError("ZGram must be square")
    if not is_symmetric(t):
        raise ValueError("ZGram must be symmetric")
    if any(t[i][i] % 2 for i in range(m)):
        raise ValueError("ZGram must have even diagonal")
    try:
        np.linalg.cholesky(np.array(t, dtype=float))
    except np.linalg.LinAlgError:
        raise ValueError("ZGram must be positive definite") from None


# ---------------------------------------------------------------------------
# basic invariants
# ---------------------------------------------------------------------------

def is_even_unimodular(g: RGram) -> bool:
    return g.is_even() and g.det().is_unit() and g.is_totally_positive_definite()


def orthogonal_sum(g1: RGram, g2: RGram) -> RGram:
    n1, n2 = g1.n, g2.n
    zero = RElem(0, 0)
    rows = [list(r) + [zero] * n2 for r in g1.entries]
    rows += [[zero] * n1 + list(r) for r in g2.entries]
    return RGram(rows)


def scale(g: RGram, c) -> RGram:
    c = as_relem(c)
    return RGram([[c * x for x in row] for row in g.entries])


def trace_gram(g: RGram, alpha=ETA_INV) -> list:
    """Polar Gram matrix of Tr(alpha Q) on b_1..b_n, theta b_1..theta b_n."""
    alpha = KElem.coerce(alpha)
    if not alpha.is_totally_positive():
        raise ValueError(f"alpha = {alpha} is not totally positive")
    n = g.n
    powers = [KElem(1), THETA, THETA * THETA]
    out = [[0] * (2 * n) for _ in range(2 * n)]
    for s in (0, 1):
        for t in (0, 1):
            f = alpha * powers[s + t]
            for k in range(n):
                for l in range(n):
                    v = Fraction((f * g.entries[k][l]).trace())
                    if v.denominator != 1:
                        raise ValueError(f"trace form of alpha = {alpha} is not integral")
                    out[s * n + k][t * n + l] = v.numerator
    return out


def theta_matrix(n: int) -> list:
    """Multiplication by theta in the trace basis (columns are images)."""
    m = [[0] * (2 * n) for _ in range(2 * n)]
    for k in range(n):
        m[n + k][k] = 1  # theta * b_k = theta b_k
        m[k][n + k] = 1  # theta * theta b_k = b_k - theta b_k
        m[n + k][n + k] = -1
    return m


def dual_basis_matrix(t) -> list:
    return rational_inverse(t)


def trace_minimum(g: RGram, alpha=ETA_INV, workers: int = 1) -> tuple:
    return enumeration.minimum(trace_gram(g, alpha), workers)


# ---------------------------------------------------------------------------
# Hilbert theta series
# ---------------------------------------------------------------------------

def _quadratic_values(G, V) -> np.ndarray:
    return np.einsum("ij,jk,ik->i", V, np.array(G, dtype=np.int64), V) // 2


def hilbert_theta(g: RGram, prec: int, workers: int = 1) -> QExp:
    """Counts of vectors by (Tr(eta^-1 Q), Tr(Q)) for Tr(eta^-1 Q) <= prec."""
    t_eta = trace_gram(g, ETA_INV)
    t_one = trace_gram(g, 1)
    V, norms = enumeration.enumerate_short(t_eta, prec, workers)
    coeffs = {(0, 0): 1}
    if len(V):
        j = _quadratic_values(t_one, V)
        keys, counts = np.unique(np.stack([norms, j], axis=1), axis=0, return_counts=True)
        for (a, b), c in zip(keys.tolist(), counts.tolist()):
            coeffs[(a, b)] = 2 * c
    return QExp(coeffs, prec)


@dataclass
class GoldenReport:
    golden: bool
    weight: int
    prec: int
    dimension: int
    min_eta: int
    min_one: int
    nu: tuple
    extremal_nu: tuple
    unimodular_bound: int
    eta_extremal: bool
    mismatches: list = field(default_factory=list)

    def to_json(self) -> dict:
        d = dict(self.__dict__)
        d["nu"] = list(self.nu)
        d["extremal_nu"] = list(self.extremal_nu)
        d["mismatches"] = [[i, j, str(a), str(b)] for (i, j), a, b in self.mismatches]
        return d


def _extremal_for(weight: int, prec: int):
    hp = max(prec, 3)
    while True:
        try:
            return extremal_form(weight, hp)
        except InsufficientPrecision:
            if hp >= max(prec, 12):
                raise
            hp += 1


def golden_check(g: RGram, prec: int, workers: int = 1):
    """Compare the Hilbert theta series with the extremal form of weight n/2.

    Returns ``(is_golden, GoldenReport)``.
    """
    if not is_even_unimodular(g):
        raise ValueError("golden_check needs an even unimodular R-lattice")
    if g.n % 2:
        raise ValueError("odd rank has no extremal form of integral weight")
    weight = g.n // 2
    ext = _extremal_for(weight, prec)
    if prec < ext.s:
        raise InsufficientPrecision(
            f"precision {prec} does not reach the minimal row {ext.s} of the extremal form"
        )
    theta = hilbert_theta(g, prec, workers)
    form = ext.form.truncate(prec)
    theta = theta.truncate(min(prec, form.prec))
    keys = set(theta.coeffs) | set(form.coeffs)
    mismatches = sorted(
        (k, theta.coeffs.get(k, 0), form.coeffs.get(k, 0))
        for k in keys if theta.coeffs.get(k, 0) != form.coeffs.get(k, 0)
    )
    nu = (theta - 1).nu()
    min_eta = nu[0] if nu != "zero" else None
    min_one, _ = trace_minimum(g, 1, workers)
    N = 2 * g.n
    report = GoldenReport(
        golden=not mismatches, weight=weight, prec=prec, dimension=N,
        min_eta=min_eta, min_one=min_one, nu=tuple(nu) if nu != "zero" else None,
        extremal_nu=ext.nu, unimodular_bound=1 + N // 24,
        eta_extremal=min_eta == 1 + N // 24, mismatches=mismatches,
    )
    return report.golden, report


# ---------------------------------------------------------------------------
# golden structures from a symmetric endomorphism
# ---------------------------------------------------------------------------

@dataclass
class GoldenStructure:
    gram: RGram
    basis_change: list
    z_source: list = None

    def to_json(self) -> dict:
        return {
            "gram": self.gram.to_json(),
            "basis_change": self.basis_change,
            "z_source": self.z_source,
        }


def _int_mat(m):
    return [list(map(int, r)) for r in m]


def check_golden_inputs(t, T, sigma=None) -> list:
    """Precondition violations for a (ZGram, T, sigma) triple; empty if fine."""
    problems = []
    m = len(t)
    try:
        check_zgram(t)
    except ValueError as e:
        problems.append(str(e))
        return problems
    if abs(int_det(t)) != 1:
        problems.append("gram is not unimodular")
    if len(T) != m or any(len(r) != m for r in T):
        problems.append("T has the wrong shape")
        return problems
    I = identity(m)
    TT = matmul(T, T)
    if any(TT[i][j] + T[i][j] != I[i][j] for i in range(m) for j in range(m)):
        problems.append("T does not satisfy T^2 + T = 1")
    tT = matmul(t, T)
    if tT != transpose(tT):
        problems.append("T is not symmetric with respect to the gram form")
    if m % 2:
        problems.append("rank is odd, so T cannot define a Z[theta]-structure")
    if sigma is not None:
        if len(sigma) != m or any(len(r) != m for r in sigma):
            problems.append("sigma has the wrong shape")
        else:
            if matmul(transpose(sigma), matmul(t, sigma)) != [list(r) for r in t]:
                problems.append("sigma is not an isometry of the gram form")
            lhs = matmul(sigma, T)
            rhs = matmul([[-I[i][j] - T[i][j] for j in range(m)] for i in range(m)], sigma)
            if lhs != rhs:
                problems.append("sigma does not conjugate T to -1 - T")
    return problems


def goldenex(t, T, z_source=None) -> GoldenStructure:
    """R-lattice structure on an even unimodular Z-lattice from T.

    T is a symmetric endomorphism with T^2 + T = 1 and plays the role of
    conj(theta): the R-action is theta * x = (-1 - T) x, and

        Q(x) = (q(x) + q(Tx))/2 + (q(Tx) - q(x))/2 * sqrt 5,

    so that q = Tr(eta^-1 Q).  The R-basis comes from Hermite reduction over R.
    """
    t, T = _int_mat(t), _int_mat(T)
    problems = check_golden_inputs(t, T)
    if problems:
        raise ValueError("; ".join(problems))
    m = len(t)
    n = m // 2
    S = [[-int(i == j) - T[i][j] for j in range(m)] for i in range(m)]

    # K-basis f_1..f_n chosen among the standard vectors
    f = []
    cols = []
    for e in range(m):
        vec = [int(r == e) for r in range(m)]
        svec = [S[r][e] for r in range(m)]
        trial = cols + [vec, svec]
        if rank(trial) == len(trial):
            f.append(e)
            cols = trial
        if len(f) == n:
            break
    M = [[0] * m for _ in range(m)]
    for k, e in enumerate(f):
        for r in range(m):
            M[r][k] = int(r == e)
            M[r][n + k] = S[r][e]

    # R-coordinates of the standard generators
    gens = []
    for e in range(m):
        c = rational_solve(M, [int(r == e) for r in range(m)])
        gens.append([KElem(c[k], c[n + k]) for k in range(n)])
    den = 1
    for row in gens:
        for x in row:
            for y in (Fraction(x.a), Fraction(x.b)):
                den = den * y.denominator // _gcd(den, y.denominator)
    rows = hnf_R([[x * den for x in row] for row in gens])
    if len(rows) != n:
        raise ArithmeticError(f"module has rank {len(rows)}, expected {n}")
    lam = []
    for row in rows:
        a = [Fraction(KElem.coerce(x).a) / den for x in row]
        b = [Fraction(KElem.coerce(x).b) / den for x in row]
        v = [sum(M[r][k] * a[k] + M[r][n + k] * b[k] for k in range(n)) for r in range(m)]
        lam.append(to_int_matrix([v])[0])
    slam = [[sum(S[r][c] * v[c] for c in range(m)) for r in range(m)] for v in lam]
    P = transpose(lam + slam)
    if abs(int_det(P)) != 1:
        raise ArithmeticError("extracted R-basis is not a Z-basis of the lattice")

    def b(x, y):
        return sum(x[i] * t[i][j] * y[j] for i in range(m) for j in range(m))

    def Tv(v):
        return [sum(T[r][c] * v[c] for c in range(m)) for r in range(m)]

    entries = []
    for x in lam:
        row = []
        for y in lam:
            bt = b(Tv(x), Tv(y))
            row.append(RElem(bt, bt - b(x, y)))
        entries.append(row)
    gram = RGram(entries)
    if matmul(transpose(P), matmul(t, P)) != trace_gram(gram, ETA_INV):
        raise ArithmeticError("trace form of the extracted R-lattice differs from the input")
    return GoldenStructure(gram=gram, basis_change=P, z_source=z_source)


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


# ---------------------------------------------------------------------------
# Galois symmetry and trace identities
# ---------------------------------------------------------------------------

def Q_trace_coords(g: RGram, x) -> KElem:
    n = g.n
    return g.Q([RElem(int(x[k]), int(x[n + k])) for k in range(n)])


def galois_check(g: RGram, sigma) -> bool:
    """Q(sigma x) = conj(theta^2 Q(x)) on a basis and on pairwise sums."""
    t = trace_gram(g, ETA_INV)
    m = len(t)
    sigma = _int_mat(sigma)
    if matmul(transpose(sigma), matmul(t, sigma)) != t:
        raise ValueError("sigma is not an isometry of the eta^-1 trace lattice")
    th2 = THETA * THETA
    basis = [[int(i == j) for i in range(m)] for j in range(m)]
    vecs = list(basis)
    for i in range(m):
        for j in range(i + 1, m):
            vecs.append([basis[i][r] + basis[j][r] for r in range(m)])
    for v in vecs:
        sv = [sum(sigma[r][c] * v[c] for c in range(m)) for r in range(m)]
        if Q_trace_coords(g, sv) != (th2 * Q_trace_coords(g, v)).conj():
            return False
    return True


def trace_identity_check(g: RGram, vectors) -> bool:
    """q_1(x) = q_eta(x) + q_eta(conj(theta) x) and 5 q_eta(x) = q_1(x) + q_1(theta x)."""
    t_eta = np.array(trace_gram(g, ETA_INV), dtype=np.int64)
    t_one = np.array(trace_gram(g, 1), dtype=np.int64)
    Th = np.array(theta_matrix(g.n), dtype=np.int64)
    Tb = -np.eye(2 * g.n, dtype=np.int64) - Th
    V = np.atleast_2d(np.array(vectors, dtype=np.int64))
    if V.size == 0:
        return True

    def q(G, X):
        return np.einsum("ij,jk,ik->i", X, G, X) // 2

    q_eta, q_one = q(t_eta, V), q(t_one, V)
    ok1 = np.array_equal(q_one, q_eta + q(t_eta, V @ Tb.T))
    ok2 = np.array_equal(5 * q_eta, q_one + q(t_one, V @ Th.T))
    return bool(ok1 and ok2)


def minima_bounds_hold(min_eta: int, min_one: int) -> bool:
    return 2 * min_eta <= min_one and 2 * min_one <= 5 * min_eta


# ---------------------------------------------------------------------------
# modular families
# ---------------------------------------------------------------------------

def family_alpha(a: int) -> KElem:
    return KElem(1) + ETA_INV * a


def modular_family(g: RGram, a: int, budget: float = 60.0, workers: int = 1):
    """Trace lattice L_{1 + a eta^-1} with a modularity certificate."""
    from .isometry import modularity_check

    if a < 0:
        raise ValueError("a must be non-negative")
    if not is_even_unimodular(g):
        raise ValueError("modular_family needs an even unimodular R-lattice")
    t = trace_gram(g, family_alpha(a))
    p = a * a + 5 * a + 5
    det = int_det(t)
    min_eta, _ = trace_minimum(g, ETA_INV, workers)
    min_one, _ = trace_minimum(g, 1, workers)
    mn, kissing = enumeration.minimum(t, workers, start=max(1, min_one + a * min_eta))
    verdict = modularity_check(t, p, budget=budget, workers=workers)
    cert = {
        "a": a,
        "p": p,
        "min": mn,
        "kissing": kissing,
        "min_bound": min_one + a * min_eta,
        "min_ok": mn >= min_one + a * min_eta,
        "det": det,
        "det_ok": det == p ** g.n,
        "modular": verdict.modular,
        "witness": verdict.witness,
        "evidence": verdict.evidence,
    }
    return t, cert
