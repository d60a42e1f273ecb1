"""Explicit golden lattices built from the icosians.

The icosian ring is the maximal order of the definite quaternion algebra
over Q(sqrt 5) ramified only at the two infinite places.  Its 120 units are

* the 8 quaternions +-1, +-i, +-j, +-k,
* the 16 quaternions (+-1 +-i +-j +-k)/2,
* the 96 even coordinate permutations of (0, +-1, +-phi^-1, +-phi)/2,

with phi = 1 + theta.  F4 is the icosian ring with Q = nrd.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import permutations, product
import json

from .linalg import hnf_R, k_solve, matmul
from .rlattice import (
    RGram, check_golden_inputs, golden_check, is_even_unimodular, orthogonal_sum,
    trace_gram, zgram_from_json,
)
from .ring import ETA_INV, PHI, THETA, KElem, RElem


@dataclass(frozen=True)
class Quat:
    w: KElem
    x: KElem
    y: KElem
    z: KElem

    @classmethod
    def of(cls, *coords) -> "Quat":
        return cls(*(KElem.coerce(c) for c in coords))

    def coords(self) -> tuple:
        return (self.w, self.x, self.y, self.z)

    def __mul__(self, o):
        if not isinstance(o, Quat):
            c = KElem.coerce(o)
            return Quat(*(c * v for v in self.coords()))
        a1, b1, c1, d1 = self.coords()
        a2, b2, c2, d2 = o.coords()
        return Quat(
            a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
            a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
            a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
            a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
        )

    def __rmul__(self, c):
        return self * c

    def __add__(self, o):
        return Quat(*(u + v for u, v in zip(self.coords(), o.coords())))

    def __neg__(self):
        return Quat(*(-v for v in self.coords()))

    def conj(self) -> "Quat":
        return Quat(self.w, -self.x, -self.y, -self.z)

    def nrd(self) -> KElem:
        return sum((v * v for v in self.coords()), KElem(0))

    def trd(self) -> KElem:
        return self.w * 2

    def key(self) -> tuple:
        return tuple((Fraction(v.a), Fraction(v.b)) for v in self.coords())


def _even_permutations(n: int):
    for p in permutations(range(n)):
        inversions = sum(p[i] > p[j] for i in range(n) for j in range(i + 1, n))
        if inversions % 2 == 0:
            yield p


@lru_cache(maxsize=None)
def icosian_units() -> tuple:
    half = Fraction(1, 2)
    units = []
    for pos in range(4):
        for s in (1, -1):
            c = [0] * 4
            c[pos] = s
            units.append(Quat.of(*c))
    for signs in product((1, -1), repeat=4):
        units.append(Quat.of(*(s * half for s in signs)))
    base = [KElem(0), KElem(1), THETA, PHI]  # 0, 1, phi^-1, phi
    for perm in _even_permutations(4):
        for signs in product((1, -1), repeat=3):
            vals = [base[0], base[1] * signs[0], base[2] * signs[1], base[3] * signs[2]]
            c = [None] * 4
            for src, dst in enumerate(perm):
                c[dst] = vals[src] * half
            units.append(Quat(*c))
    keys = {u.key() for u in units}
    if len(keys) != 120:
        raise ArithmeticError(f"expected 120 distinct icosians, found {len(keys)}")
    if any(u.nrd() != 1 for u in units):
        raise ArithmeticError("icosian with reduced norm != 1")
    return tuple(units)


def check_icosian_closure(units=None) -> bool:
    units = units or icosian_units()
    keys = {u.key() for u in units}
    one = Quat.of(1, 0, 0, 0)
    for u in units:
        if u.conj().key() not in keys or (u * u.conj()).key() != one.key():
            return False
        for v in units:
            if (u * v).key() not in keys:
                return False
    return True


def _bilinear(u: Quat, v: Quat) -> KElem:
    """Polar form of nrd: B(u, v) = trd(u conj(v)) = 2 <u, v>."""
    return sum((a * b for a, b in zip(u.coords(), v.coords())), KElem(0)) * 2


@lru_cache(maxsize=None)
def icosian_basis(pivot: str = "min_norm") -> tuple:
    """An R-basis of the icosian ring by Hermite reduction of its units."""
    rows = [[c * 2 for c in u.coords()] for u in icosian_units()]
    red = hnf_R(rows, pivot=pivot)
    if len(red) != 4:
        raise ArithmeticError(f"icosian units span rank {len(red)}")
    return tuple(Quat(*(KElem.coerce(c) / 2 for c in row)) for row in red)


def gram_of(basis) -> RGram:
    return RGram([[_bilinear(u, v) for v in basis] for u in basis])


@lru_cache(maxsize=None)
def f4(pivot: str = "min_norm", verify: bool = True) -> RGram:
    g = gram_of(icosian_basis(pivot))
    if verify:
        if not is_even_unimodular(g):
            raise ArithmeticError("icosian Gram matrix is not even unimodular")
        ok, _ = golden_check(g, 1)
        if not ok:
            raise ArithmeticError("icosian lattice failed the golden check")
    return g


def f4_perp_f4() -> RGram:
    return orthogonal_sum(f4(), f4())


# ---------------------------------------------------------------------------
# maps on the icosian ring as integer matrices
# ---------------------------------------------------------------------------

def trace_coords(basis, q: Quat) -> list:
    """Z-coordinates of q in the basis b_1..b_4, theta b_1..theta b_4."""
    m = [[b.coords()[r] for b in basis] for r in range(4)]
    c = k_solve(m, list(q.coords()))
    out = []
    for part in ("a", "b"):
        for x in c:
            v = Fraction(getattr(x, part))
            if v.denominator != 1:
                raise ValueError("quaternion is not in the lattice")
            out.append(v.numerator)
    return out


def matrix_of(fn, basis) -> list:
    """Integer matrix (columns are images) of a map on the trace Z-basis."""
    zbasis = list(basis) + [b * THETA for b in basis]
    cols = [trace_coords(basis, fn(b)) for b in zbasis]
    return [list(r) for r in zip(*cols)]


def galois_twist(q: Quat) -> Quat:
    """x -> phi * (coordinate-wise conjugate of x with j, k swapped)."""
    w, x, y, z = (c.conj() for c in q.coords())
    return Quat(w, x, z, y) * PHI


def order5_unit() -> Quat:
    """An icosian u of order 5 with u + u^-1 = conj(theta)."""
    target = KElem(Fraction(-1, 2), Fraction(-1, 2))
    for u in icosian_units():
        if u.w == target:
            return u
    raise ArithmeticError("no icosian of order 5 found")


def e8_golden_inputs():
    """(ZGram of E8, T, sigma) for a golden structure on E8.

    T = z + z^4 with z the left multiplication by an order-5 icosian;
    it acts as conj(theta).  sigma is the matrix of :func:`galois_twist`.
    """
    basis = icosian_basis()
    g = gram_of(basis)
    t = trace_gram(g, ETA_INV)
    u = order5_unit()
    z = matrix_of(lambda q: u * q, basis)
    z4 = matmul(z, matmul(z, matmul(z, z)))
    T = [[z[i][j] + z4[i][j] for j in range(8)] for i in range(8)]
    sigma = matrix_of(galois_twist, basis)
    return t, T, sigma, z


# ---------------------------------------------------------------------------
# import of user supplied candidates
# ---------------------------------------------------------------------------

class GoldenImportError(ValueError):
    def __init__(self, problems):
        self.problems = list(problems)
        super().__init__("; ".join(self.problems))


def import_golden_candidate(path_or_data):
    """Load {gram, T, sigma?, label} and validate every precondition."""
    if isinstance(path_or_data, dict):
        data = path_or_data
    else:
        with open(path_or_data) as fh:
            try:
                data = json.load(fh)
            except json.JSONDecodeError as exc:
                raise GoldenImportError([f"malformed JSON: line {exc.lineno}: {exc.msg}"]) from None
    problems = [f"missing field {k!r}" for k in ("gram", "T") if k not in data]
    if problems:
        raise GoldenImportError(problems)
    try:
        t = zgram_from_json(data["gram"]) if isinstance(data["gram"], dict) else [list(map(int, r)) for r in data["gram"]]
        T = [list(map(int, r)) for r in data["T"]]
        sigma = data.get("sigma")
        sigma = [list(map(int, r)) for r in sigma] if sigma is not None else None
    except (TypeError, ValueError) as exc:
        raise GoldenImportError([f"malformed matrix: {exc}"]) from None
    problems = check_golden_inputs(t, T, sigma)
    if problems:
        raise GoldenImportError(problems)
    return t, T, sigma, data.get("label", "")
