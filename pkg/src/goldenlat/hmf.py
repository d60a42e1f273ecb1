"""Symmetric Hilbert modular forms for Q(sqrt 5).

The ring of symmetric forms is the polynomial ring Q[A2, B6, C10].  The
generators are rebuilt here from Eisenstein series

    E_k = 1 + kappa_k * sum_{X >> 0} sigma_{k-1}((X)) q^X,   kappa_k = 4 / zeta_K(1 - k),

and normalized through their restrictions to the diagonal:

* A2 = E_2, whose restriction is the elliptic E4;
* B6 = c * (A2^3 - E_6), scaled so that its restriction is Delta;
* C10 is the combination of E_10, A2^5 and A2^2 B6 whose restriction
  vanishes, scaled so that A2*C10 - B6^2 vanishes at (2, 4).

A wrong Eisenstein constant breaks one of these identities, and
:func:`generators` raises instead of returning garbage.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
import logging

from .qseries import QExp, indices_up_to
from .ring import divisor_sigma, index_to_element, zeta_K_at_negative
from .table import EXPECTED_TABLE, TABLE_WEIGHTS

log = logging.getLogger(__name__)


class InsufficientPrecision(ArithmeticError):
    """The requested result needs rows beyond the available precision."""


class NormalizationError(ArithmeticError):
    """A generator failed its restriction identity."""


def eisenstein_constant(k: int) -> Fraction:
    return 4 / zeta_K_at_negative(k)


@lru_cache(maxsize=None)
def eisenstein(k: int, prec: int) -> QExp:
    kappa = eisenstein_constant(k)
    coeffs = {(0, 0): Fraction(1)}
    for i, j in indices_up_to(prec)[1:]:
        coeffs[(i, j)] = kappa * divisor_sigma(index_to_element(i, j), k - 1)
    return QExp(coeffs, prec, check=False)


def _sigma(n: int, k: int) -> int:
    return sum(d ** k for d in range(1, n + 1) if n % d == 0)


def elliptic_E4(prec: int) -> list:
    return [1] + [240 * _sigma(n, 3) for n in range(1, prec + 1)]


def elliptic_Delta(prec: int) -> list:
    """q * prod (1 - q^n)^24 through q^prec."""
    series = [0] * (prec + 1)
    series[0] = 1
    for n in range(1, prec + 1):
        for _ in range(24):
            # multiply by (1 - q^n) in place, high degrees first
            for d in range(prec, n - 1, -1):
                series[d] -= series[d - n]
    return [0] + series[:prec]


@dataclass(frozen=True)
class GeneratorSet:
    A2: QExp
    B6: QExp
    C10: QExp
    prec: int


@lru_cache(maxsize=None)
def generators(prec: int = 8) -> GeneratorSet:
    if prec < 3:
        raise ValueError("generators need precision >= 3")
    A2 = eisenstein(2, prec)

    B6 = A2 ** 3 - eisenstein(6, prec)
    c6 = B6.restrict_q1()[1]
    if not c6:
        raise NormalizationError("A2^3 - E6 has no q^1 term after restriction")
    B6 = B6 * (1 / c6)
    if B6.restrict_q1() != [Fraction(v) for v in elliptic_Delta(prec)]:
        raise NormalizationError("restriction of B6 is not Delta; check kappa_6")

    raw = eisenstein(10, prec) - A2 ** 5
    A2sqB6 = A2 ** 2 * B6
    d = raw.restrict_q1()[1] / A2sqB6.restrict_q1()[1]
    C10 = raw - A2sqB6 * d
    if any(C10.restrict_q1()):
        raise NormalizationError("no combination of E10, A2^5, A2^2 B6 restricts to 0")
    lead = C10[2, 4]
    if not lead:
        raise NormalizationError("C10 vanishes at (2, 4)")
    C10 = C10 * (B6[1, 2] ** 2 / lead)
    return GeneratorSet(A2, B6, C10, prec)


def weight_exponents(w: int) -> list:
    """All (a, b, c) with 2a + 6b + 10c = w, pure A2 power first."""
    if w < 2 or w % 2:
        raise ValueError(f"weight must be even and >= 2, got {w}")
    out = []
    for c in range(w // 10 + 1):
        for b in range((w - 10 * c) // 6 + 1):
            rest = w - 10 * c - 6 * b
            out.append((rest // 2, b, c))
    out.sort(key=lambda e: (e[1] + e[2], e))
    return out


@lru_cache(maxsize=None)
def _power(name: str, n: int, prec: int) -> QExp:
    if n == 0:
        return QExp.one(prec)
    if n == 1:
        return getattr(generators(prec), name)
    return _power(name, n - 1, prec) * _power(name, 1, prec)


@lru_cache(maxsize=None)
def monomial(a: int, b: int, c: int, prec: int) -> QExp:
    return _power("A2", a, prec) * _power("B6", b, prec) * _power("C10", c, prec)


def monomial_basis(w: int, prec: int = 8) -> list:
    return [monomial(a, b, c, prec) for a, b, c in weight_exponents(w)]


@dataclass
class ExtremalResult:
    weight: int
    form: QExp
    s: int
    t: int
    s_eta: int
    s_one: int
    pm: str
    unique: bool
    coefficients: list = field(default_factory=list)
    monomials: list = field(default_factory=list)
    last_row: int = 0

    @property
    def nu(self) -> tuple:
        return (self.s, self.t)

    def to_json(self) -> dict:
        return {
            "weight": self.weight,
            "nu": [self.s, self.t],
            "s_eta": self.s_eta,
            "s_one": self.s_one,
            "pm": self.pm,
            "unique": self.unique,
            "coefficients": [
                {"monomial": {"A2": a, "B6": b, "C10": c}, "value": str(v)}
                for (a, b, c), v in zip(self.monomials, self.coefficients)
            ],
        }


def _dot(u, v):
    return sum((x * y for x, y in zip(u, v)), Fraction(0))


def _classify(s_one, lead) -> str:
    if s_one == lead:
        return "+"
    if s_one == 2 * lead:
        return "-"
    return f"other({Fraction(s_one) / lead})"


def extremal_form(w: int, prec: int = 8) -> ExtremalResult:
    """Form of weight w with constant term 1 maximizing nu(f - 1).

    Rows are imposed in lexicographic order as long as the affine solution
    space allows a zero coefficient.  The first row that cannot be zeroed
    fixes nu(f - 1); further rows keep being zeroed until a single form
    remains, and ``unique`` records whether that was already true at nu.
    """
    exps = weight_exponents(w)
    basis = [monomial(a, b, c, prec) for a, b, c in exps]
    dim = len(basis)
    # affine space: particular + span(null)
    particular = [Fraction(0)] * dim
    particular[0] = Fraction(1)  # pure A2 power carries the constant term
    null = [[Fraction(int(k == m)) for k in range(dim)] for m in range(1, dim)]

    found = None
    unique = None
    last_row = 0
    for i, j in indices_up_to(prec)[1:]:
        row = [f[i, j] for f in basis]
        last_row = i
        hits = [_dot(row, n) for n in null]
        pivot = next((k for k, h in enumerate(hits) if h), None)
        if pivot is None:
            if found is None and _dot(row, particular):
                found = (i, j)
                unique = not null
                if unique:
                    break
            continue
        n0, h0 = null[pivot], hits[pivot]
        scale = _dot(row, particular) / h0
        particular = [p - scale * x for p, x in zip(particular, n0)]
        null = [
            [x - (h / h0) * y for x, y in zip(n, n0)]
            for k, (n, h) in enumerate(zip(null, hits))
            if k != pivot
        ]
        if found is not None and not null:
            break
    if found is None:
        raise InsufficientPrecision(f"weight {w}: nu(f - 1) not determined within precision {prec}")
    if null:
        raise InsufficientPrecision(f"weight {w}: extremal space not pinned within precision {prec}")
    if not unique:
        log.warning("weight %d: extremal form is not unique at nu = %s", w, found)

    form = QExp({}, prec)
    for coeff, f in zip(particular, basis):
        if coeff:
            form = form + f * coeff
    s, t = found
    lead = form[s, t]
    s_eta = form.row_sum(s)
    s_one = form.column_sum(t)
    for v in (s_eta, s_one):
        if v.denominator != 1:
            raise ArithmeticError(f"weight {w}: non-integral kissing number {v}")
    return ExtremalResult(
        weight=w, form=form, s=s, t=t,
        s_eta=int(s_eta), s_one=int(s_one), pm=_classify(s_one, lead),
        unique=unique, coefficients=particular, monomials=exps, last_row=last_row,
    )


def nu_bound(w: int) -> tuple:
    s = 1 + w // 6
    return s, (5 * s) // 2


def check_nu_bound(r: ExtremalResult) -> bool:
    s_max, _ = nu_bound(r.weight)
    return r.s <= s_max and 2 * r.s <= r.t <= (5 * r.s) // 2


def table_reproduce(prec: int = 8, weights=TABLE_WEIGHTS) -> list:
    if prec < 7:
        log.info("precision %d is below the recommended 7 for the full table", prec)
    return [extremal_form(w, prec) for w in weights]


def diff_table(results, expected=EXPECTED_TABLE) -> list:
    """Per-cell mismatches between computed rows and the expected table."""
    got = {r.weight: r for r in results}
    mismatches = []
    for row in expected:
        w = row["weight"]
        r = got.get(w)
        if r is None:
            mismatches.append((w, "row", row, None))
            continue
        cells = {"nu": (r.s, r.t), "s_eta": r.s_eta, "s_one": r.s_one, "pm": r.pm}
        for key, value in cells.items():
            want = tuple(row[key]) if key == "nu" else row[key]
            if want != value:
                mismatches.append((w, key, want, value))
    return mismatches
