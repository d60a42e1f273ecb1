"""Exact arithmetic in R = Z[theta] and K = Q(sqrt 5).

theta = (-1 + sqrt 5)/2 is the golden ratio root of X^2 + X - 1.  An element
a + b*theta is stored as a pair of integers (RElem) or rationals (KElem).
The two real embeddings are sigma1 (sqrt 5 > 0) and sigma2 (sqrt 5 < 0).

Nothing in this module touches floating point except :meth:`KElem.embed`,
which exists for display only.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
import math


def _sign(x) -> int:
    return (x > 0) - (x < 0)


def sign_p_q_sqrt5(p, q) -> int:
    """Sign of p + q*sqrt(5) for rationals p, q."""
    sp, sq = _sign(p), _sign(q)
    if sq == 0:
        return sp
    if sp == 0 or sp == sq:
        return sq
    # opposite signs: the larger absolute value wins
    return sp if p * p > 5 * q * q else sq


class KElem:
    """An element a + b*theta of Q(sqrt 5) with rational coordinates."""

    __slots__ = ("a", "b")

    def __init__(self, a=0, b=0):
        self.a = Fraction(a)
        self.b = Fraction(b)

    # -- construction helpers -------------------------------------------
    @staticmethod
    def _make(a, b):
        if isinstance(a, Fraction):
            if a.denominator == 1 and b.denominator == 1:
                return RElem(a.numerator, b.numerator)
            return KElem(a, b)
        return RElem(a, b)

    @classmethod
    def coerce(cls, x) -> "KElem":
        if isinstance(x, KElem):
            return x
        if isinstance(x, int):
            return RElem(x, 0)
        if isinstance(x, Fraction):
            return KElem._make(x, Fraction(0))
        if isinstance(x, (tuple, list)) and len(x) == 2:
            return KElem._make(Fraction(x[0]), Fraction(x[1]))
        raise TypeError(f"cannot interpret {x!r} as an element of Q(sqrt 5)")

    # -- ring operations --------------------------------------------------
    def __add__(self, other):
        try:
            o = KElem.coerce(other)
        except TypeError:
            return NotImplemented
        return KElem._make(self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __neg__(self):
        return KElem._make(-self.a, -self.b)

    def __sub__(self, other):
        try:
            o = KElem.coerce(other)
        except TypeError:
            return NotImplemented
        return KElem._make(self.a - o.a, self.b - o.b)

    def __rsub__(self, other):
        return KElem.coerce(other) - self

    def __mul__(self, other):
        try:
            o = KElem.coerce(other)
        except TypeError:
            return NotImplemented
        a, b, c, d = self.a, self.b, o.a, o.b
        # theta^2 = 1 - theta
        return KElem._make(a * c + b * d, a * d + b * c - b * d)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            return (RElem(1, 0) / self) ** (-n)
        result = RElem(1, 0)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def inverse(self) -> "KElem":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("inverse of zero in Q(sqrt 5)")
        c = self.conj()
        return KElem(Fraction(c.a) / n, Fraction(c.b) / n)

    def __truediv__(self, other):
        try:
            o = KElem.coerce(other)
        except TypeError:
            return NotImplemented
        q = KElem(self.a, self.b) * o.inverse()
        return KElem._make(Fraction(q.a), Fraction(q.b))

    def __rtruediv__(self, other):
        return KElem.coerce(other) / self

    def __eq__(self, other):
        try:
            o = KElem.coerce(other)
        except TypeError:
            return NotImplemented
        return self.a == o.a and self.b == o.b

    def __hash__(self):
        return hash((self.a, self.b))

    def __bool__(self):
        return bool(self.a) or bool(self.b)

    def __repr__(self):
        return f"{type(self).__name__}({self.a}, {self.b})"

    def __str__(self):
        if not self.b:
            return str(self.a)
        if not self.a:
            return f"{self.b}*t"
        sign = "+" if self.b > 0 else "-"
        return f"{self.a} {sign} {abs(self.b)}*t"

    # -- invariants -------------------------------------------------------
    def conj(self):
        return KElem._make(Fraction(self.a - self.b), Fraction(-self.b))

    def trace(self):
        t = 2 * self.a - self.b
        return t

    def norm(self):
        return self.a * self.a - self.a * self.b - self.b * self.b

    def is_integral(self) -> bool:
        return Fraction(self.a).denominator == 1 and Fraction(self.b).denominator == 1

    def sqrt5_coords(self) -> tuple[Fraction, Fraction]:
        """Return (p, q) with self = p + q*sqrt(5)."""
        return Fraction(2 * self.a - self.b, 2), Fraction(self.b, 2)

    def sign1(self) -> int:
        p, q = self.sqrt5_coords()
        return sign_p_q_sqrt5(p, q)

    def sign2(self) -> int:
        p, q = self.sqrt5_coords()
        return sign_p_q_sqrt5(p, -q)

    def is_totally_positive(self) -> bool:
        return self.trace() > 0 and self.norm() > 0

    def embed(self) -> tuple[float, float]:
        s = math.sqrt(5.0)
        return (float(self.a) + float(self.b) * (s - 1) / 2,
                float(self.a) - float(self.b) * (s + 1) / 2)

    def to_pair(self) -> list:
        """Serialize as [a, b]; rationals become "p/q" strings."""
        out = []
        for c in (self.a, self.b):
            c = Fraction(c)
            out.append(c.numerator if c.denominator == 1 else f"{c.numerator}/{c.denominator}")
        return out


class RElem(KElem):
    """An algebraic integer a + b*theta with integer coordinates."""

    __slots__ = ()

    def __init__(self, a=0, b=0):
        if isinstance(a, Fraction):
            if a.denominator != 1:
                raise ValueError(f"{a} is not an integer")
            a = a.numerator
        if isinstance(b, Fraction):
            if b.denominator != 1:
                raise ValueError(f"{b} is not an integer")
            b = b.numerator
        self.a = int(a)
        self.b = int(b)

    def is_unit(self) -> bool:
        return abs(self.norm()) == 1


THETA = RElem(0, 1)
THETA_BAR = RElem(-1, -1)
PHI = RElem(1, 1)
ETA = RElem(3, 1)
ETA_BAR = RElem(2, -1)
ETA_INV = KElem(Fraction(2, 5), Fraction(-1, 5))
SQRT5 = RElem(1, 2)
ONE = RElem(1, 0)
ZERO = RElem(0, 0)


def as_relem(x) -> RElem:
    x = KElem.coerce(x)
    if not x.is_integral():
        raise ValueError(f"{x} is not in Z[theta]")
    return RElem(x.a, x.b)


def mul(x, y) -> KElem:
    return KElem.coerce(x) * KElem.coerce(y)


def is_totally_positive(x) -> bool:
    return KElem.coerce(x).is_totally_positive()


# ---------------------------------------------------------------------------
# Euclidean structure
# ---------------------------------------------------------------------------

def euclid_divmod(x, y) -> tuple[RElem, RElem]:
    """Return (q, r) with x = q*y + r and |N(r)| < |N(y)|.

    The four integer roundings of the exact quotient coordinates are tried and
    the remainder of smallest absolute norm wins.
    """
    x, y = as_relem(x), as_relem(y)
    if not y:
        raise ZeroDivisionError("euclid_divmod by zero")
    exact = KElem(x.a, x.b) * y.inverse()
    best = None
    for qa in (math.floor(exact.a), math.ceil(exact.a)):
        for qb in (math.floor(exact.b), math.ceil(exact.b)):
            q = RElem(qa, qb)
            r = x - q * y
            key = (abs(r.norm()), qa, qb)
            if best is None or key < best[0]:
                best = (key, q, as_relem(r))
    _, q, r = best
    if abs(r.norm()) >= abs(y.norm()):
        raise ArithmeticError(f"norm did not decrease dividing {x} by {y}")
    return q, r


def divides(y, x) -> bool:
    """True iff y | x in R."""
    y = KElem.coerce(y)
    if not y:
        return not KElem.coerce(x)
    return (KElem.coerce(x) / y).is_integral()


def exact_div(x, y) -> RElem:
    q = KElem.coerce(x) / KElem.coerce(y)
    if not q.is_integral():
        raise ArithmeticError(f"{y} does not divide {x}")
    return as_relem(q)


def gcd(x, y) -> RElem:
    x, y = as_relem(x), as_relem(y)
    while y:
        _, r = euclid_divmod(x, y)
        x, y = y, r
    return canonical_associate(x) if x else x


_PHI2 = RElem(2, 1)  # phi^2 = theta^-2
_THETA2 = RElem(1, -1)  # theta^2


def canonical_associate(x) -> RElem:
    """The associate x*(+-theta)^k that is totally positive with
    sigma1 in [1, phi^2)."""
    x = as_relem(x)
    if not x:
        raise ValueError("zero has no canonical associate")
    for u in (ONE, -ONE, THETA, -THETA):
        y = x * u
        if y.is_totally_positive():
            break
    else:  # pragma: no cover - some sign pattern always works
        raise ArithmeticError("no totally positive associate")
    while (y - _PHI2).sign1() >= 0:
        y = y * _THETA2
    while (y - ONE).sign1() < 0:
        y = y * _PHI2
    return as_relem(y)


def unit_part(x) -> RElem:
    x = as_relem(x)
    return exact_div(x, canonical_associate(x))


# ---------------------------------------------------------------------------
# Factorization into prime elements
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class IdealFactorization:
    unit: RElem
    factors: tuple  # ((prime, exponent), ...)

    def value(self) -> RElem:
        out = self.unit
        for p, e in self.factors:
            out = out * p ** e
        return as_relem(out)


@lru_cache(maxsize=None)
def _prime_above(p: int) -> tuple:
    """Canonical prime elements of R above the rational prime p."""
    if p == 5:
        return (canonical_associate(SQRT5),)
    if p % 5 in (2, 3):
        return (canonical_associate(RElem(p, 0)),)
    if p % 5 not in (1, 4):  # p == 2 handled above; keeps the branch exhaustive
        raise ValueError(p)
    from sympy.ntheory import sqrt_mod

    t = int(sqrt_mod(5, p))
    pi = gcd(RElem(p, 0), RElem(t, 0) - SQRT5)
    if abs(pi.norm()) != p:
        raise ArithmeticError(f"failed to split {p}: got {pi}")
    pi_bar = canonical_associate(pi.conj())
    return tuple(sorted({pi, pi_bar}, key=lambda z: (z.a, z.b)))


def factor(x) -> IdealFactorization:
    x = as_relem(x)
    if not x:
        raise ValueError("cannot factor zero")
    from sympy import factorint

    rest = x
    factors = []
    for p in sorted(factorint(abs(int(x.norm())))):
        for pi in _prime_above(p):
            e = 0
            while divides(pi, rest):
                rest = exact_div(rest, pi)
                e += 1
            if e:
                factors.append((pi, e))
    if not rest.is_unit():
        raise ArithmeticError(f"factorization of {x} left non-unit {rest}")
    return IdealFactorization(rest, tuple(factors))


@lru_cache(maxsize=1 << 16)
def _divisor_sigma(a: int, b: int, k: int) -> int:
    total = 1
    for pi, e in factor(RElem(a, b)).factors:
        n = abs(int(pi.norm())) ** k
        total *= sum(n ** i for i in range(e + 1))
    return total


def divisor_sigma(x, k: int) -> int:
    """Sum of N(d)^k over the ideal divisors d of (x)."""
    x = canonical_associate(x)
    return _divisor_sigma(x.a, x.b, k)


# ---------------------------------------------------------------------------
# Dedekind zeta at negative odd integers
# ---------------------------------------------------------------------------

def _chi5(a: int) -> int:
    return {0: 0, 1: 1, 4: 1, 2: -1, 3: -1}[a % 5]


def _bernoulli_poly(k: int, x: Fraction) -> Fraction:
    from sympy import Rational, bernoulli

    v = bernoulli(k, Rational(x.numerator, x.denominator))
    return Fraction(int(v.p), int(v.q))


def generalized_bernoulli_chi5(k: int) -> Fraction:
    """B_{k,chi} for the quadratic character of conductor 5."""
    return 5 ** (k - 1) * sum(_chi5(a) * _bernoulli_poly(k, Fraction(a, 5)) for a in range(1, 6))


def zeta_K_at_negative(k: int) -> Fraction:
    """zeta_K(1 - k) for K = Q(sqrt 5) and even k >= 2."""
    if k < 2 or k % 2:
        raise ValueError("k must be an even integer >= 2")
    zeta_q = -_bernoulli_poly(k, Fraction(0)) / k
    l_chi = -generalized_bernoulli_chi5(k) / k
    return zeta_q * l_chi


# ---------------------------------------------------------------------------
# (q0, q1) exponent pairs
# ---------------------------------------------------------------------------

def element_to_index(x) -> tuple[int, int]:
    """Map X to (Tr(eta^-1 X), Tr(X))."""
    x = KElem.coerce(x)
    i, j = (ETA_INV * x).trace(), x.trace()
    if Fraction(i).denominator != 1 or Fraction(j).denominator != 1:
        raise ValueError(f"{x} has non-integral index")
    return int(i), int(j)


def index_to_element(i: int, j: int) -> RElem:
    if (i, j) == (0, 0):
        return ZERO
    x = RElem(j - i, j - 2 * i)
    if not x.is_totally_positive():
        raise ValueError(f"index ({i}, {j}) is not realized by a totally positive element")
    return x


def is_valid_index(i: int, j: int) -> bool:
    if (i, j) == (0, 0):
        return True
    return RElem(j - i, j - 2 * i).is_totally_positive()


def valid_columns(i: int) -> range:
    """All j with (i, j) valid, for i >= 1."""
    if i == 0:
        return range(0, 1)
    # j lies strictly between 2i/(1 + 1/sqrt5) and 2i/(1 - 1/sqrt5)
    lo = int(i * 1.38) - 1
    hi = int(i * 3.62) + 2
    js = [j for j in range(max(lo, 1), hi + 1) if is_valid_index(i, j)]
    return range(js[0], js[-1] + 1)
