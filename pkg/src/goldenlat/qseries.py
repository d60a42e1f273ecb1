"""Truncated (q0, q1)-expansions.

A series is a sparse map ``(i, j) -> Fraction`` where ``q0^i q1^j`` stands for
``exp(2 pi i Tr(z X))`` with ``i = Tr(eta^-1 X)`` and ``j = Tr(X)``.  Every
index other than (0, 0) must come from a totally positive X, so for a given
``i`` only finitely many ``j`` occur (roughly 1.38 i < j < 3.62 i).

A QExp of precision P holds exact coefficients for every index with i <= P.
"""

from __future__ import annotations

from collections import defaultdict
from fractions import Fraction
from functools import lru_cache
import json

from .ring import is_valid_index, valid_columns


@lru_cache(maxsize=None)
def indices_up_to(prec: int) -> tuple:
    """All valid index pairs with i <= prec, in lexicographic order."""
    out = [(0, 0)]
    for i in range(1, prec + 1):
        out.extend((i, j) for j in valid_columns(i))
    return tuple(out)


class QExp:
    __slots__ = ("prec", "coeffs")

    def __init__(self, coeffs=None, prec: int = 8, check: bool = True):
        self.prec = int(prec)
        self.coeffs = {}
        for (i, j), c in (coeffs or {}).items():
            if i > self.prec:
                continue
            c = Fraction(c)
            if not c:
                continue
            if check and not is_valid_index(i, j):
                raise ValueError(f"({i}, {j}) is not a valid index")
            self.coeffs[(i, j)] = c

    @classmethod
    def one(cls, prec: int) -> "QExp":
        return cls({(0, 0): 1}, prec)

    def __getitem__(self, index) -> Fraction:
        i, j = index
        if i > self.prec:
            raise IndexError(f"row {i} exceeds precision {self.prec}")
        return self.coeffs.get((i, j), Fraction(0))

    def items(self):
        """Nonzero coefficients in lexicographic order."""
        return sorted(self.coeffs.items())

    def row(self, i: int) -> dict:
        return {j: self[i, j] for j in valid_columns(i)}

    def truncate(self, prec: int) -> "QExp":
        return QExp(self.coeffs, min(prec, self.prec), check=False)

    def __eq__(self, other):
        if not isinstance(other, QExp):
            return NotImplemented
        p = min(self.prec, other.prec)
        return self.truncate(p).coeffs == other.truncate(p).coeffs

    def __repr__(self):
        head = ", ".join(f"{k}: {v}" for k, v in self.items()[:6])
        return f"QExp(prec={self.prec}, {{{head}{', ...' if len(self.coeffs) > 6 else ''}}})"

    # -- algebra ----------------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, QExp):
            other = QExp({(0, 0): other}, self.prec)
        out = defaultdict(Fraction, self.truncate(other.prec).coeffs)
        for k, c in other.coeffs.items():
            if k[0] <= self.prec:
                out[k] += c
        return QExp(out, min(self.prec, other.prec), check=False)

    __radd__ = __add__

    def __neg__(self):
        return QExp({k: -c for k, c in self.coeffs.items()}, self.prec, check=False)

    def __sub__(self, other):
        if not isinstance(other, QExp):
            other = QExp({(0, 0): other}, self.prec)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, QExp):
            c = Fraction(other)
            return QExp({k: c * v for k, v in self.coeffs.items()}, self.prec, check=False)
        prec = min(self.prec, other.prec)
        by_row = defaultdict(list)
        for (i, j), c in other.coeffs.items():
            by_row[i].append((j, c))
        out = defaultdict(Fraction)
        for (i1, j1), c1 in self.coeffs.items():
            for i2 in range(0, prec - i1 + 1):
                for j2, c2 in by_row.get(i2, ()):
                    out[(i1 + i2, j1 + j2)] += c1 * c2
        return QExp(out, prec, check=False)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        result = QExp.one(self.prec)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    # -- valuation and restrictions ----------------------------------------
    def nu(self):
        """Lexicographically least index with nonzero coefficient, or "zero"."""
        if not self.coeffs:
            return "zero"
        return min(self.coeffs)

    def restrict_q1(self) -> list:
        """Set q1 = 1: coefficient of q0^i for i = 0..prec."""
        out = [Fraction(0)] * (self.prec + 1)
        for (i, _), c in self.coeffs.items():
            out[i] += c
        return out

    def q0_reliable_max(self) -> int:
        """Largest j whose whole column lies inside the stored rows."""
        j = 0
        while all(i <= self.prec for i in _column(j + 1)):
            j += 1
        return j

    def restrict_q0(self) -> list:
        """Set q0 = 1: coefficient of q1^j for every fully stored column j."""
        jmax = self.q0_reliable_max()
        out = [Fraction(0)] * (jmax + 1)
        for (_, j), c in self.coeffs.items():
            if j <= jmax:
                out[j] += c
        return out

    def column_sum(self, j: int, symmetric: bool = True) -> Fraction:
        """Sum of the coefficients (i, j) over i.

        Rows beyond the precision are read through the symmetry
        (i, j) <-> (j - i, j) when ``symmetric`` is set.
        """
        total = Fraction(0)
        for i in _column(j):
            if i <= self.prec:
                total += self[i, j]
            elif symmetric and j - i <= self.prec:
                total += self[j - i, j]
            else:
                raise IndexError(f"column {j} needs row {i} beyond precision {self.prec}")
        return total

    def row_sum(self, i: int) -> Fraction:
        return sum(self.row(i).values(), Fraction(0))

    # -- symmetry checks ---------------------------------------------------
    def check_symmetric(self) -> bool:
        for i, j in indices_up_to(self.prec):
            if j - i <= self.prec and self[i, j] != self[j - i, j]:
                return False
        return True

    def check_unit_invariant(self) -> bool:
        """A(X) = A(theta^2 X) wherever both indices are stored."""
        for i, j in indices_up_to(self.prec):
            i2, j2 = 4 * i - j, 5 * i - j
            if 0 <= i2 <= self.prec and self[i, j] != self[i2, j2]:
                return False
        return True

    # -- serialization -----------------------------------------------------
    def dumps(self) -> str:
        lines = [f"prec {self.prec}"]
        for (i, j), c in self.items():
            lines.append(f"{i} {j} {c.numerator}/{c.denominator}")
        return "\n".join(lines) + "\n"

    @classmethod
    def loads(cls, text: str) -> "QExp":
        rows = [ln.split() for ln in text.splitlines() if ln.strip() and not ln.startswith("#")]
        if not rows or rows[0][0] != "prec":
            raise ValueError("missing 'prec' header")
        prec = int(rows[0][1])
        coeffs = {}
        for r in rows[1:]:
            if len(r) != 3:
                raise ValueError(f"malformed row {' '.join(r)!r}")
            coeffs[(int(r[0]), int(r[1]))] = Fraction(r[2])
        return cls(coeffs, prec)

    def to_json(self) -> dict:
        return {
            "prec": self.prec,
            "coefficients": [[i, j, str(c)] for (i, j), c in self.items()],
        }

    @classmethod
    def from_json(cls, data) -> "QExp":
        if isinstance(data, str):
            data = json.loads(data)
        return cls({(i, j): Fraction(c) for i, j, c in data["coefficients"]}, data["prec"])


@lru_cache(maxsize=None)
def _column(j: int) -> tuple:
    """All i with (i, j) valid."""
    if j == 0:
        return (0,)
    return tuple(i for i in range(1, j) if is_valid_index(i, j))


def mul(f: QExp, g: QExp) -> QExp:
    return f * g


def nu(f: QExp):
    return f.nu()


def restrict_q1(f: QExp) -> list:
    return f.restrict_q1()


def restrict_q0(f: QExp) -> list:
    return f.restrict_q0()


def check_symmetric(f: QExp) -> bool:
    return f.check_symmetric()


def check_unit_invariant(f: QExp) -> bool:
    return f.check_unit_invariant()


def lex_less(a, b) -> bool:
    return tuple(a) < tuple(b)
