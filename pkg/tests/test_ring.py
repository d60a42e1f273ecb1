from fractions import Fraction

from hypothesis import given, strategies as st
import pytest

from goldenlat import ring
from goldenlat.ring import ETA, ETA_INV, PHI, SQRT5, THETA, KElem, RElem

ints = st.integers(-60, 60)
relems = st.builds(RElem, ints, ints)
nonzero = relems.filter(lambda x: x != 0)


def test_theta_minimal_polynomial():
    assert THETA * THETA + THETA - 1 == 0
    assert THETA * THETA == RElem(1, -1)


def test_named_constants():
    assert ETA.norm() == 5 and ETA.trace() == 5
    assert ETA * ETA_INV == 1
    assert SQRT5 * SQRT5 == 5
    assert PHI * THETA == 1


@given(relems, relems)
def test_norm_is_multiplicative(x, y):
    assert (x * y).norm() == x.norm() * y.norm()


@given(relems)
def test_trace_and_norm_from_conjugate(x):
    assert x + x.conj() == x.trace()
    assert x * x.conj() == x.norm()
    assert x.conj().conj() == x


@given(relems, nonzero)
def test_euclidean_division(x, y):
    q, r = ring.euclid_divmod(x, y)
    assert q * y + r == x
    assert abs(r.norm()) < abs(y.norm())


@given(nonzero, nonzero)
def test_gcd_divides_both(x, y):
    g = ring.gcd(x, y)
    assert ring.divides(g, x) and ring.divides(g, y)


@given(nonzero)
def test_canonical_associate_is_totally_positive(x):
    c = ring.canonical_associate(x)
    assert c.is_totally_positive()
    assert abs(c.norm()) == abs(x.norm())
    assert ring.canonical_associate(x * THETA) == c


def test_division_by_eta():
    assert ring.euclid_divmod(RElem(5, 0), ETA) == (RElem(2, -1), RElem(0, 0))
    assert ring.exact_div(RElem(5, 0), ETA) == RElem(2, -1)


@pytest.mark.parametrize("x, primes", [
    (ETA, 1),
    (RElem(11, 0), 2),   # 11 splits
    (RElem(3, 0), 1),    # 3 is inert
    (RElem(4, 0), 1),    # 2 is inert, exponent 2
])
def test_factor_counts_distinct_primes(x, primes):
    f = ring.factor(x)
    assert len(f.factors) == primes
    assert f.value() == x


def test_eleven_splits_into_conjugates():
    ps = sorted(abs(p.norm()) for p, _ in ring.factor(RElem(11, 0)).factors)
    assert ps == [11, 11]


@pytest.mark.parametrize("x, k, want", [
    (1, 1, 1),
    (2, 1, 5),          # divisors 1, 2 of norm 1, 4
    (ETA, 1, 6),        # divisors 1, eta of norm 1, 5
    (2, 3, 1 + 64),
    (4, 1, 1 + 4 + 16),
])
def test_divisor_sigma(x, k, want):
    assert ring.divisor_sigma(x, k) == want


@given(nonzero)
def test_divisor_sigma_ignores_units(x):
    assert ring.divisor_sigma(x, 1) == ring.divisor_sigma(x * THETA, 1)


@pytest.mark.parametrize("k, want", [
    (2, Fraction(1, 30)),
    (4, Fraction(1, 60)),
])
def test_zeta_values(k, want):
    assert ring.zeta_K_at_negative(k) == want


def test_zeta_matches_eisenstein_e2_constant():
    # kappa_2 = 4 / zeta_K(-1) = 120
    assert 4 / ring.zeta_K_at_negative(2) == 120


def test_index_map_examples():
    assert ring.element_to_index(RElem(1, 0)) == (1, 2)
    assert ring.element_to_index(THETA * THETA) == (2, 3)
    assert ring.element_to_index(PHI * PHI) == (1, 3)
    assert ring.element_to_index(ETA) == (2, 5)


@given(st.integers(1, 30), st.integers(0, 100))
def test_index_symmetry_is_conjugation(i, j):
    x = RElem(j - i, j - 2 * i)
    assert ring.element_to_index(x.conj()) == (j - i, j)


@given(st.integers(1, 30), st.integers(0, 100))
def test_index_round_trip(i, j):
    x = RElem(j - i, j - 2 * i)
    assert ring.element_to_index(x) == (i, j)
    assert ring.is_valid_index(i, j) == x.is_totally_positive()
    if x.is_totally_positive():
        assert ring.index_to_element(i, j) == x
    else:
        with pytest.raises(ValueError):
            ring.index_to_element(i, j)


@given(st.integers(1, 30))
def test_valid_columns_window(i):
    cols = ring.valid_columns(i)
    for j in cols:
        assert ring.index_to_element(i, j).is_totally_positive()
    assert not ring.is_valid_index(i, cols.start - 1)
    assert not ring.is_valid_index(i, cols.stop)


@given(relems)
def test_sqrt5_coordinates(x):
    p, q = x.sqrt5_coords()
    assert KElem(p) + SQRT5 * q == x
