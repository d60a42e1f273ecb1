import json

from hypothesis import given, settings, strategies as st
import numpy as np
import pytest

from goldenlat import enumeration, hmf, linalg
from goldenlat.constructions import f4_perp_f4
from goldenlat.rlattice import (
    RGram, family_alpha, golden_check, hilbert_theta, is_even_unimodular,
    minima_bounds_hold, modular_family, orthogonal_sum, scale, theta_matrix,
    trace_gram, trace_identity_check, trace_minimum, zgram_from_json, zgram_to_json,
)
from goldenlat.ring import ETA_INV, THETA, RElem


def test_f4_gram_entries(f4_gram):
    assert f4_gram.n == 4
    assert all(f4_gram[k, k] == 2 for k in range(4))
    assert f4_gram.det() == 1
    assert is_even_unimodular(f4_gram)


def test_trace_lattices_of_f4(f4_gram):
    t_eta, t_one = trace_gram(f4_gram, ETA_INV), trace_gram(f4_gram, 1)
    assert linalg.int_det(t_eta) == 1
    assert linalg.int_det(t_one) == 5 ** 4
    assert enumeration.minimum(t_eta) == (1, 240)
    assert enumeration.minimum(t_one) == (2, 120)
    assert enumeration.norm_counts(t_eta, 3) == {1: 240, 2: 2160, 3: 6720}


def test_hilbert_theta_equals_a2(f4_gram):
    assert hilbert_theta(f4_gram, 4) == hmf.generators(4).A2


def test_theta_row_and_column_sums(f4_gram):
    th = hilbert_theta(f4_gram, 3)
    assert th[1, 2] == th[1, 3] == th[2, 3] == 120
    assert th.row_sum(1) == 240
    assert th.column_sum(2) == 120


def test_theta_is_multiplicative(f4_gram):
    g = f4_perp_f4()
    assert hilbert_theta(g, 2) == hilbert_theta(f4_gram, 2) ** 2


@pytest.mark.parametrize("prec", [2, 3, 4])
def test_theta_symmetries(f4_gram, prec):
    th = hilbert_theta(f4_gram, prec)
    assert th.check_symmetric()
    assert th.check_unit_invariant()


def test_trace_identities_on_enumerated_vectors(f4_gram):
    V, _ = enumeration.enumerate_short(trace_gram(f4_gram, ETA_INV), 3)
    assert trace_identity_check(f4_gram, V)


def test_theta_matrix_squares_correctly():
    n = 3
    Th = theta_matrix(n)
    lhs = linalg.matmul(Th, Th)
    rhs = [[int(i == j) - Th[i][j] for j in range(2 * n)] for i in range(2 * n)]
    assert lhs == rhs


def test_theta_acts_by_isometry_up_to_units(f4_gram):
    # Tr(alpha Q(theta x)) = Tr(alpha theta^2 Q(x)): theta is a similarity of L_1 onto L_{theta^2}
    Th = theta_matrix(4)
    lhs = linalg.matmul(linalg.transpose(Th), linalg.matmul(trace_gram(f4_gram, 1), Th))
    assert lhs == trace_gram(f4_gram, THETA * THETA)


def test_minima_bounds(f4_gram):
    m_eta, _ = trace_minimum(f4_gram, ETA_INV)
    m_one, _ = trace_minimum(f4_gram, 1)
    assert minima_bounds_hold(m_eta, m_one)
    assert not minima_bounds_hold(1, 3)


def test_golden_check_f4(f4_gram):
    ok, report = golden_check(f4_gram, 3)
    assert ok
    assert report.nu == (1, 2) and report.extremal_nu == (1, 2)
    assert report.min_eta == 1 and report.min_one == 2 and report.eta_extremal


def test_golden_check_f4_perp_f4():
    ok, report = golden_check(f4_perp_f4(), 2)
    assert ok and report.weight == 4


def test_golden_check_rejects_non_unimodular(f4_gram):
    with pytest.raises(ValueError):
        golden_check(scale(f4_gram, 2), 2)


def test_golden_check_needs_enough_rows():
    # weight 4 extremal form starts at row 1, prec 0 cannot see it
    with pytest.raises(hmf.InsufficientPrecision):
        golden_check(f4_perp_f4(), 0)


def test_trace_gram_rejects_non_positive_alpha(f4_gram):
    with pytest.raises(ValueError):
        trace_gram(f4_gram, THETA - 1)


def test_rgram_validation():
    with pytest.raises(ValueError):
        RGram([[RElem(2, 0), RElem(1, 0)], [RElem(0, 1), RElem(2, 0)]])
    with pytest.raises(ValueError):
        RGram.from_json({"n": 3, "entries": [[[2, 0]]]})


def test_rgram_json_round_trip(f4_gram):
    text = json.dumps(f4_gram.to_json())
    assert RGram.from_json(text) == f4_gram


def test_zgram_json_round_trip(e8):
    assert zgram_from_json(json.dumps(zgram_to_json(e8))) == e8
    with pytest.raises(ValueError):
        zgram_from_json({"m": 2, "entries": e8})


def test_not_totally_positive_definite():
    g = RGram([[RElem(2, 0), RElem(0, 2)], [RElem(0, 2), RElem(2, 0)]])
    # det = 4 - 4 theta^2 has a negative embedding
    assert not g.is_totally_positive_definite()


def test_orthogonal_sum_determinant(f4_gram):
    assert orthogonal_sum(f4_gram, f4_gram).det() == 1


@pytest.mark.parametrize("a", [0, 1, 2, 3])
def test_modular_family(f4_gram, a):
    p = a * a + 5 * a + 5
    t, cert = modular_family(f4_gram, a)
    assert cert["p"] == p
    assert linalg.int_det(t) == p ** 4 == cert["det"]
    assert cert["min"] >= 2 + a and cert["min_ok"]
    if a <= 2:
        assert cert["modular"] is True
    else:
        assert cert["modular"] in (True, "undecided")


def test_family_alpha_is_totally_positive():
    for a in range(6):
        assert family_alpha(a).is_totally_positive()
        assert family_alpha(a).norm() * 5 == a * a + 5 * a + 5
