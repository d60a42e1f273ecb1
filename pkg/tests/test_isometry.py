from hypothesis import given, settings, strategies as st
import pytest

from goldenlat import isometry, linalg
from goldenlat.rlattice import trace_gram


@st.composite
def unimodular(draw, m=8):
    """Product of a few elementary column operations."""
    U = linalg.identity(m)
    for _ in range(draw(st.integers(1, 6))):
        i, j = draw(st.integers(0, m - 1)), draw(st.integers(0, m - 1))
        if i == j:
            continue
        c = draw(st.integers(-2, 2))
        for r in range(m):
            U[r][j] += c * U[r][i]
    return U


@settings(max_examples=10, deadline=None)
@given(unimodular())
def test_finds_isometry_of_rebased_e8(U):
    from conftest import E8
    B = linalg.matmul(linalg.transpose(U), linalg.matmul(E8, U))
    W = isometry.find_isometry(B, E8, budget=30)
    assert W is not None
    assert linalg.matmul(linalg.transpose(W), linalg.matmul(E8, W)) == B


def test_same_determinant_different_class():
    # two reduced binary forms of discriminant -23
    A = [[2, 1], [1, 12]]
    B = [[4, 1], [1, 6]]
    assert linalg.int_det(A) == linalg.int_det(B)
    assert isometry.find_isometry(A, B) is None


def test_different_determinants_short_circuit():
    assert isometry.find_isometry([[2, 1], [1, 2]], [[2, 0], [0, 2]]) is None


def test_scaled_dual_of_a2():
    t = [[2, 1], [1, 2]]
    assert isometry.scaled_dual(t, 3) == [[2, -1], [-1, 2]]
    with pytest.raises(ValueError):
        isometry.scaled_dual(t, 2)


def test_a2_is_3_modular():
    v = isometry.modularity_check([[2, 1], [1, 2]], 3)
    assert v.modular is True and v.witness is not None


def test_trace_lattice_of_f4_is_5_modular(f4_gram):
    v = isometry.modularity_check(trace_gram(f4_gram, 1), 5)
    assert v.modular is True


def test_non_modular_verdict():
    # 6 t^-1 has determinant 3, so no isometry exists
    v = isometry.modularity_check([[2, 0], [0, 6]], 6)
    assert v.modular is False and v.witness is None
    assert v.evidence == {"det": 12, "det_dual_scaled": 3}


def test_binary_form_is_modular_via_swap():
    assert isometry.modularity_check([[2, 1], [1, 12]], 23).modular is True


def test_timeout_yields_undecided_with_evidence(f4_gram, monkeypatch):
    from goldenlat.rlattice import family_alpha

    def slow(*args, **kwargs):
        raise isometry.SearchTimeout("budget exhausted")

    monkeypatch.setattr(isometry, "find_isometry", slow)
    v = isometry.modularity_check(trace_gram(f4_gram, family_alpha(3)), 29)
    assert v.modular == "undecided"
    assert v.evidence["theta_agree"] is True
    assert v.evidence["reason"] == "budget exhausted"
