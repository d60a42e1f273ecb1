from fractions import Fraction

from hypothesis import given, settings, strategies as st
import pytest

from goldenlat import qseries
from goldenlat.qseries import QExp, indices_up_to

PREC = 4
IDX = list(indices_up_to(PREC))


@st.composite
def series(draw, prec=PREC):
    keys = draw(st.lists(st.sampled_from(IDX), max_size=8, unique=True))
    coeffs = {k: draw(st.integers(-9, 9)) for k in keys}
    return QExp(coeffs, prec)


@st.composite
def symmetric_series(draw, prec=PREC):
    f = draw(series(prec))
    sym = {}
    for (i, j), c in f.coeffs.items():
        sym[(i, j)] = sym.get((i, j), 0) + c
        if j - i <= prec:
            sym[(j - i, j)] = sym.get((j - i, j), 0) + c
    return QExp(sym, prec)


def test_indices_start_with_constant_and_first_row():
    assert IDX[:3] == [(0, 0), (1, 2), (1, 3)]
    assert (2, 3) in IDX and (2, 6) in IDX and (2, 7) in IDX
    assert (2, 2) not in IDX and (2, 8) not in IDX


def test_invalid_index_rejected():
    with pytest.raises(ValueError):
        QExp({(1, 1): 1}, 3)


def test_reading_beyond_precision_raises():
    f = QExp.one(2)
    with pytest.raises(IndexError):
        f[3, 6]


@given(series(), series(), series())
def test_ring_axioms(f, g, h):
    assert f * g == g * f
    assert (f * g) * h == f * (g * h)
    assert f * (g + h) == f * g + f * h
    assert f * QExp.one(PREC) == f


@given(series(), series())
def test_restrict_q1_is_multiplicative(f, g):
    a, b = f.restrict_q1(), g.restrict_q1()
    conv = [sum((a[k] * b[n - k] for k in range(n + 1)), Fraction(0)) for n in range(PREC + 1)]
    assert (f * g).restrict_q1() == conv


@given(series(), series())
def test_valuation_is_additive(f, g):
    nf, ng = f.nu(), g.nu()
    if "zero" in (nf, ng) or nf[0] + ng[0] > PREC:
        return
    assert (f * g).nu() == (nf[0] + ng[0], nf[1] + ng[1])


@given(symmetric_series(), symmetric_series())
def test_symmetric_series_form_a_ring(f, g):
    assert f.check_symmetric() and g.check_symmetric()
    assert (f * g).check_symmetric()
    assert (f + g).check_symmetric()


@given(series())
def test_text_round_trip(f):
    assert QExp.loads(f.dumps()) == f
    assert QExp.loads(f.dumps()).prec == f.prec


@given(series())
def test_json_round_trip(f):
    assert QExp.from_json(f.to_json()) == f


def test_loads_rejects_missing_header():
    with pytest.raises(ValueError):
        QExp.loads("1 2 3/1\n")


def test_nu_of_zero():
    assert QExp({}, 3).nu() == "zero"
    assert qseries.nu(QExp.one(3) - QExp.one(3)) == "zero"


def test_lex_order():
    assert qseries.lex_less((1, 9), (2, 3))
    assert qseries.lex_less((2, 3), (2, 4))
    assert not qseries.lex_less((2, 4), (2, 4))


def test_column_sum_uses_symmetry():
    # a symmetric series stored to row 1 still knows column 3 = rows 1 and 2
    f = QExp({(0, 0): 1, (1, 2): 5, (1, 3): 7}, 1)
    assert f.column_sum(3) == 14
    with pytest.raises(IndexError):
        f.column_sum(3, symmetric=False)


def test_restrict_q0_uses_only_complete_columns():
    # column 4 is row 2 alone, column 5 already needs row 3
    f = QExp({(0, 0): 1, (1, 2): 2, (1, 3): 3, (2, 3): 3, (2, 4): 4}, 2)
    assert f.q0_reliable_max() == 4
    assert f.restrict_q0() == [1, 0, 2, 6, 4]
