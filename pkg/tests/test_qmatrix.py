from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conecert.errors import (
    NonSemisimpleAtQError,
    NonSquareError,
    NotAnEigenvalueError,
    SingularMatrixError,
)
from conecert.exactalg import (
    QMatrix,
    QPoly,
    char_poly,
    evaluate_poly_at_matrix,
    min_poly,
    primitive_vector,
    spectral_projector,
)

PULLBACK_3X3 = QMatrix.from_rows([[1, 2, 1], [-5, -4, 1], [25, -10, 1]])


def small_matrix(n):
    return st.lists(st.integers(-4, 4), min_size=n * n, max_size=n * n).map(
        lambda es: QMatrix(n, n, es))


def test_char_poly_examples():
    assert char_poly(QMatrix.identity(2)) == QPoly([1, -2, 1])
    assert char_poly(PULLBACK_3X3) == QPoly([-216, -12, 2, 1])
    assert char_poly(QMatrix.from_rows([[0, 2], [2, 0]])) == QPoly([-4, 0, 1])


def test_char_poly_rejects_non_square():
    with pytest.raises(NonSquareError):
        char_poly(QMatrix.zeros(2, 3))


def test_min_poly_examples():
    assert min_poly(QMatrix.identity(4)) == QPoly([-1, 1])
    assert min_poly(QMatrix.from_rows([[1, 1], [0, 1]])) == QPoly([1, -2, 1])
    diag = QMatrix.from_rows([[2, 0, 0], [0, 2, 0], [0, 0, 3]])
    assert min_poly(diag) == QPoly.linear_root(2) * QPoly.linear_root(3)


@given(small_matrix(3))
@settings(max_examples=40, deadline=None)
def test_min_divides_char_and_both_annihilate(m):
    cp = char_poly(m)
    mp = min_poly(m)
    assert (cp % mp).is_zero
    zero = QMatrix.zeros(3, 3)
    assert evaluate_poly_at_matrix(cp, m) == zero
    assert evaluate_poly_at_matrix(mp, m) == zero


@given(small_matrix(3))
@settings(max_examples=30, deadline=None)
def test_det_via_char_poly(m):
    cp = char_poly(m)
    assert m.det() == cp(0) * (-1) ** 3


def test_inverse_round_trip():
    m = QMatrix.from_rows([[1, -5], [1, 1]])
    assert m * m.inverse() == QMatrix.identity(2)
    with pytest.raises(SingularMatrixError):
        QMatrix.zeros(2, 2).inverse()


def test_negative_powers():
    m = QMatrix.from_rows([[0, 2], [2, 0]])
    assert m.pow(-2) == QMatrix.identity(2).scale(Fraction(1, 4))


def test_solve_and_nullspace():
    m = PULLBACK_3X3 - QMatrix.identity(3).scale(6)
    basis = m.nullspace()
    assert len(basis) == 1
    assert primitive_vector(basis[0]) == (1, 0, 5)
    assert m.solve((1, 1, 1)) is None or m.apply(m.solve((1, 1, 1))) == (1, 1, 1)


def test_spectral_projector_trivial_cases():
    assert spectral_projector(QMatrix.identity(3).scale(7), 7) == QMatrix.identity(3)
    assert spectral_projector(QMatrix.from_rows([[6, 0], [0, -6]]), 6) == \
        QMatrix.from_rows([[1, 0], [0, 0]])


def test_spectral_projector_identities_on_pullback():
    p = spectral_projector(PULLBACK_3X3, 6)
    assert p * p == p
    assert PULLBACK_3X3 * p == p * PULLBACK_3X3
    assert PULLBACK_3X3 * p == p.scale(6)
    assert (PULLBACK_3X3 - QMatrix.identity(3).scale(6)) * p == QMatrix.zeros(3, 3)
    assert primitive_vector(p.apply((1, 0, 1))) == (1, 0, 5)
    # identity on the eigenspace
    for v in (PULLBACK_3X3 - QMatrix.identity(3).scale(6)).nullspace():
        assert p.apply(v) == v


def test_spectral_projector_errors():
    with pytest.raises(NotAnEigenvalueError):
        spectral_projector(QMatrix.identity(2), 3)
    with pytest.raises(NonSemisimpleAtQError):
        spectral_projector(QMatrix.from_rows([[1, 1], [0, 1]]), 1)
