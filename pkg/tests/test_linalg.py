from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from moufang.errors import InputError
from moufang.linalg import (
    Matrix,
    Subspace,
    format_rational,
    ideal_closure,
    inverse,
    rank,
    rref,
    span_membership,
    to_fraction,
    unit_vector,
    vector,
)

small_rationals = st.fractions(min_value=-5, max_value=5, max_denominator=4)


@st.composite
def matrices(draw, max_rows=5, max_cols=5):
    nrows = draw(st.integers(1, max_rows))
    ncols = draw(st.integers(1, max_cols))
    # bias towards zeros so that rank deficiency actually shows up
    entry = st.one_of(st.just(Fraction(0)), small_rationals)
    return Matrix(tuple(tuple(draw(entry) for _ in range(ncols)) for _ in range(nrows)))


def test_rref_identity():
    red, r, piv = rref(Matrix.identity(3))
    assert red == Matrix.identity(3)
    assert r == 3
    assert piv == (0, 1, 2)


def test_rref_zero():
    red, r, piv = rref(Matrix.zeros(2))
    assert r == 0 and piv == ()
    assert red.is_zero()


def test_rref_rank_one():
    red, r, piv = rref([[1, 2], [2, 4]])
    assert r == 1
    assert piv == (0,)
    assert red == Matrix(((1, 2), (0, 0)))


def test_rref_needs_big_integers():
    # Hilbert matrix: exact inverse has entries far beyond 64 bits at n=16
    n = 16
    H = Matrix(tuple(tuple(Fraction(1, i + j + 1) for j in range(n)) for i in range(n)))
    Hi = inverse(H)
    assert H @ Hi == Matrix.identity(n)
    assert max(abs(x) for x in Hi.flatten()) > 2**63


@settings(max_examples=60, deadline=None)
@given(matrices())
def test_rref_matches_sympy(m):
    red, r, piv = rref(m)
    ref, ref_piv = sympy.Matrix([[sympy.Rational(x.numerator, x.denominator) for x in row] for row in m.rows]).rref()
    assert piv == tuple(ref_piv)
    assert r == len(ref_piv)
    for i in range(m.nrows):
        for j in range(m.ncols):
            assert red[i, j] == Fraction(int(ref[i, j].p), int(ref[i, j].q))


@settings(max_examples=60, deadline=None)
@given(matrices())
def test_rref_idempotent(m):
    red = rref(m)[0]
    assert rref(red)[0] == red


@settings(max_examples=60, deadline=None)
@given(matrices())
def test_rank_of_transpose(m):
    assert rank(m) == rank(m.T)


@settings(max_examples=40, deadline=None)
@given(matrices(4, 4), matrices(4, 4))
def test_matmul_associates_with_vectors(a, b):
    if a.ncols != b.nrows:
        return
    v = tuple(Fraction(k + 1, 3) for k in range(b.ncols))
    assert (a @ b) @ v == a @ (b @ v)


def test_inverse_of_singular_raises():
    with pytest.raises(ZeroDivisionError):
        inverse(Matrix(((1, 2), (2, 4))))


def test_to_fraction_and_format():
    assert to_fraction("3/6") == Fraction(1, 2)
    assert to_fraction(4) == Fraction(4)
    assert format_rational(Fraction(-2, 4)) == "-1/2"
    assert format_rational(Fraction(6, 3)) == "2"
    for bad in (0.5, "x", "1/0", True, None):
        with pytest.raises(InputError):
            to_fraction(bad)


def test_matrix_shape_checks():
    with pytest.raises(InputError):
        Matrix(((1, 2), (3,)))
    with pytest.raises(InputError):
        Matrix.identity(2) + Matrix.identity(3)
    with pytest.raises(InputError):
        Matrix.identity(2) @ Matrix.identity(3)


# -- subspaces ----------------------------------------------------------------


def plane():
    return Subspace.span([(1, 0, 1), (0, 1, 1)], 3)


def test_subspace_basis_is_reduced():
    s = Subspace.span([(2, 4, 0), (1, 2, 1), (3, 6, 1)], 3)
    assert s.basis == (vector((1, 2, 0)), vector((0, 0, 1)))
    assert s.pivots == (0, 2)


def test_span_membership_zero_vector():
    assert span_membership(plane(), (0, 0, 0)) == (0, 0)


def test_span_membership_basis_row():
    s = plane()
    assert span_membership(s, s.basis[1]) == (0, 1)


def test_span_membership_outside():
    line = Subspace.span([(1, 1, 0)], 3)
    # residual after eliminating column 0 is (0, -1, 1) != 0
    assert span_membership(line, (1, 0, 1)) is None


def test_span_membership_dimension_mismatch():
    with pytest.raises(InputError):
        span_membership(plane(), (1, 2))


@settings(max_examples=50, deadline=None)
@given(matrices(4, 4), st.lists(small_rationals, min_size=4, max_size=4))
def test_membership_coordinates_reconstruct(m, coeffs):
    s = Subspace.span(m.rows, m.ncols)
    v = [sum((c * row[j] for c, row in zip(coeffs, m.rows)), Fraction(0)) for j in range(m.ncols)]
    coords = span_membership(s, v)
    assert coords is not None
    rebuilt = [sum((c * b[j] for c, b in zip(coords, s.basis)), Fraction(0)) for j in range(m.ncols)]
    assert rebuilt == v


def test_reduce_kills_subspace():
    s = plane()
    assert not any(s.reduce((3, 5, 8)))
    assert s.reduce((0, 0, 1)) == vector((0, 0, 1))


# -- ideal closure --------------------------------------------------------------


def shift_action(v, s):
    """Nilpotent shift e_k -> e_{k+1} (only one action)."""
    return (Fraction(0),) + tuple(v[:-1])


def test_ideal_closure_empty():
    s = ideal_closure([], shift_action, 4, 1)
    assert s.dim == 0 and s.ambient_dim == 4


def test_ideal_closure_full_space():
    gens = [unit_vector(3, i) for i in range(3)]
    s = ideal_closure(gens, lambda v, k: (1, 1, 1), 3, 5)
    assert s.dim == 3


def test_ideal_closure_follows_shift():
    s = ideal_closure([unit_vector(5, 2)], shift_action, 5, 1)
    assert s.basis == tuple(unit_vector(5, i) for i in (2, 3, 4))


def test_ideal_closure_is_stable():
    gens = [(1, 0, 0, 0, 1)]
    s = ideal_closure(gens, shift_action, 5, 1)
    assert span_membership(s, gens[0]) is not None
    for row in s.basis:
        assert span_membership(s, shift_action(row, 0)) is not None
