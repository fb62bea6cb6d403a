import itertools
from fractions import Fraction

import pytest
import sympy

from moufang.algebra import (
    AntiCommAlgebra,
    abelian_algebra,
    bundled_lie_algebras,
    check_malcev,
    cross_product_algebra,
    perturbed,
)
from moufang.envelope import (
    OCTONION_MODEL,
    QUATERNION_MODEL,
    SCALAR_MODEL,
    SymbolBasis,
    TranslationModel,
    abstract_envelope,
    check_jacobi_envelope,
    cyclic_relations,
    envelope_bound,
    envelope_dimension,
    gmc_expressions,
    opbracket,
    operator_basis,
    symbol_bracket_table,
    translation_operators,
    verify_gmc,
    verify_reductivity,
    verify_relations_1_to_3,
    verify_yamagutian_constraints,
    verify_yamagutian_lie,
    yamagutian,
    yamagutian_via_left,
    yamagutian_via_right,
)
from moufang.errors import InputError, PreconditionError
from moufang.linalg import Matrix, Subspace, linear_combination, rref, unit_vector
from moufang.octonion import Octonion, oct_mul, tangent_structure_constants

OCT = tangent_structure_constants()
THIRD = Fraction(1, 3)

# Regression fixtures, each produced by an independent oracle below.
OCTONION_OPERATOR_RANK = 28
QUATERNION_OPERATOR_RANK = 6
OCTONION_RELATION_IDEAL_DIM = 7
ABSTRACT_QUOTIENT_DIMS = {"abelian2": 5, "so3": 9, "heisenberg": 9, "sl2": 9, "octonion-tangent": 28}


def e7(i):
    return unit_vector(7, i)


def zero8():
    return Matrix.zeros(8)


# -- translation operators ----------------------------------------------------------


def test_translation_operators_zero():
    L, R = translation_operators((0,) * 7)
    assert L.is_zero() and R.is_zero()


def test_translation_operators_e1():
    L, R = translation_operators(e7(0))
    assert L.column(0) == Octonion.unit(1).coords
    assert R.column(0) == Octonion.unit(1).coords


def test_translation_operators_are_fields():
    x = (1, 0, 2, 0, 0, -1, Fraction(1, 2))
    X = Octonion((0,) + x)
    L, R = translation_operators(x)
    for j in range(8):
        g = Octonion.unit(j) + Octonion.unit(0)
        assert L @ g.coords == oct_mul(g, X).coords
        assert R @ g.coords == oct_mul(X, g).coords


def test_translation_operators_linear():
    L1, R1 = translation_operators(e7(0))
    L2, R2 = translation_operators(e7(1))
    L, R = translation_operators(tuple(a + b for a, b in zip(e7(0), e7(1))))
    assert L == L1 + L2 and R == R1 + R2


def test_translation_operators_full_coordinates():
    L, _ = translation_operators((0,) + e7(3))
    assert L == translation_operators(e7(3))[0]
    with pytest.raises(InputError):
        translation_operators((1,) + e7(3))
    with pytest.raises(InputError):
        translation_operators((1, 2))


def test_field_bracket_of_linear_fields():
    # [V, W] = DW.V - DV.W for V(g) = A g, W(g) = B g, checked pointwise
    A = translation_operators(e7(0))[0]
    B = translation_operators(e7(1))[1]
    g = tuple(Fraction(k + 1, 7) for k in range(8))
    V, W = A @ g, B @ g
    assert opbracket(A, B) @ g == tuple(b - a for a, b in zip(A @ W, B @ V))


# -- Yamagutian ----------------------------------------------------------------------


def test_yamagutian_diagonal():
    for i in range(7):
        assert yamagutian(e7(i), e7(i)).is_zero()
    x = (1, 2, 0, -1, 0, 1, 3)
    assert yamagutian(x, x).is_zero()


def test_yamagutian_quaternionic_arguments():
    # units e1, e2, e4 are tangent indices 0, 1, 3
    for i, j in itertools.combinations((0, 1, 3), 2):
        x, y = e7(i), e7(j)
        Lx, Ry = OCTONION_MODEL.L(x), OCTONION_MODEL.R(y)
        xy = OCTONION_MODEL.tbracket(x, y)
        Y = yamagutian(x, y)
        assert Y == OCTONION_MODEL.L(xy) * THIRD - OCTONION_MODEL.R(xy) * THIRD - opbracket(Lx, Ry)
    for i, j in itertools.combinations(range(3), 2):
        x, y = unit_vector(3, i), unit_vector(3, j)
        xy = QUATERNION_MODEL.tbracket(x, y)
        assert opbracket(QUATERNION_MODEL.L(x), QUATERNION_MODEL.R(y)).is_zero()
        assert yamagutian(x, y, QUATERNION_MODEL) == (QUATERNION_MODEL.L(xy) - QUATERNION_MODEL.R(xy)) * THIRD


def test_three_yamagutian_definitions_agree():
    for i in range(7):
        for j in range(7):
            Y = yamagutian(e7(i), e7(j))
            assert yamagutian_via_left(e7(i), e7(j)) == Y
            assert yamagutian_via_right(e7(i), e7(j)) == Y


def test_yamagutian_bilinear():
    x = (1, 0, 2, 0, 0, 0, 0)
    y = (0, 3, 0, 0, 1, 0, 0)
    expanded = linear_combination(
        ((x[i] * y[j], yamagutian(e7(i), e7(j))) for i in range(7) for j in range(7)), (8, 8)
    )
    assert yamagutian(x, y) == expanded


# -- generalized Maurer-Cartan ------------------------------------------------------------


def test_gmc_octonions():
    rep = verify_gmc()
    assert rep.holds and rep.cases == 21


def test_gmc_expressions_nonzero_somewhere():
    # the octonion model is genuinely non-associative: the common value is not always 0
    assert any(not gmc_expressions(e7(i), e7(j))[1].is_zero() for i, j in itertools.combinations(range(7), 2))


def test_classical_maurer_cartan_in_quaternions():
    for i, j in itertools.combinations(range(3), 2):
        for expr in gmc_expressions(unit_vector(3, i), unit_vector(3, j), QUATERNION_MODEL):
            assert expr.is_zero()
    assert verify_gmc(QUATERNION_MODEL).holds


def test_bracket_convention_probe():
    results = {c: verify_gmc(OCTONION_MODEL, c).holds for c in ("field", "commutator")}
    assert results == {"field": True, "commutator": False}
    with pytest.raises(InputError):
        verify_gmc(OCTONION_MODEL, "sideways")


# -- relations ------------------------------------------------------------------------------


def test_relations_1_and_3():
    assert verify_relations_1_to_3().holds
    assert verify_relations_1_to_3(QUATERNION_MODEL).holds
    assert verify_relations_1_to_3(SCALAR_MODEL).holds


def test_scalar_model_degenerate():
    assert SCALAR_MODEL.r == 0
    for check in (verify_gmc, verify_relations_1_to_3, verify_yamagutian_constraints, verify_reductivity,
                  verify_yamagutian_lie):
        rep = check(SCALAR_MODEL)
        assert rep.holds and rep.cases == 0
    assert envelope_dimension(SCALAR_MODEL) == (0, 0)


def test_yamagutian_constraints():
    rep = verify_yamagutian_constraints()
    assert rep.holds
    assert rep.cases == 28 + 35


def test_cyclic_constraint_quaternion():
    assert verify_yamagutian_constraints(QUATERNION_MODEL).holds


def test_reductivity():
    rep = verify_reductivity()
    assert rep.holds
    assert rep.cases == 21 * 7 * 2


def test_reductivity_quaternion_lie_collapse():
    M = QUATERNION_MODEL
    A = M.algebra
    for i, j, k in itertools.product(range(3), repeat=3):
        x, y, z = (unit_vector(3, n) for n in (i, j, k))
        Y = M.Y(x, y)
        twice = tuple(2 * c for c in M.tbracket(M.tbracket(x, y), z))
        assert opbracket(Y, M.L(z)) * 6 == M.L(twice)
        assert opbracket(Y, M.R(z)) * 6 == M.R(twice)


def test_yamagutian_lie():
    rep = verify_yamagutian_lie()
    assert rep.holds
    assert rep.cases == 21 * 21


def test_yamagutian_lie_quaternion():
    assert verify_yamagutian_lie(QUATERNION_MODEL).holds


def test_broken_table_breaks_relations():
    from moufang.octonion import TABLE, flip_sign

    bad = TranslationModel(table=flip_sign(TABLE, 1, 2), name="broken")
    assert not check_malcev(bad.algebra).holds
    for check in (verify_gmc, verify_relations_1_to_3, verify_yamagutian_constraints, verify_reductivity):
        rep = check(bad)
        assert not rep.holds and rep.witness is not None


# -- dimension ---------------------------------------------------------------------------------


def sympy_rank(mats):
    return sympy.Matrix([[sympy.Rational(x.numerator, x.denominator) for x in m.flatten()] for m in mats]).rank()


def test_bound_values():
    assert envelope_bound(7) == 35
    assert envelope_bound(3) == 9


def test_octonion_operator_rank():
    ops = operator_basis(OCTONION_MODEL)
    assert len(ops) == 35
    assert sympy_rank(ops) == OCTONION_OPERATOR_RANK
    assert envelope_dimension() == (OCTONION_OPERATOR_RANK, 35)


def test_quaternion_operator_rank():
    ops = operator_basis(QUATERNION_MODEL)
    assert sympy_rank(ops) == QUATERNION_OPERATOR_RANK
    assert envelope_dimension(QUATERNION_MODEL) == (QUATERNION_OPERATOR_RANK, 9)


# -- abstract envelope ------------------------------------------------------------------------


def naive_closure(gens, table, n):
    """Oracle: re-row-reduce everything each round until the rank stops growing."""
    vecs = [tuple(g) for g in gens]
    if not vecs:
        return 0
    r = rref(vecs)[1]
    while True:
        red, r, _ = rref(vecs)
        basis = red.rows[:r]
        new = list(basis)
        for v in basis:
            for s in range(n):
                new.append(tuple(sum((c * table[(a, s)][k] for a, c in enumerate(v) if c), Fraction(0)) for k in range(n)))
                new.append(tuple(sum((c * table[(s, a)][k] for a, c in enumerate(v) if c), Fraction(0)) for k in range(n)))
        r2 = rref(new)[1]
        if r2 == r:
            return r
        vecs = new


def test_octonion_relation_ideal_oracle():
    table = symbol_bracket_table(OCT)
    n = envelope_bound(7)
    assert naive_closure(cyclic_relations(OCT), table, n) == OCTONION_RELATION_IDEAL_DIM
    E = abstract_envelope(OCT)
    assert E.relation_ideal.dim == OCTONION_RELATION_IDEAL_DIM
    # the cyclic relations already span an ideal: closure adds nothing
    assert E.relation_span_dim == OCTONION_RELATION_IDEAL_DIM
    assert E.closure_added == 0


@pytest.mark.parametrize("A", list(bundled_lie_algebras()) + [OCT], ids=lambda A: A.name)
def test_abstract_quotient_dims(A):
    E = abstract_envelope(A)
    assert E.ambient_dim == envelope_bound(A.dim)
    assert E.quotient_dim == ABSTRACT_QUOTIENT_DIMS[A.name]
    assert E.quotient_dim == E.ambient_dim - E.relation_ideal.dim
    assert E.quotient_dim <= E.bound
    assert E.closure_added == 0
    assert E.descends


def test_abelian_envelope():
    E = abstract_envelope(abelian_algebra(2))
    assert E.quotient_dim == 5
    assert E.names == ("L0", "L1", "R0", "R1", "Y0,1")
    # with a zero bracket only the Yamagutian survives: [L,L] = [R,R] = 2Y, [L,R] = -Y
    idx = {name: a for a, name in enumerate(E.names)}
    y = unit_vector(5, idx["Y0,1"])
    assert E.bracket_table[(idx["L0"], idx["L1"])] == tuple(2 * c for c in y)
    assert E.bracket_table[(idx["R0"], idx["R1"])] == tuple(2 * c for c in y)
    assert E.bracket_table[(idx["L0"], idx["R1"])] == tuple(-c for c in y)
    assert not any(E.bracket_table[(idx["L0"], idx["R0"])])
    assert all(not any(E.bracket_table[(idx["Y0,1"], b)]) for b in range(5))
    assert check_jacobi_envelope(E).holds


def test_abstract_matches_concrete_octonion():
    assert abstract_envelope(OCT).quotient_dim == envelope_dimension()[0]


def test_realization_is_homomorphism():
    """L_i, R_i, Y_ij -> operators maps every symbol bracket onto the operator bracket."""
    ops = operator_basis(OCTONION_MODEL)
    table = symbol_bracket_table(OCT)
    n = len(ops)

    def image(v):
        return linear_combination(zip(v, ops), (8, 8))

    for a in range(n):
        for b in range(n):
            assert image(table[(a, b)]) == opbracket(ops[a], ops[b]), (a, b)
    # relation ideal lies in the kernel, and by dimension count equals it
    for row in abstract_envelope(OCT).relation_ideal.basis:
        assert image(row).is_zero()


def test_symbol_bracket_antisymmetric_for_translations():
    table = symbol_bracket_table(OCT)
    S = SymbolBasis(7)
    for a in range(14):
        for b in range(S.dim):
            assert table[(a, b)] == tuple(-x for x in table[(b, a)])


@pytest.mark.parametrize("A", list(bundled_lie_algebras()) + [OCT], ids=lambda A: A.name)
def test_jacobi_envelope_passes(A):
    rep = check_jacobi_envelope(abstract_envelope(A))
    assert rep.holds


def test_envelope_requires_malcev():
    with pytest.raises(PreconditionError):
        abstract_envelope(perturbed(OCT, 0, 1, 3, 1))


NON_MALCEV = [
    perturbed(OCT, 0, 1, 3, 1),
    perturbed(OCT, 2, 5, 0, 1),
    perturbed(cross_product_algebra(), 0, 1, 0, 1),
]


@pytest.mark.parametrize("B", NON_MALCEV, ids=["oct-c013", "oct-c250", "so3-c010"])
def test_non_malcev_envelope_breaks_jacobi(B):
    assert not check_malcev(B).holds
    E = abstract_envelope(B, require_malcev=False, close_ideal=False)
    assert not E.descends
    rep = check_jacobi_envelope(E)
    assert not rep.holds
    assert rep.witness[0] == "jacobi"
    assert any(rep.defect)


@pytest.mark.parametrize("B", NON_MALCEV, ids=["oct-c013", "oct-c250", "so3-c010"])
def test_non_malcev_closed_envelope_loses_translations(B):
    # with closure the ideal swallows some translation symbols instead
    E = abstract_envelope(B, require_malcev=False)
    assert E.closure_added > 0
    kept = {name for name in E.names if name[0] in "LR"}
    assert len(kept) < 2 * B.dim


def test_jacobi_envelope_detects_bad_table():
    E = abstract_envelope(cross_product_algebra())
    table = dict(E.bracket_table)
    table[(1, 0)] = table[(0, 1)]  # break antisymmetry
    from dataclasses import replace

    rep = check_jacobi_envelope(replace(E, bracket_table=table))
    assert not rep.holds and rep.witness == ("antisym", 0, 1)
