"""
Infinitesimal translations, the Yamagutian and the Lie algebra they span.

Concrete side: on a loop of octonions (or a subalgebra spanned by some
units) the left translation field at x is g -> g x and the right one is
g -> x g. Both are linear, so they are represented by their matrices.
Linear fields V(g) = A g, W(g) = B g have bracket [V, W](g) = (BA - AB) g,
hence ``opbracket(A, B) = B @ A - A @ B``.

Abstract side: for any Mal'tsev algebra the symbols L_i, R_i, Y_ij (i < j)
with the commutation relations below span a Lie algebra once the cyclic
Y-relations are divided out.

    [L_x, L_y] =  2Y(x;y) + 1/3 L_[x,y] + 2/3 R_[x,y]
    [L_x, R_y] =  -Y(x;y) + 1/3 L_[x,y] - 1/3 R_[x,y]
    [R_x, R_y] =  2Y(x;y) - 2/3 L_[x,y] - 1/3 R_[x,y]
    6 [Y(x;y), L_z] = L_[x,y,z],   6 [Y(x;y), R_z] = R_[x,y,z]
    6 [Y(x;y), Y(z;w)] = Y([x,y,z]; w) + Y(z; [x,y,w])
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Dict, List, Optional, Sequence, Tuple

from .algebra import AntiCommAlgebra, IdentityReport, bracket, check_jacobi, check_malcev, yamaguti_bracket
from .errors import ConsistencyError, InputError, PreconditionError
from .linalg import (
    ZERO,
    Matrix,
    Subspace,
    Vector,
    combination,
    ideal_closure,
    is_zero,
    linear_combination,
    rank,
    span_membership,
    to_fraction,
    unit_vector,
)
from .octonion import TABLE, MulTable, Octonion, oct_mul, tangent_structure_constants

THIRD = Fraction(1, 3)

# opbracket conventions: "field" is the vector-field bracket, "commutator" the
# plain matrix commutator (kept only to show that it is the wrong sign)
CONVENTIONS = ("field", "commutator")


def opbracket(A: Matrix, B: Matrix, convention: str = "field") -> Matrix:
    if convention == "field":
        return B @ A - A @ B
    if convention == "commutator":
        return A @ B - B @ A
    raise InputError(f"unknown bracket convention {convention!r}")


def envelope_bound(r: int) -> int:
    return 2 * r + r * (r - 1) // 2


@dataclass(frozen=True)
class TranslationModel:
    """The loop of invertible elements of the subalgebra spanned by ``units``.

    ``units`` lists octonion unit indices and must start with 0. Coordinates
    on the loop are taken along these units; the tangent space at 1 is
    spanned by the remaining (imaginary) ones.
    """

    units: Tuple[int, ...] = tuple(range(8))
    table: MulTable = field(default=TABLE, repr=False)
    name: str = "octonion"

    def __post_init__(self):
        if not self.units or self.units[0] != 0 or len(set(self.units)) != len(self.units):
            raise InputError(f"bad unit list {self.units!r}")
        if any(not 0 <= u < 8 for u in self.units):
            raise InputError(f"bad unit list {self.units!r}")

    @property
    def size(self) -> int:
        return len(self.units)

    @property
    def r(self) -> int:
        return len(self.units) - 1

    @property
    def shape(self) -> Tuple[int, int]:
        return self.size, self.size

    @cached_property
    def algebra(self) -> AntiCommAlgebra:
        return tangent_structure_constants(self.units[1:], table=self.table)

    def _operator(self, mul) -> Matrix:
        pos = {u: n for n, u in enumerate(self.units)}
        cols = []
        for u in self.units:
            img = mul(Octonion.unit(u))
            col = [ZERO] * self.size
            for k, v in enumerate(img.coords):
                if v:
                    if k not in pos:
                        raise InputError(f"units {self.units} do not span a subalgebra")
                    col[pos[k]] = v
            cols.append(col)
        return Matrix.from_columns(cols)

    @cached_property
    def left_basis(self) -> Tuple[Matrix, ...]:
        """L_{b_i}: matrix of g -> g b_i."""
        return tuple(
            self._operator(lambda g, x=Octonion.unit(u): oct_mul(g, x, self.table)) for u in self.units[1:]
        )

    @cached_property
    def right_basis(self) -> Tuple[Matrix, ...]:
        """R_{b_i}: matrix of g -> b_i g."""
        return tuple(
            self._operator(lambda g, x=Octonion.unit(u): oct_mul(x, g, self.table)) for u in self.units[1:]
        )

    def tangent_vector(self, x: Sequence) -> Tuple[Fraction, ...]:
        """Accept r imaginary coordinates, or full loop coordinates with zero real part."""
        x = tuple(to_fraction(v) for v in x)
        if len(x) == self.size:
            if x[0]:
                raise InputError("tangent vector must have zero real component")
            return x[1:]
        if len(x) == self.r:
            return x
        raise InputError(f"expected {self.r} (or {self.size}) coordinates, got {len(x)}")

    def L(self, x: Sequence) -> Matrix:
        return linear_combination(zip(self.tangent_vector(x), self.left_basis), self.shape)

    def R(self, x: Sequence) -> Matrix:
        return linear_combination(zip(self.tangent_vector(x), self.right_basis), self.shape)

    def tbracket(self, x, y) -> Vector:
        return bracket(self.algebra, self.tangent_vector(x), self.tangent_vector(y))

    def basis(self, i: int) -> Vector:
        return unit_vector(self.r, i)

    @cached_property
    def yamagutian_basis(self) -> Dict[Tuple[int, int], Matrix]:
        """Y(b_i; b_j) from the [L, R] relation for every ordered pair (incl. i >= j)."""
        e = [self.basis(i) for i in range(self.r)]
        return {
            (i, j): yamagutian(e[i], e[j], self)
            for i in range(self.r)
            for j in range(self.r)
        }

    def Y(self, x: Sequence, y: Sequence) -> Matrix:
        """Y(x; y) expanded bilinearly over the basis values."""
        x, y = self.tangent_vector(x), self.tangent_vector(y)
        terms = []
        for i, xi in enumerate(x):
            if xi:
                for j, yj in enumerate(y):
                    if yj:
                        terms.append((xi * yj, self.yamagutian_basis[(i, j)]))
        return linear_combination(terms, self.shape)


OCTONION_MODEL = TranslationModel()
QUATERNION_MODEL = TranslationModel((0, 1, 2, 4), name="quaternion")
SCALAR_MODEL = TranslationModel((0,), name="scalar")


def translation_operators(x: Sequence, model: TranslationModel = OCTONION_MODEL) -> Tuple[Matrix, Matrix]:
    """(L_x, R_x) as matrices: the fields g -> g x and g -> x g.

    The left translation field at g is (dL_g)_e x = g x, i.e. right
    multiplication by x as a map of g; symmetrically for R_x.
    """
    return model.L(x), model.R(x)


def yamagutian(x: Sequence, y: Sequence, model: TranslationModel = OCTONION_MODEL, convention: str = "field") -> Matrix:
    """Y(x;y) = 1/3 L_[x,y] - 1/3 R_[x,y] - [L_x, R_y]."""
    xy = model.tbracket(x, y)
    return model.L(xy) * THIRD - model.R(xy) * THIRD - opbracket(model.L(x), model.R(y), convention)


def yamagutian_via_left(x, y, model: TranslationModel = OCTONION_MODEL) -> Matrix:
    """Y(x;y) solved from the [L_x, L_y] relation."""
    xy = model.tbracket(x, y)
    return (opbracket(model.L(x), model.L(y)) - model.L(xy) * THIRD - model.R(xy) * (2 * THIRD)) * Fraction(1, 2)


def yamagutian_via_right(x, y, model: TranslationModel = OCTONION_MODEL) -> Matrix:
    """Y(x;y) solved from the [R_x, R_y] relation."""
    xy = model.tbracket(x, y)
    return (opbracket(model.R(x), model.R(y)) + model.L(xy) * (2 * THIRD) + model.R(xy) * THIRD) * Fraction(1, 2)


def _defect(lhs: Matrix, rhs: Matrix) -> Optional[tuple]:
    d = lhs - rhs
    return None if d.is_zero() else d.flatten()


def verify_gmc(model: TranslationModel = OCTONION_MODEL, convention: str = "field") -> IdentityReport:
    """[L_x,L_y] - L_[x,y] = -2[L_x,R_y] = [R_x,R_y] + R_[x,y] on basis pairs i < j.

    Witness ``(i, j)``; the defect is the flattened difference of the first
    unequal pair of expressions.
    """
    cases = 0
    for i, j in itertools.combinations(range(model.r), 2):
        cases += 1
        x, y = model.basis(i), model.basis(j)
        xy = model.tbracket(x, y)
        Lx, Ly, Rx, Ry = model.L(x), model.L(y), model.R(x), model.R(y)
        first = opbracket(Lx, Ly, convention) - model.L(xy)
        second = opbracket(Lx, Ry, convention) * -2
        third = opbracket(Rx, Ry, convention) + model.R(xy)
        for a, b in ((first, second), (second, third)):
            d = _defect(a, b)
            if d is not None:
                return IdentityReport(False, (i, j), d, cases)
    return IdentityReport.ok(cases)


def gmc_expressions(x, y, model: TranslationModel = OCTONION_MODEL) -> Tuple[Matrix, Matrix, Matrix]:
    xy = model.tbracket(x, y)
    Lx, Ly, Rx, Ry = model.L(x), model.L(y), model.R(x), model.R(y)
    return (
        opbracket(Lx, Ly) - model.L(xy),
        opbracket(Lx, Ry) * -2,
        opbracket(Rx, Ry) + model.R(xy),
    )


def verify_relations_1_to_3(model: TranslationModel = OCTONION_MODEL) -> IdentityReport:
    """The [L,L] and [R,R] relations, with Y taken from the [L,R] relation.

    Witness ``("LL" | "RR", i, j)`` over all ordered basis pairs.
    """
    cases = 0
    for i in range(model.r):
        for j in range(model.r):
            x, y = model.basis(i), model.basis(j)
            xy = model.tbracket(x, y)
            Y = model.yamagutian_basis[(i, j)]
            Lxy, Rxy = model.L(xy), model.R(xy)
            cases += 1
            d = _defect(opbracket(model.L(x), model.L(y)), Y * 2 + Lxy * THIRD + Rxy * (2 * THIRD))
            if d is not None:
                return IdentityReport(False, ("LL", i, j), d, cases)
            cases += 1
            d = _defect(opbracket(model.R(x), model.R(y)), Y * 2 - Lxy * (2 * THIRD) - Rxy * THIRD)
            if d is not None:
                return IdentityReport(False, ("RR", i, j), d, cases)
    return IdentityReport.ok(cases)


def verify_yamagutian_constraints(model: TranslationModel = OCTONION_MODEL) -> IdentityReport:
    """Y(x;y) + Y(y;x) = 0 on pairs i <= j and the cyclic relation on triples i < j < k.

    Witness ``("antisym", i, j)`` or ``("cyclic", i, j, k)``.
    """
    Yb = model.yamagutian_basis
    zero = Matrix.zeros(model.size)
    cases = 0
    for i in range(model.r):
        for j in range(i, model.r):
            cases += 1
            d = _defect(Yb[(i, j)] + Yb[(j, i)], zero)
            if d is not None:
                return IdentityReport(False, ("antisym", i, j), d, cases)
    for i, j, k in itertools.combinations(range(model.r), 3):
        cases += 1
        x, y, z = model.basis(i), model.basis(j), model.basis(k)
        total = (
            model.Y(model.tbracket(x, y), z)
            + model.Y(model.tbracket(y, z), x)
            + model.Y(model.tbracket(z, x), y)
        )
        d = _defect(total, zero)
        if d is not None:
            return IdentityReport(False, ("cyclic", i, j, k), d, cases)
    return IdentityReport.ok(cases)


def verify_reductivity(model: TranslationModel = OCTONION_MODEL) -> IdentityReport:
    """6[Y(x;y), L_z] = L_[x,y,z] and 6[Y(x;y), R_z] = R_[x,y,z].

    Scans i < j and every z. Witness ``("L" | "R", i, j, k)``.
    """
    A = model.algebra
    cases = 0
    for i, j in itertools.combinations(range(model.r), 2):
        Y = model.yamagutian_basis[(i, j)]
        for k in range(model.r):
            t = yamaguti_bracket(A, model.basis(i), model.basis(j), model.basis(k))
            for side, ops, make in (("L", model.left_basis, model.L), ("R", model.right_basis, model.R)):
                cases += 1
                d = _defect(opbracket(Y, ops[k]) * 6, make(t))
                if d is not None:
                    return IdentityReport(False, (side, i, j, k), d, cases)
    return IdentityReport.ok(cases)


def verify_yamagutian_lie(model: TranslationModel = OCTONION_MODEL) -> IdentityReport:
    """6[Y(x;y), Y(z;w)] = Y([x,y,z]; w) + Y(z; [x,y,w]) for i < j, k < l.

    Diagonal quadruples (i, j) = (k, l) are included. Witness ``(i, j, k, l)``.
    """
    A = model.algebra
    e = [model.basis(i) for i in range(model.r)]
    pairs = list(itertools.combinations(range(model.r), 2))
    cases = 0
    for i, j in pairs:
        Yxy = model.yamagutian_basis[(i, j)]
        for k, l in pairs:
            cases += 1
            lhs = opbracket(Yxy, model.yamagutian_basis[(k, l)]) * 6
            rhs = model.Y(yamaguti_bracket(A, e[i], e[j], e[k]), e[l]) + model.Y(
                e[k], yamaguti_bracket(A, e[i], e[j], e[l])
            )
            d = _defect(lhs, rhs)
            if d is not None:
                return IdentityReport(False, (i, j, k, l), d, cases)
    return IdentityReport.ok(cases)


def operator_basis(model: TranslationModel = OCTONION_MODEL) -> List[Matrix]:
    """L_0..L_{r-1}, R_0..R_{r-1}, then Y_ij for i < j in lexicographic order."""
    ys = [model.yamagutian_basis[p] for p in itertools.combinations(range(model.r), 2)]
    return list(model.left_basis) + list(model.right_basis) + ys


def envelope_dimension(model: TranslationModel = OCTONION_MODEL) -> Tuple[int, int]:
    """(rank of the span of all L_i, R_i, Y_ij, 2r + r(r-1)/2)."""
    bound = envelope_bound(model.r)
    ops = operator_basis(model)
    dim = rank([m.flatten() for m in ops]) if ops else 0
    if dim > bound:
        raise ConsistencyError(f"operator span rank {dim} exceeds bound {bound}")
    return dim, bound


# -- abstract envelope -------------------------------------------------------


class SymbolBasis:
    """Index bookkeeping for the symbols L_i, R_i, Y_ij (i < j)."""

    def __init__(self, r: int):
        self.r = r
        self.pairs = list(itertools.combinations(range(r), 2))
        self.pair_index = {p: n for n, p in enumerate(self.pairs)}
        self.dim = envelope_bound(r)

    def L(self, i: int) -> int:
        return i

    def R(self, i: int) -> int:
        return self.r + i

    def Yidx(self, i: int, j: int) -> int:
        return 2 * self.r + self.pair_index[(i, j)]

    def names(self) -> List[str]:
        return (
            [f"L{i}" for i in range(self.r)]
            + [f"R{i}" for i in range(self.r)]
            + [f"Y{i},{j}" for i, j in self.pairs]
        )

    def kind(self, s: int):
        """('L', i) | ('R', i) | ('Y', (i, j))."""
        if s < self.r:
            return "L", s
        if s < 2 * self.r:
            return "R", s - self.r
        return "Y", self.pairs[s - 2 * self.r]

    def tvec(self, x: Sequence, which: str) -> List[Fraction]:
        """Embed a tangent vector as a combination of L or R symbols."""
        v = [ZERO] * self.dim
        off = 0 if which == "L" else self.r
        for i, c in enumerate(x):
            v[off + i] = c
        return v

    def yvec(self, x: Sequence, y: Sequence) -> List[Fraction]:
        """Y(x; y) expanded into Y_ij (i < j) by bilinearity and antisymmetry."""
        v = [ZERO] * self.dim
        for i, xi in enumerate(x):
            if not xi:
                continue
            for j, yj in enumerate(y):
                if not yj or i == j:
                    continue
                if i < j:
                    v[self.Yidx(i, j)] += xi * yj
                else:
                    v[self.Yidx(j, i)] -= xi * yj
        return v


def _vsum(n: int, *terms) -> Vector:
    return combination([(Fraction(c), v) for c, v in terms], n)


def symbol_bracket_table(A: AntiCommAlgebra) -> Dict[Tuple[int, int], Vector]:
    """Bracket of every ordered pair of basis symbols in the free envelope space."""
    S = SymbolBasis(A.dim)
    n = S.dim
    e = [unit_vector(A.dim, i) for i in range(A.dim)]
    table: Dict[Tuple[int, int], Vector] = {}

    def trans_trans(ka, i, kb, j):
        x, y = e[i], e[j]
        xy = A.basis_bracket(i, j)
        Y = S.yvec(x, y)
        L, R = S.tvec(xy, "L"), S.tvec(xy, "R")
        if ka == "L" and kb == "L":
            return _vsum(n, (2, Y), (THIRD, L), (2 * THIRD, R))
        if ka == "R" and kb == "R":
            return _vsum(n, (2, Y), (-2 * THIRD, L), (-THIRD, R))
        if ka == "L" and kb == "R":
            return _vsum(n, (-1, Y), (THIRD, L), (-THIRD, R))
        # [R_x, L_y] = -[L_y, R_x]
        yx = A.basis_bracket(j, i)
        return _vsum(n, (1, S.yvec(y, x)), (-THIRD, S.tvec(yx, "L")), (THIRD, S.tvec(yx, "R")))

    def y_trans(pair, kind, k):
        t = yamaguti_bracket(A, e[pair[0]], e[pair[1]], e[k])
        return _vsum(n, (Fraction(1, 6), S.tvec(t, kind)))

    def y_y(p, q):
        x, y = e[p[0]], e[p[1]]
        z, w = e[q[0]], e[q[1]]
        return _vsum(
            n,
            (Fraction(1, 6), S.yvec(yamaguti_bracket(A, x, y, z), w)),
            (Fraction(1, 6), S.yvec(z, yamaguti_bracket(A, x, y, w))),
        )

    for a in range(n):
        ka, ia = S.kind(a)
        for b in range(n):
            kb, ib = S.kind(b)
            if ka != "Y" and kb != "Y":
                v = trans_trans(ka, ia, kb, ib)
            elif ka == "Y" and kb != "Y":
                v = y_trans(ia, kb, ib)
            elif ka != "Y" and kb == "Y":
                v = tuple(-c for c in y_trans(ib, ka, ia))
            else:
                v = y_y(ia, ib)
            table[(a, b)] = v
    return table


def cyclic_relations(A: AntiCommAlgebra) -> List[Vector]:
    """Y([x,y];z) + Y([y,z];x) + Y([z,x];y) on basis triples i < j < k."""
    S = SymbolBasis(A.dim)
    e = [unit_vector(A.dim, i) for i in range(A.dim)]
    rels = []
    for i, j, k in itertools.combinations(range(A.dim), 3):
        x, y, z = e[i], e[j], e[k]
        v = _vsum(
            S.dim,
            (1, S.yvec(A.basis_bracket(i, j), z)),
            (1, S.yvec(A.basis_bracket(j, k), x)),
            (1, S.yvec(A.basis_bracket(k, i), y)),
        )
        if not is_zero(v):
            rels.append(v)
    return rels


@dataclass(frozen=True)
class AbstractEnvelope:
    """Quotient of the free symbol space by the relation ideal.

    ``representatives`` are the symbol indices not among the ideal's pivot
    columns; they give a basis of the quotient. ``bracket_table[(a, b)]``
    holds the coordinates of [rep_a, rep_b] in that basis, for all ordered
    pairs (no antisymmetry assumed). ``closure_added`` is the rank the ideal
    closure added on top of the span of the cyclic relations, and
    ``descends`` says whether the bracket is well defined on the quotient.
    """

    source: AntiCommAlgebra
    ambient_dim: int
    relation_ideal: Subspace
    quotient_dim: int
    representatives: Tuple[int, ...]
    names: Tuple[str, ...]
    bracket_table: Dict[Tuple[int, int], Vector] = field(repr=False)
    relation_span_dim: int = 0
    closure_added: int = 0
    descends: bool = True

    @property
    def bound(self) -> int:
        return envelope_bound(self.source.dim)

    def to_json(self) -> dict:
        return {
            "ambient_dim": self.ambient_dim,
            "quotient_dim": self.quotient_dim,
            "bound": self.bound,
            "relation_span_dim": self.relation_span_dim,
            "relation_ideal_dim": self.relation_ideal.dim,
            "basis": list(self.names),
        }


def _ideal_action(table, n):
    def action(v, s):
        # two-sided: [v, e_s] for s < n, [e_{s-n}, v] otherwise
        if s < n:
            return combination(((c, table[(a, s)]) for a, c in enumerate(v) if c), n)
        s -= n
        return combination(((c, table[(s, a)]) for a, c in enumerate(v) if c), n)

    return action


def abstract_envelope(A: AntiCommAlgebra, require_malcev: bool = True, close_ideal: bool = True) -> AbstractEnvelope:
    """Lie algebra on L_i, R_i, Y_ij modulo the ideal generated by the cyclic Y-relations.

    ``require_malcev=False`` skips the precondition. ``close_ideal=False``
    divides out only the span of the cyclic relations; the bracket is then
    computed on representatives even if it fails to descend. Both switches
    exist to show what goes wrong for non-Mal'tsev input: with closure the
    quotient silently collapses, without it the Jacobi identity breaks.
    """
    if require_malcev:
        report = check_malcev(A)
        if not report.holds:
            raise PreconditionError(f"not a Mal'tsev algebra: witness {report.witness}")
    S = SymbolBasis(A.dim)
    n = S.dim
    table = symbol_bracket_table(A)
    action = _ideal_action(table, n)
    relations = cyclic_relations(A)
    span = Subspace.span(relations, n)
    ideal = ideal_closure(relations, action, n, 2 * n) if close_ideal else span

    descends = all(
        span_membership(ideal, action(row, s)) is not None for row in ideal.basis for s in range(2 * n)
    )
    if close_ideal and not descends:
        raise ConsistencyError("bracket does not descend to the quotient")

    pivots = set(ideal.pivots)
    reps = tuple(s for s in range(n) if s not in pivots)
    names = S.names()

    def coords(v):
        w = ideal.reduce(v)
        return tuple(w[s] for s in reps)

    qtable = {(a, b): coords(table[(reps[a], reps[b])]) for a in range(len(reps)) for b in range(len(reps))}
    return AbstractEnvelope(
        source=A,
        ambient_dim=n,
        relation_ideal=ideal,
        quotient_dim=n - ideal.dim,
        representatives=reps,
        names=tuple(names[s] for s in reps),
        bracket_table=qtable,
        relation_span_dim=span.dim,
        closure_added=ideal.dim - span.dim,
        descends=descends,
    )


def envelope_as_algebra(E: AbstractEnvelope) -> AntiCommAlgebra:
    """The quotient bracket as an AntiCommAlgebra (assumes antisymmetry was checked)."""
    entries = []
    for (a, b), v in E.bracket_table.items():
        if a < b:
            entries.extend((a, b, k, c) for k, c in enumerate(v) if c)
    return AntiCommAlgebra(E.quotient_dim, tuple(entries), "envelope")


def check_jacobi_envelope(E: AbstractEnvelope) -> IdentityReport:
    """Lie algebra axioms of the quotient bracket on its basis.

    First antisymmetry on all pairs (witness ``("antisym", a, b)``), then
    Jacobi on triples a < b < c (witness ``("jacobi", a, b, c)``).
    """
    m = E.quotient_dim
    cases = 0
    for a in range(m):
        for b in range(a, m):
            cases += 1
            s = tuple(x + y for x, y in zip(E.bracket_table[(a, b)], E.bracket_table[(b, a)]))
            if not is_zero(s):
                return IdentityReport(False, ("antisym", a, b), s, cases)
    rep = check_jacobi(envelope_as_algebra(E))
    if not rep.holds:
        return IdentityReport(False, ("jacobi",) + rep.witness, rep.defect, cases + rep.cases)
    return IdentityReport.ok(cases + rep.cases)

