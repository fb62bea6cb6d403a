"""
Exact rational octonions.

Basis 1 = e0, e1, ..., e7. Products of imaginary units follow the seven
oriented Fano triples in ``FANO_TRIPLES``: for each (a, b, c) we have
e_a e_b = e_c, e_b e_c = e_a, e_c e_a = e_b, and reversing the order flips
the sign. Nonzero octonions form an analytic Moufang loop whose
multiplication is bilinear, so every derivative used by the rest of the
package is an exact linear map.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Tuple

from .algebra import AntiCommAlgebra, IdentityReport
from .errors import DomainError, InputError
from .linalg import ZERO, Matrix, to_fraction, vsub

FANO_TRIPLES = ((1, 2, 4), (2, 3, 5), (3, 4, 6), (4, 5, 7), (5, 6, 1), (6, 7, 2), (7, 1, 3))

# Multiplication table: TABLE[i][j] = (k, sign) meaning e_i e_j = sign * e_k.
MulTable = Tuple[Tuple[Tuple[int, int], ...], ...]


def build_table(triples=FANO_TRIPLES) -> MulTable:
    t = [[None] * 8 for _ in range(8)]
    for i in range(8):
        t[0][i] = (i, 1)
        t[i][0] = (i, 1)
    for i in range(1, 8):
        t[i][i] = (0, -1)
    for a, b, c in triples:
        for x, y, z in ((a, b, c), (b, c, a), (c, a, b)):
            t[x][y] = (z, 1)
            t[y][x] = (z, -1)
    if any(entry is None for row in t for entry in row):
        raise InputError("triples do not determine a full multiplication table")
    return tuple(tuple(row) for row in t)


TABLE = build_table()


def flip_sign(table: MulTable, i: int, j: int) -> MulTable:
    """Copy of ``table`` with the sign of e_i e_j negated (a deliberately broken table)."""
    rows = [list(r) for r in table]
    k, s = rows[i][j]
    rows[i][j] = (k, -s)
    return tuple(tuple(r) for r in rows)


@dataclass(frozen=True)
class Octonion:
    coords: Tuple[Fraction, ...]

    def __post_init__(self):
        c = tuple(to_fraction(x) for x in self.coords)
        if len(c) != 8:
            raise InputError(f"an octonion has 8 coordinates, got {len(c)}")
        object.__setattr__(self, "coords", c)

    @classmethod
    def unit(cls, i: int, scale=1) -> "Octonion":
        return cls(tuple(to_fraction(scale) if k == i else ZERO for k in range(8)))

    @classmethod
    def zero(cls) -> "Octonion":
        return cls((ZERO,) * 8)

    @classmethod
    def one(cls) -> "Octonion":
        return cls.unit(0)

    @property
    def real(self) -> Fraction:
        return self.coords[0]

    @property
    def imag(self) -> Tuple[Fraction, ...]:
        return self.coords[1:]

    def __add__(self, other: "Octonion") -> "Octonion":
        return Octonion(tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: "Octonion") -> "Octonion":
        return Octonion(tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> "Octonion":
        return Octonion(tuple(-a for a in self.coords))

    def __mul__(self, other):
        if isinstance(other, Octonion):
            return oct_mul(self, other)
        c = to_fraction(other)
        return Octonion(tuple(c * a for a in self.coords))

    def __rmul__(self, c):
        c = to_fraction(c)
        return Octonion(tuple(c * a for a in self.coords))

    def conjugate(self) -> "Octonion":
        return Octonion((self.coords[0],) + tuple(-a for a in self.coords[1:]))

    def norm(self) -> Fraction:
        """Squared Euclidean norm N(a) = a * conj(a)."""
        return sum((a * a for a in self.coords), ZERO)

    def is_zero(self) -> bool:
        return not any(self.coords)

    def __repr__(self):
        terms = []
        for i, a in enumerate(self.coords):
            if a:
                terms.append(f"{a}" if i == 0 else f"{a}*e{i}")
        return "Octonion(" + (" + ".join(terms) or "0") + ")"


def oct_mul(a: Octonion, b: Octonion, table: MulTable = TABLE) -> Octonion:
    out = [ZERO] * 8
    for i, x in enumerate(a.coords):
        if not x:
            continue
        row = table[i]
        for j, y in enumerate(b.coords):
            if y:
                k, s = row[j]
                out[k] += x * y if s > 0 else -(x * y)
    return Octonion(tuple(out))


def oct_inverse(a: Octonion) -> Octonion:
    n = a.norm()
    if not n:
        raise DomainError("zero-norm octonion has no inverse")
    return a.conjugate() * (1 / n)


def aux_matrices(g: Octonion, table: MulTable = TABLE) -> Tuple[Matrix, Matrix]:
    """Matrices of h -> g h and h -> h g.

    These are d(gh)/dh and d(hg)/dh at h = e, exactly, since multiplication
    is bilinear. Column j is the image of the unit e_j.
    """
    units = [Octonion.unit(j) for j in range(8)]
    lmat = Matrix.from_columns([oct_mul(g, u, table).coords for u in units])
    rmat = Matrix.from_columns([oct_mul(u, g, table).coords for u in units])
    return lmat, rmat


@dataclass(frozen=True)
class BiDualOctonion:
    """a + s b + t c + st d with central nilpotents s^2 = t^2 = 0."""

    a: Octonion
    b: Octonion
    c: Octonion
    d: Octonion

    @classmethod
    def lift(cls, a: Octonion, s_part: Optional[Octonion] = None, t_part: Optional[Octonion] = None):
        z = Octonion.zero()
        return cls(a, s_part or z, t_part or z, z)

    def mul(self, other: "BiDualOctonion", table: MulTable = TABLE) -> "BiDualOctonion":
        m = lambda x, y: oct_mul(x, y, table)  # noqa: E731
        return BiDualOctonion(
            m(self.a, other.a),
            m(self.a, other.b) + m(self.b, other.a),
            m(self.a, other.c) + m(self.c, other.a),
            m(self.a, other.d) + m(self.d, other.a) + m(self.b, other.c) + m(self.c, other.b),
        )

    __mul__ = mul


def commutator_st_coefficient(
    x: Octonion, y: Octonion, parenthesization: str = "left", table: MulTable = TABLE
) -> Octonion:
    """st-coefficient of the loop commutator of g = 1 + s x and h = 1 + t y.

    For imaginary x, y the inverses are exact: g^-1 = 1 - s x because s^2 = 0.
    ``parenthesization`` is ``"left"`` for ((g h) g^-1) h^-1 and ``"right"``
    for (g (h g^-1)) h^-1. The st-coefficient is the mixed second derivative
    of g h g^-1 h^-1 at g = h = e in the directions x, y.
    """
    one = Octonion.one()
    g = BiDualOctonion.lift(one, s_part=x)
    g_inv = BiDualOctonion.lift(one, s_part=-x)
    h = BiDualOctonion.lift(one, t_part=y)
    h_inv = BiDualOctonion.lift(one, t_part=-y)
    if x.real or y.real:
        raise InputError("directions must be imaginary (tangent at the identity)")
    if parenthesization == "left":
        word = g.mul(h, table).mul(g_inv, table).mul(h_inv, table)
    elif parenthesization == "right":
        word = g.mul(h.mul(g_inv, table), table).mul(h_inv, table)
    else:
        raise InputError(f"unknown parenthesization {parenthesization!r}")
    return word.d


def tangent_structure_constants(
    indices: Sequence[int] = tuple(range(1, 8)),
    parenthesization: str = "left",
    table: MulTable = TABLE,
) -> AntiCommAlgebra:
    """Tangent algebra of the loop on the imaginary units ``indices``.

    c^i_jk is read off as the e_i coordinate of the st-coefficient of the
    loop commutator with g = 1 + s e_j, h = 1 + t e_k. Basis vector number n
    of the result corresponds to e_{indices[n]}. Raises if the brackets leave
    the span of ``indices`` (i.e. it is not a subalgebra).
    """
    indices = tuple(indices)
    pos = {u: n for n, u in enumerate(indices)}
    entries = []
    for (n1, j), (n2, k) in itertools.combinations(enumerate(indices), 2):
        coeff = commutator_st_coefficient(Octonion.unit(j), Octonion.unit(k), parenthesization, table)
        for i, value in enumerate(coeff.coords):
            if not value:
                continue
            if i not in pos:
                raise InputError(f"[e{j}, e{k}] leaves the span of the given units")
            entries.append((n1, n2, pos[i], value))
    r = len(indices)
    name = "octonion-tangent" if indices == tuple(range(1, 8)) else f"tangent{indices}"
    return AntiCommAlgebra(r, tuple(entries), name)


def _polarized_moufang_units():
    units = [Octonion.unit(i) for i in range(8)]
    firsts = [((i,), u) for i, u in enumerate(units)]
    firsts += [((i, j), units[i] + units[j]) for i, j in itertools.combinations(range(8), 2)]
    return units, firsts


def check_alternative_moufang(table: MulTable = TABLE) -> IdentityReport:
    """Moufang identity (a g)(h a) = a (g h) a over the whole algebra.

    Quadratic in a and linear in g, h, so it is enough to let a run over
    units and sums of two units and g, h over units. Both readings
    (a (g h)) a and a ((g h) a) of the right-hand side are checked. Witness
    is ``(a_units, g, h)`` where ``a_units`` names the units summed into a.
    """
    m = lambda x, y: oct_mul(x, y, table)  # noqa: E731
    units, firsts = _polarized_moufang_units()
    cases = 0
    for a_key, a in firsts:
        for gi, g in enumerate(units):
            for hi, h in enumerate(units):
                cases += 1
                lhs = m(m(a, g), m(h, a))
                gh = m(g, h)
                rhs1 = m(m(a, gh), a)
                rhs2 = m(a, m(gh, a))
                if lhs != rhs1:
                    return IdentityReport(False, (a_key, gi, hi), vsub(lhs.coords, rhs1.coords), cases)
                if rhs1 != rhs2:
                    return IdentityReport(
                        False, (a_key, gi, hi), vsub(rhs1.coords, rhs2.coords), cases,
                        note="right-hand side parenthesizations disagree",
                    )
    return IdentityReport.ok(cases)


def embed_imaginary(x: Sequence, indices: Sequence[int] = tuple(range(1, 8))) -> Octonion:
    """Octonion with imaginary coordinates ``x`` placed on units ``indices``."""
    if len(x) != len(indices):
        raise InputError(f"expected {len(indices)} imaginary coordinates, got {len(x)}")
    coords = [ZERO] * 8
    for u, v in zip(indices, x):
        coords[u] = to_fraction(v)
    return Octonion(tuple(coords))


def norm_multiplicative(a: Octonion, b: Octonion, table: MulTable = TABLE) -> bool:
    return oct_mul(a, b, table).norm() == a.norm() * b.norm()
