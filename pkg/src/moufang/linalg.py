"""
Exact rational linear algebra.

Everything here works over ``fractions.Fraction``. Vectors are plain tuples of
Fractions, matrices are the immutable :class:`Matrix` below. The sizes involved
are tiny (at most 64 columns), so everything is dense.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Optional, Sequence, Tuple

from .errors import InputError

log = logging.getLogger(__name__)

Vector = Tuple[Fraction, ...]

ZERO = Fraction(0)
ONE = Fraction(1)


def to_fraction(value) -> Fraction:
    """Coerce an int, Fraction or ``"p/q"`` string to a Fraction.

    Floats are rejected: they would silently import rounding error.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise InputError(f"not a rational: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise InputError(f"not a rational: {value!r}") from exc
    raise InputError(f"not a rational: {value!r}")


def format_rational(q: Fraction) -> str:
    """``"p/q"``, or ``"p"`` when the denominator is 1."""
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def vector(values: Iterable) -> Vector:
    return tuple(to_fraction(v) for v in values)


def zero_vector(n: int) -> Vector:
    return (ZERO,) * n


def unit_vector(n: int, i: int) -> Vector:
    return tuple(ONE if k == i else ZERO for k in range(n))


def is_zero(v: Sequence) -> bool:
    return not any(v)


def vadd(u: Sequence, v: Sequence) -> Vector:
    if len(u) != len(v):
        raise InputError(f"length mismatch: {len(u)} vs {len(v)}")
    return tuple(a + b for a, b in zip(u, v))


def vsub(u: Sequence, v: Sequence) -> Vector:
    if len(u) != len(v):
        raise InputError(f"length mismatch: {len(u)} vs {len(v)}")
    return tuple(a - b for a, b in zip(u, v))


def vscale(c, v: Sequence) -> Vector:
    c = Fraction(c)
    return tuple(c * a for a in v)


def combination(terms: Iterable[Tuple[Fraction, Sequence]], n: int) -> Vector:
    """Sum of ``c * v`` over ``(c, v)`` pairs, all vectors of length ``n``."""
    acc = [ZERO] * n
    for c, v in terms:
        if not c:
            continue
        for k, a in enumerate(v):
            if a:
                acc[k] += c * a
    return tuple(acc)


@dataclass(frozen=True)
class Matrix:
    """Dense immutable rational matrix, stored row-major."""

    rows: Tuple[Vector, ...]

    def __post_init__(self):
        rows = tuple(tuple(to_fraction(x) for x in row) for row in self.rows)
        if rows and any(len(r) != len(rows[0]) for r in rows):
            raise InputError("ragged matrix")
        object.__setattr__(self, "rows", rows)

    @classmethod
    def zeros(cls, nrows: int, ncols: Optional[int] = None) -> "Matrix":
        ncols = nrows if ncols is None else ncols
        return cls(tuple((ZERO,) * ncols for _ in range(nrows)))

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls(tuple(unit_vector(n, i) for i in range(n)))

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence]) -> "Matrix":
        if not columns:
            return cls(())
        return cls(tuple(zip(*columns)))

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def ncols(self) -> int:
        return len(self.rows[0]) if self.rows else 0

    @property
    def shape(self) -> Tuple[int, int]:
        return self.nrows, self.ncols

    def __getitem__(self, idx):
        i, j = idx
        return self.rows[i][j]

    def column(self, j: int) -> Vector:
        return tuple(row[j] for row in self.rows)

    @property
    def T(self) -> "Matrix":
        return Matrix(tuple(zip(*self.rows))) if self.rows else self

    def flatten(self) -> Vector:
        return tuple(x for row in self.rows for x in row)

    def is_zero(self) -> bool:
        return all(not x for row in self.rows for x in row)

    def _check_same_shape(self, other: "Matrix"):
        if self.shape != other.shape:
            raise InputError(f"shape mismatch: {self.shape} vs {other.shape}")

    def __add__(self, other: "Matrix") -> "Matrix":
        self._check_same_shape(other)
        return Matrix(tuple(vadd(a, b) for a, b in zip(self.rows, other.rows)))

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._check_same_shape(other)
        return Matrix(tuple(vsub(a, b) for a, b in zip(self.rows, other.rows)))

    def __neg__(self) -> "Matrix":
        return Matrix(tuple(tuple(-x for x in row) for row in self.rows))

    def __mul__(self, c) -> "Matrix":
        if isinstance(c, Matrix):
            return NotImplemented
        c = to_fraction(c)
        return Matrix(tuple(tuple(c * x for x in row) for row in self.rows))

    __rmul__ = __mul__

    def __matmul__(self, other):
        if isinstance(other, Matrix):
            if self.ncols != other.nrows:
                raise InputError(f"shape mismatch: {self.shape} @ {other.shape}")
            out = []
            for row in self.rows:
                acc = [ZERO] * other.ncols
                # operators here are mostly signed permutations: skip zeros
                for a, orow in zip(row, other.rows):
                    if a:
                        for j, b in enumerate(orow):
                            if b:
                                acc[j] += a * b
                out.append(tuple(acc))
            return Matrix(tuple(out))
        v = tuple(other)
        if len(v) != self.ncols:
            raise InputError(f"shape mismatch: {self.shape} @ vector of length {len(v)}")
        return tuple(sum((a * b for a, b in zip(row, v) if a and b), ZERO) for row in self.rows)

    def __repr__(self):
        body = "; ".join(" ".join(format_rational(x) for x in row) for row in self.rows)
        return f"Matrix([{body}])"


def linear_combination(terms: Iterable[Tuple[Fraction, Matrix]], shape: Tuple[int, int]) -> Matrix:
    """Sum of ``c * M`` over ``(c, M)`` pairs; zero matrix of ``shape`` if empty."""
    nrows, ncols = shape
    acc = [[ZERO] * ncols for _ in range(nrows)]
    for c, m in terms:
        if not c:
            continue
        for i, row in enumerate(m.rows):
            for j, x in enumerate(row):
                if x:
                    acc[i][j] += c * x
    return Matrix(tuple(tuple(r) for r in acc))


def _as_rows(m) -> list:
    if isinstance(m, Matrix):
        return [list(r) for r in m.rows]
    return [[to_fraction(x) for x in r] for r in m]


def rref(m) -> Tuple[Matrix, int, Tuple[int, ...]]:
    """Reduced row-echelon form by Gauss-Jordan elimination.

    Pivots are chosen as the first nonzero entry scanning columns left to
    right and rows top to bottom, so the output (and everything derived from
    it) is deterministic. Returns ``(reduced, rank, pivot_columns)``.
    """
    a = _as_rows(m)
    nrows = len(a)
    ncols = len(a[0]) if a else 0
    pivots = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        p = next((i for i in range(r, nrows) if a[i][c]), None)
        if p is None:
            continue
        if p != r:
            a[r], a[p] = a[p], a[r]
        piv = a[r][c]
        if piv != 1:
            a[r] = [x / piv for x in a[r]]
        prow = a[r]
        for i in range(nrows):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], prow)]
        pivots.append(c)
        r += 1
    reduced = Matrix(tuple(tuple(row) for row in a)) if a else Matrix(())
    return reduced, r, tuple(pivots)


def rank(m) -> int:
    return rref(m)[1]


def inverse(m: Matrix) -> Matrix:
    """Exact inverse of a square matrix; raises ZeroDivisionError if singular."""
    n = m.nrows
    if m.ncols != n:
        raise InputError("inverse of a non-square matrix")
    aug = [list(row) + list(unit_vector(n, i)) for i, row in enumerate(m.rows)]
    red, _, piv = rref(aug)
    if tuple(piv) != tuple(range(n)):
        raise ZeroDivisionError("singular matrix")
    return Matrix(tuple(row[n:] for row in red.rows))


@dataclass(frozen=True)
class Subspace:
    """A subspace of Q^n given by a basis in reduced row-echelon form."""

    ambient_dim: int
    basis: Tuple[Vector, ...] = ()

    @classmethod
    def span(cls, vectors: Iterable[Sequence], ambient_dim: int) -> "Subspace":
        rows = [vector(v) for v in vectors]
        for v in rows:
            if len(v) != ambient_dim:
                raise InputError(f"vector of length {len(v)} in ambient dimension {ambient_dim}")
        if not rows:
            return cls(ambient_dim)
        red, r, _ = rref(rows)
        return cls(ambient_dim, red.rows[:r])

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def pivots(self) -> Tuple[int, ...]:
        return tuple(next(i for i, x in enumerate(row) if x) for row in self.basis)

    def reduce(self, v: Sequence) -> Vector:
        """Canonical representative of ``v`` modulo this subspace.

        The result vanishes on every pivot column.
        """
        w = list(v)
        for p, row in zip(self.pivots, self.basis):
            f = w[p]
            if f:
                for k, x in enumerate(row):
                    if x:
                        w[k] -= f * x
        return tuple(w)

    def __contains__(self, v) -> bool:
        return span_membership(self, v) is not None


def span_membership(s: Subspace, v: Sequence) -> Optional[Vector]:
    """Coordinates of ``v`` in ``s.basis``, or None if ``v`` is not in the span."""
    v = vector(v)
    if len(v) != s.ambient_dim:
        raise InputError(f"vector of length {len(v)} in ambient dimension {s.ambient_dim}")
    coords = tuple(v[p] for p in s.pivots)
    if combination(zip(coords, s.basis), s.ambient_dim) != v:
        return None
    return coords


class _EchelonBuilder:
    """Incrementally maintained reduced row-echelon basis."""

    def __init__(self, n: int):
        self.n = n
        self.rows: dict = {}  # pivot column -> row (list)

    def insert(self, v: Sequence) -> bool:
        w = list(v)
        for p in sorted(self.rows):
            f = w[p]
            if f:
                row = self.rows[p]
                for k, x in enumerate(row):
                    if x:
                        w[k] -= f * x
        q = next((k for k, x in enumerate(w) if x), None)
        if q is None:
            return False
        lead = w[q]
        w = [x / lead for x in w]
        for p, row in self.rows.items():
            f = row[q]
            if f:
                self.rows[p] = [x - f * y for x, y in zip(row, w)]
        self.rows[q] = w
        return True

    def subspace(self) -> Subspace:
        return Subspace(self.n, tuple(tuple(self.rows[p]) for p in sorted(self.rows)))


def ideal_closure(
    generators: Iterable[Sequence],
    bracket_action: Callable[[Vector, int], Sequence],
    ambient_dim: int,
    n_actions: Optional[int] = None,
) -> Subspace:
    """Smallest subspace containing ``generators`` and stable under the actions.

    ``bracket_action(v, s)`` must be linear in ``v``; ``s`` runs over
    ``range(n_actions)`` (default ``ambient_dim``), typically "bracket with the
    s-th basis element". Iterates rounds, feeding each round only the vectors
    added in the previous one, until no round adds rank.
    """
    n_actions = ambient_dim if n_actions is None else n_actions
    builder = _EchelonBuilder(ambient_dim)
    frontier = []
    for g in generators:
        g = vector(g)
        if len(g) != ambient_dim:
            raise InputError(f"generator of length {len(g)} in ambient dimension {ambient_dim}")
        if builder.insert(g):
            frontier.append(g)
    rounds = 0
    while frontier:
        rounds += 1
        added = []
        for v in frontier:
            for s in range(n_actions):
                w = vector(bracket_action(v, s))
                if any(w) and builder.insert(w):
                    added.append(w)
        frontier = added
        if len(builder.rows) == ambient_dim:
            break
    log.debug("ideal closure: dim %d after %d rounds", len(builder.rows), rounds)
    return builder.subspace()
