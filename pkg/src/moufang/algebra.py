"""
Finite-dimensional anticommutative algebras given by structure constants.

An algebra of dimension r is stored as the sparse list of nonzero constants
c^k_ij with i < j, meaning [b_i, b_j] = sum_k c^k_ij b_k; the entries with
i > j follow from antisymmetry and the diagonal is zero.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Optional, Sequence, Tuple

from .errors import InputError
from .linalg import ZERO, Vector, combination, format_rational, is_zero, to_fraction, unit_vector


@dataclass(frozen=True)
class IdentityReport:
    """Outcome of an exhaustive identity check.

    ``witness`` holds the arguments (basis indices, element indices, ...) of
    the first failing case in scan order and ``defect`` the nonzero
    difference between the two sides there.
    """

    holds: bool
    witness: Optional[tuple] = None
    defect: Optional[tuple] = None
    cases: int = 0
    note: str = ""

    def __post_init__(self):
        if not self.holds and (self.witness is None or self.defect is None):
            raise ValueError("a failing report needs a witness and a defect")

    def __bool__(self):
        return self.holds

    @classmethod
    def ok(cls, cases: int, note: str = "") -> "IdentityReport":
        return cls(True, cases=cases, note=note)


def _pair_key(i: int, j: int) -> Tuple[int, int, Fraction]:
    return (i, j, Fraction(1)) if i < j else (j, i, Fraction(-1))


@dataclass(frozen=True)
class AntiCommAlgebra:
    dim: int
    constants: Tuple[Tuple[int, int, int, Fraction], ...] = ()
    name: str = field(default="", compare=False)
    _table: Dict = field(default=None, init=False, repr=False, compare=False)

    def __post_init__(self):
        if not isinstance(self.dim, int) or self.dim < 0:
            raise InputError("negative dimension")
        seen = set()
        clean = []
        for entry in self.constants:
            if len(entry) != 4:
                raise InputError(f"structure constant entry must be (i, j, k, value): {entry!r}")
            i, j, k, value = entry
            for idx in (i, j, k):
                if not isinstance(idx, int) or isinstance(idx, bool) or not 0 <= idx < self.dim:
                    raise InputError(f"index out of range in {entry!r}")
            if i >= j:
                raise InputError(f"structure constant requires i < j, got {entry!r}")
            if (i, j, k) in seen:
                raise InputError(f"duplicate structure constant ({i}, {j}, {k})")
            seen.add((i, j, k))
            value = to_fraction(value)
            if value:
                clean.append((i, j, k, value))
        clean.sort()
        object.__setattr__(self, "constants", tuple(clean))
        table = {}
        for i, j, k, value in clean:
            table.setdefault((i, j), {})[k] = value
        object.__setattr__(self, "_table", {key: _dict_to_vec(d, self.dim) for key, d in table.items()})

    @classmethod
    def from_table(cls, brackets: Dict[Tuple[int, int], Sequence], dim: int, name: str = "") -> "AntiCommAlgebra":
        """Build from ``{(i, j): [b_i, b_j]}`` for i < j."""
        entries = []
        for (i, j), v in sorted(brackets.items()):
            for k, value in enumerate(v):
                if value:
                    entries.append((i, j, k, value))
        return cls(dim, tuple(entries), name)

    def basis_bracket(self, i: int, j: int) -> Vector:
        """[b_i, b_j]."""
        if i == j:
            return (ZERO,) * self.dim
        a, b, sign = _pair_key(i, j)
        v = self._table.get((a, b))
        if v is None:
            return (ZERO,) * self.dim
        return v if sign > 0 else tuple(-x for x in v)

    def constant(self, i: int, j: int, k: int) -> Fraction:
        """c^k_ij with antisymmetric completion."""
        return self.basis_bracket(i, j)[k]

    def is_abelian(self) -> bool:
        return not self.constants

    def to_json(self) -> dict:
        return {
            "dim": self.dim,
            "c": [[i, j, k, format_rational(v)] for i, j, k, v in self.constants],
        }

    @classmethod
    def from_json(cls, data, name: str = "") -> "AntiCommAlgebra":
        if not isinstance(data, dict) or "dim" not in data:
            raise InputError("algebra JSON must be an object with a 'dim' field")
        dim = data["dim"]
        if not isinstance(dim, int) or isinstance(dim, bool) or dim < 0:
            raise InputError(f"bad dimension {dim!r}")
        entries = data.get("c", [])
        if not isinstance(entries, list):
            raise InputError("'c' must be a list")
        parsed = []
        for entry in entries:
            if not isinstance(entry, list) or len(entry) != 4:
                raise InputError(f"structure constant entry must be [i, j, k, value]: {entry!r}")
            parsed.append(tuple(entry))
        return cls(dim, tuple(parsed), name)

    def dumps(self) -> str:
        """JSON text with one structure constant per line."""
        data = self.to_json()
        rows = ",\n".join("    " + json.dumps(entry) for entry in data["c"])
        body = f"[\n{rows}\n  ]" if rows else "[]"
        return f'{{\n  "dim": {data["dim"]},\n  "c": {body}\n}}'


def _dict_to_vec(d: dict, n: int) -> Vector:
    return tuple(d.get(k, ZERO) for k in range(n))


def load_algebra(path) -> AntiCommAlgebra:
    try:
        with open(path) as fh:
            data = json.load(fh)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON: {exc}") from exc
    return AntiCommAlgebra.from_json(data, name=str(path))


def _check_len(A: AntiCommAlgebra, *vs):
    for v in vs:
        if len(v) != A.dim:
            raise InputError(f"vector of length {len(v)} for algebra of dimension {A.dim}")


def bracket(A: AntiCommAlgebra, x: Sequence, y: Sequence) -> Vector:
    """[x, y]^k = c^k_ij x^i y^j."""
    _check_len(A, x, y)
    terms = []
    for i, xi in enumerate(x):
        if not xi:
            continue
        for j, yj in enumerate(y):
            if yj and i != j:
                terms.append((Fraction(xi) * yj, A.basis_bracket(i, j)))
    return combination(terms, A.dim)


def jacobiator(A: AntiCommAlgebra, x, y, z) -> Vector:
    """J(x,y,z) = [x,[y,z]] + [y,[z,x]] + [z,[x,y]]."""
    _check_len(A, x, y, z)
    b = lambda u, v: bracket(A, u, v)  # noqa: E731
    return combination(
        [(1, b(x, b(y, z))), (1, b(y, b(z, x))), (1, b(z, b(x, y)))], A.dim
    )


def yamaguti_bracket(A: AntiCommAlgebra, x, y, z) -> Vector:
    """[x,y,z] = [x,[y,z]] - [y,[x,z]] + [[x,y],z]."""
    _check_len(A, x, y, z)
    b = lambda u, v: bracket(A, u, v)  # noqa: E731
    return combination(
        [(1, b(x, b(y, z))), (-1, b(y, b(x, z))), (1, b(b(x, y), z))], A.dim
    )


def _basis(A: AntiCommAlgebra):
    return [unit_vector(A.dim, i) for i in range(A.dim)]


def check_jacobi(A: AntiCommAlgebra) -> IdentityReport:
    """Jacobi identity on all basis triples i < j < k.

    Enough by trilinearity and total antisymmetry of the Jacobiator.
    """
    e = _basis(A)
    cases = 0
    for i, j, k in itertools.combinations(range(A.dim), 3):
        cases += 1
        J = jacobiator(A, e[i], e[j], e[k])
        if not is_zero(J):
            return IdentityReport(False, (i, j, k), J, cases)
    return IdentityReport.ok(cases)


def malcev_defect(A: AntiCommAlgebra, x, w, y, z) -> Vector:
    """Full polarization in the quadratic slot of [J(x,y,z),x] - J(x,y,[x,z]).

    M(x,w;y,z) = [J(x,y,z),w] + [J(w,y,z),x] - J(x,y,[w,z]) - J(w,y,[x,z]).
    """
    return combination(
        [
            (1, bracket(A, jacobiator(A, x, y, z), w)),
            (1, bracket(A, jacobiator(A, w, y, z), x)),
            (-1, jacobiator(A, x, y, bracket(A, w, z))),
            (-1, jacobiator(A, w, y, bracket(A, x, z))),
        ],
        A.dim,
    )


def check_malcev(A: AntiCommAlgebra) -> IdentityReport:
    """Mal'tsev identity [J(x,y,z),x] = J(x,y,[x,z]) for all vectors.

    The identity is quadratic in x and linear in y and z, so it holds
    everywhere iff its polarization vanishes on basis tuples
    (b_i, b_l; b_j, b_k) with i <= l. Witness is ``(i, l, j, k)``.
    """
    e = _basis(A)
    # Jacobiators of basis triples are reused heavily
    jac = {}

    def J(a, b, c):
        key = (a, b, c)
        if key not in jac:
            jac[key] = jacobiator(A, e[a], e[b], e[c])
        return jac[key]

    cases = 0
    r = A.dim
    for i in range(r):
        for l in range(i, r):
            for j in range(r):
                for k in range(r):
                    cases += 1
                    d = combination(
                        [
                            (1, bracket(A, J(i, j, k), e[l])),
                            (1, bracket(A, J(l, j, k), e[i])),
                            (-1, jacobiator(A, e[i], e[j], A.basis_bracket(l, k))),
                            (-1, jacobiator(A, e[l], e[j], A.basis_bracket(i, k))),
                        ],
                        r,
                    )
                    if not is_zero(d):
                        return IdentityReport(False, (i, l, j, k), d, cases)
    return IdentityReport.ok(cases)


def yamaguti_table(A: AntiCommAlgebra) -> Dict[Tuple[int, int, int], Vector]:
    """[b_i, b_j, b_k] for every basis triple."""
    e = _basis(A)
    return {
        (i, j, k): yamaguti_bracket(A, e[i], e[j], e[k])
        for i, j, k in itertools.product(range(A.dim), repeat=3)
    }


def perturbed(A: AntiCommAlgebra, i: int, j: int, k: int, delta=1) -> AntiCommAlgebra:
    """Copy of ``A`` with c^k_ij (i < j) shifted by ``delta``."""
    if not i < j:
        raise InputError("perturbation needs i < j")
    consts = {(a, b, c): v for a, b, c, v in A.constants}
    consts[(i, j, k)] = consts.get((i, j, k), ZERO) + to_fraction(delta)
    return AntiCommAlgebra(A.dim, tuple((a, b, c, v) for (a, b, c), v in consts.items()), A.name + "~")


# -- bundled examples --------------------------------------------------------

def abelian_algebra(r: int) -> AntiCommAlgebra:
    return AntiCommAlgebra(r, (), f"abelian{r}")


def cross_product_algebra() -> AntiCommAlgebra:
    """so(3): [e1,e2] = e3, [e2,e3] = e1, [e3,e1] = e2 (0-based indices)."""
    return AntiCommAlgebra(3, ((0, 1, 2, 1), (1, 2, 0, 1), (0, 2, 1, -1)), "so3")


def heisenberg_algebra() -> AntiCommAlgebra:
    """[x, y] = z, everything else zero."""
    return AntiCommAlgebra(3, ((0, 1, 2, 1),), "heisenberg")


def sl2_algebra() -> AntiCommAlgebra:
    """Basis (h, e, f): [h,e] = 2e, [h,f] = -2f, [e,f] = h."""
    return AntiCommAlgebra(3, ((0, 1, 1, 2), (0, 2, 2, -2), (1, 2, 0, 1)), "sl2")


def bundled_lie_algebras() -> Tuple[AntiCommAlgebra, ...]:
    return (abelian_algebra(2), cross_product_algebra(), heisenberg_algebra(), sl2_algebra())
