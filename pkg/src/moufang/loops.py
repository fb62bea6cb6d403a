"""
Finite loops given by Cayley tables.

``table[g][h]`` is the index of the product g*h. All scans run in
lexicographic order of their arguments and stop at the first failure, so the
reported witness is deterministic.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

from .algebra import IdentityReport
from .errors import InputError, PreconditionError
from .octonion import Octonion, oct_mul


@dataclass(frozen=True)
class CayleyTable:
    order: int
    table: Tuple[Tuple[int, ...], ...]
    names: Tuple[str, ...] = ()

    def __post_init__(self):
        n = self.order
        if not isinstance(n, int) or isinstance(n, bool) or n < 1:
            raise InputError(f"bad order {n!r}")
        rows = tuple(tuple(row) for row in self.table)
        if len(rows) != n or any(len(row) != n for row in rows):
            raise InputError(f"table must be {n}x{n}")
        for g, row in enumerate(rows):
            for h, v in enumerate(row):
                if not isinstance(v, int) or isinstance(v, bool) or not 0 <= v < n:
                    raise InputError(f"entry table[{g}][{h}] = {v!r} out of range")
        names = tuple(self.names) or tuple(f"g{i}" for i in range(n))
        if len(names) != n:
            raise InputError(f"expected {n} names, got {len(names)}")
        object.__setattr__(self, "table", rows)
        object.__setattr__(self, "names", names)

    def mul(self, g: int, h: int) -> int:
        return self.table[g][h]

    def index(self, name: str) -> int:
        return self.names.index(name)

    def to_json(self) -> dict:
        return {"order": self.order, "names": list(self.names), "table": [list(r) for r in self.table]}

    @classmethod
    def from_json(cls, data) -> "CayleyTable":
        if not isinstance(data, dict) or "table" not in data:
            raise InputError("loop JSON must be an object with a 'table' field")
        table = data["table"]
        if not isinstance(table, list) or not all(isinstance(r, list) for r in table):
            raise InputError("'table' must be a list of lists")
        order = data.get("order", len(table))
        names = data.get("names") or ()
        if not isinstance(names, (list, tuple)) or not all(isinstance(x, str) for x in names):
            raise InputError("'names' must be a list of strings")
        return cls(order, tuple(tuple(r) for r in table), tuple(names))


def load_loop(path) -> CayleyTable:
    try:
        with open(path) as fh:
            data = json.load(fh)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON: {exc}") from exc
    return CayleyTable.from_json(data)


def check_latin_square(t: CayleyTable) -> IdentityReport:
    """Every row and column is a permutation. Witness ``(index, value)``; note says row or column."""
    n = t.order
    for g in range(n):
        seen = set()
        for h in range(n):
            v = t.table[g][h]
            if v in seen:
                return IdentityReport(False, (g, v), (v,), g + 1, note="row")
            seen.add(v)
    for h in range(n):
        seen = set()
        for g in range(n):
            v = t.table[g][h]
            if v in seen:
                return IdentityReport(False, (h, v), (v,), n + h + 1, note="column")
            seen.add(v)
    return IdentityReport.ok(2 * n)


def find_identity(t: CayleyTable) -> Optional[int]:
    n = t.order
    for e in range(n):
        if all(t.table[e][g] == g and t.table[g][e] == g for g in range(n)):
            return e
    return None


def find_inverses(t: CayleyTable) -> Optional[List[int]]:
    """Two-sided inverse of every element, or None if some element has none."""
    e = find_identity(t)
    if e is None:
        raise PreconditionError("table has no identity element")
    inv = []
    for g in range(t.order):
        h = next((h for h in range(t.order) if t.table[g][h] == e and t.table[h][g] == e), None)
        if h is None:
            return None
        inv.append(h)
    return inv


def check_moufang(t: CayleyTable) -> IdentityReport:
    """(a g)(h a) = (a (g h)) a on all triples (a, g, h).

    The reading a((gh)a) of the right side is computed as well; the first
    triple where the two readings differ is returned in ``note`` as a
    diagnostic (they agree in any flexible loop). Defect is (lhs, rhs).
    """
    T = t.table
    n = t.order
    diagnostic = ""
    cases = 0
    for a, g, h in itertools.product(range(n), repeat=3):
        cases += 1
        gh = T[g][h]
        lhs = T[T[a][g]][T[h][a]]
        rhs = T[T[a][gh]][a]
        if not diagnostic and rhs != T[a][T[gh][a]]:
            diagnostic = f"readings (a(gh))a and a((gh)a) differ at {(a, g, h)}"
        if lhs != rhs:
            return IdentityReport(False, (a, g, h), (lhs, rhs), cases, note=diagnostic)
    return IdentityReport.ok(cases, note=diagnostic)


def check_associativity(t: CayleyTable) -> IdentityReport:
    """(g h) a = g (h a) on all triples. Defect is (lhs, rhs)."""
    T = t.table
    cases = 0
    for g, h, a in itertools.product(range(t.order), repeat=3):
        cases += 1
        lhs, rhs = T[T[g][h]][a], T[g][T[h][a]]
        if lhs != rhs:
            return IdentityReport(False, (g, h, a), (lhs, rhs), cases)
    return IdentityReport.ok(cases)


def check_translation_inverses(t: CayleyTable) -> IdentityReport:
    """L_{g^-1} L_g = id and R_{g^-1} R_g = id for every g.

    Witness ``(g, h)`` with note ``"L"`` or ``"R"``: the first h not sent back
    to itself. Defect is (image, h).
    """
    inv = find_inverses(t)
    if inv is None:
        raise PreconditionError("not every element has a two-sided inverse")
    T = t.table
    cases = 0
    for g in range(t.order):
        gi = inv[g]
        for h in range(t.order):
            cases += 1
            back = T[gi][T[g][h]]
            if back != h:
                return IdentityReport(False, (g, h), (back, h), cases, note="L")
            back = T[T[h][g]][gi]
            if back != h:
                return IdentityReport(False, (g, h), (back, h), cases, note="R")
    return IdentityReport.ok(cases)


@dataclass(frozen=True)
class LoopReport:
    is_quasigroup: IdentityReport
    identity: Optional[int]
    inverses: Optional[List[int]]
    is_moufang: IdentityReport
    is_associative: IdentityReport
    translation_inverses: Optional[IdentityReport] = field(default=None)

    @property
    def is_moufang_loop(self) -> bool:
        return bool(self.is_quasigroup and self.identity is not None and self.inverses is not None and self.is_moufang)


def analyze(t: CayleyTable) -> LoopReport:
    identity = find_identity(t)
    inverses = find_inverses(t) if identity is not None else None
    return LoopReport(
        is_quasigroup=check_latin_square(t),
        identity=identity,
        inverses=inverses,
        is_moufang=check_moufang(t),
        is_associative=check_associativity(t),
        translation_inverses=check_translation_inverses(t) if inverses is not None else None,
    )


# -- bundled tables -----------------------------------------------------------

def signed_unit(index: int) -> Octonion:
    """Element ``index`` of the order-16 loop: indices 0..7 are +e_i, 8..15 are -e_i."""
    sign, unit = divmod(index, 8)
    return Octonion.unit(unit, -1 if sign else 1)


def build_o16() -> CayleyTable:
    """The Moufang loop {+-1, +-e1, ..., +-e7} under octonion multiplication."""
    elems = [signed_unit(i) for i in range(16)]
    lookup = {x: i for i, x in enumerate(elems)}
    table = []
    for a in elems:
        row = []
        for b in elems:
            p = oct_mul(a, b)
            if p not in lookup:
                raise InputError(f"{a} * {b} is not a signed unit")
            row.append(lookup[p])
        table.append(tuple(row))
    names = ["1"] + [f"e{i}" for i in range(1, 8)] + ["-1"] + [f"-e{i}" for i in range(1, 8)]
    return CayleyTable(16, tuple(table), tuple(names))


def cyclic_group(n: int) -> CayleyTable:
    return CayleyTable(n, tuple(tuple((g + h) % n for h in range(n)) for g in range(n)))


def klein_four() -> CayleyTable:
    return CayleyTable(4, tuple(tuple(g ^ h for h in range(4)) for g in range(4)))


def symmetric_group_3() -> CayleyTable:
    perms = sorted(itertools.permutations(range(3)))
    idx = {p: i for i, p in enumerate(perms)}
    # (p*q)(x) = p(q(x))
    table = tuple(tuple(idx[tuple(p[q[x]] for x in range(3))] for q in perms) for p in perms)
    return CayleyTable(6, table, tuple("".join(map(str, p)) for p in perms))


def shifted_cyclic(n: int) -> CayleyTable:
    """g*h = h - g mod n: row g is row 0 of Z_n rotated by g places.

    A Latin square without identity element for n > 2.
    """
    return CayleyTable(n, tuple(tuple((h - g) % n for h in range(n)) for g in range(n)))


def bundled_groups() -> Tuple[CayleyTable, ...]:
    return (CayleyTable(1, ((0,),)), cyclic_group(4), klein_four(), symmetric_group_3(), cyclic_group(6))


BUILTIN_LOOPS = {"o16": build_o16, "z4": lambda: cyclic_group(4), "s3": symmetric_group_3}
