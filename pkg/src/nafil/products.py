"""Multi-φ systems, block and direct products, and coset decomposition.

A multi-φ system pairs a ``k x k`` table for ``(E, *)`` with ``k^2`` local
``m x m`` tables ``phi[p][q]``.  Its block product lives on pairs
``(e_p, c_a)``, flattened to the single index ``m*(p-1) + a``, with

    (e_p, c_a) . (e_q, c_b) = (e_p * e_q, c_a phi_pq c_b).

When every ``phi_pq`` is the same table this is the ordinary direct product.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence, TextIO

from .errors import (
    InconsistentDecomposition,
    NotNormal,
    OrderMismatch,
    ParseError,
    PhiNotQuasigroup,
    ShapeMismatch,
    BadHeader,
    EmptyInput,
    NotSquare,
    EntryOutOfRange,
)
from .quotient import factor_system
from .table import CayleyTable, _identity0, is_invertible_loop, is_latin, is_loop


@dataclass(frozen=True)
class MultiPhiSystem:
    e_table: CayleyTable
    phi: tuple[tuple[CayleyTable, ...], ...]
    name: Optional[str] = None

    def __post_init__(self) -> None:
        k = self.e_table.n
        phi = tuple(tuple(row) for row in self.phi)
        object.__setattr__(self, "phi", phi)
        if len(phi) != k or any(len(row) != k for row in phi):
            raise ShapeMismatch(f"expected {k}x{k} local tables to match E of order {k}")
        m = phi[0][0].n
        for p, row in enumerate(phi, 1):
            for q, f in enumerate(row, 1):
                if f.n != m:
                    raise ShapeMismatch(f"phi[{p}][{q}] has order {f.n}, expected {m}")

    @property
    def k(self) -> int:
        return self.e_table.n

    @property
    def m(self) -> int:
        return self.phi[0][0].n

    @property
    def n(self) -> int:
        return self.k * self.m

    def at(self, p: int, q: int) -> CayleyTable:
        """``phi_pq`` with 1-based indices."""
        return self.phi[p - 1][q - 1]

    @property
    def is_mono_phi(self) -> bool:
        first = self.phi[0][0]
        return all(f == first for row in self.phi for f in row)

    @classmethod
    def mono(cls, e: CayleyTable, c: CayleyTable, name: Optional[str] = None) -> "MultiPhiSystem":
        return cls(e, tuple(tuple(c for _ in range(e.n)) for _ in range(e.n)), name)

    def quasigroup_violations(self) -> list[tuple[int, int]]:
        return [(p, q) for p in range(1, self.k + 1) for q in range(1, self.k + 1)
                if not is_latin(self.at(p, q))]


def flat_index(m: int, p: int, a: int) -> int:
    """Element number of the pair ``(e_p, c_a)``."""
    return m * (p - 1) + a


def pair_of(m: int, h: int) -> tuple[int, int]:
    """Inverse of :func:`flat_index`."""
    return (h - 1) // m + 1, (h - 1) % m + 1


def block_product(mp: MultiPhiSystem, strict: bool = True, name: Optional[str] = None) -> CayleyTable:
    """Table of the block product.

    With ``strict`` every local table must be a quasigroup; the non-strict
    form is there to study what happens when one is not.
    """
    if strict:
        bad = mp.quasigroup_violations()
        if bad:
            raise PhiNotQuasigroup(*bad[0])
    k, m = mp.k, mp.m
    e = mp.e_table._rows
    phi = [[f._rows for f in row] for row in mp.phi]
    rows = []
    for p in range(k):
        for a in range(m):
            row = []
            for q in range(k):
                pq = e[p][q] * m
                fa = phi[p][q][a]
                row.extend(pq + fa[b] for b in range(m))
            rows.append(row)
    return CayleyTable._from_rows0(rows, name)


def direct_product(e: CayleyTable, c: CayleyTable, name: Optional[str] = None) -> CayleyTable:
    if name is None and e.name and c.name:
        name = f"{e.name}x{c.name}"
    return block_product(MultiPhiSystem.mono(e, c), strict=False, name=name)


def e_partition(k: int, m: int) -> list[frozenset[int]]:
    """Cells ``{(e_i, c_u) : u}`` of a product of shape ``k x m``."""
    return [frozenset(flat_index(m, p, a) for a in range(1, m + 1)) for p in range(1, k + 1)]


def c_partition(k: int, m: int) -> list[frozenset[int]]:
    """Cells ``{(e_i, c_u) : i}`` of a product of shape ``k x m``."""
    return [frozenset(flat_index(m, p, a) for p in range(1, k + 1)) for a in range(1, m + 1)]


# -- Type A / B ------------------------------------------------------------------


class PhiType(str, enum.Enum):
    TYPE_A = "TypeA"
    TYPE_B = "TypeB"
    IRREGULAR = "Irregular"

    def __str__(self) -> str:
        return self.value


def common_identity(mp: MultiPhiSystem) -> Optional[int]:
    """An element that is a two-sided identity of every local table, if any."""
    ids = {_identity0(f) for row in mp.phi for f in row}
    if len(ids) == 1 and None not in ids:
        return ids.pop() + 1
    return None


def classify_phi_type(mp: MultiPhiSystem) -> PhiType:
    if all(is_loop(f) for row in mp.phi for f in row):
        return PhiType.TYPE_A if common_identity(mp) is not None else PhiType.TYPE_B
    return PhiType.IRREGULAR


# -- generator validation ---------------------------------------------------------


def _left_inverses(f: CayleyTable, c1: int) -> Optional[tuple[int, ...]]:
    # y with y.x = c1, for each x
    out = []
    for x in f.elements:
        ys = [y for y in f.elements if f(y, x) == c1]
        if len(ys) != 1:
            return None
        out.append(ys[0])
    return tuple(out)


def _right_inverses(f: CayleyTable, c1: int) -> Optional[tuple[int, ...]]:
    # y with x.y = c1, for each x
    out = []
    for x in f.elements:
        ys = [y for y in f.elements if f(x, y) == c1]
        if len(ys) != 1:
            return None
        out.append(ys[0])
    return tuple(out)


@dataclass(frozen=True)
class GeneratorCheck:
    """Outcome of checking a multi-φ system as generators of an invertible loop.

    ``violations`` uses the reading "left inverses of phi_pq are right
    inverses of phi_qp"; ``mirrored_violations`` lists what the swapped
    reading would flag instead.
    """

    ok: bool
    violations: tuple[str, ...]
    mirrored_ok: bool
    mirrored_violations: tuple[str, ...]

    def __iter__(self):
        # allow ``ok, violations = validate_generators(mp)``
        return iter((self.ok, list(self.violations)))

    def as_dict(self) -> dict:
        return {
            "ok": self.ok,
            "violations": list(self.violations),
            "mirrored_ok": self.mirrored_ok,
            "mirrored_violations": list(self.mirrored_violations),
        }


def validate_generators(mp: MultiPhiSystem, c1: int = 1) -> GeneratorCheck:
    """Check the sufficient conditions for the block product to be an invertible loop.

    (a) ``E`` is an invertible loop; (b1) every local table is a quasigroup,
    ``c1`` is a right identity of ``phi_p1``, a left identity of ``phi_1q`` and
    so two-sided in ``phi_11`` (index 1 standing for the identity of ``E``);
    (b2) for each ``p != 1`` with inverse ``q`` in ``E``, either
    ``phi_pq == phi_qp`` or the inverse maps of the two tables match.
    """
    common: list[str] = []
    if not is_invertible_loop(mp.e_table):
        common.append("a: E is not an invertible loop")
        return GeneratorCheck(False, tuple(common), False, tuple(common))
    k = mp.k
    e = _identity0(mp.e_table) + 1
    for p in range(1, k + 1):
        for q in range(1, k + 1):
            if not is_latin(mp.at(p, q)):
                common.append(f"b1 at p={p},q={q}: not a quasigroup")
    for p in range(1, k + 1):
        f = mp.at(p, e)
        if any(f(x, c1) != x for x in f.elements):
            common.append(f"b1 at p={p},q={e}: c{c1} is not a right identity")
    for q in range(1, k + 1):
        f = mp.at(e, q)
        if any(f(c1, x) != x for x in f.elements):
            common.append(f"b1 at p={e},q={q}: c{c1} is not a left identity")

    primary = list(common)
    mirrored = list(common)
    einv = mp.e_table
    for p in range(1, k + 1):
        if p == e:
            continue
        q = next(y for y in einv.elements if einv(p, y) == e)
        f, g = mp.at(p, q), mp.at(q, p)
        if f == g:
            continue
        if _left_inverses(f, c1) is None or _left_inverses(f, c1) != _right_inverses(g, c1):
            primary.append(f"b2 at p={p},q={q}")
        if _right_inverses(f, c1) is None or _right_inverses(f, c1) != _left_inverses(g, c1):
            mirrored.append(f"b2 at p={p},q={q}")
    return GeneratorCheck(not primary, tuple(primary), not mirrored, tuple(mirrored))


# -- coset decomposition --------------------------------------------------------------


@dataclass(frozen=True)
class CosetDecomposition:
    e_table: CayleyTable
    multiphi: MultiPhiSystem
    # original element -> flat product index
    relabeling: dict[int, int]
    phi_type: PhiType
    is_mono_phi: bool
    cells: tuple[frozenset[int], ...] = ()
    source: Optional[CayleyTable] = field(default=None, compare=False)

    @property
    def k(self) -> int:
        return self.multiphi.k

    @property
    def m(self) -> int:
        return self.multiphi.m

    def as_dict(self) -> dict:
        return {
            "k": self.k,
            "m": self.m,
            "cells": [sorted(c) for c in self.cells],
            "e_table": [list(r) for r in self.e_table.entries],
            "relabeling": {str(x): h for x, h in sorted(self.relabeling.items())},
            "phi_type": self.phi_type.value,
            "is_mono_phi": self.is_mono_phi,
            "phi": [[[list(r) for r in f.entries] for f in row] for row in self.multiphi.phi],
        }


def decompose(t: CayleyTable, H: Iterable[int]) -> CosetDecomposition:
    """Write ``t`` as a block product over the factor by the normal subloop ``H``.

    Cells are ordered ``H`` first, then by smallest member; inside a cell the
    elements are taken in ascending order as ``c_1 .. c_m``.
    """
    fs = factor_system(t, H)
    if not fs.normal:
        raise NotNormal(fs.subsystem)
    k = fs.k
    m = len(fs.subsystem)
    if k * m != t.n:
        raise OrderMismatch(f"{k} cells of size {m} do not make {t.n}")
    members = [sorted(c) for c in fs.cells]
    pos = {x: (p, a) for p, cell in enumerate(members) for a, x in enumerate(cell)}
    phi = []
    for p in range(k):
        row = []
        for q in range(k):
            body = [[pos[t(x, y)][1] for y in members[q]] for x in members[p]]
            row.append(CayleyTable._from_rows0(body))
        phi.append(tuple(row))
    mp = MultiPhiSystem(fs.table, tuple(phi), name=t.name)
    relabeling = {x: flat_index(m, p + 1, a + 1) for x, (p, a) in pos.items()}
    return CosetDecomposition(
        e_table=fs.table,
        multiphi=mp,
        relabeling=relabeling,
        phi_type=classify_phi_type(mp),
        is_mono_phi=mp.is_mono_phi,
        cells=fs.cells,
        source=t,
    )


def recompose(d: CosetDecomposition) -> CayleyTable:
    """Rebuild the original table from a decomposition."""
    n = d.multiphi.n
    if sorted(d.relabeling) != list(range(1, n + 1)) or sorted(d.relabeling.values()) != list(range(1, n + 1)):
        raise InconsistentDecomposition("relabeling is not a permutation of the product's elements")
    if d.e_table != d.multiphi.e_table:
        raise InconsistentDecomposition("factor table differs from the multi-phi system's E")
    inverse = {h: x for x, h in d.relabeling.items()}
    out = block_product(d.multiphi, strict=False).relabel(inverse, name=d.source.name if d.source else None)
    if d.source is not None and out != d.source:
        raise InconsistentDecomposition("recomposed table differs from the source")
    return out


# -- .mphi files ------------------------------------------------------------------------


def _ints(text: str | TextIO) -> list[list[str]]:
    if not isinstance(text, str):
        text = text.read()
    lines = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            lines.append(line.split())
    return lines


def parse_mphi(text: str | TextIO, name: Optional[str] = None) -> MultiPhiSystem:
    lines = _ints(text)
    if not lines:
        raise EmptyInput()
    head = lines[0]
    if len(head) != 2:
        raise BadHeader(" ".join(head), "expected 'k m'")
    try:
        k, m = int(head[0]), int(head[1])
    except ValueError:
        raise BadHeader(" ".join(head), "expected two positive integers") from None
    if k < 1 or m < 1:
        raise BadHeader(" ".join(head), "expected two positive integers")
    body = lines[1:]
    need = k + k * k * m
    if len(body) < need:
        raise NotSquare(k, len(body) + 1, -1)
    if len(body) > need:
        raise ParseError(f"trailing data after {need} rows")

    def block(rows: Sequence[list[str]], size: int, offset: int) -> CayleyTable:
        out = []
        for i, toks in enumerate(rows, 1):
            if len(toks) != size:
                raise NotSquare(size, offset + i, len(toks))
            row = []
            for j, tok in enumerate(toks, 1):
                try:
                    v = int(tok)
                except ValueError:
                    raise EntryOutOfRange(i, j, tok) from None
                if not 1 <= v <= size:
                    raise EntryOutOfRange(i, j, v)
                row.append(v)
            out.append(row)
        return CayleyTable(out)

    e = block(body[:k], k, 1)
    phi = []
    at = k
    for p in range(k):
        row = []
        for q in range(k):
            row.append(block(body[at:at + m], m, at + 1))
            at += m
        phi.append(tuple(row))
    return MultiPhiSystem(e, tuple(phi), name)


def format_mphi(mp: MultiPhiSystem) -> str:
    out = []
    if mp.name:
        out.append(f"# name: {mp.name}")
    out.append(f"{mp.k} {mp.m}")
    out.append("# E")
    out.extend(" ".join(map(str, r)) for r in mp.e_table.entries)
    for p in range(1, mp.k + 1):
        for q in range(1, mp.k + 1):
            out.append(f"# phi {p} {q}")
            out.extend(" ".join(map(str, r)) for r in mp.at(p, q).entries)
    return "\n".join(out) + "\n"


__all__ = [
    "MultiPhiSystem", "flat_index", "pair_of", "block_product", "direct_product",
    "e_partition", "c_partition", "PhiType", "common_identity", "classify_phi_type",
    "GeneratorCheck", "validate_generators", "CosetDecomposition", "decompose",
    "recompose", "parse_mphi", "format_mphi",
]
