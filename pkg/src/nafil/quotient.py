"""Cosets, normality, factor systems, nuclei, simplicity and isomorphism.

Normality is decided the long way round: the left cosets must partition the
loop, the induced cell multiplication must be well defined on every pair of
cells, and the induced table must be a loop.  No shortcut through
``aH == Ha`` is taken, since that criterion is only sufficient for groups.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Mapping, Optional, Sequence

from .errors import (
    BadElement,
    BadMapRange,
    NotALoop,
    NotASubsystem,
    NotInvertibleLoop,
    NotNormal,
)
from .subsystems import closure_mask, is_closed_mask, subsystem_masks, subsystems
from .table import (
    CayleyTable,
    _identity0,
    check_elements,
    elements_of,
    identity,
    is_invertible_loop,
    is_latin,
    is_loop,
    mask_of,
)

LEFT = "left"
RIGHT = "right"


def _require_subsystem(t: CayleyTable, H: Iterable[int]) -> frozenset[int]:
    H = check_elements(t, H)
    if not H or not is_closed_mask(t, mask_of(H)):
        raise NotASubsystem(H)
    return H


# -- cosets --------------------------------------------------------------------


def coset(t: CayleyTable, H: Iterable[int], a: int, side: str = LEFT) -> frozenset[int]:
    """``aH`` (``side="left"``) or ``Ha`` (``side="right"``)."""
    H = _require_subsystem(t, H)
    if not 1 <= a <= t.n:
        raise BadElement(a, t.n)
    if side == LEFT:
        return frozenset(t(a, h) for h in H)
    if side == RIGHT:
        return frozenset(t(h, a) for h in H)
    raise ValueError(f"side must be 'left' or 'right', not {side!r}")


@dataclass(frozen=True)
class CosetPartitionResult:
    subsystem: frozenset[int]
    cells: tuple[frozenset[int], ...]
    partitions: bool
    left_equals_right: bool
    # (representative, reason) with reason "overlap" or "left!=right"
    witness: Optional[tuple[int, str]] = None

    def as_dict(self) -> dict:
        return {
            "subsystem": sorted(self.subsystem),
            "cells": [sorted(c) for c in self.cells],
            "partitions": self.partitions,
            "left_equals_right": self.left_equals_right,
            "witness": list(self.witness) if self.witness else None,
        }


def _order_cells(cells: Iterable[frozenset[int]], H: frozenset[int]) -> list[frozenset[int]]:
    rest = sorted((c for c in cells if c != H), key=lambda c: (min(c), sorted(c)))
    return [H, *rest]


def coset_partition(t: CayleyTable, H: Iterable[int]) -> CosetPartitionResult:
    """Distinct left cosets of ``H``, ordered ``H`` first then by smallest member."""
    H = _require_subsystem(t, H)
    lefts = {a: frozenset(t(a, h) for h in H) for a in t.elements}
    cells = _order_cells(set(lefts.values()), H)
    witness = None
    partitions = True
    seen: dict[int, frozenset[int]] = {}
    for a in t.elements:
        c = lefts[a]
        for x in c:
            other = seen.setdefault(x, c)
            if other != c:
                partitions = False
                witness = witness or (a, "overlap")
    left_equals_right = True
    for a in t.elements:
        if lefts[a] != frozenset(t(h, a) for h in H):
            left_equals_right = False
            witness = witness or (a, "left!=right")
            break
    return CosetPartitionResult(H, tuple(cells), partitions, left_equals_right, witness)


# -- normality ---------------------------------------------------------------------


@dataclass(frozen=True)
class ProductClash:
    """Two products from the same pair of cells that land in different cells."""

    cells: tuple[int, int]
    first: tuple[int, int, int]
    second: tuple[int, int, int]

    def __str__(self) -> str:
        (a, b, ab), (c, d, cd) = self.first, self.second
        return f"l{a}*l{b}=l{ab} vs l{c}*l{d}=l{cd}"

    def pretty(self) -> str:
        (a, b, ab), (c, d, cd) = self.first, self.second
        return f"ℓ{a}⋄ℓ{b}=ℓ{ab} vs ℓ{c}⋄ℓ{d}=ℓ{cd}"


@dataclass(frozen=True)
class FactorSystem:
    """Cells ``B_1..B_k`` of a coset partition and the induced cell multiplication.

    ``table`` is only present when the multiplication is well defined; it is
    indexed by cell number (``B_1`` holds the identity).
    """

    subsystem: frozenset[int]
    cells: tuple[frozenset[int], ...]
    partitions: bool
    well_defined: bool
    is_loop: bool
    table: Optional[CayleyTable] = None
    witness: Optional[ProductClash] = None
    overlap: Optional[tuple[int, str]] = None

    @property
    def normal(self) -> bool:
        return self.partitions and self.well_defined and self.is_loop

    @property
    def k(self) -> int:
        return len(self.cells)

    def cell_of(self, x: int) -> int:
        """1-based index of the cell containing element ``x``."""
        for i, c in enumerate(self.cells, 1):
            if x in c:
                return i
        raise BadElement(x, sum(len(c) for c in self.cells))

    def projection(self) -> dict[int, int]:
        return {x: i for i, c in enumerate(self.cells, 1) for x in c}

    def as_dict(self) -> dict:
        return {
            "subsystem": sorted(self.subsystem),
            "cells": [sorted(c) for c in self.cells],
            "partitions": self.partitions,
            "well_defined": self.well_defined,
            "is_loop": self.is_loop,
            "normal": self.normal,
            "table": [list(r) for r in self.table.entries] if self.table else None,
            "witness": (
                {"cells": list(self.witness.cells),
                 "first": list(self.witness.first),
                 "second": list(self.witness.second)}
                if self.witness else None
            ),
        }


def _clash_in_block(t: CayleyTable, P: Sequence[int], Q: Sequence[int], where: dict[int, int], p: int, q: int):
    products = [(a, b, t(a, b)) for a in P for b in Q]
    target = where[products[0][2]]
    bad = next((x for x in products if where[x[2]] != target), None)
    if bad is None:
        return None
    # Prefer an operand-swapped pair (a*b against b*a): it reads best and is
    # what one finds by hand.  Otherwise report the first product against the
    # first one that disagrees with it.
    by_pair = {(a, b): ab for a, b, ab in products}
    for a, b, ab in products:
        ba = by_pair.get((b, a))
        if ba is not None and where[ab] != where[ba]:
            return ProductClash((p, q), (a, b, ab), (b, a, ba))
    return ProductClash((p, q), products[0], bad)


def factor_system(t: CayleyTable, H: Iterable[int]) -> FactorSystem:
    """Build the cells of ``H`` and the induced cell multiplication, recording
    the first obstruction if there is one."""
    if not is_loop(t):
        raise NotALoop()
    cp = coset_partition(t, H)
    H = cp.subsystem
    if not cp.partitions:
        return FactorSystem(H, cp.cells, False, False, False, overlap=cp.witness)
    cells = cp.cells
    where = {x: i for i, c in enumerate(cells) for x in c}
    members = [sorted(c) for c in cells]
    k = len(cells)
    rows = [[0] * k for _ in range(k)]
    for p in range(k):
        for q in range(k):
            clash = _clash_in_block(t, members[p], members[q], where, p + 1, q + 1)
            if clash is not None:
                return FactorSystem(H, cells, True, False, False, witness=clash)
            rows[p][q] = where[t(members[p][0], members[q][0])]
    ft = CayleyTable._from_rows0(rows, name="factor")
    return FactorSystem(H, cells, True, True, is_loop(ft), table=ft)


def is_normal(t: CayleyTable, H: Iterable[int]) -> tuple[bool, FactorSystem]:
    """``(normal?, factor system)``; on failure the factor system carries the witness."""
    fs = factor_system(t, H)
    return fs.normal, fs


def normal_subsystems(t: CayleyTable) -> list[frozenset[int]]:
    """Every non-trivial proper normal subsystem."""
    out = []
    for s in subsystems(t).nontrivial:
        if is_normal(t, s.elements)[0]:
            out.append(s.elements)
    return out


# -- nuclei and center ---------------------------------------------------------------


@dataclass(frozen=True)
class NucleusReport:
    left: frozenset[int]
    middle: frozenset[int]
    right: frozenset[int]
    nucleus: frozenset[int]
    center: frozenset[int]

    def as_dict(self) -> dict:
        return {k: sorted(getattr(self, k)) for k in ("left", "middle", "right", "nucleus", "center")}


def nuclei(t: CayleyTable) -> NucleusReport:
    if not is_loop(t):
        raise NotALoop()
    rows = t._rows
    n = t.n
    rng = range(n)
    left = []
    middle = []
    right = []
    for a in rng:
        ra = rows[a]
        # left: a(xy) = (ax)y
        if all(ra[rows[x][y]] == rows[ra[x]][y] for x in rng for y in rng):
            left.append(a)
        # middle: x(ay) = (xa)y
        if all(rows[x][ra[y]] == rows[rows[x][a]][y] for x in rng for y in rng):
            middle.append(a)
        # right: x(ya) = (xy)a
        if all(rows[x][rows[y][a]] == rows[rows[x][y]][a] for x in rng for y in rng):
            right.append(a)
    nuc = set(left) & set(middle) & set(right)
    center = {a for a in nuc if all(rows[a][x] == rows[x][a] for x in rng)}

    def out(s):
        return frozenset(x + 1 for x in s)

    return NucleusReport(out(left), out(middle), out(right), out(nuc), out(center))


def center(t: CayleyTable) -> frozenset[int]:
    return nuclei(t).center


# -- simple / plain ------------------------------------------------------------------


def is_simple(t: CayleyTable) -> bool:
    """No non-trivial proper subsystem is normal."""
    if not is_invertible_loop(t):
        raise NotInvertibleLoop()
    return not any(is_normal(t, s.elements)[0] for s in subsystems(t).nontrivial)


def is_plain(t: CayleyTable) -> bool:
    """No non-trivial proper subsystem at all (prime-order groups included)."""
    if not is_invertible_loop(t):
        raise NotInvertibleLoop()
    return not subsystems(t).nontrivial


# -- homomorphisms and isomorphisms ------------------------------------------------


def _map0(mapping, source: CayleyTable, target: CayleyTable) -> list[int]:
    n = source.n
    try:
        if isinstance(mapping, Mapping):
            vals = [mapping[x] for x in range(1, n + 1)]
        else:
            vals = list(mapping)
            if len(vals) == n + 1:
                vals = vals[1:]
            if len(vals) != n:
                raise BadMapRange(f"map has {len(vals)} values, source has order {n}")
    except KeyError as exc:
        raise BadMapRange(f"map is undefined at {exc.args[0]}") from None
    for v in vals:
        if isinstance(v, bool) or not isinstance(v, int) or not 1 <= v <= target.n:
            raise BadMapRange(f"map value {v!r} outside 1..{target.n}")
    return [v - 1 for v in vals]


def is_homomorphism(source: CayleyTable, target: CayleyTable, mapping) -> tuple[bool, Optional[tuple[int, int]]]:
    """Check ``f(ab) == f(a)f(b)`` for all pairs; return the first failing pair."""
    f = _map0(mapping, source, target)
    s, tr = source._rows, target._rows
    for a in range(source.n):
        for b in range(source.n):
            if f[s[a][b]] != tr[f[a]][f[b]]:
                return False, (a + 1, b + 1)
    return True, None


def _cycle_type(perm: Sequence[int]) -> tuple[int, ...]:
    seen = [False] * len(perm)
    out = []
    for i in range(len(perm)):
        if seen[i]:
            continue
        k = 0
        j = i
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            k += 1
        out.append(k)
    return tuple(sorted(out))


def element_signatures(t: CayleyTable) -> list[tuple]:
    """Isomorphism-invariant fingerprint of each element (0-based list)."""
    rows = t._rows
    n = t.n
    cols = list(zip(*rows))
    latin = is_latin(t)
    out = []
    for x in range(n):
        sig = (
            rows[x][x] == x,
            sum(1 for y in range(n) if rows[x][y] == rows[y][x]),
            bin(closure_mask(t, 1 << x)).count("1"),
            _cycle_type(rows[x]) if latin else tuple(sorted(Counter(rows[x]).values())),
            _cycle_type(cols[x]) if latin else tuple(sorted(Counter(cols[x]).values())),
            sum(1 for y in range(n) if rows[y][y] == x),
        )
        out.append(sig)
    return out


def table_invariants(t: CayleyTable) -> tuple:
    """Whole-table invariants used to screen out non-isomorphic pairs early."""
    loop = is_loop(t)
    sub_orders: tuple = ()
    if loop:
        sub_orders = tuple(sorted(bin(m).count("1") for m in subsystem_masks(t)))
    return (
        t.n,
        identity(t) is not None,
        loop,
        all(t._rows[a][b] == t._rows[b][a] for a in range(t.n) for b in range(a)),
        tuple(sorted(element_signatures(t))),
        sub_orders,
    )


def are_isomorphic(a: CayleyTable, b: CayleyTable) -> Optional[dict[int, int]]:
    """An isomorphism ``a -> b`` as ``{x: f(x)}``, or ``None``.

    Invariants are compared first; then images of a generating sequence are
    chosen by backtracking (identity to identity) and every other image is
    forced through products.
    """
    if a.n != b.n:
        return None
    if table_invariants(a) != table_invariants(b):
        return None
    n = a.n
    sa, sb = element_signatures(a), element_signatures(b)
    ra, rb = a._rows, b._rows

    f = [-1] * n
    used = [False] * n
    ea, eb = _identity0(a), _identity0(b)
    if ea is not None:
        f[ea] = eb
        used[eb] = True

    # generating sequence for a: rarest signature first
    freq = Counter(sa)
    gens = []
    mask = 0 if ea is None else closure_mask(a, 1 << ea)
    while mask != (1 << n) - 1:
        x = min((x for x in range(n) if not mask >> x & 1), key=lambda x: (freq[sa[x]], x))
        gens.append(x)
        mask = closure_mask(a, mask | 1 << x)

    def propagate(assigned: list[int]) -> Optional[list[int]]:
        # extend f through products of assigned elements; undo list on success
        newly = []
        queue = list(assigned)
        known = [x for x in range(n) if f[x] >= 0]
        while queue:
            x = queue.pop()
            for y in known:
                for u, v in ((x, y), (y, x)):
                    w = ra[u][v]
                    img = rb[f[u]][f[v]]
                    if f[w] < 0:
                        if used[img] or sa[w] != sb[img]:
                            for z in newly:
                                used[f[z]] = False
                                f[z] = -1
                            return None
                        f[w] = img
                        used[img] = True
                        newly.append(w)
                        known.append(w)
                        queue.append(w)
                    elif f[w] != img:
                        for z in newly:
                            used[f[z]] = False
                            f[z] = -1
                        return None
        return newly

    def search(i: int) -> bool:
        if i == len(gens):
            return all(x >= 0 for x in f)
        g = gens[i]
        if f[g] >= 0:
            return search(i + 1)
        for img in range(n):
            if used[img] or sb[img] != sa[g]:
                continue
            f[g] = img
            used[img] = True
            newly = propagate([g])
            if newly is not None:
                if search(i + 1):
                    return True
                for z in newly:
                    used[f[z]] = False
                    f[z] = -1
            used[img] = False
            f[g] = -1
        return False

    if ea is not None and propagate([ea]) is None:
        return None
    if not search(0):
        return None
    mapping = {x + 1: f[x] + 1 for x in range(n)}
    ok, _ = is_homomorphism(a, b, mapping)
    assert ok, "backtracking produced a non-homomorphism"
    return mapping


def isomorphic_by_brute_force(a: CayleyTable, b: CayleyTable) -> Optional[dict[int, int]]:
    """Try all ``n!`` bijections (oracle for small orders)."""
    if a.n != b.n:
        return None
    n = a.n
    ra, rb = a._rows, b._rows
    for p in itertools.permutations(range(n)):
        if all(p[ra[x][y]] == rb[p[x]][p[y]] for x in range(n) for y in range(n)):
            return {x + 1: p[x] + 1 for x in range(n)}
    return None


# -- ascending central series ---------------------------------------------------------


def ascending_central_series(t: CayleyTable) -> list[frozenset[int]]:
    """``[{1}, Z_1, Z_2, ...]`` until the series stabilises or reaches the loop."""
    if not is_invertible_loop(t):
        raise NotInvertibleLoop()
    full = frozenset(t.elements)
    series = [frozenset({identity(t)})]
    current = series[0]
    while current != full:
        ok, fs = is_normal(t, current)
        if not ok:
            raise NotNormal(current)
        z = center(fs.table)
        nxt = frozenset(x for i in z for x in fs.cells[i - 1])
        if nxt == current:
            break
        series.append(nxt)
        current = nxt
    return series


def nontrivial_normal_masks(t: CayleyTable) -> list[int]:
    return [mask_of(s) for s in normal_subsystems(t)]


__all__ = [
    "LEFT", "RIGHT", "coset", "coset_partition", "CosetPartitionResult",
    "FactorSystem", "ProductClash", "factor_system", "is_normal", "normal_subsystems",
    "NucleusReport", "nuclei", "center", "is_simple", "is_plain",
    "is_homomorphism", "are_isomorphic", "isomorphic_by_brute_force",
    "element_signatures", "table_invariants", "ascending_central_series",
    "elements_of",
]
