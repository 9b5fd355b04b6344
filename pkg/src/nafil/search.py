"""Exhaustive census of small loops up to isomorphism.

Tables are filled in reduced form: element 1 is the identity, so row 1 and
column 1 are fixed.  Two devices keep the search small:

* For invertible loops the inverse map is an involution of ``2..n``.  Any
  two involutions with the same number of 2-cycles are conjugate by a
  relabelling that fixes 1, so one representative per cycle count suffices.
  The cells ``x * x^-1`` are preset to 1 and 1 is barred everywhere else.
* For abelian loops only the upper triangle is searched.

Each completed table is reduced to its canonical form (see
:func:`canonical_form`) and collected in a set, which performs the
isomorph rejection.  Work is split over the completions of the first free
row, dealt round-robin to the requested number of processes.
"""

from __future__ import annotations

import hashlib
import json
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Iterator, Optional

from .errors import BadConstraints, NotALoop, UnsupportedOrder
from .subsystems import closure_mask
from .table import CayleyTable, _identity0, format_table

MAX_CENSUS_ORDER = 8
CONSTRAINTS = ("invertible", "nafil", "abelian", "plain", "composite")
STRATEGIES = ("row-major", "most-constrained")


# -- canonical form ------------------------------------------------------------------


def _canonical_flat(rows: list[list[int]] | tuple[tuple[int, ...], ...], e: int) -> tuple[int, ...]:
    """Least row-major flattening (rows 2..n) over relabellings sending ``e`` to 0."""
    n = len(rows)
    if n == 1:
        return ()
    label = [-1] * n      # original -> new
    orig = [-1] * n       # new -> original
    label[e] = 0
    orig[0] = e
    total = (n - 1) * n
    best: list[int] = []
    cur = [0] * total

    def assign(x: int, lab: int) -> None:
        label[x] = lab
        orig[lab] = x

    def unassign(x: int, lab: int) -> None:
        label[x] = -1
        orig[lab] = -1

    # ``less``: the current prefix is already below ``best``.  A new best
    # always extends the prefix of every active frame, so a frame whose
    # subtree replaced ``best`` must go back to comparing.
    version = [0]

    def dfs(pos: int, nxt: int, less: bool) -> None:
        nonlocal best
        if pos == total:
            best = cur[:]
            version[0] += 1
            return
        r, c = divmod(pos, n)
        r += 1
        if orig[r] < 0 or orig[c] < 0:
            # labels are handed out in increasing order, so the free one is ``nxt``
            for x in range(n):
                if label[x] < 0:
                    seen = version[0]
                    assign(x, nxt)
                    dfs(pos, nxt + 1, less)
                    unassign(x, nxt)
                    if version[0] != seen:
                        less = False
            return
        v = rows[orig[r]][orig[c]]
        fresh = label[v] < 0
        lv = nxt if fresh else label[v]
        if not less and best:
            b = best[pos]
            if lv > b:
                return
            less = lv < b
        cur[pos] = lv
        if fresh:
            assign(v, nxt)
            dfs(pos + 1, nxt + 1, less)
            unassign(v, nxt)
        else:
            dfs(pos + 1, nxt, less)

    dfs(0, 1, False)
    return tuple(best)


def canonical_form(t: CayleyTable) -> CayleyTable:
    """The lexicographically least table isomorphic to ``t`` with identity 1.

    Tables are compared by their row-major flattening.  Two loops are
    isomorphic exactly when their canonical forms are equal.
    """
    e = _identity0(t)
    if e is None or not _is_latin0(t._rows):
        raise NotALoop()
    return _table_from_flat(t.n, _canonical_flat(t._rows, e), name=t.name)


def canonical_form_brute_force(t: CayleyTable) -> CayleyTable:
    """Try every relabelling that fixes the identity (oracle, small ``n``)."""
    import itertools

    e = _identity0(t)
    if e is None:
        raise NotALoop()
    n = t.n
    others = [x for x in range(n) if x != e]
    best = None
    for perm in itertools.permutations(range(1, n)):
        p = [0] * n
        for x, lab in zip(others, perm):
            p[x] = lab
        out = [[0] * n for _ in range(n)]
        for i in range(n):
            for j in range(n):
                out[p[i]][p[j]] = p[t._rows[i][j]]
        flat = tuple(v for row in out[1:] for v in row)
        if best is None or flat < best:
            best = flat
    return _table_from_flat(n, best, name=t.name)


def _table_from_flat(n: int, flat: tuple[int, ...], name=None) -> CayleyTable:
    rows = [list(range(n))] + [list(flat[i * n:(i + 1) * n]) for i in range(n - 1)]
    return CayleyTable._from_rows0(rows, name)


def _is_latin0(rows) -> bool:
    full = set(range(len(rows)))
    return all(set(r) == full for r in rows) and all(set(c) == full for c in zip(*rows))


def canonical_hash(t: CayleyTable) -> str:
    body = " ".join(map(str, t.flat()))
    return hashlib.sha256(f"{t.n}:{body}".encode()).hexdigest()[:16]


# -- spec and result --------------------------------------------------------------------


@dataclass(frozen=True)
class SearchSpec:
    order: int
    constraints: frozenset[str] = frozenset()
    mode: str = "count"
    job_count: int = 1
    strategy: str = "row-major"
    emit_dir: Optional[str] = None

    def __post_init__(self) -> None:
        cons = frozenset(self.constraints)
        unknown = cons - set(CONSTRAINTS)
        if unknown:
            raise BadConstraints(f"unknown constraints: {', '.join(sorted(unknown))}")
        if {"plain", "composite"} <= cons:
            raise BadConstraints("plain and composite exclude each other")
        if "nafil" in cons:
            cons |= {"invertible"}
        object.__setattr__(self, "constraints", cons)
        if not isinstance(self.order, int) or self.order < 1:
            raise BadConstraints(f"order must be a positive integer, not {self.order!r}")
        if self.order > MAX_CENSUS_ORDER:
            raise UnsupportedOrder(self.order, MAX_CENSUS_ORDER)
        if self.mode not in ("count", "emit"):
            raise BadConstraints(f"mode must be 'count' or 'emit', not {self.mode!r}")
        if self.mode == "emit" and not self.emit_dir:
            raise BadConstraints("emit mode needs a target directory")
        if self.job_count < 1:
            raise BadConstraints("job_count must be at least 1")
        if self.strategy not in STRATEGIES:
            raise BadConstraints(f"strategy must be one of {', '.join(STRATEGIES)}")


@dataclass(frozen=True)
class CensusResult:
    order: int
    constraints: frozenset[str]
    count_up_to_isomorphism: int
    representatives: tuple[CayleyTable, ...] = field(repr=False, default=())
    wall_time: float = 0.0
    # completed reduced tables visited before isomorph rejection
    leaves: int = 0

    def contains(self, t: CayleyTable) -> bool:
        return canonical_form(t).with_name(None) in set(r.with_name(None) for r in self.representatives)

    def as_dict(self) -> dict:
        return {
            "order": self.order,
            "constraints": sorted(self.constraints),
            "count_up_to_isomorphism": self.count_up_to_isomorphism,
            "leaves": self.leaves,
            "wall_time": round(self.wall_time, 3),
        }


# -- the backtracking fill ------------------------------------------------------------------


def involution_types(n: int) -> list[tuple[int, ...]]:
    """One inverse map per conjugacy class of involutions of ``1..n-1`` (0-based, 0 fixed)."""
    out = []
    for pairs in range((n - 1) // 2 + 1):
        inv = list(range(n))
        for j in range(pairs):
            a, b = 2 * j + 1, 2 * j + 2
            inv[a], inv[b] = b, a
        out.append(tuple(inv))
    return out


class _Filler:
    """Backtracking Latin fill of a reduced table with optional presets."""

    def __init__(self, n: int, symmetric: bool, inv: Optional[tuple[int, ...]], strategy: str):
        self.n = n
        self.symmetric = symmetric
        self.inv = inv
        self.strategy = strategy
        self.full = (1 << n) - 1
        t = [[-1] * n for _ in range(n)]
        rows = [0] * n
        cols = [0] * n
        for i in range(n):
            self._put(t, rows, cols, 0, i, i)
            if i:
                self._put(t, rows, cols, i, 0, i)
        if inv is not None:
            for x in range(1, n):
                self._put(t, rows, cols, x, inv[x], 0)
        self.t, self.rows, self.cols = t, rows, cols
        # 0 may appear only in the preset inverse cells
        self.forbid = 1 if inv is not None else 0

    @staticmethod
    def _put(t, rows, cols, i, j, v):
        t[i][j] = v
        rows[i] |= 1 << v
        cols[j] |= 1 << v

    def free_cells(self, start_row: int = 1) -> list[tuple[int, int]]:
        n = self.n
        return [(i, j) for i in range(start_row, n) for j in range(1, n)
                if self.t[i][j] < 0 and (not self.symmetric or j >= i)]

    def _avail(self, i: int, j: int) -> int:
        a = self.full & ~(self.rows[i] | self.cols[j]) & ~self.forbid
        if self.symmetric and i != j:
            a &= ~(self.rows[j] | self.cols[i])
        return a

    def _set(self, i, j, v):
        b = 1 << v
        t = self.t
        t[i][j] = v
        self.rows[i] |= b
        self.cols[j] |= b
        if self.symmetric and i != j:
            t[j][i] = v
            self.rows[j] |= b
            self.cols[i] |= b

    def _unset(self, i, j, v):
        b = 1 << v
        t = self.t
        t[i][j] = -1
        self.rows[i] ^= b
        self.cols[j] ^= b
        if self.symmetric and i != j:
            t[j][i] = -1
            self.rows[j] ^= b
            self.cols[i] ^= b

    def fill(self, cells: list[tuple[int, int]]) -> Iterator[list[list[int]]]:
        """Yield the (shared, mutable) table for every completion of ``cells``."""
        if self.strategy == "row-major":
            yield from self._fill_ordered(cells, 0)
        else:
            yield from self._fill_mrv(list(cells))

    def _fill_ordered(self, cells, k):
        if k == len(cells):
            yield self.t
            return
        i, j = cells[k]
        avail = self._avail(i, j)
        while avail:
            b = avail & -avail
            avail ^= b
            v = b.bit_length() - 1
            self._set(i, j, v)
            yield from self._fill_ordered(cells, k + 1)
            self._unset(i, j, v)

    def _fill_mrv(self, cells):
        if not cells:
            yield self.t
            return
        best = None
        best_avail = 0
        best_count = self.n + 1
        for idx, (i, j) in enumerate(cells):
            a = self._avail(i, j)
            c = bin(a).count("1")
            if c < best_count:
                best, best_avail, best_count = idx, a, c
                if c <= 1:
                    break
        if best_count == 0:
            return
        i, j = cells[best]
        rest = cells[:best] + cells[best + 1:]
        avail = best_avail
        while avail:
            b = avail & -avail
            avail ^= b
            v = b.bit_length() - 1
            self._set(i, j, v)
            yield from self._fill_mrv(rest)
            self._unset(i, j, v)


def _associative0(rows) -> bool:
    n = len(rows)
    for a in range(n):
        ra = rows[a]
        for b in range(n):
            rab = rows[ra[b]]
            rb = rows[b]
            for c in range(n):
                if rab[c] != ra[rb[c]]:
                    return False
    return True


def _has_proper_subloop0(rows) -> bool:
    """True when some non-identity element generates a proper subloop.

    Every non-trivial subloop contains a non-identity element, and the
    subloop that element generates is non-trivial, so checking singletons
    is enough.
    """
    n = len(rows)
    full = (1 << n) - 1
    t = _RowsView(rows)
    return any(closure_mask(t, 1 << x) != full for x in range(1, n))


class _RowsView:
    __slots__ = ("_rows", "n")

    def __init__(self, rows):
        self._rows = rows
        self.n = len(rows)


def _accepts(rows, cons: frozenset[str]) -> bool:
    if "nafil" in cons and _associative0(rows):
        return False
    if "plain" in cons or "composite" in cons:
        proper = _has_proper_subloop0(rows)
        if "plain" in cons and proper:
            return False
        if "composite" in cons and not proper:
            return False
    return True


def _tasks(n: int, cons: frozenset[str], strategy: str) -> list[tuple[Optional[tuple[int, ...]], tuple[int, ...]]]:
    """Independent subtrees: (inverse map, completed row 2)."""
    invs: list[Optional[tuple[int, ...]]] = involution_types(n) if "invertible" in cons else [None]
    out = []
    for inv in invs:
        f = _Filler(n, "abelian" in cons, inv, "row-major")
        if n < 2:
            out.append((inv, ()))
            continue
        row_cells = [(1, j) for j in range(1, n) if f.t[1][j] < 0]
        for t in f.fill(row_cells):
            out.append((inv, tuple(t[1])))
    return out


def _run_tasks(args) -> tuple[set[tuple[int, ...]], int]:
    n, cons, strategy, tasks = args
    found: set[tuple[int, ...]] = set()
    leaves = 0
    sym = "abelian" in cons
    for inv, row2 in tasks:
        f = _Filler(n, sym, inv, strategy)
        if n >= 2:
            for j in range(1, n):
                if f.t[1][j] < 0:
                    f._set(1, j, row2[j])
        for t in f.fill(f.free_cells(start_row=2 if n >= 2 else 1)):
            leaves += 1
            if _accepts(t, cons):
                found.add(_canonical_flat(t, 0))
    return found, leaves


def enumerate_loops(spec: SearchSpec) -> CensusResult:
    """Census of loops of ``spec.order`` satisfying ``spec.constraints``, up to isomorphism."""
    start = time.perf_counter()
    n, cons = spec.order, spec.constraints
    tasks = _tasks(n, cons, spec.strategy)
    jobs = max(1, min(spec.job_count, len(tasks)))
    chunks = [tasks[i::jobs] for i in range(jobs)]
    found: set[tuple[int, ...]] = set()
    leaves = 0
    if jobs == 1:
        results = [_run_tasks((n, cons, spec.strategy, chunks[0]))]
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_run_tasks, [(n, cons, spec.strategy, c) for c in chunks]))
    for f, k in results:
        found |= f
        leaves += k
    reps = tuple(_table_from_flat(n, flat) for flat in sorted(found))
    result = CensusResult(n, cons, len(reps), reps, time.perf_counter() - start, leaves)
    if spec.mode == "emit":
        emit(result, spec.emit_dir)
    return result


def census(order: int, constraints: Iterable[str] = (), **kw) -> CensusResult:
    return enumerate_loops(SearchSpec(order, frozenset(constraints), **kw))


def emit(result: CensusResult, directory: str | os.PathLike) -> Path:
    """Write one ``.tbl`` per representative plus ``manifest.json``; return the manifest path."""
    d = Path(directory)
    d.mkdir(parents=True, exist_ok=True)
    files = []
    for rep in result.representatives:
        h = canonical_hash(rep)
        name = f"{h}.tbl"
        (d / name).write_text(format_table(rep, name=f"loop{result.order}-{h}"))
        files.append(name)
    manifest = dict(result.as_dict(), files=files)
    path = d / "manifest.json"
    path.write_text(json.dumps(manifest, indent=2) + "\n")
    return path


def count_reduced(n: int, abelian: bool = False, strategy: str = "row-major") -> int:
    """Number of reduced Latin squares (loops with identity 1) of order ``n``, no isomorph rejection."""
    if n > MAX_CENSUS_ORDER:
        raise UnsupportedOrder(n, MAX_CENSUS_ORDER)
    f = _Filler(n, abelian, None, strategy)
    return sum(1 for _ in f.fill(f.free_cells()))


__all__ = [
    "MAX_CENSUS_ORDER", "CONSTRAINTS", "STRATEGIES", "canonical_form",
    "canonical_form_brute_force", "canonical_hash", "SearchSpec", "CensusResult",
    "involution_types", "enumerate_loops", "census", "emit", "count_reduced",
]
