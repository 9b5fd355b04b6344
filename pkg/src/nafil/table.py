"""Cayley tables, the ``.tbl`` text format, and the axiom machinery.

Elements are ``1..n`` everywhere a caller can see them.  Internally rows are
stored 0-based (``_rows[i][j] == i*j`` with both sides shifted down by one)
because every hot loop indexes lists with them.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator, Optional, Sequence, TextIO

from .errors import (
    BadElement,
    BadHeader,
    EmptyInput,
    EntryOutOfRange,
    NoIdentity,
    NotASubsystem,
    NotSquare,
)

MAX_ORDER = 64


class CayleyTable:
    """An immutable ``n x n`` operation table over the elements ``1..n``.

    ``entries[i-1][j-1]`` is the product ``i * j``.  Every entry lies in
    ``1..n`` (closure is a property of the representation, not a check).
    """

    __slots__ = ("n", "_rows", "name", "_hash")

    def __init__(self, entries: Sequence[Sequence[int]], name: Optional[str] = None):
        n = len(entries)
        if n == 0:
            raise EmptyInput()
        if n > MAX_ORDER:
            raise BadHeader(str(n), f"order exceeds the supported maximum {MAX_ORDER}")
        rows = []
        for i, row in enumerate(entries, 1):
            if len(row) != n:
                raise NotSquare(n, i, len(row))
            out = []
            for j, v in enumerate(row, 1):
                if isinstance(v, bool) or not isinstance(v, int) or not 1 <= v <= n:
                    raise EntryOutOfRange(i, j, v)
                out.append(v - 1)
            rows.append(tuple(out))
        self.n = n
        self._rows: tuple[tuple[int, ...], ...] = tuple(rows)
        self.name = name
        self._hash = None

    @classmethod
    def _from_rows0(cls, rows0: Sequence[Sequence[int]], name: Optional[str] = None) -> "CayleyTable":
        # trusted constructor for internal callers that already hold 0-based data
        t = object.__new__(cls)
        t.n = len(rows0)
        t._rows = tuple(tuple(r) for r in rows0)
        t.name = name
        t._hash = None
        return t

    # -- access ---------------------------------------------------------------

    def __call__(self, a: int, b: int) -> int:
        """Return ``a * b`` (1-based)."""
        return self._rows[a - 1][b - 1] + 1

    mul = __call__

    @property
    def entries(self) -> tuple[tuple[int, ...], ...]:
        return tuple(tuple(v + 1 for v in row) for row in self._rows)

    @property
    def elements(self) -> range:
        return range(1, self.n + 1)

    def row(self, a: int) -> tuple[int, ...]:
        return tuple(v + 1 for v in self._rows[a - 1])

    def column(self, b: int) -> tuple[int, ...]:
        return tuple(r[b - 1] + 1 for r in self._rows)

    def flat(self) -> tuple[int, ...]:
        return tuple(v + 1 for row in self._rows for v in row)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, CayleyTable):
            return NotImplemented
        return self._rows == other._rows

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self._rows)
        return self._hash

    def __len__(self) -> int:
        return self.n

    def __repr__(self) -> str:
        label = f" {self.name!r}" if self.name else ""
        return f"<CayleyTable{label} order={self.n}>"

    def __str__(self) -> str:
        return format_grid(self)

    # -- derived tables ---------------------------------------------------------

    def with_name(self, name: Optional[str]) -> "CayleyTable":
        return CayleyTable._from_rows0(self._rows, name)

    def transpose(self, name: Optional[str] = None) -> "CayleyTable":
        return CayleyTable._from_rows0(list(zip(*self._rows)), name)

    def relabel(self, perm: Sequence[int] | dict, name: Optional[str] = None) -> "CayleyTable":
        """Rename element ``x`` to ``perm[x]`` (a bijection on ``1..n``).

        ``perm`` may be a dict or a sequence indexed from 1 (``perm[0]`` is
        ignored when its length is ``n + 1``) or from 0 (length ``n``, where
        ``perm[x-1]`` is the new name of ``x``).
        """
        p = _perm0(perm, self.n)
        out = [[0] * self.n for _ in range(self.n)]
        for i, row in enumerate(self._rows):
            pi = p[i]
            for j, v in enumerate(row):
                out[pi][p[j]] = p[v]
        return CayleyTable._from_rows0(out, name)

    def subtable(self, elements: Iterable[int], name: Optional[str] = None) -> "CayleyTable":
        """Induced table on a closed subset, relabelled ``1..m`` in ascending order."""
        elems = sorted(set(elements))
        index = {x - 1: k for k, x in enumerate(elems)}
        try:
            rows = [[index[self._rows[a - 1][b - 1]] for b in elems] for a in elems]
        except KeyError:
            raise NotASubsystem(elems) from None
        return CayleyTable._from_rows0(rows, name)


def _perm0(perm, n: int) -> list[int]:
    if isinstance(perm, dict):
        p = [perm[x] - 1 for x in range(1, n + 1)]
    elif len(perm) == n + 1:
        p = [perm[x] - 1 for x in range(1, n + 1)]
    elif len(perm) == n:
        p = [v - 1 for v in perm]
    else:
        raise ValueError(f"permutation of length {len(perm)} does not fit order {n}")
    if sorted(p) != list(range(n)):
        raise ValueError("relabelling is not a bijection on 1..n")
    return p


def check_elements(t: CayleyTable, elements: Iterable[int]) -> frozenset[int]:
    """Validate a 1-based element collection against ``t`` and freeze it."""
    out = []
    for x in elements:
        if isinstance(x, bool) or not isinstance(x, int) or not 1 <= x <= t.n:
            raise BadElement(x, t.n)
        out.append(x)
    return frozenset(out)


def mask_of(elements: Iterable[int]) -> int:
    m = 0
    for x in elements:
        m |= 1 << (x - 1)
    return m


def elements_of(mask: int) -> frozenset[int]:
    out = []
    i = 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return frozenset(out)


# -- text format ---------------------------------------------------------------


def parse_table(text: str | TextIO, name: Optional[str] = None) -> CayleyTable:
    """Parse the ``.tbl`` format.

    Lines starting with ``#`` are comments (``# name: foo`` sets the name).
    The first token is the order ``n``; it is followed by ``n`` lines of ``n``
    integers each.
    """
    if not isinstance(text, str):
        text = text.read()
    lines = []
    for raw in text.splitlines():
        s = raw.strip()
        if not s:
            continue
        if s.startswith("#"):
            body = s.lstrip("#").strip()
            if name is None and body.lower().startswith("name:"):
                name = body[5:].strip() or None
            continue
        lines.append(s.split())
    if not lines:
        raise EmptyInput()

    header = lines[0]
    tok = header[0]
    try:
        n = int(tok)
    except ValueError:
        raise BadHeader(tok) from None
    if n < 1:
        raise BadHeader(tok, "order must be positive")
    if n > MAX_ORDER:
        raise BadHeader(tok, f"order exceeds the supported maximum {MAX_ORDER}")
    if len(header) > 1:
        raise BadHeader(header[1], "the order must stand alone on its line")

    body = lines[1:]
    rows = []
    for i in range(1, n + 1):
        if i > len(body):
            raise NotSquare(n, i, -1)
        toks = body[i - 1]
        if len(toks) != n:
            raise NotSquare(n, i, len(toks))
        row = []
        for j, s in enumerate(toks, 1):
            try:
                v = int(s)
            except ValueError:
                raise EntryOutOfRange(i, j, s) from None
            if not 1 <= v <= n:
                raise EntryOutOfRange(i, j, v)
            row.append(v - 1)
        rows.append(row)
    if len(body) > n:
        raise NotSquare(n, n + 1, len(body[n]))
    return CayleyTable._from_rows0(rows, name)


def format_table(t: CayleyTable, name: Optional[str] = None) -> str:
    """Serialize to ``.tbl`` text (round-trips through :func:`parse_table`)."""
    label = name if name is not None else t.name
    width = len(str(t.n))
    out = []
    if label:
        out.append(f"# name: {label}")
    out.append(str(t.n))
    for row in t._rows:
        out.append(" ".join(str(v + 1).rjust(width) for v in row))
    return "\n".join(out) + "\n"


def format_grid(t: CayleyTable, op: str = "*") -> str:
    """Human-readable bordered grid, as the tables appear in print."""
    w = max(len(str(t.n)), len(op))
    head = op.rjust(w) + " | " + " ".join(str(j).rjust(w) for j in t.elements)
    lines = [head, "-" * len(head)]
    for i in t.elements:
        lines.append(str(i).rjust(w) + " | " + " ".join(str(v).rjust(w) for v in t.row(i)))
    return "\n".join(lines)


# -- identities and inverses -------------------------------------------------------


@dataclass(frozen=True)
class ElementIdentityInfo:
    left_identities: frozenset[int]
    right_identities: frozenset[int]
    two_sided_identity: Optional[int]


@dataclass(frozen=True)
class InverseInfo:
    element: int
    left_inverse: Optional[int]
    right_inverse: Optional[int]
    two_sided: Optional[int]


def identity_info(t: CayleyTable) -> ElementIdentityInfo:
    rows = t._rows
    n = t.n
    ident = tuple(range(n))
    left = frozenset(a + 1 for a in range(n) if rows[a] == ident)
    right = frozenset(b + 1 for b in range(n) if all(rows[a][b] == a for a in range(n)))
    both = left & right
    return ElementIdentityInfo(left, right, min(both) if both else None)


def identity(t: CayleyTable) -> Optional[int]:
    """The two-sided identity (1-based), or ``None``."""
    return identity_info(t).two_sided_identity


def _identity0(t: CayleyTable) -> Optional[int]:
    e = identity(t)
    return None if e is None else e - 1


def inverse_info(t: CayleyTable, x: int) -> InverseInfo:
    """Left, right and two-sided inverse of ``x``.

    A one-sided inverse is reported only when it is the unique solution.
    """
    e = _identity0(t)
    if e is None:
        raise NoIdentity()
    if not 1 <= x <= t.n:
        raise BadElement(x, t.n)
    rows = t._rows
    a = x - 1
    lefts = [y for y in range(t.n) if rows[y][a] == e]
    rights = [y for y in range(t.n) if rows[a][y] == e]
    left = lefts[0] + 1 if len(lefts) == 1 else None
    right = rights[0] + 1 if len(rights) == 1 else None
    two = left if left is not None and left == right else None
    return InverseInfo(x, left, right, two)


def inverse_map(t: CayleyTable) -> Optional[dict[int, int]]:
    """``{x: x^-1}`` for an invertible loop, else ``None``."""
    if identity(t) is None:
        return None
    out = {}
    for x in t.elements:
        inv = inverse_info(t, x).two_sided
        if inv is None:
            return None
        out[x] = inv
    return out


# -- axioms -----------------------------------------------------------------------

#: (name, axiom type) rows of the classification table, in the order they are tested.
SYSTEM_TYPES = {
    "group": "A[1,4,2,3,6]",
    "NAFIL": "A[1,4,2,3](~A6)",
    "loop": "A[1,4,2]",
    "quasigroup": "A[1,4]",
    "monoid": "A[1,6,2]",
    "semigroup": "A[1,6]",
    "groupoid": "A[1]",
}


@dataclass(frozen=True)
class AxiomProfile:
    a1: bool
    a2: bool
    a3: bool
    a4: bool
    a5: bool
    a6: bool
    witness_a4: Optional[tuple[int, int, str]] = None
    witness_a5: Optional[tuple[int, int]] = None
    witness_a6: Optional[tuple[int, int, int]] = None

    @property
    def name(self) -> str:
        return classify(self.a2, self.a3, self.a4, self.a6)

    @property
    def axiom_type(self) -> str:
        return SYSTEM_TYPES[self.name]

    @property
    def label(self) -> str:
        return f"{self.name}: {self.axiom_type}"

    @property
    def is_quasigroup(self) -> bool:
        return self.a4

    @property
    def is_loop(self) -> bool:
        return self.a4 and self.a2

    @property
    def is_invertible_loop(self) -> bool:
        return self.a4 and self.a2 and self.a3

    @property
    def is_group(self) -> bool:
        return self.name == "group"

    @property
    def is_nafil(self) -> bool:
        return self.name == "NAFIL"

    @property
    def abelian(self) -> bool:
        return self.a5

    def satisfies(self, axiom_type: str) -> bool:
        """True if every axiom listed in ``A[...]`` holds, e.g. ``"A[1,4,2]"``."""
        inner = axiom_type.strip()[2:-1]
        return all(getattr(self, f"a{int(k)}") for k in inner.split(",") if k.strip())

    def as_dict(self) -> dict:
        return {
            "a1": self.a1, "a2": self.a2, "a3": self.a3,
            "a4": self.a4, "a5": self.a5, "a6": self.a6,
            "witness_a4": list(self.witness_a4) if self.witness_a4 else None,
            "witness_a5": list(self.witness_a5) if self.witness_a5 else None,
            "witness_a6": list(self.witness_a6) if self.witness_a6 else None,
            "name": self.name,
            "axiom_type": self.axiom_type,
            "label": self.label,
        }


def classify(a2: bool, a3: bool, a4: bool, a6: bool) -> str:
    if a4:
        if a2 and a3:
            return "group" if a6 else "NAFIL"
        if a2:
            return "loop"
        # a finite associative quasigroup always has an identity, so a6 cannot hold here
        return "quasigroup"
    if a6:
        return "monoid" if a2 else "semigroup"
    return "groupoid"


def latin_witness(t: CayleyTable) -> Optional[tuple[int, int, str]]:
    """First ``(a, b, side)`` whose equation ``a*x=b`` (left) or ``y*a=b`` (right)
    lacks a unique solution, or ``None`` for a Latin square."""
    rows = t._rows
    n = t.n
    for a in range(n):
        row = rows[a]
        col = [rows[y][a] for y in range(n)]
        if len(set(row)) == n and len(set(col)) == n:
            continue
        for b in range(n):
            if row.count(b) != 1:
                return (a + 1, b + 1, "left")
            if col.count(b) != 1:
                return (a + 1, b + 1, "right")
    return None


def is_latin(t: CayleyTable) -> bool:
    n = t.n
    full = set(range(n))
    rows = t._rows
    return all(set(r) == full for r in rows) and all(set(c) == full for c in zip(*rows))


def commutativity_witness(t: CayleyTable) -> Optional[tuple[int, int]]:
    rows = t._rows
    for a in range(t.n):
        for b in range(a + 1, t.n):
            if rows[a][b] != rows[b][a]:
                return (a + 1, b + 1)
    return None


def associativity_witness(t: CayleyTable) -> Optional[tuple[int, int, int]]:
    """First triple in lexicographic order with ``(ab)c != a(bc)``."""
    rows = t._rows
    n = t.n
    for a in range(n):
        ra = rows[a]
        for b in range(n):
            rab = rows[ra[b]]
            rb = rows[b]
            for c in range(n):
                if rab[c] != ra[rb[c]]:
                    return (a + 1, b + 1, c + 1)
    return None


def is_associative(t: CayleyTable) -> bool:
    return associativity_witness(t) is None


def is_commutative(t: CayleyTable) -> bool:
    return commutativity_witness(t) is None


def _has_inverses(t: CayleyTable, e: int) -> bool:
    rows = t._rows
    n = t.n
    for a in range(n):
        if sum(1 for y in range(n) if rows[a][y] == e and rows[y][a] == e) != 1:
            return False
    return True


def axiom_profile(t: CayleyTable) -> AxiomProfile:
    w4 = latin_witness(t)
    w5 = commutativity_witness(t)
    w6 = associativity_witness(t)
    e = _identity0(t)
    a2 = e is not None
    a3 = a2 and _has_inverses(t, e)
    return AxiomProfile(
        a1=True,
        a2=a2,
        a3=a3,
        a4=w4 is None,
        a5=w5 is None,
        a6=w6 is None,
        witness_a4=w4,
        witness_a5=w5,
        witness_a6=w6,
    )


def is_loop(t: CayleyTable) -> bool:
    return identity(t) is not None and is_latin(t)


def is_invertible_loop(t: CayleyTable) -> bool:
    e = _identity0(t)
    return e is not None and is_latin(t) and _has_inverses(t, e)


def is_nafil(t: CayleyTable) -> bool:
    return axiom_profile(t).is_nafil


def is_group(t: CayleyTable) -> bool:
    return axiom_profile(t).is_group


def products(t: CayleyTable) -> Iterator[tuple[int, int, int]]:
    """All ``(a, b, a*b)`` in row-major order."""
    for a, b in itertools.product(t.elements, repeat=2):
        yield a, b, t(a, b)
