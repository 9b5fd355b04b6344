"""Closure, subsystem lattices and the Lagrangian classification.

Subsets are carried as integer bit masks (bit ``x-1`` set for element ``x``)
inside this module; every public function takes and returns 1-based element
sets.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable

from .errors import EmptySeed, NotALoop
from .table import (
    CayleyTable,
    axiom_profile,
    check_elements,
    elements_of,
    is_loop,
    mask_of,
)


def closure_mask(t: CayleyTable, seed: int) -> int:
    """Smallest superset of the mask ``seed`` closed under the operation."""
    rows = t._rows
    members = [i for i in range(t.n) if seed >> i & 1]
    have = seed
    k = 0
    # every new element is multiplied against everything seen so far, both ways
    while k < len(members):
        x = members[k]
        rx = rows[x]
        for j in range(k + 1):
            y = members[j]
            for v in (rx[y], rows[y][x]):
                if not have >> v & 1:
                    have |= 1 << v
                    members.append(v)
        k += 1
    return have


def closure(t: CayleyTable, seed: Iterable[int]) -> frozenset[int]:
    seed = check_elements(t, seed)
    if not seed:
        raise EmptySeed()
    return elements_of(closure_mask(t, mask_of(seed)))


def is_closed_mask(t: CayleyTable, mask: int) -> bool:
    rows = t._rows
    members = [i for i in range(t.n) if mask >> i & 1]
    for a in members:
        ra = rows[a]
        for b in members:
            if not mask >> ra[b] & 1:
                return False
    return True


def is_subsystem(t: CayleyTable, subset: Iterable[int]) -> bool:
    """True iff the non-empty ``subset`` is closed under the operation.

    For quasigroups closure is enough: a closed subset is automatically a
    sub-quasigroup, and inside a loop it contains the identity.
    """
    subset = check_elements(t, subset)
    if not subset:
        return False
    return is_closed_mask(t, mask_of(subset))


def subsystem_masks(t: CayleyTable) -> list[int]:
    """Masks of every closed subset of a loop, found by adding one generator at a time."""
    n = t.n
    e = next(i for i in range(n) if t._rows[i] == tuple(range(n)))
    start = closure_mask(t, 1 << e)
    seen = {start}
    work = [start]
    while work:
        h = work.pop()
        for x in range(n):
            if h >> x & 1:
                continue
            g = closure_mask(t, h | 1 << x)
            if g not in seen:
                seen.add(g)
                work.append(g)
    return list(seen)


def all_closed_subsets(t: CayleyTable) -> list[frozenset[int]]:
    """Brute-force scan of all ``2^n - 1`` non-empty subsets (oracle, small n only)."""
    return sorted(
        (elements_of(m) for m in range(1, 1 << t.n) if is_closed_mask(t, m)),
        key=_sort_key,
    )


def _sort_key(s: frozenset[int]):
    return (len(s), sorted(s))


class LagrangianClass(str, enum.Enum):
    LAGRANGIAN = "Lagrangian"
    NON_LAGRANGIAN = "NonLagrangian"
    ANTI_LAGRANGIAN = "AntiLagrangian"
    NO_NONTRIVIAL = "NoNontrivial"

    def __str__(self) -> str:
        return self.value

    @property
    def is_non_lagrangian(self) -> bool:
        return self in (LagrangianClass.NON_LAGRANGIAN, LagrangianClass.ANTI_LAGRANGIAN)

    @property
    def text(self) -> str:
        return {
            "Lagrangian": "Lagrangian",
            "NonLagrangian": "non-Lagrangian",
            "AntiLagrangian": "anti-Lagrangian",
            "NoNontrivial": "no non-trivial subsystems",
        }[self.value]


@dataclass(frozen=True)
class Subsystem:
    elements: frozenset[int]
    order: int
    is_group: bool
    is_divisor: bool
    label: str
    trivial: bool = False
    improper: bool = False

    @property
    def nontrivial_proper(self) -> bool:
        return not (self.trivial or self.improper)

    def as_dict(self) -> dict:
        return {
            "elements": sorted(self.elements),
            "order": self.order,
            "is_group": self.is_group,
            "is_divisor": self.is_divisor,
            "label": self.label,
            "trivial": self.trivial,
            "improper": self.improper,
        }


@dataclass(frozen=True)
class SubsystemReport:
    parent_order: int
    subsystems: tuple[Subsystem, ...]
    lagrangian_class: LagrangianClass

    @property
    def nontrivial(self) -> tuple[Subsystem, ...]:
        """The non-trivial proper subsystems."""
        return tuple(s for s in self.subsystems if s.nontrivial_proper)

    @property
    def composite(self) -> bool:
        return bool(self.nontrivial)

    @property
    def all_nontrivial_nondivisors(self) -> bool:
        nt = self.nontrivial
        return bool(nt) and not any(s.is_divisor for s in nt)

    def as_dict(self) -> dict:
        return {
            "parent_order": self.parent_order,
            "lagrangian_class": self.lagrangian_class.value,
            "composite": self.composite,
            "all_nontrivial_nondivisors": self.all_nontrivial_nondivisors,
            "subsystems": [s.as_dict() for s in self.subsystems],
        }


def _classify(n: int, orders: list[int]) -> LagrangianClass:
    if not orders:
        return LagrangianClass.NO_NONTRIVIAL
    nondiv = [m for m in orders if n % m]
    if not nondiv:
        return LagrangianClass.LAGRANGIAN
    # At prime order no proper non-trivial order can divide n, so "every
    # subsystem is a non-divisor" says nothing; anti-Lagrangian is reserved for
    # orders that admit a proper divisor.
    has_proper_divisor = any(n % d == 0 for d in range(2, n))
    if len(nondiv) == len(orders) and has_proper_divisor:
        return LagrangianClass.ANTI_LAGRANGIAN
    return LagrangianClass.NON_LAGRANGIAN


def subsystems(t: CayleyTable) -> SubsystemReport:
    """The full subloop lattice of a loop, sorted by (order, elements)."""
    if not is_loop(t):
        raise NotALoop()
    n = t.n
    found = sorted((elements_of(m) for m in subsystem_masks(t)), key=_sort_key)
    subs = []
    for s in found:
        m = len(s)
        prof = axiom_profile(t.subtable(s))
        subs.append(Subsystem(
            elements=s,
            order=m,
            is_group=prof.is_group,
            is_divisor=n % m == 0,
            label=prof.name,
            trivial=m == 1,
            improper=m == n,
        ))
    orders = [s.order for s in subs if s.nontrivial_proper]
    return SubsystemReport(n, tuple(subs), _classify(n, orders))


def lagrangian_class(t: CayleyTable) -> LagrangianClass:
    return subsystems(t).lagrangian_class


def nontrivial_subsystems(t: CayleyTable) -> list[frozenset[int]]:
    return [s.elements for s in subsystems(t).nontrivial]
