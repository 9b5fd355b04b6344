"""Executable forms of the structural theorems about block and direct products.

Each ``check_*`` returns a list of violation strings (empty when the claim
holds on the given input); generators build random inputs satisfying each
theorem's hypotheses.
"""

from __future__ import annotations

import random

from nafil.catalog import CATALOG
from nafil.products import (
    MultiPhiSystem,
    PhiType,
    block_product,
    c_partition,
    classify_phi_type,
    direct_product,
    e_partition,
    flat_index,
)
from nafil.quotient import are_isomorphic, factor_system, is_normal
from nafil.subsystems import is_subsystem, subsystems
from nafil.table import (
    CayleyTable,
    axiom_profile,
    identity,
    is_commutative,
    is_invertible_loop,
    is_latin,
    is_loop,
)

from oracles import latin_squares


def _cells_table(t: CayleyTable, cells) -> tuple[bool, CayleyTable | None]:
    where = {x: i for i, c in enumerate(cells) for x in c}
    k = len(cells)
    rows = [[0] * k for _ in range(k)]
    for p, P in enumerate(cells):
        for q, Q in enumerate(cells):
            hit = {where[t(a, b)] for a in P for b in Q}
            if len(hit) != 1:
                return False, None
            rows[p][q] = hit.pop() + 1
    return True, CayleyTable(rows)


def check_subloop_bound(t: CayleyTable) -> list[str]:
    return [f"subsystem of order {s.order} exceeds n/2 in order {t.n}"
            for s in subsystems(t).nontrivial if 2 * s.order > t.n]


def check_block_quasigroup(mp: MultiPhiSystem, rng: random.Random) -> list[str]:
    out = []
    if not axiom_profile(block_product(mp)).a4:
        out.append("product of quasigroups is not a quasigroup")
    if mp.m > 1:
        # break one local table and the product must break too
        p, q = rng.randrange(mp.k), rng.randrange(mp.k)
        rows = [list(r) for r in mp.phi[p][q].entries]
        i, j = rng.randrange(mp.m), rng.randrange(mp.m)
        rows[i][j] = rows[i][(j + 1) % mp.m]
        phi = [list(r) for r in mp.phi]
        phi[p][q] = CayleyTable(rows)
        bad = MultiPhiSystem(mp.e_table, tuple(tuple(r) for r in phi))
        if axiom_profile(block_product(bad, strict=False)).a4:
            out.append("product stayed a quasigroup after a local table lost the Latin property")
    return out


def check_e_partition(mp: MultiPhiSystem) -> list[str]:
    t = block_product(mp)
    ok, cells = _cells_table(t, e_partition(mp.k, mp.m))
    if not ok:
        return ["E-partition cell multiplication is not well defined"]
    out = []
    if not is_latin(cells):
        out.append("E-partition cell table is not a quasigroup")
    if cells != mp.e_table:
        out.append("E-partition cell table differs from E")
    return out


def check_type_a_loop(mp: MultiPhiSystem) -> list[str]:
    t = block_product(mp)
    e1 = identity(mp.e_table)
    c1 = identity(mp.phi[0][0])
    out = []
    if not is_loop(t) or identity(t) != flat_index(mp.m, e1, c1):
        return ["product is not a loop with identity (e1, c1)"]
    B1 = e_partition(mp.k, mp.m)[e1 - 1]
    if not is_subsystem(t, B1):
        out.append("B1 is not a subsystem")
    ok, fs = is_normal(t, B1)
    if not ok:
        out.append("B1 is not normal")
    elif are_isomorphic(fs.table, mp.e_table) is None:
        out.append("factor system is not isomorphic to E")
    return out


def check_symmetric_invertible(mp: MultiPhiSystem) -> list[str]:
    t = block_product(mp)
    return [] if is_invertible_loop(t) else ["product is not an invertible loop"]


def check_commutative(mp: MultiPhiSystem) -> list[str]:
    t = block_product(mp)
    w = axiom_profile(t).witness_a5
    return [] if w is None else [f"product is not abelian: {w[0]}*{w[1]} != {w[1]}*{w[0]}"]


def check_direct_commutes(e: CayleyTable, c: CayleyTable) -> list[str]:
    if are_isomorphic(direct_product(e, c), direct_product(c, e)) is None:
        return [f"{e.name} x {c.name} is not isomorphic to {c.name} x {e.name}"]
    return []


# -- random generating systems ---------------------------------------------------------------


def _loops(m, ident=None):
    return [t for t in latin_squares(m) if is_loop(t) and (ident is None or identity(t) == ident)]


def random_quasigroup_system(rng: random.Random) -> MultiPhiSystem:
    k, m = rng.randint(1, 4), rng.randint(1, 4)
    e = rng.choice(latin_squares(k))
    qs = latin_squares(m)
    return MultiPhiSystem(e, tuple(tuple(rng.choice(qs) for _ in range(k)) for _ in range(k)))


def random_type_a_system(rng: random.Random) -> MultiPhiSystem:
    k, m = rng.randint(1, 4), rng.randint(1, 4)
    e = rng.choice(_loops(k))
    c1 = rng.randint(1, m)
    pool = _loops(m, c1)
    return MultiPhiSystem(e, tuple(tuple(rng.choice(pool) for _ in range(k)) for _ in range(k)))


def random_symmetric_invertible_system(rng: random.Random) -> MultiPhiSystem:
    k, m = rng.randint(1, 4), rng.randint(1, 4)
    e = rng.choice([t for t in _loops(k) if is_invertible_loop(t)])
    c1 = rng.randint(1, m)
    pool = [t for t in _loops(m, c1) if is_invertible_loop(t)]
    phi = [[None] * k for _ in range(k)]
    for p in range(k):
        for q in range(p, k):
            phi[p][q] = phi[q][p] = rng.choice(pool)
    return MultiPhiSystem(e, tuple(tuple(r) for r in phi))


def random_commutative_system(rng: random.Random, symmetric: bool) -> MultiPhiSystem:
    k, m = rng.randint(1, 4), rng.randint(1, 4)
    e = rng.choice([t for t in latin_squares(k) if is_commutative(t)])
    pool = [t for t in latin_squares(m) if is_commutative(t)]
    phi = [[None] * k for _ in range(k)]
    for p in range(k):
        for q in range(k):
            if symmetric and q < p:
                phi[p][q] = phi[q][p]
            else:
                phi[p][q] = rng.choice(pool)
    return MultiPhiSystem(e, tuple(tuple(r) for r in phi))


def catalog_pairs(limit: int = 25) -> list[tuple[CayleyTable, CayleyTable]]:
    tables = [e.table for e in CATALOG.values()]
    return [(a, b) for a in tables for b in tables if a.n * b.n <= limit]


def run_fuzz(count: int = 100, seed: int = 0, catalog_limit: int = 25) -> dict[str, list[str]]:
    """Run every theorem over ``count`` random systems per hypothesis set plus catalog pairs.

    Returns ``{claim: [violations]}``.  Commutative ``E`` and commutative
    local tables are reported under ``commutative``; the version that also
    assumes ``phi_pq == phi_qp`` is reported under ``commutative_symmetric``.
    """
    rng = random.Random(seed)
    out: dict[str, list[str]] = {k: [] for k in
                                 ("subloop_bound", "block_quasigroup", "e_partition", "type_a_loop", "symmetric_invertible", "commutative", "commutative_symmetric", "direct_commutes")}
    for _ in range(count):
        mp = random_quasigroup_system(rng)
        out["block_quasigroup"] += check_block_quasigroup(mp, rng)
        out["e_partition"] += check_e_partition(mp)
        mp = random_type_a_system(rng)
        assert classify_phi_type(mp) is PhiType.TYPE_A
        out["type_a_loop"] += check_type_a_loop(mp)
        out["subloop_bound"] += check_subloop_bound(block_product(mp))
        mp = random_symmetric_invertible_system(rng)
        out["symmetric_invertible"] += check_symmetric_invertible(mp)
        out["type_a_loop"] += check_type_a_loop(mp)
        out["commutative"] += check_commutative(random_commutative_system(rng, symmetric=False))
        out["commutative_symmetric"] += check_commutative(random_commutative_system(rng, symmetric=True))
    for e, c in catalog_pairs(catalog_limit):
        mp = MultiPhiSystem.mono(e, c)
        t = block_product(mp)
        out["subloop_bound"] += check_subloop_bound(t)
        out["block_quasigroup"] += check_block_quasigroup(mp, rng)
        out["e_partition"] += check_e_partition(mp)
        out["type_a_loop"] += check_type_a_loop(mp)
        out["symmetric_invertible"] += check_symmetric_invertible(mp)
        if is_commutative(e) and is_commutative(c):
            out["commutative"] += check_commutative(mp)
            out["commutative_symmetric"] += check_commutative(mp)
        out["direct_commutes"] += check_direct_commutes(e, c)
    return out
