from __future__ import annotations

import random

import pytest

from nafil.catalog import ABELIAN6, C2, C3, C4, CATALOG, K4, L5, L10, NAFIL8, get_table
from nafil.errors import (
    BadHeader,
    EntryOutOfRange,
    InconsistentDecomposition,
    NotNormal,
    NotSquare,
    PhiNotQuasigroup,
    ShapeMismatch,
)
from nafil.products import (
    CosetDecomposition,
    MultiPhiSystem,
    PhiType,
    block_product,
    c_partition,
    classify_phi_type,
    decompose,
    direct_product,
    e_partition,
    flat_index,
    format_mphi,
    pair_of,
    parse_mphi,
    recompose,
    validate_generators,
)
from nafil.quotient import are_isomorphic, is_normal, normal_subsystems
from nafil.subsystems import LagrangianClass, is_subsystem, subsystems
from nafil.table import CayleyTable, axiom_profile, is_group, is_nafil

from theorems import check_commutative, run_fuzz

QG3 = CayleyTable([[1, 2, 3], [3, 1, 2], [2, 3, 1]])
MIXED_GROUP_SYSTEM = MultiPhiSystem(C2, ((C4, C4), (C4, K4)))


# -- construction ----------------------------------------------------------------------------


def test_flattening():
    assert flat_index(5, 2, 3) == 8
    assert all(pair_of(4, flat_index(4, p, a)) == (p, a) for p in range(1, 4) for a in range(1, 5))


def test_mono_phi_is_direct_product():
    assert block_product(MultiPhiSystem.mono(C2, C2)) == K4
    assert direct_product(C2, C2) == K4
    assert direct_product(C2, L5) == L10


def test_non_isomorphic_groups_give_a_nafil():
    t = block_product(MIXED_GROUP_SYSTEM)
    p = axiom_profile(t)
    assert p.is_invertible_loop and not p.a6
    a, b, c = p.witness_a6
    assert t(t(a, b), c) != t(a, t(b, c))


def test_block_product_errors():
    with pytest.raises(PhiNotQuasigroup) as info:
        block_product(MultiPhiSystem(C2, ((C2, C2), (C2, CayleyTable([[1, 1], [2, 2]])))))
    assert (info.value.p, info.value.q) == (2, 2)
    with pytest.raises(ShapeMismatch):
        MultiPhiSystem(C2, ((C2, C3), (C2, C2)))
    with pytest.raises(ShapeMismatch):
        MultiPhiSystem(C2, ((C2, C2),))


def test_l5_times_c3_subsystem_orders():
    orders = {s.order for s in subsystems(direct_product(L5, C3)).nontrivial}
    assert orders == {2, 3, 5, 6}


# -- Type A / B ------------------------------------------------------------------------------


def test_phi_types():
    assert classify_phi_type(MultiPhiSystem.mono(C2, C2)) is PhiType.TYPE_A
    assert classify_phi_type(MIXED_GROUP_SYSTEM) is PhiType.TYPE_A
    mp = MultiPhiSystem(C2, ((C3, QG3), (C3, C3)))
    assert classify_phi_type(mp) is PhiType.IRREGULAR
    shifted = C3.relabel([0, 2, 1, 3])  # identity moved to element 2
    assert classify_phi_type(MultiPhiSystem(C2, ((C3, shifted), (C3, C3)))) is PhiType.TYPE_B


# -- generator validation ----------------------------------------------------------------------


def test_validate_generators_examples():
    assert validate_generators(MultiPhiSystem.mono(C2, C2)).ok
    d = decompose(NAFIL8, {1, 2, 3, 4})
    assert validate_generators(d.multiphi).ok
    ok, violations = validate_generators(MultiPhiSystem(C2, ((QG3, C3), (C3, C3))))
    assert not ok
    assert any(v.startswith("b1 at p=1,q=1") for v in violations)


def test_validate_generators_needs_invertible_e():
    r = validate_generators(MultiPhiSystem.mono(QG3, C2))
    assert not r.ok and r.violations[0].startswith("a:")


def test_validate_generators_inverse_map_clause():
    # E = C3: the pair (2, 3) are inverses; phi_23 != phi_32 forces the inverse-map test
    swapped = C3.transpose()
    other = CayleyTable([[1, 2, 3], [2, 3, 1], [3, 1, 2]])
    phi = ((C3, C3, C3), (C3, C3, other), (C3, swapped, C3))
    r = validate_generators(MultiPhiSystem(C3, phi))
    assert r.ok == r.mirrored_ok


def test_necessary_conditions_hold_for_catalog_decompositions(entry):
    t = entry.table
    for H in normal_subsystems(t):
        r = validate_generators(decompose(t, H).multiphi)
        assert r.ok and r.mirrored_ok, (sorted(H), r.violations)


# -- decomposition ------------------------------------------------------------------------------


def test_decompose_l10():
    d = decompose(L10, {1, 2, 3, 4, 5})
    assert (d.k, d.m) == (2, 5)
    assert d.is_mono_phi
    assert are_isomorphic(d.e_table, C2)
    assert all(f == L5 for row in d.multiphi.phi for f in row)
    assert d.phi_type is PhiType.TYPE_A


def test_decompose_abelian6():
    d = decompose(ABELIAN6, {1, 2})
    assert (d.k, d.m) == (3, 2)
    assert are_isomorphic(d.e_table, C3)
    assert len([f for row in d.multiphi.phi for f in row]) == 9
    # 3*3 = 5 lies in B3 = {5,6} as its first element
    assert d.multiphi.at(2, 2)(1, 1) == 1
    assert d.e_table(2, 2) == 3


def test_decompose_nafil8():
    d = decompose(NAFIL8, {1, 2, 3, 4})
    assert (d.k, d.m) == (2, 4)
    assert are_isomorphic(d.e_table, C2)
    assert are_isomorphic(d.multiphi.at(1, 1), C4)


def test_decompose_rejects_non_normal():
    with pytest.raises(NotNormal):
        decompose(NAFIL8, {1, 7})


def test_round_trip_all_normal_subloops(entry):
    t = entry.table
    for H in normal_subsystems(t):
        d = decompose(t, H)
        assert recompose(d) == t
        assert t.relabel(d.relabeling) == block_product(d.multiphi, strict=False)


def test_recompose_of_hand_built_mono():
    mp = MultiPhiSystem.mono(C3, L5)
    d = CosetDecomposition(C3, mp, {h: h for h in range(1, 16)}, PhiType.TYPE_A, True)
    assert recompose(d) == direct_product(C3, L5)


def test_recompose_detects_inconsistency():
    d = decompose(ABELIAN6, {1, 2})
    broken = CosetDecomposition(d.e_table, d.multiphi, {**d.relabeling, 1: 2}, d.phi_type, d.is_mono_phi)
    with pytest.raises(InconsistentDecomposition):
        recompose(broken)
    wrong_source = CosetDecomposition(d.e_table, d.multiphi, d.relabeling, d.phi_type, d.is_mono_phi,
                                      source=ABELIAN6.transpose().relabel([0, 1, 2, 5, 6, 3, 4]))
    if wrong_source.source != ABELIAN6:
        with pytest.raises(InconsistentDecomposition):
            recompose(wrong_source)


# -- .mphi format ----------------------------------------------------------------------------------


def test_mphi_round_trip():
    for mp in (MIXED_GROUP_SYSTEM, decompose(ABELIAN6, {1, 2}).multiphi, MultiPhiSystem.mono(C3, L5)):
        again = parse_mphi(format_mphi(mp))
        assert (again.e_table, again.phi) == (mp.e_table, mp.phi)


def test_mphi_p_major_order():
    text = format_mphi(MIXED_GROUP_SYSTEM)
    heads = [line for line in text.splitlines() if line.startswith("# phi")]
    assert heads == ["# phi 1 1", "# phi 1 2", "# phi 2 1", "# phi 2 2"]


@pytest.mark.parametrize(
    "text, exc",
    [
        ("2\n", BadHeader),
        ("2 x\n", BadHeader),
        ("1 2\n1\n1 2\n2 1 3\n", NotSquare),
        ("1 2\n1\n1 2\n2 3\n", EntryOutOfRange),
        ("1 2\n1\n1 2\n", NotSquare),
    ],
)
def test_mphi_errors(text, exc):
    with pytest.raises(exc):
        parse_mphi(text)


# -- direct-product theorems ---------------------------------------------------------------------------


GROUPS = [CATALOG[i].table for i in ("c2", "c3", "c4", "k4")]
NAFILS = [CATALOG[i].table for i in ("l5", "abelian6")]


@pytest.mark.parametrize("e", GROUPS + NAFILS, ids=lambda t: t.name)
@pytest.mark.parametrize("c", GROUPS + NAFILS, ids=lambda t: t.name)
def test_group_or_nafil_direct_products(e, c):
    t = direct_product(e, c)
    if is_group(e) and is_group(c):
        assert is_group(t)
    else:
        assert is_nafil(t)


def test_direct_product_contains_factor_images():
    # E = C4 with sub-E {1,3} ~ C2, C = L5 with sub-C {1,2} ~ C2
    E, C = C4, L5
    Eb, Cb = [1, 3], [1, 2]
    t = direct_product(E, C)
    m = C.n

    def image(es, cs):
        return {flat_index(m, p, a) for p in es for a in cs}

    wanted = {
        "E": (range(1, 5), [1]), "Ebar": (Eb, [1]), "C": ([1], range(1, 6)), "Cbar": ([1], Cb),
        "E x Cbar": (range(1, 5), Cb), "Ebar x C": (Eb, range(1, 6)), "Ebar x Cbar": (Eb, Cb),
    }
    for label, (es, cs) in wanted.items():
        s = image(es, cs)
        assert is_subsystem(t, s), label
    sub_e = t.subtable(image(range(1, 5), [1]))
    assert are_isomorphic(sub_e, E) is not None
    assert are_isomorphic(t.subtable(image([1], range(1, 6))), C) is not None


@pytest.mark.parametrize("e, c", [(C2, L5), (C3, L5), (C4, C3), (L5, C2)], ids=str)
def test_partitions_of_direct_products_are_factor_systems(e, c):
    t = direct_product(e, c)
    k, m = e.n, c.n
    Ebar = frozenset(flat_index(m, p, 1) for p in range(1, k + 1))
    Cbar = frozenset(flat_index(m, 1, a) for a in range(1, m + 1))
    ok, fs = is_normal(t, Ebar)
    assert ok and are_isomorphic(fs.table, c) is not None
    assert {frozenset(x) for x in fs.cells} == set(c_partition(k, m))
    ok, fs = is_normal(t, Cbar)
    assert ok and are_isomorphic(fs.table, e) is not None
    assert {frozenset(x) for x in fs.cells} == set(e_partition(k, m))


@pytest.mark.parametrize("p", [C2, C3], ids=lambda t: t.name)
def test_prime_plain_times_non_lagrangian(p):
    assert subsystems(direct_product(p, L5)).lagrangian_class is LagrangianClass.NON_LAGRANGIAN


def test_type_a_products_carry_a_copy_of_e():
    # the first-coordinate images (e_i, c1) form a subloop isomorphic to E
    for mp in (MIXED_GROUP_SYSTEM, MultiPhiSystem.mono(C3, L5)):
        t = block_product(mp)
        D1 = {flat_index(mp.m, p, 1) for p in range(1, mp.k + 1)}
        assert is_subsystem(t, D1)
        assert are_isomorphic(t.subtable(D1), mp.e_table) is not None


def test_product_of_c2_and_l5_is_nafil():
    assert is_nafil(direct_product(C2, L5))


# -- fuzzed theorem suite -----------------------------------------------------------------------------


def test_theorem_fuzz():
    result = run_fuzz(count=100, seed=1)
    for name, violations in result.items():
        if name == "commutative":
            continue
        assert violations == [], (name, violations[:3])


def test_commutative_generators_alone_do_not_make_an_abelian_product():
    # E and every local table commutative, but phi_12 != phi_21
    mp = MultiPhiSystem(C2, ((C4, C4), (K4, C4)))
    assert classify_phi_type(mp) is PhiType.TYPE_A
    assert is_normal(block_product(mp), {1, 2, 3, 4})[0]
    assert check_commutative(mp) != []
    sym = MultiPhiSystem(C2, ((C4, K4), (K4, C4)))
    assert check_commutative(sym) == []
