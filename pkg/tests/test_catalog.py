"""Every structural claim stored with a catalog entry is recomputed here."""

from __future__ import annotations

import pytest

from nafil.catalog import (
    CATALOG,
    NAFIL8,
    NAFIL8_B_BODY,
    NAFIL8_B_ORDER,
    PLAIN7N,
    PLAIN7N_BAD_ROW4,
    catalog_get,
    catalog_ids,
    get_table,
)
from nafil.errors import UnknownId
from nafil.products import direct_product
from nafil.quotient import (
    are_isomorphic,
    ascending_central_series,
    center,
    coset_partition,
    is_normal,
    is_plain,
    is_simple,
)
from nafil.subsystems import subsystems
from nafil.table import CayleyTable, axiom_profile


def _sorted_sets(sets):
    return sorted((sorted(s) for s in sets), key=lambda s: (len(s), s))


def _check(t, key, want):
    rep = subsystems(t)
    nt = rep.nontrivial
    if key == "profile":
        return axiom_profile(t).name == want
    if key == "abelian":
        return axiom_profile(t).abelian == want
    if key == "nontrivial_subsystem_orders":
        return sorted(s.order for s in nt) == sorted(want)
    if key == "nontrivial_subsystem_order_set":
        return sorted({s.order for s in nt}) == sorted(want)
    if key == "nontrivial_subsystems":
        return _sorted_sets(s.elements for s in nt) == _sorted_sets(want)
    if key == "includes_subsystems":
        have = {s.elements for s in nt}
        return all(frozenset(w) in have for w in want)
    if key == "all_subsystems_groups":
        return all(s.is_group for s in nt) == want
    if key == "lagrangian_class":
        return rep.lagrangian_class.value == want
    if key == "center":
        return sorted(center(t)) == want
    if key == "simple":
        return is_simple(t) == want
    if key == "plain":
        return is_plain(t) == want
    if key == "normal_subsystems":
        return _sorted_sets(s.elements for s in nt if is_normal(t, s.elements)[0]) == _sorted_sets(want)
    if key == "coset_partitions":
        return sum(coset_partition(t, s.elements).partitions for s in nt) == want
    if key == "not_normal_witness":
        ok, fs = is_normal(t, want["subset"])
        return not ok and list(fs.witness.first) == want["first"] and list(fs.witness.second) == want["second"]
    if key == "factor_over_center":
        ok, fs = is_normal(t, center(t))
        return ok and are_isomorphic(fs.table, get_table(want)) is not None
    if key == "central_series":
        return [sorted(z) for z in ascending_central_series(t)] == want
    if key == "direct_product_of":
        return direct_product(get_table(want[0]), get_table(want[1])) == t
    if key == "transpose_of":
        return t.transpose() == get_table(want)
    raise AssertionError(f"no checker for note {key!r}")


CASES = [(e.id, k, v) for e in CATALOG.values() for k, v in e.notes.items()]


@pytest.mark.parametrize("cid, key, want", CASES, ids=[f"{c}-{k}" for c, k, _ in CASES])
def test_catalog_note(cid, key, want):
    assert _check(get_table(cid), key, want)


def test_ids_are_stable():
    assert catalog_ids() == (
        "l5", "nafil8", "abelian6", "l9-anti", "l10", "l7-composite", "l7-plain",
        "plain7n", "plain7n-t", "c2", "c3", "c4", "k4",
    )


def test_catalog_get_and_unknown():
    assert catalog_get("l5").table(2, 3) == 5
    assert catalog_get("L5").id == "l5"
    with pytest.raises(UnknownId) as info:
        catalog_get("l6")
    assert "l9-anti" in str(info.value)
    with pytest.raises(KeyError):
        catalog_get("nope")


def test_catalog_is_read_only():
    with pytest.raises(TypeError):
        CATALOG["x"] = None


def test_entry_names_match_ids(entry):
    assert entry.table.name == entry.id


def test_second_arrangement_of_nafil8_is_the_same_loop():
    order = NAFIL8_B_ORDER
    pos = {x: i for i, x in enumerate(order)}
    for i, a in enumerate(order):
        for j, b in enumerate(order):
            assert NAFIL8(a, b) == NAFIL8_B_BODY[i][j]
    assert sorted(pos) == list(range(1, 9))


def test_printed_plain7n_row_is_not_latin_and_correction_is_transpose():
    rows = [list(r) for r in PLAIN7N.entries]
    rows[3] = list(PLAIN7N_BAD_ROW4)
    bad = CayleyTable(rows)
    assert not axiom_profile(bad).a4
    assert PLAIN7N == get_table("plain7n-t").transpose()


def test_every_entry_is_an_invertible_loop(entry):
    p = axiom_profile(entry.table)
    assert p.is_invertible_loop
    assert p.name in ("NAFIL", "group")
