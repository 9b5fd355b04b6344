"""Built-in tables, each with the structural facts it is known for.

The ``notes`` of an entry are claims that the analysis pipeline must
re-derive; the test-suite checks every one of them on every run.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Mapping

from .errors import UnknownId
from .table import CayleyTable


@dataclass(frozen=True)
class CatalogEntry:
    id: str
    table: CayleyTable
    source: str
    notes: Mapping = field(default_factory=dict)


def _t(name: str, text: str) -> CayleyTable:
    rows = [[int(v) for v in line.split()] for line in text.strip().splitlines()]
    return CayleyTable(rows, name=name)


def _cyclic(n: int) -> CayleyTable:
    return CayleyTable([[(i + j) % n + 1 for j in range(n)] for i in range(n)], name=f"C{n}")


L5 = _t("l5", """
1 2 3 4 5
2 1 5 3 4
3 4 1 5 2
4 5 2 1 3
5 3 4 2 1
""")

NAFIL8 = _t("nafil8", """
1 2 3 4 5 6 7 8
2 3 4 1 6 7 8 5
3 4 1 2 7 8 5 6
4 1 2 3 8 5 6 7
5 6 7 8 1 2 3 4
6 5 8 7 2 1 4 3
7 8 5 6 3 4 1 2
8 7 6 5 4 3 2 1
""")

# The same loop printed with rows/columns in the order 1 7 2 8 3 5 4 6.
# Kept for cross-checking the transcription; not a catalog entry.
NAFIL8_B_ORDER = (1, 7, 2, 8, 3, 5, 4, 6)
NAFIL8_B_BODY = (
    (1, 7, 2, 8, 3, 5, 4, 6),
    (7, 1, 8, 2, 5, 3, 6, 4),
    (2, 8, 3, 5, 4, 6, 1, 7),
    (8, 2, 7, 1, 6, 4, 5, 3),
    (3, 5, 4, 6, 1, 7, 2, 8),
    (5, 3, 6, 4, 7, 1, 8, 2),
    (4, 6, 1, 7, 2, 8, 3, 5),
    (6, 4, 5, 3, 8, 2, 7, 1),
)

ABELIAN6 = _t("abelian6", """
1 2 3 4 5 6
2 1 4 3 6 5
3 4 5 6 1 2
4 3 6 5 2 1
5 6 1 2 4 3
6 5 2 1 3 4
""")

L9_ANTI = _t("l9-anti", """
1 2 3 4 5 6 7 8 9
2 1 4 3 6 5 8 9 7
3 4 1 2 7 8 9 6 5
4 3 2 1 8 9 5 7 6
5 6 7 8 9 1 2 4 3
6 5 8 9 1 7 3 2 4
7 8 9 6 2 3 4 5 1
8 9 5 7 3 4 6 1 2
9 7 6 5 4 2 1 3 8
""")

L10 = _t("l10", """
 1  2  3  4  5  6  7  8  9 10
 2  1  5  3  4  7  6 10  8  9
 3  4  1  5  2  8  9  6 10  7
 4  5  2  1  3  9 10  7  6  8
 5  3  4  2  1 10  8  9  7  6
 6  7  8  9 10  1  2  3  4  5
 7  6 10  8  9  2  1  5  3  4
 8  9  6 10  7  3  4  1  5  2
 9 10  7  6  8  4  5  2  1  3
10  8  9  7  6  5  3  4  2  1
""")

L7_COMPOSITE = _t("l7-composite", """
1 2 3 4 5 6 7
2 3 1 5 6 7 4
3 1 2 7 4 5 6
4 5 6 1 7 3 2
5 6 7 2 1 4 3
6 7 4 3 2 1 5
7 4 5 6 3 2 1
""")

L7_PLAIN = _t("l7-plain", """
1 2 3 4 5 6 7
2 3 1 5 4 7 6
3 1 4 6 7 2 5
4 5 6 7 2 1 3
5 4 7 2 6 3 1
6 7 2 1 3 5 4
7 6 5 3 1 4 2
""")

# A known mistranscription of plain7n has row 4 as 4 6 5 7 1 3 2, which repeats
# 6 in column 2 and cannot be a Latin square.  plain7n is the transpose of
# plain7n-t, whose fourth column is 4 5 6 7 1 3 2; that row is stored here.
PLAIN7N_BAD_ROW4 = (4, 6, 5, 7, 1, 3, 2)

PLAIN7N = _t("plain7n", """
1 2 3 4 5 6 7
2 3 4 5 6 7 1
3 4 2 6 7 1 5
4 5 6 7 1 3 2
5 6 7 1 4 2 3
6 7 1 2 3 5 4
7 1 5 3 2 4 6
""")

PLAIN7N_T = _t("plain7n-t", """
1 2 3 4 5 6 7
2 3 4 5 6 7 1
3 4 2 6 7 1 5
4 5 6 7 1 2 3
5 6 7 1 4 3 2
6 7 1 3 2 5 4
7 1 5 2 3 4 6
""")

C2 = _cyclic(2).with_name("c2")
C3 = _cyclic(3).with_name("c3")
C4 = _cyclic(4).with_name("c4")
K4 = CayleyTable(
    [[1, 2, 3, 4], [2, 1, 4, 3], [3, 4, 1, 2], [4, 3, 2, 1]],
    name="k4",
)


_ENTRIES = (
    CatalogEntry("l5", L5, "NAFIL of order 5 whose four proper subloops have order 2", {
        "profile": "NAFIL",
        "abelian": False,
        "nontrivial_subsystem_orders": [2, 2, 2, 2],
        "lagrangian_class": "NonLagrangian",
        "center": [1],
        "simple": True,
        "plain": False,
    }),
    CatalogEntry("nafil8", NAFIL8, "NAFIL of order 8 whose subloops are all groups", {
        "profile": "NAFIL",
        "abelian": False,
        "nontrivial_subsystem_orders": [2, 2, 2, 2, 2, 4, 4, 4],
        "all_subsystems_groups": True,
        "normal_subsystems": [[1, 3], [1, 2, 3, 4], [1, 3, 5, 7], [1, 3, 6, 8]],
        "coset_partitions": 6,
        "not_normal_witness": {"subset": [1, 7], "first": [2, 8, 5], "second": [8, 2, 7]},
        "simple": False,
    }),
    CatalogEntry("abelian6", ABELIAN6, "abelian NAFIL of order 6 with center of order 2", {
        "profile": "NAFIL",
        "abelian": True,
        "center": [1, 2],
        "factor_over_center": "c3",
        "central_series": [[1], [1, 2], [1, 2, 3, 4, 5, 6]],
        "simple": False,
    }),
    CatalogEntry("l9-anti", L9_ANTI, "anti-Lagrangian NAFIL of order 9", {
        "profile": "NAFIL",
        "nontrivial_subsystems": [[1, 2], [1, 3], [1, 4], [1, 8], [1, 2, 3, 4]],
        "lagrangian_class": "AntiLagrangian",
        "simple": True,
    }),
    CatalogEntry("l10", L10, "non-Lagrangian NAFIL of order 10, the direct product C2 x L5", {
        "profile": "NAFIL",
        "includes_subsystems": [[1, 2, 6, 7], [1, 2, 3, 4, 5], [1, 6]],
        "lagrangian_class": "NonLagrangian",
        "direct_product_of": ["c2", "l5"],
        "simple": False,
    }),
    CatalogEntry("l7-composite", L7_COMPOSITE, "simple composite NAFIL of order 7", {
        "profile": "NAFIL",
        "nontrivial_subsystem_order_set": [2, 3],
        "all_subsystems_groups": True,
        "simple": True,
        "plain": False,
    }),
    CatalogEntry("l7-plain", L7_PLAIN, "simple plain NAFIL of order 7", {
        "profile": "NAFIL",
        "simple": True,
        "plain": True,
    }),
    CatalogEntry("plain7n", PLAIN7N, "plain NAFIL of order 7, transpose of plain7n-t (row 4 corrected, see PLAIN7N_BAD_ROW4)", {
        "profile": "NAFIL",
        "plain": True,
        "transpose_of": "plain7n-t",
    }),
    CatalogEntry("plain7n-t", PLAIN7N_T, "plain NAFIL of order 7, transpose of plain7n", {
        "profile": "NAFIL",
        "plain": True,
    }),
    CatalogEntry("c2", C2, "cyclic group of order 2", {"profile": "group", "plain": True}),
    CatalogEntry("c3", C3, "cyclic group of order 3", {"profile": "group", "plain": True}),
    CatalogEntry("c4", C4, "cyclic group of order 4", {"profile": "group", "central_series": [[1], [1, 2, 3, 4]]}),
    CatalogEntry("k4", K4, "Klein four-group", {"profile": "group"}),
)

CATALOG: Mapping[str, CatalogEntry] = MappingProxyType({e.id: e for e in _ENTRIES})


def catalog_ids() -> tuple[str, ...]:
    return tuple(CATALOG)


def catalog_get(id: str) -> CatalogEntry:
    try:
        return CATALOG[id.lower()]
    except KeyError:
        raise UnknownId(id, CATALOG) from None


def get_table(id: str) -> CayleyTable:
    return catalog_get(id).table
