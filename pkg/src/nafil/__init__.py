"""Finite loops and quasigroups given by Cayley tables.

The public API is re-exported here; see the submodules for details.
"""

from __future__ import annotations

from .catalog import CATALOG, CatalogEntry, catalog_get, catalog_ids, get_table
from .errors import *  # noqa: F401,F403
from .products import (
    CosetDecomposition,
    MultiPhiSystem,
    PhiType,
    block_product,
    classify_phi_type,
    decompose,
    direct_product,
    format_mphi,
    parse_mphi,
    recompose,
    validate_generators,
)
from .quotient import (
    CosetPartitionResult,
    FactorSystem,
    NucleusReport,
    are_isomorphic,
    ascending_central_series,
    center,
    coset,
    coset_partition,
    factor_system,
    is_homomorphism,
    is_normal,
    is_plain,
    is_simple,
    normal_subsystems,
    nuclei,
)
from .report import AnalysisReport, analyze, load_table
from .search import CensusResult, SearchSpec, canonical_form, census, count_reduced, enumerate_loops
from .subsystems import (
    LagrangianClass,
    Subsystem,
    SubsystemReport,
    closure,
    is_subsystem,
    lagrangian_class,
    subsystems,
)
from .table import (
    AxiomProfile,
    CayleyTable,
    ElementIdentityInfo,
    InverseInfo,
    axiom_profile,
    format_table,
    identity_info,
    inverse_info,
    is_group,
    is_invertible_loop,
    is_loop,
    is_nafil,
    parse_table,
)

__version__ = "0.1.0"
