"""Exact stratification combinatorics and component counts for Hilbert-Blumenthal
moduli spaces with Iwahori level at an unramified prime p.
"""

from .alpha import (
    AlphaType,
    RamificationProfile,
    SlopeSequence,
    enumerate_types,
    is_generic,
    is_supersingular,
    lambda_max,
    preceq,
    size,
    slope_of_stratum,
    weight_w,
    weight_w_prime,
)
from .counting import (
    CountReport,
    build_count_report,
    mass_factor_c,
    slope_component_table,
    ss_stratum_component_count,
    superspecial_point_count,
    total_components,
)
from .dieudonne import (
    GradedSemilinearModule,
    ProjectivePointTuple,
    alpha_type_of,
    equations_check,
    standard_module,
    submodule_check,
)
from .errors import (
    BoundExceeded,
    FieldTooLarge,
    HBStrataError,
    InconsistentCounts,
    NonIntegralCount,
    ProfileMismatch,
    RamifiedPrime,
)
from .finite_field import FieldElement, FiniteField, get_field
from .quadratic import ClassFactor, class_factor, profile_of, sl2_order_residue_ring, split_type, zeta_minus_one
from .strata import (
    Cell,
    CellProduct,
    MonomialEquationSet,
    count_points_ss_locus,
    enumerate_components,
    equations_for,
    max_dimension,
    satisfies_identically,
    ss_frobenius_equations,
    top_dim_count,
)

__version__ = "0.1.0"
