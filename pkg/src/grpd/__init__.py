"""Finite groupoids with an involution, their homotopy fixed points, and the
machinery around them: nonabelian cocycles, twisted conjugation, filtered
colimits, and presheaves over finite sites.

Everything is fully tabulated, so every claimed property is checked by
enumeration rather than trusted.
"""

from .core import (
    FiniteGroupoid,
    GroupoidMap,
    InvariantViolation,
    NotFreeError,
    NotNormalError,
    QuotientComparison,
    automorphism_group,
    build_action_groupoid,
    build_bg,
    build_eg,
    components,
    discrete_groupoid,
    disjoint_union,
    disjoint_union_map,
    empty_groupoid,
    groupoid_cardinality,
    identity_map,
    is_fibration,
    is_weak_equivalence,
    product,
    quotient_comparison,
    relabel,
    terminal_groupoid,
    validate_functor,
    validate_groupoid,
)
from .groups import (
    FiniteGroup,
    GroupAction,
    conjugation_automorphism,
    cyclic_group,
    dihedral_group,
    direct_product,
    from_permutations,
    gl2_f2,
    gl2_f2_upper_triangular,
    identity_automorphism,
    induced_subgroup,
    inversion_automorphism,
    is_automorphism,
    is_involutive_automorphism,
    is_normal,
    is_subgroup,
    left_multiplication_action,
    orbits_under,
    quotient_group,
    subgroup_closure,
    symmetric_group,
    trivial_group,
    trivial_point_action,
    validate_action,
    validate_group,
)
from .gamma import (
    EquivariantMap,
    GammaAction,
    HfpObject,
    HomotopyFixedPoints,
    NotEquivariantError,
    SwapComparison,
    equivariance_witness,
    gamma_product,
    gamma_relabel,
    gamma_union,
    hfp,
    hfp_map,
    iota,
    set_as_groupoid,
    swap_action,
    swap_comparison,
    trivial_action,
    validate_equivariant,
    validate_gamma_action,
)
from .cohomology import (
    BgDecomposition,
    CocycleClass,
    GroupGammaAction,
    Skeleton,
    SkeletonPart,
    bg_gamma_action,
    bg_hfp_decomposition,
    h1,
    skeletonize,
    validate_group_gamma_action,
    z1,
)
from .twisted import (
    InvolutiveGroupData,
    ParameterFibration,
    TwistedCocycleSet,
    TwistedOrbit,
    XYCorrespondence,
    build_double_coset_groupoid,
    parameter_fibration,
    twisted_orbits,
    validate_involutive_data,
    xy_isomorphism,
    z1_theta,
)
from .colimit import (
    ColimitComparison,
    ColimitResult,
    FilteredDiagram,
    FiniteCategory,
    GroupoidColimit,
    NotFilteredError,
    colimit,
    colimit_groupoids,
    filtered_witness,
    hfp_colimit_comparison,
    validate_category,
    validate_diagram,
)
from .presheaf import (
    ActionPresheaf,
    FiniteSite,
    GroupPresheaf,
    GroupoidPresheaf,
    PresheafGammaAction,
    PresheafHfp,
    PresheafMap,
    Stalk,
    bg_action_presheaf,
    build_presheaf_action_groupoid,
    constant_presheaf,
    diagram_at_point,
    eg_action_presheaf,
    is_local_fib,
    is_local_weq,
    is_sectionwise_fib,
    is_sectionwise_weq,
    point_filter_category,
    presheaf_hfp,
    sierpinski_site,
    site_from_open_sets,
    stalk,
    stalk_commutation_check,
    stalk_gamma_action,
    stalk_map,
    terminal_presheaf,
    validate_presheaf,
    validate_presheaf_gamma_action,
    validate_presheaf_map,
    validate_site,
)
from .suites import SUITE_NAMES, SuiteResult, run_all, run_suite

__version__ = "0.1.0"
