"""Exact Hopf-algebra computations for superclass functions of UT_n(q),
symmetric functions in noncommuting variables, and their graded duals,
validated by a brute-force group oracle."""

from .setpartitions import (
    Arc,
    LabeledSetPartition,
    SetComposition,
    SetPartition,
    arc_encoding,
    coarsenings,
    common_refinement,
    concat,
    concat_set_partitions,
    crossing_statistic,
    enumerate_labeled_partitions,
    refinements,
    restrict_arcs,
    straighten,
    underlying_set_partition,
    unstraighten,
)
from .cyclotomic import (
    ConductorMismatchError,
    CycRational,
    SingularMatrixError,
    invert_matrix,
    solve_linear_system,
    theta,
)
from .elements import (
    AlgebraElement,
    BasisIndex,
    TensorElement,
    UnsupportedBasisError,
    antipode,
    coproduct,
    counit,
    product,
    unit_index,
)
from .limits import BoundExceededError, DEFAULT_GROUP_BOUND, DEFAULT_TABLE_BOUND
from .superfunctions import (
    SupercharTable,
    chi_element,
    chi_to_kappa,
    filtration_membership,
    group_order,
    inner_product,
    interval_chain,
    is_linear_index,
    kappa_element,
    kappa_to_chi,
    supercharacter_degree,
    supercharacter_table,
    supercharacter_value,
)
from .ncsym import (
    ColoredIndex,
    ch,
    collect_k,
    coproduct_k,
    coproduct_m,
    coproduct_p,
    expand_k_in_colored_m,
    k_element,
    m_element,
    m_to_p,
    p_element,
    p_to_m,
    primitive_root,
    product_k,
    product_m,
    product_p,
)
from .duals import (
    M_element,
    Permutation,
    U_element,
    V_element,
    V_from_U,
    chi_star_element,
    chi_star_to_kappa_star,
    csupp,
    dual_ch,
    duality_pairing,
    duality_pairing_tensor,
    evaluate_M_element,
    evaluate_M_truncated,
    kappa_star_element,
    kappa_star_to_chi_star,
    multiply_truncated,
    product_M,
    product_U,
    u_to_v,
    v_to_u,
    z_scalar,
)
from .unitriangular import (
    ClassFunctionRaw,
    Functional,
    ProductClassFunction,
    UTElement,
    UTGroup,
    def_parts,
    enumerate_group,
    get_group,
    inf_parts,
    oracle_supercharacter_table,
    outer_product,
    product_inner_product,
    raw_inner_product,
    res_J,
    sind_J,
    superclass_of,
    trace_supercharacter,
    verify_supercharacter_axioms,
)

__version__ = "0.1.0"
