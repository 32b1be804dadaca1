"""Exhaustive verification of maximal-curve constructions over F_{q^2}.

The package certifies, by exact exhaustive computation: point counts of plane
curves against the Weil upper bound, the split set S on Hurwitz curves with
its cardinality identities, the subgroup index d_S on the genus-1 model, and
the unramified degree-d Fermat covering in which every point of S splits
completely.
"""

from .coverings import (
    CoveringReport,
    TheoremReport,
    psi,
    psi_fiber,
    tau,
    verify_corollary_instance,
    verify_splitting,
    verify_theorem_instance,
)
from .ellgroup import Subgroup, check_torsion, index_dS, phi, subgroup_closure
from .families import (
    BadCharacteristic,
    DivisibilityViolated,
    HurwitzParams,
    fermat,
    hermitian,
    hurwitz,
    line_L,
    weierstrass_model,
)
from .ffield import (
    FieldCtx,
    FieldElement,
    dth_roots,
    in_subfield,
    make_field,
    roots_of_unity,
)
from .plane import (
    CountReport,
    PlaneCurve,
    ProjectivePoint,
    corollary_threshold,
    curve_from_terms,
    enumerate_points,
    is_maximal,
    is_smooth_at,
    lemma_threshold,
    voloch_bound_trivial,
    weil_upper_bound,
)
from .special_set import SplitSet, build_S, count_t, pi_fiber, pi_project, verify_claim1

__version__ = "0.1.0"

__all__ = [
    "BadCharacteristic",
    "CountReport",
    "CoveringReport",
    "DivisibilityViolated",
    "FieldCtx",
    "FieldElement",
    "HurwitzParams",
    "PlaneCurve",
    "ProjectivePoint",
    "SplitSet",
    "Subgroup",
    "TheoremReport",
    "build_S",
    "check_torsion",
    "corollary_threshold",
    "count_t",
    "curve_from_terms",
    "dth_roots",
    "enumerate_points",
    "fermat",
    "hermitian",
    "hurwitz",
    "in_subfield",
    "index_dS",
    "is_maximal",
    "is_smooth_at",
    "lemma_threshold",
    "line_L",
    "make_field",
    "phi",
    "pi_fiber",
    "pi_project",
    "psi",
    "psi_fiber",
    "roots_of_unity",
    "subgroup_closure",
    "tau",
    "verify_claim1",
    "verify_corollary_instance",
    "verify_splitting",
    "verify_theorem_instance",
    "voloch_bound_trivial",
    "weierstrass_model",
    "weil_upper_bound",
]
