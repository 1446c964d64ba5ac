"""Quantification monads on uniform structures, predicate logic over their
powerset completions, and the audits that certify them."""

from .connectives import (
    ImpliesData,
    UAlgebraData,
    audit_source_implies,
    audit_u_algebra,
    forall_along,
    implies_on,
    lifted_meet_all,
    semilattice_implies,
    semilattice_u_algebra,
)
from .dpred import (
    SpanPredicate,
    bottom_dpredicate,
    d_meet_data,
    dexists,
    dpredicate,
    powerset_to_span,
    span_to_powerset,
    top_dpredicate,
    values_of,
    y_image,
)
from .fiber import (
    DFiber,
    FiberCapabilityError,
    Heyting,
    HeytingFiber,
    HPred,
    LogicFiber,
    boolean_heyting,
    chain_heyting,
    diamond_heyting,
    fiber_equiv,
)
from .power import (
    PowerUOrd,
    algebra_audit,
    bracket,
    bracket_holds,
    build_D,
    build_Dplus,
    build_U,
    cobracket_holds,
    d_covered,
    d_of_map,
    eta_map,
    kz_unit_holds_for,
    monad_audit,
    mu_fun,
    mu_map,
    powerset_finset,
)
from .primes import PrimeResult, is_prime, replay_counterexample, support_span
from .sections import (
    UniformFrame,
    d_meet,
    delta_subset,
    frame_audit,
    frame_of_D,
    gamma,
    gamma_d,
    geometric_inclusion_audit,
    internal_frobenius_rectangle,
    pi_support,
    rectangle_audit,
    total_connectedness_audit,
    y_embed,
)
