"""Categories of partial equivalence relations over a decidable logic
fiber: finite limits, image factorization, quotients, constant objects,
assemblies, separated reflection, tracking relations, and exponentials."""

from .audits import (
    assemblies_audit,
    category_laws_audit,
    delta_audit,
    exactness_audit,
    factorization_audit,
    fiber_reconstruction_audit,
    limits_audit,
    morphism_pool,
    subobject_audit,
    test_objects,
)
from .constructions import (
    assembly,
    closure_j,
    counit_audit,
    delta_object,
    delta_of_map,
    diagonal_closure,
    gamma_pullback_audit,
    global_element,
    global_sections,
    is_separated,
    notnot_audit,
    pi_object,
    separated_reflection,
)
from .exponentials import (
    SIZE_GUARD,
    TrackingRelation,
    exponential,
    exponential_audit,
    from_tracking,
    is_tracking_for,
    prime_normalize,
    total_relations_finset,
    tracked_morphisms,
    tracking,
    transpose_of,
)
from .per import (
    PerMorphism,
    PerObject,
    compose,
    diagonal_fill_in,
    enumerate_morphisms,
    equalizer,
    existence,
    factorize,
    hom_classes,
    identity,
    is_cover,
    is_iso,
    is_mono,
    is_morphism,
    kernel_pair_predicate,
    morphism_equal,
    pair_into_product,
    product,
    product_morphism,
    pullback,
    quotient,
    strict_check,
    strictify,
    subobject_from_strict,
    terminal,
    to_terminal,
    validate_morphism,
    validate_object,
)
