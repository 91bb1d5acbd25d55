"""Exact computations with finite-rank associative algebras given by
structure constants over concrete base rings: degrees, geometric degrees,
standard involutions, exceptional splittings, and the rank-3 classification
with its census oracles."""

from .algebra import (
    RingHom,
    StructureAlgebra,
    algebra_from_json,
    base_change,
    hom_identity,
    hom_poly_eval,
    hom_Z_to_Fp,
    hom_Z_to_Q,
    hom_Z_to_Zmod,
    hom_Zmod_reduce,
    transport_table,
    validate,
)
from .degree import (
    DegreeCertificate,
    UniversalElement,
    algebra_degree,
    algebra_degree_with_method,
    element_degree,
    element_degree_local,
    geometric_degree,
    geometric_degree_relation,
    restriction_of_homogeneity_check,
)
from .errors import (
    AlgebraFormatError,
    InternalCheckError,
    LowRankError,
    NotAssociativeError,
    NoUnitError,
    SearchSpaceExceededError,
    UnsupportedRingError,
)
from .exceptional import (
    ExceptionalData,
    exceptional_charpoly_identities,
    make_exceptional,
    quadratic_roots,
    recognize_exceptional,
)
from .involution import (
    CommutativeClassification,
    DegreeTwoEquivalenceReport,
    StandardInvolution,
    check_uniqueness,
    commutative_classification,
    conjugate,
    degree_two_equivalence_report,
    find_standard_involution,
    involution_obstruction,
    polarization_identity_holds,
    reduced_norm,
    reduced_trace,
)
from .linalg import LinearSystem, kernel, kernel_is_trivial, solve, solve_local_at
from .polynomials import MonicPolynomial
from .rank3 import (
    CensusResult,
    GoodBasisForm,
    OrbitInvariant,
    census,
    census_c_family,
    iso_test,
    jacobson_element,
    nc_algebra,
    normalize_rank3,
    orbit_invariant,
    right_regular_embedding,
)
from .rings import (
    QQ,
    ZZ,
    PolynomialRing,
    PrimeField,
    ResidueRing,
    Ring,
    nonzerodivisor_witness,
    ring_from_descriptor,
)

__version__ = "0.1.0"
