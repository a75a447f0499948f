"""Quadric Surface Intersection (QSI) key exchange.

A research implementation of a key-exchange protocol whose shared secret is
the isomorphism invariant of the genus-1 curve cut out by two secretly
embedded quadric surfaces, together with the finite-field linear algebra,
embedding machinery, polynomial factorization, and desk-scale cryptanalysis
tooling it rests on.
"""

from . import errors
from .analysis import (
    BruteForceResult,
    QuadricSystem,
    brute_force_search,
    degree_report,
    independent_quadric_count,
    make_planted_instance,
    quadric_system,
    surface_quadric_count,
)
from .embeddings import (
    AutomorphismKey,
    SigmaEmbedding,
    VeroneseFrame,
    companion_matrix,
    find_primitive_quartic,
    gen_automorphism_pair,
    gen_permutation_variant,
    glemb,
    glemb_genperm,
    sigma_compose,
    veronese_membership,
)
from .factor import FactorList, UnivariatePoly, biform_factor, extract_22, univ_factor
from .ff import FieldElement, is_prime, validate_modulus
from .forms import BiForm, expansion_matrix, pullback
from .jinv import BranchQuartic, branch_quartic, gl2_transport, j_invariant
from .linalg import FqMatrix, GenPermMatrix, matrix_order, random_cokernel_vector
from .protocol import (
    PublicBundle,
    ResponderMessage,
    SecretKey,
    SharedKey,
    TTPParams,
    TTPUser,
    accept,
    exponent_bound,
    hyperplane_key_bits,
    keygen_user,
    public_matrix_bits,
    respond,
    ttp_register,
    ttp_setup,
    ttp_shared,
)
from .rng import Stream

__version__ = "0.1.0"

__all__ = [
    "AutomorphismKey",
    "BiForm",
    "BranchQuartic",
    "BruteForceResult",
    "FactorList",
    "FieldElement",
    "FqMatrix",
    "GenPermMatrix",
    "PublicBundle",
    "QuadricSystem",
    "ResponderMessage",
    "SecretKey",
    "SharedKey",
    "SigmaEmbedding",
    "Stream",
    "TTPParams",
    "TTPUser",
    "UnivariatePoly",
    "VeroneseFrame",
    "accept",
    "biform_factor",
    "branch_quartic",
    "brute_force_search",
    "companion_matrix",
    "degree_report",
    "errors",
    "expansion_matrix",
    "exponent_bound",
    "extract_22",
    "find_primitive_quartic",
    "gen_automorphism_pair",
    "gen_permutation_variant",
    "gl2_transport",
    "glemb",
    "glemb_genperm",
    "hyperplane_key_bits",
    "independent_quadric_count",
    "is_prime",
    "j_invariant",
    "keygen_user",
    "make_planted_instance",
    "matrix_order",
    "public_matrix_bits",
    "pullback",
    "quadric_system",
    "random_cokernel_vector",
    "respond",
    "sigma_compose",
    "surface_quadric_count",
    "ttp_register",
    "ttp_setup",
    "ttp_shared",
    "univ_factor",
    "validate_modulus",
    "veronese_membership",
]
