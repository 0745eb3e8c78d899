"""Exact-arithmetic toolkit for Groebner bases, higher-rank initial ideals,
tropical prime cones, Khovanskii/SAGBI bases, and Newton-Okounkov polytopes."""

from .poly import (ExponentOverflow, ParseError, Polynomial,
                   VariableMismatch, parse_polynomial)
from .orders import (Composite, DEGREVLEX, LEX, DegRevLex, Lex,
                     MonomialOrder, OrderNotAdmissible, compare,
                     weight_compare, weight_of_monomial)
from .groebner import (CapExceeded, Caps, GroebnerContext, Ideal, buchberger,
                       dehomogenize, homogenize, ideal_equal,
                       ideal_membership, normal_form, saturate,
                       standard_monomials)
from .initial import (ConeDescription, PreconditionError, equivalence_cone,
                      groebner_region_test, initial_form, initial_ideal,
                      iterated_initial_ideal, lineality_space,
                      rank1_representative)
from .tropical import (PrimeConeReport, contains_monomial, contraction,
                       in_tropical_variety, in_tropical_variety_rank_r,
                       verify_prime_cone)
from .primality import PrimalityResult, is_prime_desk
from .valuation import (AxiomReport, CompletionResult, SemigroupView,
                        SubductionTrace, ValuationContext, evaluate,
                        is_valuation, khovanskii_complete, khovanskii_test,
                        one_dim_leaves_check, prime_cone_from_valuation,
                        quasivaluation_axioms_check, subduction, toric_ideal,
                        value_semigroup, vector_space_subduction)
from .polyhedra import (RationalPolyhedron, compactification_body,
                        compactification_semigroup_contains,
                        euclidean_volume, hat_polytope, hilbert_function,
                        newton_okounkov_body, newton_okounkov_cone,
                        normalized_volume, rees_graded_dims, triangulate)

__all__ = [name for name in dir() if not name.startswith("_")]
