"""Exact arithmetic for abelian covers of the sphere.

The package enumerates the non-special invariant divisors of a branched
abelian cover, evaluates the generalized Dedekind sums that govern their
quadrilateral exponents, and assembles integral Thomae exponent tables.
Everything runs over exact rationals; the only floating point in the
library is the high precision root-of-unity oracle used to cross-check
the closed forms.
"""

from .cover import (BranchPoint, BranchSite, CoverInvariants, CoverSpec,
                    differential_basis_descriptor, validate)
from .dedekind import (PhiKey, classical_dedekind_sum, integrality_class,
                       phi_exact, phi_numeric_oracle)
from .divisors import (DEFAULT_NODE_CAP, HalfFormExponents, InvariantDivisor,
                       chi_action, degree, enumerate_nonspecial,
                       half_form_exponents, is_nonspecial, make_divisor,
                       negation_N, orbit, support_p)
from .errors import (AbelcoverError, ConsistencyError, DisconnectedCoverError,
                     DomainError, InvalidCoverError, MalformedDataError,
                     NoSolutionError, ParseError, ResourceCapError)
from .exponents import (ExponentTable, PairKey, exponent_table, gamma,
                        gamma_closed_form, q_delta, q_e, q_e_closed_form,
                        relabel_equivalent, thomae_exponent)
from .group_core import (AbelianGroup, Character, GroupElement,
                         IntersectionData, cyclic_subgroup, dual_group,
                         element_order, intersection_data, pairing_u)
from .polykernel import (KernelSolution, UniPoly, build_pchichi,
                         solve_polexist)

__version__ = "0.1.0"

__all__ = [
    "AbelianGroup", "GroupElement", "Character", "IntersectionData",
    "element_order", "pairing_u", "dual_group", "cyclic_subgroup",
    "intersection_data",
    "BranchPoint", "BranchSite", "CoverSpec", "CoverInvariants",
    "validate", "differential_basis_descriptor",
    "PhiKey", "phi_exact", "phi_numeric_oracle", "classical_dedekind_sum",
    "integrality_class",
    "InvariantDivisor", "HalfFormExponents", "DEFAULT_NODE_CAP",
    "make_divisor", "degree", "is_nonspecial", "enumerate_nonspecial",
    "chi_action",
    "negation_N", "orbit", "support_p", "half_form_exponents",
    "PairKey", "ExponentTable", "q_delta", "q_e", "q_e_closed_form",
    "gamma", "gamma_closed_form", "thomae_exponent", "exponent_table",
    "relabel_equivalent",
    "UniPoly", "KernelSolution", "solve_polexist", "build_pchichi",
    "AbelcoverError", "MalformedDataError", "DomainError",
    "InvalidCoverError", "DisconnectedCoverError", "ConsistencyError",
    "ResourceCapError", "NoSolutionError", "ParseError",
    "__version__",
]
