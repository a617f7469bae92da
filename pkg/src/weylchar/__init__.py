"""Exact arithmetic in Weyl algebras A_n and symplectic Poisson algebras PS_n over F_p."""

from .growth import GKFit, GrowthTable, gk_fit, membership, span_iterate
from .morphism import (
    NAMED_MAPS,
    POISSON,
    WEYL,
    Endomorphism,
    InvalidEndomorphism,
    KernelReport,
    Violation,
    a2_counterexample,
    apply,
    check_relations,
    def_value,
    identity_map,
    is_valid,
    kernel_basis,
    remark2_map,
    theorem3_chain,
    theorem3_map,
    triangular_map,
)
from .parse import Context, ParseError, parse, parse_element
from .poisson import PoissonElement, bracket, frobenius_decompose, partial
from .rectify import CapExceeded, DependenceWitness, find_annihilator, homogeneous_dependent, rectify_pair
from .scalar import FpScalar, Prime
from .structure import BoundExceeded, CentralDecomposition, central_decompose, express_over_center, is_central
from .weyl import (
    AlgebraSignature,
    PolyElement,
    TermLimitExceeded,
    WeylElement,
    ad_power,
    commutator,
    format_element,
    leading_form,
    normalize,
    power,
    total_degree,
)

__version__ = "0.1.0"
