"""Exact computations in the quantized Heisenberg space algebra F_q(N):
skew normal forms, PBW rewriting, the classical Poisson limit, and explicit
representations at odd roots of unity."""
from .coeff import CycloNum, LaurentPoly, limit_bracket
from .errors import (
    ComputationError,
    DomainError,
    ParseError,
    QHeisError,
    ValidationError,
    VerificationMismatch,
)
from .expr import evaluate, parse_expression, to_text
from .ncalg import AlgebraPreset, NCElement, format_element, multiply, normal_order, omega, power
from .poisson import LeafStructure, PointData, leaf_dimension, structure_data
from .reps import dkp_check, dkp_sweep, frt_representation, torus_representation, verify_relations
from .skewnf import AlgebraSpec, CanonicalForm, SkewMatrix, build_matrix, canonical_form, degree

__version__ = "0.1.0"
