"""Adjoint invariants of k-tuples of twists in se(3), via dual numbers."""

from .dual import DualMatrix3, DualScalar, DualVector3, dual_cross, dual_det3, dual_dot, dual_mul, is_dual_orthogonal
from .invariants import InvariantSignature, equivalent, killing_form, klein_form, signature, syzygy_residuals
from .normal_form import Branch, NormalFormResult, normalize_triple, params_to_twists
from .polarize import DualPoly, dual_product, dualize, so3_generators, verify_syzygy_symbolic
from .poly import MultiPoly
from .reconstruction import (
    decompose_even_odd,
    monomials_from_invariants,
    verify_even_generation,
    verify_odd_generation,
)
from .screw import (
    INFINITE,
    EuclideanMotion,
    Twist,
    adjoint_apply,
    compose,
    hat,
    inverse,
    lie_bracket,
    phi,
    phi_inverse,
    pitch,
    random_motion,
    screw_axis,
    vee,
)

__all__ = [
    "DualMatrix3",
    "DualScalar",
    "DualVector3",
    "dual_cross",
    "dual_det3",
    "dual_dot",
    "dual_mul",
    "is_dual_orthogonal",
    "InvariantSignature",
    "equivalent",
    "killing_form",
    "klein_form",
    "signature",
    "syzygy_residuals",
    "Branch",
    "NormalFormResult",
    "normalize_triple",
    "params_to_twists",
    "DualPoly",
    "dual_product",
    "dualize",
    "so3_generators",
    "verify_syzygy_symbolic",
    "MultiPoly",
    "decompose_even_odd",
    "monomials_from_invariants",
    "verify_even_generation",
    "verify_odd_generation",
    "INFINITE",
    "EuclideanMotion",
    "Twist",
    "adjoint_apply",
    "compose",
    "hat",
    "inverse",
    "lie_bracket",
    "phi",
    "phi_inverse",
    "pitch",
    "random_motion",
    "screw_axis",
    "vee",
]

__version__ = "0.1.0"
