"""Exact computation engine for wavelet analysis over the p-adic field.

Everything is reduced to finite exact sums: field elements live in Z[1/p],
coefficients in cyclotomic fields of p-power conductor with sqrt(q)
adjoined, and step functions carry finitely many ball indicators.  On top of
that sit the exact Fourier transform, the affine group with its Haar
calculus, the continuous wavelet transform, tight-frame construction and
verification, and Besov/coorbit norm computation.
"""

from .affine import (GroupElement, RepSystem, SpecialSubgroup, fixed_subgroup,
                     gidentity, ginv, gmul, haar_box, in_same_left_coset,
                     is_subgroup_box, modular, rep_decomposition, special_reps)
from .cwt import (SampledTransform, SupportBounds, admissibility,
                  isometry_check, sample_transform, support_bounds,
                  transform_point)
from .errors import (BadParamError, BadPhaseError, BadWindowError,
                     ConductorTooLargeError, DivergentError, NotAUnitError,
                     NotS0Error, NotTightError, UltrawaveError,
                     WindowNotClosedError, WindowTooSmallError,
                     ZeroDilationError, ZeroFunctionError)
from .fourier import fourier, inverse_fourier
from .frames import (FrameSpec, FrameVerification, analyze_coeffs,
                     benedetto_onb, build_frame, fourier_coset_frame,
                     frame_constant, kernel_apply, kernel_idempotent_check,
                     kernel_matrix, reconstruct, synthesize)
from .padic import (INF, PAdicNumber, canonical_rep, char_phase, coset_reps,
                    qpow, unit_inverse_mod, unit_reps, valuation)
from .scalars import CycloScalar, ScaledScalar, abs_sq, root_of_unity, to_float
from .spaces import (BesovResult, Weight, analyzing_wavelet, besov_norm,
                     coefficient_space_norm, control_weight_eval, coorbit_norm,
                     mixed_norm, mixed_norm_sq_exact, shell_kernel)
from .stepfn import Ball, StepFunction, canonicalize, pi_apply

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
