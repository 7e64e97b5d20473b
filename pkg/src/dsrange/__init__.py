"""Numerical ranges and Berezin transforms of weighted composition operators
f -> psi * (f o phi) on the weighted Dirichlet spaces D_s, 0 < s < 1.

Modules: special (Gamma ratios, weights), series (truncated power series),
space (inner products, kernels), operators (symbols and matrices), numrange
(rotation sweep, predicted regions), berezin (closed-form transforms, grids,
convexity probe), verify (check harness), config and cli.
"""
from .special import DomainError, SpaceParam, log_gamma, gamma_ratio, monomial_norm_sq, monomial_weights
from .series import PowerSeries
from .space import SpaceElement, inner_product, norm, kernel_element, basis_element
from .operators import (ConstantMap, Dilation, IdentityMap, Mobius, NormalizedKernel, One,
                        OperatorMatrix, OperatorSpec, SeriesMap, SeriesWeight, build_matrix,
                        compression, weyl_operator, xgamma_operator)
from .numrange import BoundaryCurve, boundary_sweep, contains_point, numerical_radius
from .berezin import BerezinSample, berezin_grid, berezin_transform, convexity_probe, weyl_berezin
from .verify import Report, TheoremCheck, VerifyConfig, run_all

__version__ = "0.1.0"
