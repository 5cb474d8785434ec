"""Interpolatory quadrature for oscillatory integrals int f(x) exp(i w x) dx."""

from .autoquad import AutoResult, IntegrandSpec, auto_integrate, to_reference
from .ef import EFConvergenceError, EFRule, ef_quadrature, ef_residual, solve_ef
from .fcc import ChebyshevExpansion, build_correction, cheb_interpolate, fcc_quadrature
from .filon import ComplexNodeSet, Integrand, analytic, closed_form_Q2FC, filon_rule, lagrange_coeffs
from .gauss import GaussRule, gauss_oscillatory, legendre_rule
from .moments import cheb_moments, power_moments
from .nodes import SShapeParams, nodes_FA, nodes_FC, nodes_FCA, nodes_FCC_C2, s_shape

__version__ = "0.1.0"
