"""Axial monogenic function calculus.

Clifford-algebra arithmetic, holomorphic jets, the forward transform from
holomorphic functions to axial monogenic fields, and its integral
inversion on rectangles, with closed-form reference fields and a
finite-difference verification harness.
"""

from .clifford import Multivector, Paravector
from .errors import NumericalError, OdeError, QuadratureError
from .forward import FueterConfig, fueter_fields, fueter_map, fueter_profile, laplacian_oracle
from .inverse import (
    AxialFunction,
    FueterPrimitive,
    OdeConfig,
    Rectangle,
    compute_KN,
    integral_I,
    invert,
    primitive_eval,
    solve_alpha_beta,
)
from .jets import HolomorphicFn, Jet, jet_combine, jet_elementary, radial_derivatives
from .oracles import (
    SphereQuadrature,
    axial_field,
    cauchy_kernel,
    example1_oracle,
    example2_oracle,
    sphere_cauchy_integral,
    unit_sphere_area,
)
from .polynomials import MonogenicPolynomial, builtin_pk
from .quadrature import QuadratureConfig, integrate
from .radial import (
    RadialField,
    antiderivative,
    coeff_a,
    coeff_row,
    double_factorial,
    nested_antiderivative_oracle,
    radial_op,
)
from .verify import (
    GridSpec,
    ResidualReport,
    cr_residual,
    kernel_check,
    monogenicity_residual,
    polynomial_fit_residual,
    vekua_residual,
)

__version__ = "0.1.0"

__all__ = [
    "Multivector", "Paravector",
    "MonogenicPolynomial", "builtin_pk",
    "Jet", "HolomorphicFn", "jet_elementary", "jet_combine", "radial_derivatives",
    "QuadratureConfig", "integrate",
    "RadialField", "coeff_a", "coeff_row", "double_factorial",
    "radial_op", "antiderivative", "nested_antiderivative_oracle",
    "FueterConfig", "fueter_map", "fueter_profile", "fueter_fields", "laplacian_oracle",
    "Rectangle", "OdeConfig", "AxialFunction", "FueterPrimitive",
    "compute_KN", "integral_I", "solve_alpha_beta", "invert", "primitive_eval",
    "unit_sphere_area", "cauchy_kernel", "example1_oracle", "example2_oracle",
    "SphereQuadrature", "sphere_cauchy_integral", "axial_field",
    "GridSpec", "ResidualReport", "vekua_residual", "cr_residual",
    "monogenicity_residual", "kernel_check", "polynomial_fit_residual",
    "NumericalError", "QuadratureError", "OdeError",
    "__version__",
]
