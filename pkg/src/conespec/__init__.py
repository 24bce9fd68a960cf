"""Exact Laplacian spectra and eigenvalue estimates on spherical domains.

The spectrum of the Laplace-Beltrami operator on a join-product domain
of the sphere is encoded in a closed-form generating function
M(z) = sum m_nu z^nu. This package builds those closed forms, expands
them into (degree, multiplicity) series, derives Weyl-type asymptotics,
and estimates eigenvalues of distorted domains by scaling a reference
spectrum. A verification layer ties the closed forms back to explicit
cone heat kernels.
"""

from .domain import (
    DIRICHLET,
    NEUMANN,
    AtomS0,
    AtomT0,
    BoundaryCondition,
    DomainCapabilities,
    DomainExpr,
    Join,
    Named,
    ambient_dim,
    capabilities,
    expand_named,
    factors,
    join,
    parse_domain,
    print_domain,
)
from .errors import (
    ConespecError,
    CutoffExceeded,
    DimensionError,
    DimensionMismatch,
    DomainError,
    InsufficientModes,
    NegativeDiscriminant,
    NonIntegerMultiplicity,
    NotPositiveDefinite,
    ParseError,
    QuadratureFailure,
    RootNotBracketed,
    ToleranceNotMet,
    UnsupportedAtom,
    UnsupportedDomain,
)
from .geometry import (
    DomainGeometry,
    HeatCoeffs,
    ScalingInputs,
    cap_geometry,
    catalog_geometry,
    general_t_size_fraction,
    heat_coeffs,
    regular_t_boundary_size,
    regular_t_recursion_residual,
    regular_t_size,
    regular_t_small_rho_residual,
    scaling_inputs,
    size_fraction,
    sphere_size,
    weyl_coeffs_geometric,
)
from .heatkernel import (
    ExplicitKernel,
    TruncationControl,
    arc_trace_identity_residual,
    kernel_eval,
    mhk_identity_residual,
    mzf_numeric_residual,
    poisson_kernel,
)
from .mfun import (
    AsymptoticCoeffs,
    ClosedFormM,
    SpectralSeries,
    asymptotics_from_form,
    atomic_m,
    b2_numeric_check,
    counting_function,
    dirichlet_neumann_pairing_residual,
    domain_m,
    expand_series,
    functional_equation_residual,
    join_m,
    make_form,
    weyl_asymptotic,
)
from .scaling import (
    EstimateReport,
    LinearScaling,
    QuadraticScaling,
    estimate_linear,
    estimate_neumann,
    estimate_pair,
    estimate_quadratic,
    flat_limit_linear,
    flat_limit_quadratic,
    flat_reference_estimate,
    lambda_of_nu,
    linear_params,
    quadratic_params,
)
from .special import (
    QuadratureRule,
    adaptive_integrate,
    bessel_i,
    erfc_fn,
    gamma_fn,
    gauss_hermite,
    gauss_legendre,
    integrate,
    integrate_sequence,
    log_gamma_fn,
    quadrature,
)

__version__ = "0.1.0"
