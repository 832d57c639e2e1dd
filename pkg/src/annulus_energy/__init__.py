"""Energies of radial and quasiradial homeomorphisms between spherical annuli in R^n."""

from .errors import ConfigError, DomainError, NonConvergence
from .geometry import (
    Annulus,
    PointAtInfinity,
    ZonalPoint,
    conformal_gradient_norm_sq,
    conformal_map_point,
    conformal_map_point_stereographic,
    gamma,
    meridian_dilation,
    stereographic_inverse,
    stereographic_project,
    unit_sphere_measure,
    zonal_measure_ratio,
)
from .quadrature import (
    IntegralResult,
    QuadratureConfig,
    integrate_interval,
    integrate_semi_axis,
    integrate_zonal,
)
from .profiles import (
    DECREASING,
    INCREASING,
    BoundaryProfile,
    InvertedProfile,
    RadialProfile,
    TabulatedProfile,
    alpha,
    holder_lower_bound,
    invert_profile,
    load_tabulated_profile,
    log_derivative,
    make_boundary_profile,
    make_tabulated_profile,
    save_tabulated_profile,
)
from .energy import (
    EnergyReport,
    SeparableMap,
    combined_energy_separable,
    combined_lower_bound,
    dirichlet_infimum,
    limit_energy,
    quasiradial_energy,
    quasiradial_energy_zonal,
    radial_energy,
    sphere_conformal_energy,
)
from .euler_lagrange import (
    ELProfile,
    ELSolution,
    build_radial_minimizer,
    el_residual,
    minimal_radial_energy,
    psi,
    solve_tau_star,
    solve_w,
)
from .verification import (
    SuiteConfig,
    SuiteReport,
    check_power_mean_inequality,
    gap_report,
    run_suite,
    sweep_lambda,
)

__version__ = "0.1.0"
