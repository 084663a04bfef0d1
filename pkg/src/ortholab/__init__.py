"""Rogers dilogarithm identities for ideal polygons.

Evaluation of the Rogers L-function, orthospectra of ideal polygons and
their finite identities, the intersection-length densities and their
masses, and a seeded Monte Carlo reproduction of the length measure.
"""
from ._backend import BACKEND
from .config import DEFAULTS, Tolerances
from .density import (
    DensityProfile,
    asymptotic_r,
    asymptotic_ratio_limit,
    big_g,
    big_g_quadrature,
    cusp_density,
    inner_integral_I,
    j_combination,
    predicted_density,
    predicted_total_mass,
    rho,
    rho_mass,
    total_mass_F,
    volume_C,
)
from .dilog import li2, polylog, rogers_l, rogers_l_infinity
from .errors import (
    BranchGapError,
    ConsistencyError,
    DegenerateConfigurationError,
    DomainError,
    OrtholabError,
    PoleError,
    QuadratureError,
)
from .hypgeom import (
    CriticalPair,
    QuadChart,
    a_from_length,
    b_from_length,
    critical_points,
    cross_ratio,
    f_rational,
    g_inverse,
    intersection_length,
    length_from_a,
    length_from_b,
    triangle_length_l1,
    triangle_length_l2,
)
from .montecarlo import (
    EmpiricalMeasure,
    chord_length,
    mc_class_mass,
    mc_polygon_measure,
    rng_stream,
)
from .polygon import (
    IdealPolygon,
    OrthoGeodesic,
    OrthoSpectrum,
    general_identity_residual,
    identity_defect,
    lewin_partial_sum,
    orthospectrum,
    pentagon_cross_ratios,
    regular_polygon,
    regular_spectrum,
)

__version__ = "0.1.0"
