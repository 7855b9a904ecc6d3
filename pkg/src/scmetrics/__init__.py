"""Spectral sliced Cramér and sliced Wasserstein distances on sampled fields.

The package computes discrete Cramér distances through Fourier-domain
Volterra transforms (1D and sliced 2D via polar nonuniform DFTs), quantile
Wasserstein baselines, deformation-robustness bound calculators, and
noise-scaling experiment drivers with a reproducible CLI.
"""

from .baselines import (
    DiscreteCDF,
    cdf_from_field,
    sliced_wasserstein_2d,
    sliced_wasserstein_many,
    w1_via_cdf,
    wasserstein_1d,
)
from .cramer import (
    MeanMismatchWarning,
    VolterraSpectrum1D,
    discrete_cramer_1d,
    discrete_sliced_cramer_2d,
    discrete_volterra_norm_1d,
    oracle_volterra_norm,
    per_angle_volterra_norms_2d,
    sliced_volterra_norm_2d,
    volterra_spectrum_1d,
)
from .geometry import (
    AffineMap,
    Deformation,
    Dilation,
    DirectionSet,
    Rotation,
    Translation,
    bound_dilation,
    bound_general,
    bound_monotone_1d,
    bound_rotation,
    bound_translation,
    convolution_factor,
    cosine_pmean,
    directional_lower_factor,
    displacement_along,
    displacement_sup,
    mean_displacement,
    mean_mixed_norm,
    parse_deformation,
    push_forward_grid,
    push_forward_mixture,
    uniform_directions,
)
from .grids import (
    Field1D,
    Field2D,
    GaussianMixtureSpec,
    Grid1D,
    Grid2D,
    convolve2d,
    field_to_csv,
    lebesgue_distance,
    lebesgue_norm,
    load_field,
    resample_bilinear,
    riemann_integral,
    sample_mixture,
    save_field,
)
from .noise import (
    NoiseModel,
    ScalingResult,
    ScalingRow,
    fit_loglog_slope,
    noise_norm_study,
    sample_noise,
    signal_noise_study,
)
from .phantoms import lattice_mixture, source_scene, target_scene
from .spectral import (
    PolarSpectrum,
    Spectrum1D,
    coefficients_1d,
    default_angles,
    evaluate_trig_poly,
    polar_coefficients_direct,
    polar_coefficients_fast,
    radon_projection,
)

__version__ = "0.1.0"
