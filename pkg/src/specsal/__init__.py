"""Spectrum scale-space saliency: suppress repeated image patterns by
smoothing the Fourier amplitude spectrum at dyadic scales, producing a
coarse-to-fine sequence of saliency maps, plus 1-D demonstrations, baseline
detectors and fixation ROC evaluation."""

from .spectral import (
    ComplexSpectrum,
    FrequencyKernel,
    ValidationError,
    forward_transform,
    gaussian_frequency_kernel,
    identity_kernel,
    inverse_transform,
    sharpness,
    smooth_amplitude,
)
from .scale_space import (
    SaliencyMap,
    SaliencySequence,
    SpectrumScaleSpace,
    build_scale_space,
    enhance_saliency,
    num_scales,
    reconstruct_saliency,
    saliency_sequence,
)
from .baselines import ft_saliency, pft_saliency, sr_saliency

__all__ = [
    "ComplexSpectrum",
    "FrequencyKernel",
    "SaliencyMap",
    "SaliencySequence",
    "SpectrumScaleSpace",
    "ValidationError",
    "build_scale_space",
    "enhance_saliency",
    "forward_transform",
    "ft_saliency",
    "gaussian_frequency_kernel",
    "identity_kernel",
    "inverse_transform",
    "num_scales",
    "pft_saliency",
    "reconstruct_saliency",
    "saliency_sequence",
    "sharpness",
    "smooth_amplitude",
    "sr_saliency",
]
