"""Shared Fourier machinery: amplitude/phase decomposition, frequency-plane
Gaussian kernels, circular amplitude-spectrum smoothing and spectrum sharpness.

All smoothing on the frequency plane is circular (wrap-around), because the
DFT spectrum is periodic. The DC bin receives no special treatment.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

LOG_EPS = 1e-8
SHARPNESS_EPS = 1e-12


class ValidationError(ValueError):
    """An input violated a documented precondition."""


def validate_image(values) -> np.ndarray:
    """Check a 2-D intensity field: at least 2x2, finite, values in [0, 1].

    Returns the validated array as float64.
    """
    arr = np.asarray(values, dtype=np.float64)
    if arr.ndim != 2:
        raise ValidationError(f"expected a 2-D image, got ndim={arr.ndim}")
    if arr.shape[0] < 2 or arr.shape[1] < 2:
        raise ValidationError(f"image must be at least 2x2, got {arr.shape}")
    bad = np.argwhere(~np.isfinite(arr))
    if bad.size:
        raise ValidationError(f"non-finite value at index {tuple(int(i) for i in bad[0])}")
    if arr.min() < 0.0 or arr.max() > 1.0:
        raise ValidationError("image intensities must lie in [0, 1]")
    return arr


@dataclass
class ComplexSpectrum:
    """Amplitude and phase of an unnormalized 2-D DFT, DC bin at (0, 0).

    Phase of any zero-amplitude bin is canonically 0, so the representation
    is deterministic and round-trips exactly.
    """

    amplitude: np.ndarray
    phase: np.ndarray

    def __post_init__(self):
        self.amplitude = np.asarray(self.amplitude, dtype=np.float64)
        self.phase = np.asarray(self.phase, dtype=np.float64)
        if self.amplitude.shape != self.phase.shape:
            raise ValidationError(
                f"amplitude shape {self.amplitude.shape} != phase shape {self.phase.shape}"
            )
        if np.any(self.amplitude < 0):
            raise ValidationError("amplitude must be nonnegative")

    @property
    def height(self) -> int:
        return self.amplitude.shape[0]

    @property
    def width(self) -> int:
        return self.amplitude.shape[1]

    def to_complex(self) -> np.ndarray:
        return self.amplitude * np.exp(1j * self.phase)

    @classmethod
    def from_complex(cls, spectrum: np.ndarray) -> "ComplexSpectrum":
        amplitude = np.abs(spectrum)
        phase = np.angle(spectrum)
        phase[amplitude == 0] = 0.0
        return cls(amplitude=amplitude, phase=phase)


def forward_transform(img) -> ComplexSpectrum:
    """Unnormalized 2-D DFT of an intensity image, split into amplitude/phase."""
    arr = validate_image(img)
    return ComplexSpectrum.from_complex(np.fft.fft2(arr))


def inverse_transform(spec: ComplexSpectrum) -> np.ndarray:
    """Real part of the inverse DFT of an amplitude/phase pair.

    The result is not clamped to [0, 1]; the imaginary residue (negligible
    when the spectrum came from a real image) is discarded.
    """
    return np.fft.ifft2(spec.to_complex()).real


@dataclass
class FrequencyKernel:
    """Discretized 2-D Gaussian used to smooth amplitude spectra.

    Truncated at radius ceil(4*sigma) and renormalized, so the weights sum
    to 1 and the kernel is radially symmetric about its center.
    """

    sigma: float
    radius: int
    weights: np.ndarray = field(repr=False)
    # unnormalized 1-D profile; weights == outer(profile, profile) / sum
    profile: np.ndarray = field(repr=False)


def gaussian_frequency_kernel(k: int, t0: float = 0.5) -> FrequencyKernel:
    """Scale-k smoothing kernel with sigma = 2**(k-1) * t0.

    The continuous normalization 1/(2*pi*sigma^2) drops out: sampled weights
    are renormalized to unit sum.
    """
    if k < 1:
        raise ValidationError(f"scale index k must be >= 1, got {k}")
    if t0 <= 0:
        raise ValidationError(f"base scale t0 must be > 0, got {t0}")
    sigma = float(2 ** (k - 1)) * float(t0)
    radius = int(math.ceil(4.0 * sigma))
    offsets = np.arange(-radius, radius + 1, dtype=np.float64)
    profile = np.exp(-(offsets**2) / (2.0 * sigma**2))
    weights = np.outer(profile, profile)
    weights /= weights.sum()
    return FrequencyKernel(sigma=sigma, radius=radius, weights=weights, profile=profile)


def identity_kernel() -> FrequencyKernel:
    """Single-weight kernel (sigma -> 0 limit); convolution with it is a no-op."""
    one = np.ones(1, dtype=np.float64)
    return FrequencyKernel(sigma=0.0, radius=0, weights=np.ones((1, 1)), profile=one)


def _wrap_profile(profile: np.ndarray, radius: int, n: int) -> np.ndarray:
    """Fold a centered 1-D profile onto a length-n circular grid."""
    out = np.zeros(n, dtype=np.float64)
    idx = np.arange(-radius, radius + 1) % n
    np.add.at(out, idx, profile)
    return out


def circular_convolve(field: np.ndarray, kernel: FrequencyKernel) -> np.ndarray:
    """Circular (wrap-around) convolution of a real field with a kernel.

    The separable kernel is periodized onto the field's grid, so arbitrarily
    large kernel radii are handled exactly; the convolution itself runs
    through the FFT for speed but is numerically the direct circular sum.
    """
    field = np.asarray(field, dtype=np.float64)
    if field.ndim == 1:
        pk = _wrap_profile(kernel.profile, kernel.radius, field.shape[0])
        pk /= pk.sum()
        return np.fft.ifft(np.fft.fft(field) * np.fft.fft(pk)).real
    py = _wrap_profile(kernel.profile, kernel.radius, field.shape[0])
    px = _wrap_profile(kernel.profile, kernel.radius, field.shape[1])
    pk = np.outer(py, px)
    pk /= pk.sum()
    return np.fft.ifft2(np.fft.fft2(field) * np.fft.fft2(pk)).real


def smooth_amplitude(spec, kernel: FrequencyKernel, use_log: bool = True) -> np.ndarray:
    """Suppress spikes in an amplitude spectrum by circular Gaussian smoothing.

    With use_log (the default) the smoothing runs on log(A + eps) and the
    result is mapped back through exp; otherwise the amplitude is smoothed
    directly. Phase is untouched by construction: only the amplitude field
    enters. Accepts a ComplexSpectrum or a bare amplitude array.
    """
    amplitude = np.asarray(getattr(spec, "amplitude", spec), dtype=np.float64)
    if use_log:
        smoothed = np.exp(circular_convolve(np.log(amplitude + LOG_EPS), kernel)) - LOG_EPS
    else:
        smoothed = circular_convolve(amplitude, kernel)
    return np.maximum(smoothed, 0.0)


def sharpness(spectrum_field, h_sigma: float = 2.0) -> np.ndarray:
    """Spikiness measure: ratio of a spectrum to its Gaussian-smoothed self.

    Works on 1-D or 2-D nonnegative fields; smoothing wraps around, matching
    the periodic frequency plane. The denominator is floored to avoid
    division by zero on empty spectra.
    """
    from scipy import ndimage

    field = np.asarray(spectrum_field, dtype=np.float64)
    if np.any(field < 0):
        raise ValidationError("sharpness input must be nonnegative")
    if h_sigma <= 0:
        raise ValidationError(f"h_sigma must be > 0, got {h_sigma}")
    smoothed = ndimage.gaussian_filter(field, h_sigma, mode="wrap")
    return field / np.maximum(smoothed, SHARPNESS_EPS)
