"""1-D laboratory: composite periodic-plus-salient signals, spectrum spike
sharpening with cycle count, and the suppress-and-reconstruct demonstration
with removed-component accounting."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .spectral import (
    LOG_EPS,
    FrequencyKernel,
    ValidationError,
    circular_convolve,
    identity_kernel,
    sharpness,
)
from .scale_space import normalize_map


@dataclass
class Signal1D:
    samples: np.ndarray
    sample_rate: float

    def __post_init__(self):
        self.samples = np.asarray(self.samples, dtype=np.float64)
        if self.samples.ndim != 1 or self.samples.size < 4:
            raise ValidationError("signal must be 1-D with at least 4 samples")
        if not np.all(np.isfinite(self.samples)):
            raise ValidationError("signal samples must be finite")


@dataclass
class CompositeSpec:
    """Periodic background with a short salient segment replacing it inside a
    rectangular window.

    Frequencies are in cycles over (0, L), so integer values land on exact
    DFT bins (no leakage).
    """

    L: float = 1.0
    f_bg: float = 5.0
    f_sal: float = 13.0
    window_start: float = 0.4
    window_width: float = 0.1
    amp_bg: float = 1.0
    amp_sal: float = 1.0
    phase_bg: float = 0.0
    phase_sal: float = 0.0
    dc_offset: float = 0.0

    def __post_init__(self):
        if self.L <= 0:
            raise ValidationError("L must be positive")
        if self.window_width < 0:
            raise ValidationError("window width must be >= 0")
        if not (0.0 < self.window_start and self.window_start + self.window_width < self.L):
            raise ValidationError("salient window must lie strictly inside (0, L)")
        if self.window_width / self.L > 0.25:
            raise ValidationError("window width must be at most a quarter of the duration")


def _gaussian_kernel_1d(sigma: float) -> FrequencyKernel:
    if sigma == 0:
        return identity_kernel()
    radius = int(np.ceil(4.0 * sigma))
    offsets = np.arange(-radius, radius + 1, dtype=np.float64)
    profile = np.exp(-(offsets**2) / (2.0 * sigma**2))
    weights = profile / profile.sum()
    return FrequencyKernel(sigma=sigma, radius=radius, weights=weights, profile=profile)


def synthesize_composite(spec: CompositeSpec, n_samples: int) -> Signal1D:
    """Sample the composite on (0, L): background outside the window, salient
    component inside it (replacement, not superposition), plus a DC offset."""
    if n_samples < 16:
        raise ValidationError("need at least 16 samples")
    t = np.arange(n_samples) * (spec.L / n_samples)
    bg = spec.amp_bg * np.cos(2.0 * np.pi * spec.f_bg * t / spec.L + spec.phase_bg)
    sal = spec.amp_sal * np.cos(2.0 * np.pi * spec.f_sal * t / spec.L + spec.phase_sal)
    w = (t >= spec.window_start) & (t < spec.window_start + spec.window_width)
    samples = np.where(w, sal, bg) + spec.dc_offset
    return Signal1D(samples=samples, sample_rate=n_samples / spec.L)


def amplitude_spectrum(sig: Signal1D) -> np.ndarray:
    """Amplitude of the unnormalized 1-D DFT, DC at index 0."""
    return np.abs(np.fft.fft(sig.samples))


def sharpness_curve(
    f_bg: float,
    cycle_counts,
    h_sigma: float = 2.0,
    n_samples: int = 512,
) -> list[tuple[int, float]]:
    """Sharpness at the fundamental bin vs. number of repeated cycles.

    Each signal occupies a fixed duration: N cycles of the background wave
    followed by silence, so fewer cycles spread the fundamental spike and
    more cycles sharpen it.
    """
    results = []
    for n_cycles in cycle_counts:
        if n_cycles < 2:
            raise ValidationError("cycle counts must be >= 2")
        if n_cycles > f_bg:
            raise ValidationError(
                f"{n_cycles} cycles at frequency {f_bg} do not fit in the unit duration"
            )
        t = np.arange(n_samples) / n_samples
        wave = np.cos(2.0 * np.pi * f_bg * t)
        wave[t >= n_cycles / f_bg] = 0.0
        amp = np.abs(np.fft.fft(wave))
        p = sharpness(amp, h_sigma)
        results.append((int(n_cycles), float(p[int(round(f_bg))])))
    return results


def suppress_and_reconstruct_1d(
    sig: Signal1D,
    sigma: float,
    use_log: bool = True,
    post_sigma: float | None = None,
) -> tuple[Signal1D, Signal1D]:
    """Smooth the (log-)amplitude spectrum circularly, recombine with the
    original phase and invert; the saliency trace is the post-blurred squared
    reconstruction, min-max normalized.

    sigma == 0 selects the identity kernel, so the reconstruction equals the
    input.
    """
    if sigma < 0:
        raise ValidationError(f"sigma must be >= 0, got {sigma}")
    from scipy import ndimage

    spectrum = np.fft.fft(sig.samples)
    amp = np.abs(spectrum)
    phase = np.angle(spectrum)
    kernel = _gaussian_kernel_1d(sigma)
    if use_log:
        smoothed = np.exp(circular_convolve(np.log(amp + LOG_EPS), kernel)) - LOG_EPS
    else:
        smoothed = circular_convolve(amp, kernel)
    smoothed = np.maximum(smoothed, 0.0)
    recon = np.fft.ifft(smoothed * np.exp(1j * phase)).real
    if post_sigma is None:
        post_sigma = 0.01 * sig.samples.size
    sal = recon**2
    if post_sigma > 0:
        sal = ndimage.gaussian_filter1d(sal, post_sigma, mode="reflect")
    sal = normalize_map(sal)
    return (
        Signal1D(samples=recon, sample_rate=sig.sample_rate),
        Signal1D(samples=sal, sample_rate=sig.sample_rate),
    )


def removed_components(
    original: Signal1D, reconstruction: Signal1D
) -> tuple[Signal1D, np.ndarray]:
    """What the suppression removed: spatial difference and its amplitude
    spectrum."""
    if original.samples.size != reconstruction.samples.size:
        raise ValidationError(
            f"length mismatch: {original.samples.size} vs {reconstruction.samples.size}"
        )
    diff = original.samples - reconstruction.samples
    spatial = Signal1D(samples=diff, sample_rate=original.sample_rate)
    return spatial, np.abs(np.fft.fft(diff))
