"""Spectrum scale space: a dyadic family of smoothed amplitude spectra, one
reconstructed saliency map per layer, assembled into a coarse-to-fine
saliency sequence."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy import ndimage

from . import color
from .spectral import (
    ComplexSpectrum,
    ValidationError,
    forward_transform,
    gaussian_frequency_kernel,
    inverse_transform,
    smooth_amplitude,
)

_NORM_EPS = 1e-12


def num_scales(height: int, width: int) -> int:
    """Layer count K = ceil(log2(min(height, width))) + 1, exact integer math."""
    m = min(int(height), int(width))
    if m < 2:
        raise ValidationError(f"image must be at least 2x2, got {height}x{width}")
    return (m - 1).bit_length() + 1


@dataclass
class SpectrumScaleSpace:
    """Smoothed amplitude layers for scales k = 1..K plus the shared phase."""

    layers: list[np.ndarray]
    phase: np.ndarray
    t0: float

    @property
    def K(self) -> int:
        return len(self.layers)


@dataclass
class SaliencyMap:
    """Min-max normalized saliency field; scale_index 0 marks single maps."""

    values: np.ndarray
    scale_index: int = 0


@dataclass
class SaliencySequence:
    """K saliency maps ordered coarse (k=1) to fine (k=K)."""

    maps: list[SaliencyMap] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.maps)

    def __getitem__(self, i: int) -> SaliencyMap:
        return self.maps[i]


def build_scale_space(
    spec: ComplexSpectrum, t0: float = 0.5, use_log: bool = True
) -> SpectrumScaleSpace:
    """Smooth the amplitude spectrum with the dyadic kernel family.

    Layer k is the amplitude convolved (circularly) with the scale-k
    Gaussian, sigma_k = 2**(k-1)*t0; the phase is carried once, unchanged.
    """
    if t0 <= 0:
        raise ValidationError(f"t0 must be > 0, got {t0}")
    K = num_scales(spec.height, spec.width)
    layers = [
        smooth_amplitude(spec.amplitude, gaussian_frequency_kernel(k, t0), use_log)
        for k in range(1, K + 1)
    ]
    return SpectrumScaleSpace(layers=layers, phase=spec.phase, t0=t0)


def reconstruct_saliency(layer: np.ndarray, phase: np.ndarray) -> np.ndarray:
    """Recombine a smoothed amplitude layer with the original phase and invert."""
    layer = np.asarray(layer, dtype=np.float64)
    phase = np.asarray(phase, dtype=np.float64)
    if layer.shape != phase.shape:
        raise ValidationError(f"layer shape {layer.shape} != phase shape {phase.shape}")
    return inverse_transform(ComplexSpectrum(amplitude=layer, phase=phase))


def normalize_map(values: np.ndarray) -> np.ndarray:
    """Min-max normalize to [0, 1]; a constant field maps to all zeros."""
    values = np.asarray(values, dtype=np.float64)
    vmin, vmax = values.min(), values.max()
    span = vmax - vmin
    if span <= _NORM_EPS * max(1.0, abs(vmax)):
        return np.zeros_like(values)
    return (values - vmin) / span


def enhance_saliency(raw: np.ndarray, post_sigma: float, scale_index: int = 0) -> SaliencyMap:
    """Square, optionally blur (reflective borders) and normalize a raw field."""
    if post_sigma < 0:
        raise ValidationError(f"post_sigma must be >= 0, got {post_sigma}")
    sq = np.asarray(raw, dtype=np.float64) ** 2
    if post_sigma > 0:
        sq = ndimage.gaussian_filter(sq, post_sigma, mode="reflect")
    return SaliencyMap(values=normalize_map(sq), scale_index=scale_index)


def default_post_sigma(height: int, width: int) -> float:
    """Spatial post-blur scale: a small fraction of the short image side."""
    return 0.03 * min(height, width)


def saliency_sequence(
    image: np.ndarray,
    t0: float = 0.5,
    post_sigma: float | None = None,
    use_log: bool = True,
    channel_mode: str = "gray",
) -> SaliencySequence:
    """Full pipeline: one saliency map per spectrum scale, coarse to fine.

    `image` is HxW (grayscale) or HxWx3 (RGB, values in [0,1]). In gray mode
    the luma channel is processed; in opponent mode intensity, red-green and
    blue-yellow channels run independently and the per-scale normalized maps
    are fused by pixelwise maximum (then renormalized).
    """
    if channel_mode == "gray":
        channels = [color.to_gray(image)]
    elif channel_mode == "opponent":
        channels = color.to_opponent(image)
    else:
        raise ValidationError(f"unknown channel_mode {channel_mode!r}")
    h, w = channels[0].shape
    if post_sigma is None:
        post_sigma = default_post_sigma(h, w)
    K = num_scales(h, w)
    per_channel: list[list[np.ndarray]] = []
    for chan in channels:
        spec = forward_transform(chan)
        space = build_scale_space(spec, t0=t0, use_log=use_log)
        per_channel.append(
            [
                enhance_saliency(
                    reconstruct_saliency(layer, space.phase), post_sigma, k
                ).values
                for k, layer in enumerate(space.layers, start=1)
            ]
        )
    maps = []
    for k in range(K):
        fused = per_channel[0][k]
        for chan_maps in per_channel[1:]:
            fused = np.maximum(fused, chan_maps[k])
        maps.append(SaliencyMap(values=normalize_map(fused), scale_index=k + 1))
    return SaliencySequence(maps=maps)
