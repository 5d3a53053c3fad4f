"""Reference single-map saliency detectors used as comparators: phase-only
reconstruction (PFT), spectral residual (SR) and the frequency-tuned
color-distance detector (FT).

These are reference-fidelity implementations of the published one-line
recipes, kept deliberately minimal; PFT doubles as the flat-amplitude limit
case of the scale-space pipeline."""

from __future__ import annotations

import numpy as np
from scipy import ndimage

from . import color
from .scale_space import (
    SaliencyMap,
    default_post_sigma,
    enhance_saliency,
    normalize_map,
    reconstruct_saliency,
)
from .spectral import ValidationError, forward_transform, validate_image


def pft_saliency(img, post_sigma: float | None = None) -> SaliencyMap:
    """Phase-only map: unit amplitude with the original phase, squared,
    blurred, normalized. Shares the reconstruction path of the scale-space
    pipeline, so a fully flattened amplitude layer reproduces it exactly."""
    arr = validate_image(color.to_gray(img))
    if post_sigma is None:
        post_sigma = default_post_sigma(*arr.shape)
    spec = forward_transform(arr)
    # flatten on the spectrum's support only: bins with zero amplitude carry
    # no phase information and stay zero, so a constant image degenerates to
    # an all-zero map instead of a spurious impulse
    flat = (spec.amplitude > 0).astype(np.float64)
    raw = reconstruct_saliency(flat, spec.phase)
    return enhance_saliency(raw, post_sigma)


def sr_saliency(img, n: int = 3, post_sigma: float | None = None) -> SaliencyMap:
    """Spectral residual map: log amplitude minus its n x n local mean
    (wrap-around, matching the periodic spectrum), exponentiated and
    recombined with the original phase."""
    if n < 3 or n % 2 == 0:
        raise ValidationError(f"local-average window must be odd and >= 3, got {n}")
    arr = validate_image(color.to_gray(img))
    if post_sigma is None:
        post_sigma = default_post_sigma(*arr.shape)
    spec = forward_transform(arr)
    log_amp = np.log(spec.amplitude + 1e-8)
    residual = log_amp - ndimage.uniform_filter(log_amp, size=n, mode="wrap")
    # same support rule as pft_saliency: zero-amplitude bins stay zero
    amp = np.where(spec.amplitude > 0, np.exp(residual), 0.0)
    raw = reconstruct_saliency(amp, spec.phase)
    return enhance_saliency(raw, post_sigma)


def ft_saliency(img, pre_sigma: float = 0.0) -> SaliencyMap:
    """Frequency-tuned map: Euclidean distance between the (optionally
    blurred) pixel in opponent space and the image mean, normalized."""
    channels = color.to_opponent(np.asarray(img, dtype=np.float64))
    dist_sq = np.zeros_like(channels[0])
    for chan in channels:
        if pre_sigma > 0:
            chan = ndimage.gaussian_filter(chan, pre_sigma, mode="reflect")
        dist_sq += (chan - chan.mean()) ** 2
    return SaliencyMap(values=normalize_map(np.sqrt(dist_sq)))
