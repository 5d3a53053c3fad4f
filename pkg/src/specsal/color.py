"""Channel extraction: luma and an opponent (intensity, red-green,
blue-yellow) decomposition, each channel mapped affinely into [0, 1]."""

from __future__ import annotations

import numpy as np

_LUMA = np.array([0.299, 0.587, 0.114])


def to_gray(image: np.ndarray) -> np.ndarray:
    """Luma of an RGB array in [0,1]; 2-D input passes through."""
    arr = np.asarray(image, dtype=np.float64)
    if arr.ndim == 2:
        return arr
    if arr.ndim == 3 and arr.shape[2] == 3:
        return arr @ _LUMA
    raise ValueError(f"expected HxW or HxWx3 array, got shape {arr.shape}")


def to_opponent(image: np.ndarray) -> list[np.ndarray]:
    """Intensity, red-green and blue-yellow channels, each rescaled to [0,1].

    A 2-D (grayscale) input is treated as r=g=b, so the two chromatic
    channels come out constant.
    """
    arr = np.asarray(image, dtype=np.float64)
    if arr.ndim == 2:
        r = g = b = arr
    elif arr.ndim == 3 and arr.shape[2] == 3:
        r, g, b = arr[..., 0], arr[..., 1], arr[..., 2]
    else:
        raise ValueError(f"expected HxW or HxWx3 array, got shape {arr.shape}")
    intensity = (r + g + b) / 3.0
    rg = (r - g + 1.0) / 2.0  # r-g in [-1,1] -> [0,1]
    by = (b - (r + g) / 2.0 + 1.0) / 2.0  # b-(r+g)/2 in [-1,1] -> [0,1]
    return [intensity, rg, by]
