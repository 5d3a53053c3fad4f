"""Shared independent oracles: naive direct-summation DFTs and a direct
circular-convolution reference, deliberately kept free of the library's own
transform code paths."""

import numpy as np
import pytest


def naive_dft2(img):
    """Direct-summation 2-D DFT (no FFT), DC at (0, 0)."""
    img = np.asarray(img, dtype=complex)
    h, w = img.shape
    out = np.zeros((h, w), dtype=complex)
    for u in range(h):
        for v in range(w):
            acc = 0.0 + 0.0j
            for y in range(h):
                for x in range(w):
                    acc += img[y, x] * np.exp(-2j * np.pi * (u * y / h + v * x / w))
            out[u, v] = acc
    return out


def naive_idft2(spectrum):
    """Direct-summation inverse 2-D DFT with 1/(H*W) normalization."""
    spectrum = np.asarray(spectrum, dtype=complex)
    h, w = spectrum.shape
    out = np.zeros((h, w), dtype=complex)
    for y in range(h):
        for x in range(w):
            acc = 0.0 + 0.0j
            for u in range(h):
                for v in range(w):
                    acc += spectrum[u, v] * np.exp(2j * np.pi * (u * y / h + v * x / w))
            out[y, x] = acc / (h * w)
    return out


def dft_matrix(n, inverse=False):
    """Dense DFT matrix built from the defining exponentials (no FFT)."""
    k = np.arange(n)
    sign = 2j if inverse else -2j
    return np.exp(sign * np.pi * np.outer(k, k) / n)


def matrix_dft2(img):
    """DFT-matrix product form of the direct 2-D transform."""
    img = np.asarray(img, dtype=complex)
    h, w = img.shape
    return dft_matrix(h) @ img @ dft_matrix(w)


def matrix_idft2(spectrum):
    spectrum = np.asarray(spectrum, dtype=complex)
    h, w = spectrum.shape
    return dft_matrix(h, inverse=True) @ spectrum @ dft_matrix(w, inverse=True) / (h * w)


def direct_circular_convolve(field, weights):
    """Wrap-around convolution by explicit modular index summation."""
    field = np.asarray(field, dtype=float)
    weights = np.asarray(weights, dtype=float)
    h, w = field.shape
    r_y = weights.shape[0] // 2
    r_x = weights.shape[1] // 2
    out = np.zeros_like(field)
    for y in range(h):
        for x in range(w):
            acc = 0.0
            for dy in range(-r_y, r_y + 1):
                for dx in range(-r_x, r_x + 1):
                    acc += weights[dy + r_y, dx + r_x] * field[(y - dy) % h, (x - dx) % w]
            out[y, x] = acc
    return out


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
