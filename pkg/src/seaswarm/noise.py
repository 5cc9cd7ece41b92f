"""Seeded 2D gradient noise for disease-patch masks.

The browser client redraws patch masks from (edge, scale, seed) alone, so the
algorithm is pinned down exactly here and must be ported verbatim:

1. PRNG: xorshift32. State starts at ``seed & 0xFFFFFFFF`` (0x9E3779B9 when
   that is zero). Each step: ``x ^= x << 13; x ^= x >> 17; x ^= x << 5``,
   all modulo 2**32, with the shifted-right step a logical shift.
2. Permutation table: ``p = [0..255]`` shuffled by a Fisher-Yates pass from
   i = 255 down to 1 with ``j = next() % (i + 1)``.
3. Gradients: 8 unit vectors, four axis-aligned and four diagonal with
   components ``+/-sqrt(0.5)``; a lattice corner's gradient is
   ``GRADIENTS[hash & 7]``.
4. Noise at (x, y): classic lattice interpolation with the quintic fade
   ``t*t*t*(t*(t*6 - 15) + 10)`` and ``lerp(a, b, t) = a + t*(b - a)``.
   Corner hashes: ``p[(p[xi] + yi) & 255]`` and neighbours, with
   ``xi = floor(x) & 255`` etc.
5. The raw value (bounded by +/-sqrt(2)/2 for unit gradients) is mapped to
   [0, 1] via ``(raw*sqrt(2) + 1) * 0.5``.

A mask grid of size ``resolution x resolution`` samples cell centers:
``x = (i + 0.5) * (noise_scale / resolution)`` (that parenthesization) and
likewise for y, so ``noise_scale`` counts lattice cells across the mask.
All arithmetic is IEEE double; a faithful port is bit-identical.
"""

from __future__ import annotations

import math

import numpy as np

_SQRT2 = math.sqrt(2.0)
_GRAD_X = np.array(
    [1.0, -1.0, 0.0, 0.0, math.sqrt(0.5), -math.sqrt(0.5), math.sqrt(0.5), -math.sqrt(0.5)]
)
_GRAD_Y = np.array(
    [0.0, 0.0, 1.0, -1.0, math.sqrt(0.5), math.sqrt(0.5), -math.sqrt(0.5), -math.sqrt(0.5)]
)


def xorshift32(state: int) -> int:
    """One xorshift32 step on a uint32 state."""
    state ^= (state << 13) & 0xFFFFFFFF
    state ^= state >> 17
    state ^= (state << 5) & 0xFFFFFFFF
    return state & 0xFFFFFFFF


def permutation_table(seed: int) -> np.ndarray:
    """256-entry permutation derived from the seed as documented above."""
    state = seed & 0xFFFFFFFF
    if state == 0:
        state = 0x9E3779B9
    perm = np.arange(256, dtype=np.int64)
    for i in range(255, 0, -1):
        state = xorshift32(state)
        j = state % (i + 1)
        perm[i], perm[j] = perm[j], perm[i]
    return perm


def noise_grid(seed: int, noise_scale: float, resolution: int) -> np.ndarray:
    """Noise values in [0, 1] sampled at the cell centers of a square grid."""
    if resolution < 1:
        raise ValueError("resolution must be >= 1")
    if noise_scale <= 0:
        raise ValueError("noise_scale must be > 0")
    perm = permutation_table(seed)
    coords = (np.arange(resolution, dtype=np.float64) + 0.5) * (noise_scale / resolution)
    x = coords[np.newaxis, :]
    y = coords[:, np.newaxis]

    xf0 = np.floor(x)
    yf0 = np.floor(y)
    xi = xf0.astype(np.int64) & 255
    yi = yf0.astype(np.int64) & 255
    dx = x - xf0
    dy = y - yf0

    u = dx * dx * dx * (dx * (dx * 6.0 - 15.0) + 10.0)
    v = dy * dy * dy * (dy * (dy * 6.0 - 15.0) + 10.0)

    h00 = perm[(perm[xi] + yi) & 255]
    h01 = perm[(perm[xi] + yi + 1) & 255]
    h10 = perm[(perm[(xi + 1) & 255] + yi) & 255]
    h11 = perm[(perm[(xi + 1) & 255] + yi + 1) & 255]

    def corner(h: np.ndarray, ox: float, oy: float) -> np.ndarray:
        g = h & 7
        return _GRAD_X[g] * (dx - ox) + _GRAD_Y[g] * (dy - oy)

    n00 = corner(h00, 0.0, 0.0)
    n10 = corner(h10, 1.0, 0.0)
    n01 = corner(h01, 0.0, 1.0)
    n11 = corner(h11, 1.0, 1.0)

    x1 = n00 + u * (n10 - n00)
    x2 = n01 + u * (n11 - n01)
    raw = x1 + v * (x2 - x1)
    return np.clip((raw * _SQRT2 + 1.0) * 0.5, 0.0, 1.0)
