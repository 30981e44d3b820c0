"""Inner loops, each in a numba and a pure-numpy flavour.

Both flavours are always defined (``*_numba`` / ``*_numpy``) so tests and the
benchmark can compare them; the unsuffixed names are bound to whichever
backend :mod:`stegkit._accel` selected.  Inputs are assumed validated by the
public wrappers: contiguous arrays of the right dtype.
"""

import numpy as np

from ._accel import USE_NUMBA, njit

# numpy fallback processes this many output rows of the DCT at once
_DCT_BLOCK = 256


def cos_table(n: int) -> np.ndarray:
    """cos(pi*k / 2n) for k in [0, 4n); every DCT angle is one of these."""
    return np.cos(np.pi * np.arange(4 * n) / (2 * n))


# ---------------------------------------------------------------- DCT-II

@njit(cache=True)
def dct_direct_numba(x, table, inverse):
    n = x.shape[0]
    period = 4 * n
    out = np.zeros(n)
    scale = np.sqrt(2.0 / n)
    inv_sqrt2 = 1.0 / np.sqrt(2.0)
    if not inverse:
        for u in range(n):
            step = 2 * u
            idx = u % period
            acc = 0.0
            for i in range(n):
                acc += table[idx] * x[i]
                idx += step
                if idx >= period:
                    idx %= period
            w = inv_sqrt2 if u == 0 else 1.0
            out[u] = scale * w * acc
    else:
        for i in range(n):
            step = 2 * i + 1
            idx = 0
            acc = x[0] * inv_sqrt2
            for u in range(1, n):
                idx += step
                if idx >= period:
                    idx %= period
                acc += table[idx] * x[u]
            out[i] = scale * acc
    return out


def dct_direct_numpy(x, table, inverse):
    n = x.shape[0]
    period = 4 * n
    odd = 2 * np.arange(n, dtype=np.int64) + 1
    weights = np.ones(n)
    weights[0] = 1.0 / np.sqrt(2.0)
    out = np.empty(n)
    if not inverse:
        for start in range(0, n, _DCT_BLOCK):
            u = np.arange(start, min(start + _DCT_BLOCK, n), dtype=np.int64)
            basis = table[np.outer(u, odd) % period]
            out[start:start + u.size] = basis @ x
        out *= weights
    else:
        xw = x * weights
        for start in range(0, n, _DCT_BLOCK):
            i = odd[start:start + _DCT_BLOCK]
            basis = table[np.outer(i, np.arange(n, dtype=np.int64)) % period]
            out[start:start + i.size] = basis @ xw
    return out * np.sqrt(2.0 / n)


# ---------------------------------------------------------------- DWT

@njit(cache=True)
def dwt_analyze_numba(s, h0, h1):
    n = s.shape[0]
    half = n // 2
    taps = h0.shape[0]
    approx = np.zeros(half)
    detail = np.zeros(half)
    for k in range(half):
        a = 0.0
        d = 0.0
        for t in range(taps):
            v = s[(2 * k + t) % n]
            a += h0[t] * v
            d += h1[t] * v
        approx[k] = a
        detail[k] = d
    return approx, detail


def dwt_analyze_numpy(s, h0, h1):
    n = s.shape[0]
    idx = (2 * np.arange(n // 2)[:, None] + np.arange(h0.shape[0])[None, :]) % n
    window = s[idx]
    return window @ h0, window @ h1


@njit(cache=True)
def dwt_synthesize_numba(approx, detail, h0, h1):
    half = approx.shape[0]
    n = 2 * half
    taps = h0.shape[0]
    out = np.zeros(n)
    for k in range(half):
        a = approx[k]
        d = detail[k]
        for t in range(taps):
            out[(2 * k + t) % n] += h0[t] * a + h1[t] * d
    return out


def dwt_synthesize_numpy(approx, detail, h0, h1):
    half = approx.shape[0]
    n = 2 * half
    out = np.zeros(n)
    base = 2 * np.arange(half)
    for t in range(h0.shape[0]):
        # for fixed t the slots (2k + t) mod n are distinct, so plain += is safe
        out[(base + t) % n] += h0[t] * approx + h1[t] * detail
    return out


# ---------------------------------------------------------------- LSB

@njit(cache=True)
def embed_plane_numba(cover, message, n):
    keep = np.uint8(0xFF ^ ((1 << n) - 1))
    shift = 8 - n
    out = np.empty_like(cover)
    for i in range(cover.shape[0]):
        out[i] = (cover[i] & keep) | (message[i] >> shift)
    return out


def embed_plane_numpy(cover, message, n):
    keep = np.uint8(0xFF ^ ((1 << n) - 1))
    return (cover & keep) | (message >> np.uint8(8 - n))


@njit(cache=True)
def histogram_numba(values, nbins):
    bins = np.zeros(nbins, dtype=np.int64)
    for i in range(values.shape[0]):
        bins[values[i]] += 1
    return bins


def histogram_numpy(values, nbins):
    return np.bincount(values, minlength=nbins).astype(np.int64)


@njit(cache=True)
def majority_numba(bits, r):
    count = bits.shape[0] // r
    out = np.zeros(count, dtype=np.uint8)
    for g in range(count):
        ones = 0
        for j in range(r):
            ones += bits[g * r + j]
        if 2 * ones > r:
            out[g] = 1
    return out


def majority_numpy(bits, r):
    count = bits.shape[0] // r
    ones = bits[: count * r].reshape(count, r).sum(axis=1, dtype=np.int64)
    return (2 * ones > r).astype(np.uint8)


if USE_NUMBA:
    dct_direct = dct_direct_numba
    dwt_analyze = dwt_analyze_numba
    dwt_synthesize = dwt_synthesize_numba
    embed_plane = embed_plane_numba
    histogram = histogram_numba
    majority = majority_numba
else:
    dct_direct = dct_direct_numpy
    dwt_analyze = dwt_analyze_numpy
    dwt_synthesize = dwt_synthesize_numpy
    embed_plane = embed_plane_numpy
    histogram = histogram_numpy
    majority = majority_numpy
