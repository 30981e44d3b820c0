"""Orthonormal 1-D DCT-II and single-stage periodic DWT.

The DCT is

    F(u) = sqrt(2/N) * A(u) * sum_i cos(u (2i+1) pi / 2N) f(i),
    A(0) = 1/sqrt(2), A(u) = 1 otherwise,

which is orthogonal, so its inverse is its transpose.

The DWT computes one stage of

    WL(n) = sum_m s(m) h0(m - 2n)      (scaling / approximation)
    WH(n) = sum_m s(m) h1(m - 2n)      (wavelet / detail)

with periodic extension.  Deeper stages are obtained by feeding ``approx``
back into :func:`dwt_analyze`; the watermark schemes only need one.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
import scipy.fft

from . import _kernels
from .errors import DimensionError, StegError

# Above this length the default DCT path switches to scipy's FFT-based DCT.
DIRECT_DCT_MAX = 4096

_ORTHO_TOL = 1e-12


def _as_signal(signal) -> np.ndarray:
    x = np.ascontiguousarray(signal, dtype=np.float64)
    if x.ndim != 1:
        raise DimensionError(f"expected a 1-D signal, got shape {x.shape}")
    if x.size == 0:
        raise StegError("transform of an empty signal")
    return x


def _use_direct(n: int, method: str) -> bool:
    if method == "auto":
        return n <= DIRECT_DCT_MAX
    if method not in ("direct", "fft"):
        raise StegError(f"unknown DCT method {method!r}")
    return method == "direct"


def dct_forward(signal, method: str = "auto") -> np.ndarray:
    """Orthonormal DCT-II of a real 1-D signal.

    ``method`` is ``"direct"`` (O(N^2) summation kernel), ``"fft"`` or
    ``"auto"`` (direct up to :data:`DIRECT_DCT_MAX` samples).
    """
    x = _as_signal(signal)
    if _use_direct(x.size, method):
        return _kernels.dct_direct(x, _kernels.cos_table(x.size), False)
    return scipy.fft.dct(x, type=2, norm="ortho")


def dct_inverse(spectrum, method: str = "auto") -> np.ndarray:
    """Inverse of :func:`dct_forward` (orthonormal DCT-III)."""
    c = _as_signal(spectrum)
    if _use_direct(c.size, method):
        return _kernels.dct_direct(c, _kernels.cos_table(c.size), True)
    return scipy.fft.idct(c, type=2, norm="ortho")


@dataclass(frozen=True, eq=False)
class FilterPair:
    """Analysis/synthesis bank: scaling filter ``h0`` and wavelet filter ``h1``."""

    name: str
    h0: np.ndarray
    h1: np.ndarray

    def __post_init__(self):
        h0 = np.array(self.h0, dtype=np.float64)
        h1 = np.array(self.h1, dtype=np.float64)
        if h0.ndim != 1 or h0.size == 0 or h0.shape != h1.shape:
            raise StegError("h0 and h1 must be non-empty 1-D sequences of equal length")
        h0.setflags(write=False)
        h1.setflags(write=False)
        object.__setattr__(self, "h0", h0)
        object.__setattr__(self, "h1", h1)

    @property
    def orthonormal(self) -> bool:
        return (abs(float(self.h0 @ self.h0) - 1.0) <= _ORTHO_TOL
                and abs(float(self.h0 @ self.h1)) <= _ORTHO_TOL)

    @classmethod
    def from_scaling(cls, name: str, h0) -> "FilterPair":
        """Build the quadrature-mirror partner h1[k] = (-1)^k h0[L-1-k]."""
        h0 = np.asarray(h0, dtype=np.float64)
        signs = np.where(np.arange(h0.size) % 2 == 0, 1.0, -1.0)
        return cls(name, h0, signs * h0[::-1])


_S2 = math.sqrt(2.0)
_S3 = math.sqrt(3.0)

HAAR = FilterPair("haar", [1 / _S2, 1 / _S2], [1 / _S2, -1 / _S2])
DB2 = FilterPair.from_scaling(
    "db2",
    [(1 + _S3) / (4 * _S2), (3 + _S3) / (4 * _S2), (3 - _S3) / (4 * _S2), (1 - _S3) / (4 * _S2)],
)

FILTERS = {f.name: f for f in (HAAR, DB2)}


def get_filter(name: str) -> FilterPair:
    try:
        return FILTERS[name]
    except KeyError:
        raise StegError(f"unknown filter {name!r}; known: {', '.join(sorted(FILTERS))}") from None


@dataclass(frozen=True, eq=False)
class WaveletBands:
    approx: np.ndarray
    detail: np.ndarray
    original_length: int

    def __post_init__(self):
        half = -(-self.original_length // 2)
        if len(self.approx) != half or len(self.detail) != half:
            raise DimensionError(
                f"bands of length {len(self.approx)}/{len(self.detail)} do not match "
                f"original length {self.original_length} (want {half})"
            )

    def replace(self, approx=None, detail=None) -> "WaveletBands":
        return WaveletBands(
            self.approx if approx is None else np.asarray(approx, dtype=np.float64),
            self.detail if detail is None else np.asarray(detail, dtype=np.float64),
            self.original_length,
        )


def dwt_analyze(signal, filters: FilterPair = HAAR) -> WaveletBands:
    """One analysis stage; odd-length input is zero-padded by one sample."""
    if not filters.orthonormal:
        raise StegError(f"filter pair {filters.name!r} is not orthonormal")
    s = _as_signal(signal)
    length = s.size
    if length % 2:
        s = np.append(s, 0.0)
    approx, detail = _kernels.dwt_analyze(s, filters.h0, filters.h1)
    return WaveletBands(approx, detail, length)


def dwt_synthesize(bands: WaveletBands, filters: FilterPair = HAAR) -> np.ndarray:
    """Inverse of :func:`dwt_analyze`, truncated back to the original length."""
    approx = np.ascontiguousarray(bands.approx, dtype=np.float64)
    detail = np.ascontiguousarray(bands.detail, dtype=np.float64)
    if approx.shape != detail.shape:
        raise DimensionError(f"approx/detail length mismatch: {approx.size} vs {detail.size}")
    out = _kernels.dwt_synthesize(approx, detail, filters.h0, filters.h1)
    return out[: bands.original_length]
