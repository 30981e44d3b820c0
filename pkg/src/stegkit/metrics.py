"""Fidelity metrics (MSE, PSNR), grey-level histograms and report rows."""

from __future__ import annotations

import math
import time
from dataclasses import dataclass

import numpy as np

from . import _kernels, lsb
from .errors import DimensionError, StegError
from .media import Image

# PSNR reported for identical signals (and any value above it).
PSNR_CAP = 99.0

REPORT_HEADER = "n,mse_cover_stego,psnr_cover_stego,mse_message_recovered,psnr_message_recovered,elapsed_s"


def mse(x, y) -> float:
    """Mean squared error, accumulated in float64."""
    a = np.asarray(x, dtype=np.float64).reshape(-1)
    b = np.asarray(y, dtype=np.float64).reshape(-1)
    if a.shape != b.shape:
        raise DimensionError(f"length mismatch: {a.size} vs {b.size}")
    if a.size == 0:
        raise StegError("MSE of empty signals is undefined")
    diff = a - b
    return float(diff @ diff) / a.size


def dynamic_range(bit_depth: int) -> int:
    return (1 << bit_depth) - 1


def psnr(mse_value: float, bit_depth: int = 8) -> float:
    """10*log10(L^2 / MSE) with L = 2**bit_depth - 1, capped at :data:`PSNR_CAP`."""
    if mse_value < 0:
        raise StegError(f"MSE must be non-negative, got {mse_value}")
    if mse_value == 0:
        return PSNR_CAP
    peak = dynamic_range(bit_depth)
    return min(10.0 * math.log10(peak * peak / mse_value), PSNR_CAP)


def psnr_image(p: Image, q: Image) -> float:
    """PSNR of two 8-bit images from the summed squared error directly.

    10*log10(255*255*M*N / sum (p - q)^2); agrees with ``psnr(mse(p, q), 8)``.
    """
    if p.shape != q.shape:
        raise DimensionError(f"image sizes differ: {p.width}x{p.height} vs {q.width}x{q.height}")
    if p.bit_depth != 8 or q.bit_depth != 8:
        raise DimensionError("psnr_image is defined for 8-bit images")
    diff = p.pixels.astype(np.float64) - q.pixels.astype(np.float64)
    sse = float(np.sum(diff * diff))
    if sse == 0:
        return PSNR_CAP
    rows, cols = p.shape
    return min(10.0 * math.log10(255.0 * 255.0 * rows * cols / sse), PSNR_CAP)


@dataclass(frozen=True, eq=False)
class Histogram:
    bins: np.ndarray

    @property
    def total(self) -> int:
        return int(self.bins.sum())

    def to_csv(self) -> str:
        return "".join(f"{v},{int(c)}\n" for v, c in enumerate(self.bins))

    def l1_distance(self, other: "Histogram") -> int:
        return int(np.abs(self.bins - other.bins).sum())


def histogram(img: Image) -> Histogram:
    if img.bit_depth != 8:
        raise DimensionError("histograms are only defined for 8-bit images")
    bins = _kernels.histogram(np.ascontiguousarray(img.flat()), 256)
    return Histogram(bins)


@dataclass(frozen=True)
class QualityReport:
    """One row of an n-sweep: cover distortion, payload recovery, wall time."""

    n: int | None
    mse_cover_stego: float
    psnr_cover_stego: float
    mse_message_recovered: float
    psnr_message_recovered: float
    elapsed: float

    def to_csv_row(self) -> str:
        n = "" if self.n is None else str(self.n)
        return (f"{n},{self.mse_cover_stego:.6f},{self.psnr_cover_stego:.4f},"
                f"{self.mse_message_recovered:.6f},{self.psnr_message_recovered:.4f},"
                f"{self.elapsed:.6f}")


def plane_report(cover: Image, message: Image, n: int) -> QualityReport:
    """Embed, extract and score one bit budget; ``elapsed`` spans all three."""
    start = time.perf_counter()
    stego = lsb.embed_plane(cover, message, n)
    recovered = lsb.extract_plane(stego, n)
    mse_cs = mse(cover.pixels, stego.pixels)
    mse_mr = mse(message.pixels, recovered.pixels)
    psnr_cs = psnr(mse_cs, 8)
    psnr_mr = psnr(mse_mr, 8)
    elapsed = time.perf_counter() - start
    return QualityReport(n, mse_cs, psnr_cs, mse_mr, psnr_mr, elapsed)


def sweep(cover: Image, message: Image, ns=range(1, 9)) -> list[QualityReport]:
    """Table of reports for every bit budget in ``ns``, in that order."""
    # first kernel call loads/compiles the JIT code; keep that out of row one
    tiny = Image(np.zeros((1, 1), dtype=np.uint8))
    plane_report(tiny, tiny, 1)
    return [plane_report(cover, message, n) for n in ns]
