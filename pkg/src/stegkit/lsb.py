"""Least-significant-bit substitution.

Two flavours live here:

* plane substitution (image in image): the top ``n`` bits of every message
  pixel replace the low ``n`` bits of the matching cover pixel;
* bitstream substitution: one payload bit per pixel LSB, optionally written
  ``r`` times and recovered by majority vote.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels
from .errors import CapacityError, DimensionError, StegError
from .media import AudioClip, Image


def check_n(n: int) -> int:
    if isinstance(n, bool) or int(n) != n or not 1 <= n <= 8:
        raise StegError(f"n must be an integer in [1, 8], got {n!r}")
    return int(n)


def _require_8bit(img: Image, role: str):
    if img.bit_depth != 8:
        raise DimensionError(f"{role} must be 8-bit, got {img.bit_depth}-bit")


def as_bits(payload) -> np.ndarray:
    """Coerce a payload (``"0101"`` string or 0/1 sequence) to a uint8 bit array."""
    if isinstance(payload, str):
        if set(payload) - {"0", "1"}:
            raise StegError("bit strings may only contain '0' and '1'")
        return np.frombuffer(payload.encode("ascii"), dtype=np.uint8) - ord("0")
    bits = np.asarray(payload)
    if bits.ndim != 1:
        bits = bits.reshape(-1)
    if bits.size and not np.isin(bits, (0, 1)).all():
        raise StegError("bit values must be 0 or 1")
    return bits.astype(np.uint8)


def bits_to_str(bits) -> str:
    return "".join("1" if b else "0" for b in np.asarray(bits).reshape(-1))


def embed_plane(cover: Image, message: Image, n: int) -> Image:
    """Hide the ``n`` most significant bits of ``message`` in the ``n`` LSBs of ``cover``.

    ``stego = (cover & ~(2**n - 1)) | (message >> (8 - n))``.  The two images
    must be 8-bit and the same size.
    """
    n = check_n(n)
    _require_8bit(cover, "cover")
    _require_8bit(message, "message")
    if cover.shape != message.shape:
        raise DimensionError(
            f"cover is {cover.width}x{cover.height} but message is {message.width}x{message.height}"
        )
    out = _kernels.embed_plane(
        np.ascontiguousarray(cover.flat()), np.ascontiguousarray(message.flat()), n
    )
    return Image(out.reshape(cover.shape), 8)


def extract_plane(stego: Image, n: int) -> Image:
    """Shift the payload plane back up: ``(stego << (8 - n)) & 0xFF``."""
    n = check_n(n)
    _require_8bit(stego, "stego")
    return Image(stego.pixels << np.uint8(8 - n), 8)


def embed_bits(cover: Image, payload) -> Image:
    bits = as_bits(payload)
    flat = cover.flat()
    if bits.size > flat.size:
        raise CapacityError(f"payload of {bits.size} bits exceeds {flat.size} carrier samples")
    out = flat.copy()
    out[: bits.size] = (out[: bits.size] & ~np.array(1, dtype=out.dtype)) | bits
    return Image(out.reshape(cover.shape), cover.bit_depth)


def extract_bits(stego: Image, count: int) -> np.ndarray:
    flat = stego.flat()
    if count < 0 or count > flat.size:
        raise CapacityError(f"cannot read {count} bits from {flat.size} carrier samples")
    return (flat[:count] & 1).astype(np.uint8)


def _check_repetition(r: int) -> int:
    if int(r) != r or r < 1 or r % 2 == 0:
        raise StegError(f"repetition factor must be odd and >= 1, got {r}")
    return int(r)


def embed_bits_repeated(cover: Image, payload, r: int) -> Image:
    """Write every payload bit into ``r`` consecutive pixel LSBs."""
    r = _check_repetition(r)
    bits = as_bits(payload)
    if bits.size * r > cover.flat().size:
        raise CapacityError(
            f"{bits.size} bits x {r} repetitions exceeds {cover.flat().size} carrier samples"
        )
    return embed_bits(cover, np.repeat(bits, r))


def extract_bits_repeated(stego: Image, count: int, r: int) -> np.ndarray:
    """Majority vote over each group of ``r`` LSBs."""
    r = _check_repetition(r)
    raw = extract_bits(stego, count * r)
    return _kernels.majority(np.ascontiguousarray(raw), r)


@dataclass(frozen=True)
class Capacity:
    bits: int
    bits_per_second: float | None = None

    @property
    def kbps(self) -> float | None:
        return None if self.bits_per_second is None else self.bits_per_second / 1000.0


def capacity(carrier, n: int = 1) -> Capacity:
    """Payload room when ``n`` LSBs of every carrier sample are used."""
    n = check_n(n)
    if isinstance(carrier, Image):
        return Capacity(carrier.width * carrier.height * n)
    if isinstance(carrier, AudioClip):
        return Capacity(len(carrier) * n, float(carrier.sample_rate * n))
    raise TypeError(f"capacity() needs an Image or AudioClip, got {type(carrier).__name__}")
