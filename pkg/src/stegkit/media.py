"""Raster and audio value types plus bit-exact PGM/PPM/WAV codecs.

Images are 2-D numpy arrays (rows x columns, row-major) wrapped in a frozen
dataclass; audio is a 1-D float64 array in [-1, 1).  Arrays are copied on
construction and marked read-only, so the value objects can be shared freely.
"""

from __future__ import annotations

import re
import struct
from dataclasses import dataclass

import numpy as np

from .errors import (
    DimensionError,
    HeaderError,
    StegError,
    TruncatedError,
    UnsupportedFormatError,
)

# Largest float sample that survives a 16-bit PCM round trip unclamped.
MAX_SAMPLE = 32767 / 32768

_LUMA = np.array([0.299, 0.587, 0.114])


def _frozen(arr: np.ndarray) -> np.ndarray:
    arr = np.array(arr, copy=True)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class Image:
    """Grayscale raster of unsigned integers with an explicit bit depth."""

    pixels: np.ndarray
    bit_depth: int = 8

    def __post_init__(self):
        if self.bit_depth not in (8, 16):
            raise StegError(f"bit depth must be 8 or 16, got {self.bit_depth}")
        arr = np.asarray(self.pixels)
        if arr.ndim != 2:
            raise DimensionError(f"image pixels must be 2-D, got shape {arr.shape}")
        if arr.size and (not np.issubdtype(arr.dtype, np.integer) and arr.dtype != bool):
            raise StegError(f"image pixels must be integers, got {arr.dtype}")
        if arr.size and (arr.min() < 0 or arr.max() >= 1 << self.bit_depth):
            raise StegError(f"pixel values out of range for {self.bit_depth}-bit image")
        dtype = np.uint8 if self.bit_depth == 8 else np.uint16
        object.__setattr__(self, "pixels", _frozen(arr.astype(dtype)))

    @property
    def width(self) -> int:
        return self.pixels.shape[1]

    @property
    def height(self) -> int:
        return self.pixels.shape[0]

    @property
    def shape(self) -> tuple[int, int]:
        return self.pixels.shape

    @property
    def maxval(self) -> int:
        return (1 << self.bit_depth) - 1

    def flat(self) -> np.ndarray:
        return self.pixels.reshape(-1)

    def __eq__(self, other):
        if not isinstance(other, Image):
            return NotImplemented
        return self.bit_depth == other.bit_depth and np.array_equal(self.pixels, other.pixels)

    def __repr__(self):
        return f"Image({self.width}x{self.height}, {self.bit_depth}-bit)"


@dataclass(frozen=True, eq=False)
class RgbImage:
    pixels: np.ndarray  # (height, width, 3) uint8

    def __post_init__(self):
        arr = np.asarray(self.pixels)
        if arr.ndim != 3 or arr.shape[2] != 3:
            raise DimensionError(f"RGB pixels must have shape (h, w, 3), got {arr.shape}")
        if arr.size and (arr.min() < 0 or arr.max() > 255):
            raise StegError("RGB components must be bytes")
        object.__setattr__(self, "pixels", _frozen(arr.astype(np.uint8)))

    @property
    def width(self) -> int:
        return self.pixels.shape[1]

    @property
    def height(self) -> int:
        return self.pixels.shape[0]

    def __eq__(self, other):
        if not isinstance(other, RgbImage):
            return NotImplemented
        return np.array_equal(self.pixels, other.pixels)


@dataclass(frozen=True, eq=False)
class AudioClip:
    """Mono audio; samples are floats in [-1.0, 1.0)."""

    samples: np.ndarray
    sample_rate: int = 44100

    def __post_init__(self):
        if int(self.sample_rate) != self.sample_rate or self.sample_rate <= 0:
            raise StegError(f"sample rate must be a positive integer, got {self.sample_rate}")
        arr = np.asarray(self.samples, dtype=np.float64)
        if arr.ndim != 1:
            raise DimensionError(f"audio must be mono (1-D), got shape {arr.shape}")
        if arr.size and not (np.all(np.isfinite(arr)) and arr.min() >= -1.0 and arr.max() < 1.0):
            raise StegError("audio samples must lie in [-1.0, 1.0)")
        object.__setattr__(self, "sample_rate", int(self.sample_rate))
        object.__setattr__(self, "samples", _frozen(arr))

    def __len__(self):
        return self.samples.shape[0]

    @property
    def duration(self) -> float:
        return len(self) / self.sample_rate

    def __eq__(self, other):
        if not isinstance(other, AudioClip):
            return NotImplemented
        return self.sample_rate == other.sample_rate and np.array_equal(self.samples, other.samples)

    def __repr__(self):
        return f"AudioClip({len(self)} samples @ {self.sample_rate} Hz)"


def clamp_samples(samples: np.ndarray) -> tuple[np.ndarray, int]:
    """Clip to the legal audio range; returns the clipped copy and how many samples moved."""
    samples = np.asarray(samples, dtype=np.float64)
    clipped = np.clip(samples, -1.0, MAX_SAMPLE)
    return clipped, int(np.count_nonzero(clipped != samples))


def rgb_to_gray(img: RgbImage) -> Image:
    """BT.601 luma, rounded half-up and clamped to a byte."""
    luma = img.pixels.astype(np.float64) @ _LUMA
    gray = np.clip(np.floor(luma + 0.5), 0, 255).astype(np.uint8)
    return Image(gray, 8)


# ---------------------------------------------------------------- netpbm

_TOKEN = re.compile(rb"\s*(?:#[^\n]*\n\s*)*(\S+)")


def _netpbm_header(data: bytes, magic: bytes) -> tuple[int, int, int, int]:
    if len(data) < 2:
        raise HeaderError("file too short for a netpbm header")
    if data[:2] != magic:
        raise UnsupportedFormatError(f"expected magic {magic.decode()}, got {data[:2]!r}")
    pos = 2
    values = []
    for _ in range(3):
        m = _TOKEN.match(data, pos)
        if m is None:
            raise HeaderError("header ends before width/height/maxval")
        try:
            values.append(int(m.group(1)))
        except ValueError:
            raise HeaderError(f"non-numeric header field {m.group(1)!r}") from None
        pos = m.end()
    if pos >= len(data) or data[pos:pos + 1] not in (b" ", b"\t", b"\n", b"\r"):
        raise HeaderError("missing whitespace after maxval")
    width, height, maxval = values
    if width < 0 or height < 0:
        raise HeaderError("negative image dimensions")
    return width, height, maxval, pos + 1


def load_pgm(data: bytes) -> Image:
    width, height, maxval, offset = _netpbm_header(data, b"P5")
    if maxval == 255:
        dtype, depth = np.dtype(np.uint8), 8
    elif maxval == 65535:
        dtype, depth = np.dtype(">u2"), 16
    else:
        raise UnsupportedFormatError(f"unsupported PGM maxval {maxval} (want 255 or 65535)")
    need = width * height * dtype.itemsize
    payload = data[offset:offset + need]
    if len(payload) < need:
        raise TruncatedError(f"PGM payload has {len(payload)} bytes, header promises {need}")
    pixels = np.frombuffer(payload, dtype=dtype).reshape(height, width)
    return Image(pixels, depth)


def save_pgm(img: Image) -> bytes:
    header = f"P5\n{img.width} {img.height}\n{img.maxval}\n".encode("ascii")
    dtype = np.uint8 if img.bit_depth == 8 else ">u2"
    return header + img.pixels.astype(dtype).tobytes()


def load_ppm(data: bytes) -> RgbImage:
    width, height, maxval, offset = _netpbm_header(data, b"P6")
    if maxval != 255:
        raise UnsupportedFormatError(f"unsupported PPM maxval {maxval} (want 255)")
    need = width * height * 3
    payload = data[offset:offset + need]
    if len(payload) < need:
        raise TruncatedError(f"PPM payload has {len(payload)} bytes, header promises {need}")
    return RgbImage(np.frombuffer(payload, dtype=np.uint8).reshape(height, width, 3))


def save_ppm(img: RgbImage) -> bytes:
    header = f"P6\n{img.width} {img.height}\n255\n".encode("ascii")
    return header + img.pixels.tobytes()


# ---------------------------------------------------------------- WAV

def load_wav(data: bytes) -> AudioClip:
    """Decode RIFF/WAVE PCM 16-bit mono. Unknown chunks are skipped."""
    if len(data) < 12 or data[:4] != b"RIFF" or data[8:12] != b"WAVE":
        raise HeaderError("not a RIFF/WAVE file")
    pos = 12
    fmt = None
    pcm = None
    while pos + 8 <= len(data):
        chunk_id, size = struct.unpack_from("<4sI", data, pos)
        body = data[pos + 8:pos + 8 + size]
        if chunk_id == b"fmt ":
            if len(body) < 16:
                raise HeaderError("fmt chunk shorter than 16 bytes")
            fmt = struct.unpack_from("<HHIIHH", body)
        elif chunk_id == b"data":
            if len(body) < size:
                raise TruncatedError(f"data chunk has {len(body)} bytes, header promises {size}")
            pcm = body
        pos += 8 + size + (size & 1)
    if fmt is None:
        raise HeaderError("missing fmt chunk")
    if pcm is None:
        raise HeaderError("missing data chunk")
    format_code, channels, rate, _, block_align, bits = fmt
    if format_code != 1:
        raise UnsupportedFormatError(f"only PCM (format 1) is supported, got format {format_code}")
    if channels != 1:
        raise UnsupportedFormatError(f"only mono is supported, got {channels} channels")
    if bits != 16 or block_align != 2:
        raise UnsupportedFormatError(f"only 16-bit samples are supported, got {bits}-bit")
    if len(pcm) % 2:
        raise TruncatedError("data chunk ends mid-sample")
    ints = np.frombuffer(pcm, dtype="<i2")
    return AudioClip(ints / 32768.0, rate)


def quantize_samples(samples: np.ndarray) -> np.ndarray:
    """Float samples to int16 with round-half-even and saturation."""
    scaled = np.rint(np.asarray(samples, dtype=np.float64) * 32768.0)
    return np.clip(scaled, -32768, 32767).astype(np.int16)


def save_wav(clip: AudioClip) -> bytes:
    pcm = quantize_samples(clip.samples).astype("<i2").tobytes()
    header = struct.pack(
        "<4sI4s4sIHHIIHH4sI",
        b"RIFF", 36 + len(pcm), b"WAVE",
        b"fmt ", 16, 1, 1, clip.sample_rate, clip.sample_rate * 2, 2, 16,
        b"data", len(pcm),
    )
    return header + pcm
