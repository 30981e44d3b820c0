"""Embed/extract schemes for the four carrier/payload combinations.

* image in image: LSB plane substitution (see :mod:`stegkit.lsb`);
* audio in audio: the highest-index DCT coefficients of the cover are
  overwritten with the lowest-index DCT coefficients of the mark;
* image in audio, audio in image: the first detail (wavelet) coefficients of
  a one-stage DWT of the flattened cover are overwritten with ``alpha``
  times the payload.

Every ``embed_*`` returns the stego carrier plus an :class:`EmbedRecipe`
holding what extraction needs.  Extraction never guesses parameters.
"""

from __future__ import annotations

from dataclasses import dataclass, field, fields

import numpy as np

from . import lsb
from .errors import CapacityError, DimensionError, RecipeError, StegError
from .media import AudioClip, Image, clamp_samples
from .transforms import HAAR, FilterPair, dct_forward, dct_inverse, dwt_analyze, dwt_synthesize, get_filter

IMAGE_IN_IMAGE = "image_in_image"
AUDIO_IN_AUDIO = "audio_in_audio"
IMAGE_IN_AUDIO = "image_in_audio"
AUDIO_IN_IMAGE = "audio_in_image"
MODES = (IMAGE_IN_IMAGE, AUDIO_IN_AUDIO, IMAGE_IN_AUDIO, AUDIO_IN_IMAGE)

DEFAULT_ALPHA = 0.05
DEFAULT_COEFF_FRACTION = 0.10

_REQUIRED = {
    IMAGE_IN_IMAGE: {"n", "width", "height"},
    AUDIO_IN_AUDIO: {"coeff_count", "samples", "sample_rate"},
    IMAGE_IN_AUDIO: {"alpha", "width", "height", "filter"},
    AUDIO_IN_IMAGE: {"alpha", "samples", "sample_rate", "filter"},
}
_INT_KEYS = {"n", "coeff_count", "width", "height", "samples", "sample_rate"}


@dataclass(frozen=True)
class EmbedRecipe:
    """Everything the extractor must know; serialised as ``key=value`` lines.

    ``clamped`` counts carrier samples that had to be clipped back into range
    after embedding.  It is informational and is not written to the sidecar.
    """

    mode: str
    n: int | None = None
    coeff_count: int | None = None
    alpha: float | None = None
    width: int | None = None
    height: int | None = None
    samples: int | None = None
    sample_rate: int | None = None
    filter: str | None = None
    clamped: int = field(default=0, compare=False)

    def __post_init__(self):
        if self.mode not in MODES:
            raise RecipeError(f"unknown mode {self.mode!r}")
        required = _REQUIRED[self.mode]
        for f in fields(self):
            if f.name in ("mode", "clamped"):
                continue
            value = getattr(self, f.name)
            if f.name in required and value is None:
                raise RecipeError(f"mode {self.mode} requires {f.name}")
            if f.name not in required and value is not None:
                raise RecipeError(f"{f.name} does not apply to mode {self.mode}")
        if self.n is not None:
            try:
                lsb.check_n(self.n)
            except StegError as exc:
                raise RecipeError(str(exc)) from None
        if self.alpha is not None and not self.alpha > 0:
            raise RecipeError(f"alpha must be positive, got {self.alpha}")
        for key in _INT_KEYS:
            value = getattr(self, key)
            if value is not None and value < 0:
                raise RecipeError(f"{key} must be non-negative, got {value}")
        if self.sample_rate is not None and self.sample_rate <= 0:
            raise RecipeError("sample_rate must be positive")

    def to_text(self) -> str:
        lines = [f"mode={self.mode}"]
        for f in fields(self):
            if f.name in ("mode", "clamped"):
                continue
            value = getattr(self, f.name)
            if value is not None:
                lines.append(f"{f.name}={value!r}" if f.name == "alpha" else f"{f.name}={value}")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "EmbedRecipe":
        values: dict = {}
        for lineno, line in enumerate(text.splitlines(), 1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            key, sep, raw = line.partition("=")
            key, raw = key.strip(), raw.strip()
            if not sep:
                raise RecipeError(f"line {lineno}: expected key=value, got {line!r}")
            if key in values:
                raise RecipeError(f"line {lineno}: duplicate key {key!r}")
            try:
                if key == "mode" or key == "filter":
                    values[key] = raw
                elif key == "alpha":
                    values[key] = float(raw)
                elif key in _INT_KEYS:
                    values[key] = int(raw)
                else:
                    raise RecipeError(f"line {lineno}: unknown key {key!r}")
            except ValueError:
                raise RecipeError(f"line {lineno}: bad value for {key}: {raw!r}") from None
        if "mode" not in values:
            raise RecipeError("recipe has no mode")
        return cls(**values)


def _check_alpha(alpha: float) -> float:
    if not alpha > 0:
        raise StegError(f"embedding strength alpha must be positive, got {alpha}")
    return float(alpha)


def _expect(recipe: EmbedRecipe, mode: str):
    if recipe.mode != mode:
        raise RecipeError(f"recipe is for mode {recipe.mode}, not {mode}")


# ---------------------------------------------------------------- image in image

def embed_image_in_image(cover: Image, message: Image, n: int) -> tuple[Image, EmbedRecipe]:
    stego = lsb.embed_plane(cover, message, n)
    return stego, EmbedRecipe(IMAGE_IN_IMAGE, n=n, width=message.width, height=message.height)


def extract_image_in_image(stego: Image, recipe: EmbedRecipe) -> Image:
    _expect(recipe, IMAGE_IN_IMAGE)
    if (stego.width, stego.height) != (recipe.width, recipe.height):
        raise DimensionError(
            f"stego is {stego.width}x{stego.height}, recipe expects {recipe.width}x{recipe.height}"
        )
    return lsb.extract_plane(stego, recipe.n)


# ---------------------------------------------------------------- audio in audio

def embed_audio_in_audio(cover: AudioClip, mark: AudioClip,
                         coeff_count: int | None = None) -> tuple[AudioClip, EmbedRecipe]:
    """Overwrite the top ``coeff_count`` DCT bins of the cover with the mark's lowest bins.

    Defaults to 10% of the cover length (capped at the mark length).
    """
    if cover.sample_rate != mark.sample_rate:
        raise StegError(f"sample rates differ: cover {cover.sample_rate} Hz, mark {mark.sample_rate} Hz")
    if coeff_count is None:
        coeff_count = min(int(len(cover) * DEFAULT_COEFF_FRACTION), len(mark))
    k = int(coeff_count)
    if k < 0 or k > min(len(cover), len(mark)):
        raise CapacityError(
            f"coeff_count {k} exceeds min(cover {len(cover)}, mark {len(mark)}) samples"
        )
    recipe_args = dict(coeff_count=k, samples=len(mark), sample_rate=mark.sample_rate)
    if k == 0:
        return cover, EmbedRecipe(AUDIO_IN_AUDIO, **recipe_args)
    spectrum = dct_forward(cover.samples)
    spectrum[len(cover) - k:] = dct_forward(mark.samples)[:k]
    out, clamped = clamp_samples(dct_inverse(spectrum))
    return AudioClip(out, cover.sample_rate), EmbedRecipe(AUDIO_IN_AUDIO, clamped=clamped, **recipe_args)


def recovered_coefficients(stego: AudioClip, recipe: EmbedRecipe) -> np.ndarray:
    """The ``coeff_count`` mark coefficients as read back from the stego."""
    _expect(recipe, AUDIO_IN_AUDIO)
    k = recipe.coeff_count
    if len(stego) < k:
        raise DimensionError(f"stego has {len(stego)} samples, recipe needs at least {k}")
    if k == 0:
        return np.zeros(0)
    return dct_forward(stego.samples)[len(stego) - k:]


def extract_audio_in_audio(stego: AudioClip, recipe: EmbedRecipe) -> AudioClip:
    """Low-pass approximation of the mark built from its ``coeff_count`` lowest bins."""
    coeffs = recovered_coefficients(stego, recipe)
    if recipe.samples == 0:
        return AudioClip(np.zeros(0), recipe.sample_rate)
    spectrum = np.zeros(recipe.samples)
    spectrum[: coeffs.size] = coeffs
    out, _ = clamp_samples(dct_inverse(spectrum))
    return AudioClip(out, recipe.sample_rate)


# ---------------------------------------------------------------- DWT helpers

def _write_detail(carrier: np.ndarray, payload: np.ndarray, filters: FilterPair) -> np.ndarray:
    # Only the even-length prefix is transformed: a payload value written next to
    # the zero pad of an odd-length carrier would be truncated away on synthesis.
    even = 2 * (carrier.size // 2)
    if payload.size > even // 2:
        raise CapacityError(
            f"payload of {payload.size} values exceeds {even // 2} detail coefficients"
        )
    if payload.size == 0:
        return carrier.astype(np.float64)
    bands = dwt_analyze(carrier[:even], filters)
    detail = bands.detail.copy()
    detail[: payload.size] = payload
    body = dwt_synthesize(bands.replace(detail=detail), filters)
    return np.concatenate([body, carrier[even:]])


def _read_detail(carrier: np.ndarray, count: int, filters: FilterPair) -> np.ndarray:
    even = 2 * (carrier.size // 2)
    if count > even // 2:
        raise DimensionError(
            f"stego holds {even // 2} detail coefficients, recipe needs {count}"
        )
    if count == 0:
        return np.zeros(0)
    return dwt_analyze(carrier[:even], filters).detail[:count]


# ---------------------------------------------------------------- image in audio

def embed_image_in_audio(cover: AudioClip, mark: Image, alpha: float = DEFAULT_ALPHA,
                         filters: FilterPair = HAAR) -> tuple[AudioClip, EmbedRecipe]:
    """detail[k] := alpha * pixel_k / 255 for the row-major pixels of ``mark``."""
    alpha = _check_alpha(alpha)
    if mark.bit_depth != 8:
        raise DimensionError(f"mark image must be 8-bit, got {mark.bit_depth}-bit")
    payload = alpha * (mark.flat().astype(np.float64) / 255.0)
    out, clamped = clamp_samples(_write_detail(np.asarray(cover.samples), payload, filters))
    recipe = EmbedRecipe(IMAGE_IN_AUDIO, alpha=alpha, width=mark.width, height=mark.height,
                         filter=filters.name, clamped=clamped)
    return AudioClip(out, cover.sample_rate), recipe


def extract_image_in_audio(stego: AudioClip, recipe: EmbedRecipe) -> Image:
    _expect(recipe, IMAGE_IN_AUDIO)
    count = recipe.width * recipe.height
    detail = _read_detail(np.asarray(stego.samples), count, get_filter(recipe.filter))
    pixels = np.clip(np.rint(255.0 * detail / recipe.alpha), 0, 255).astype(np.uint8)
    return Image(pixels.reshape(recipe.height, recipe.width), 8)


# ---------------------------------------------------------------- audio in image

def embed_audio_in_image(cover: Image, mark: AudioClip, alpha: float = DEFAULT_ALPHA,
                         filters: FilterPair = HAAR) -> tuple[Image, EmbedRecipe]:
    """detail[k] := alpha * sample_k on the normalised cover; stego is 16-bit."""
    alpha = _check_alpha(alpha)
    carrier = cover.flat().astype(np.float64) / cover.maxval
    y = _write_detail(carrier, alpha * np.asarray(mark.samples), filters)
    clamped = int(np.count_nonzero((y < 0.0) | (y > 1.0)))
    q = np.clip(np.rint(y * 65535.0), 0, 65535).astype(np.uint16)
    recipe = EmbedRecipe(AUDIO_IN_IMAGE, alpha=alpha, samples=len(mark),
                         sample_rate=mark.sample_rate, filter=filters.name, clamped=clamped)
    return Image(q.reshape(cover.shape), 16), recipe


def extract_audio_in_image(stego: Image, recipe: EmbedRecipe) -> AudioClip:
    _expect(recipe, AUDIO_IN_IMAGE)
    if stego.bit_depth != 16:
        raise DimensionError("audio-in-image stego must be 16-bit; 8-bit loses the payload")
    carrier = stego.flat().astype(np.float64) / 65535.0
    detail = _read_detail(carrier, recipe.samples, get_filter(recipe.filter))
    out, _ = clamp_samples(detail / recipe.alpha)
    return AudioClip(out, recipe.sample_rate)


# ---------------------------------------------------------------- dispatch

_CARRIER = {
    IMAGE_IN_IMAGE: Image,
    AUDIO_IN_AUDIO: AudioClip,
    IMAGE_IN_AUDIO: AudioClip,
    AUDIO_IN_IMAGE: Image,
}
_EXTRACT = {
    IMAGE_IN_IMAGE: extract_image_in_image,
    AUDIO_IN_AUDIO: extract_audio_in_audio,
    IMAGE_IN_AUDIO: extract_image_in_audio,
    AUDIO_IN_IMAGE: extract_audio_in_image,
}


def extract(stego, recipe: EmbedRecipe):
    """Route to the extractor named by ``recipe.mode``; refuses a carrier of the wrong kind."""
    want = _CARRIER[recipe.mode]
    if not isinstance(stego, want):
        raise RecipeError(
            f"recipe mode {recipe.mode} needs a {want.__name__} stego, got {type(stego).__name__}"
        )
    return _EXTRACT[recipe.mode](stego, recipe)
