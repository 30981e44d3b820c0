"""Command-line front end.

Exit statuses: 0 success, 1 I/O, 2 validation/dimension/format, 3 recipe,
4 internal.  Every failure prints one line ``error:<class>: <message>`` to
stderr.
"""

from __future__ import annotations

import argparse
import sys
import time
from pathlib import Path

import numpy as np

from . import lsb, metrics, watermark
from .errors import RecipeError, StegError
from .media import AudioClip, Image, load_pgm, load_ppm, load_wav, rgb_to_gray, save_pgm, save_wav
from .transforms import FILTERS, get_filter

EXIT_OK, EXIT_IO, EXIT_VALIDATION, EXIT_RECIPE, EXIT_INTERNAL = range(5)

_MODE_FLAGS = {m.replace("_", "-"): m for m in watermark.MODES}


class CliError(Exception):
    def __init__(self, kind: str, message: str, status: int):
        super().__init__(message)
        self.kind = kind
        self.status = status


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise CliError("usage", message, EXIT_VALIDATION)


def _bit_budget(text: str) -> int:
    try:
        return lsb.check_n(int(text))
    except (ValueError, StegError):
        raise argparse.ArgumentTypeError(f"n must be an integer in [1, 8], got {text!r}") from None


def _positive_float(text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        value = float("nan")
    if not value > 0:
        raise argparse.ArgumentTypeError(f"expected a positive number, got {text!r}")
    return value


def _non_negative_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        value = -1
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {text!r}")
    return value


# ---------------------------------------------------------------- file helpers

def _read_bytes(path: str) -> bytes:
    try:
        return Path(path).read_bytes()
    except OSError as exc:
        raise CliError("io", f"cannot read {path}: {exc.strerror or exc}", EXIT_IO) from None


def _write_bytes(path: str, data: bytes):
    try:
        Path(path).write_bytes(data)
    except OSError as exc:
        raise CliError("io", f"cannot write {path}: {exc.strerror or exc}", EXIT_IO) from None


def load_media(path: str):
    """Image (PGM, or PPM converted to grey) or AudioClip (WAV), sniffed by magic."""
    data = _read_bytes(path)
    if data[:2] == b"P5":
        return load_pgm(data)
    if data[:2] == b"P6":
        return rgb_to_gray(load_ppm(data))
    if data[:4] == b"RIFF":
        return load_wav(data)
    raise CliError("format", f"{path}: not a PGM, PPM or WAV file", EXIT_VALIDATION)


def _load_kind(path: str, kind: type):
    media = load_media(path)
    if not isinstance(media, kind):
        want = "an image (PGM/PPM)" if kind is Image else "audio (WAV)"
        raise CliError("format", f"{path}: expected {want}", EXIT_VALIDATION)
    return media


def _save_media(path: str, media):
    _write_bytes(path, save_pgm(media) if isinstance(media, Image) else save_wav(media))


def _recipe_path(stego: str, recipe: str | None) -> str:
    return recipe if recipe else stego + ".recipe"


# ---------------------------------------------------------------- reports

def _int16_scale(clip: AudioClip) -> np.ndarray:
    return clip.samples * 32768.0


def _pair_metrics(a, b) -> tuple[float, float]:
    """MSE/PSNR on the integer scale of the carrier kind."""
    if isinstance(a, Image) and isinstance(b, Image):
        if a.shape != b.shape:
            raise CliError("dimension", f"image sizes differ: {a.width}x{a.height} vs {b.width}x{b.height}",
                           EXIT_VALIDATION)
        depth = max(a.bit_depth, b.bit_depth)
        # lift an 8-bit image onto the 16-bit scale (x * 257 maps 255 -> 65535)
        pa = a.pixels.astype(np.float64) * (257 if a.bit_depth < depth else 1)
        pb = b.pixels.astype(np.float64) * (257 if b.bit_depth < depth else 1)
        value = metrics.mse(pa, pb)
        return value, metrics.psnr(value, depth)
    if isinstance(a, AudioClip) and isinstance(b, AudioClip):
        if len(a) != len(b):
            raise CliError("dimension", f"audio lengths differ: {len(a)} vs {len(b)} samples",
                           EXIT_VALIDATION)
        value = metrics.mse(_int16_scale(a), _int16_scale(b))
        return value, metrics.psnr(value, 16)
    raise CliError("kind", "cannot compare an image with audio", EXIT_VALIDATION)


def _report(cover, stego, message, recovered, n, elapsed) -> metrics.QualityReport:
    mse_cs, psnr_cs = _pair_metrics(cover, stego)
    if isinstance(message, Image) and message.width * message.height == 0 or \
            isinstance(message, AudioClip) and len(message) == 0:
        mse_mr, psnr_mr = 0.0, metrics.PSNR_CAP
    else:
        mse_mr, psnr_mr = _pair_metrics(message, recovered)
    return metrics.QualityReport(n, mse_cs, psnr_cs, mse_mr, psnr_mr, elapsed)


# ---------------------------------------------------------------- subcommands

def cmd_embed(args) -> int:
    mode = _MODE_FLAGS[args.mode]
    start = time.perf_counter()
    if mode == watermark.IMAGE_IN_IMAGE:
        if args.n is None:
            raise CliError("usage", "--n is required for image-in-image", EXIT_VALIDATION)
        cover = _load_kind(args.cover, Image)
        message = _load_kind(args.message, Image)
        stego, recipe = watermark.embed_image_in_image(cover, message, args.n)
    elif mode == watermark.AUDIO_IN_AUDIO:
        cover = _load_kind(args.cover, AudioClip)
        message = _load_kind(args.message, AudioClip)
        stego, recipe = watermark.embed_audio_in_audio(cover, message, args.coeff_count)
    elif mode == watermark.IMAGE_IN_AUDIO:
        cover = _load_kind(args.cover, AudioClip)
        message = _load_kind(args.message, Image)
        stego, recipe = watermark.embed_image_in_audio(cover, message, args.alpha, get_filter(args.filter))
    else:
        cover = _load_kind(args.cover, Image)
        message = _load_kind(args.message, AudioClip)
        stego, recipe = watermark.embed_audio_in_image(cover, message, args.alpha, get_filter(args.filter))
    _save_media(args.out, stego)
    _write_bytes(_recipe_path(args.out, args.recipe), recipe.to_text().encode("ascii"))
    recovered = watermark.extract(stego, recipe)
    report = _report(cover, stego, message, recovered, recipe.n, time.perf_counter() - start)
    print(metrics.REPORT_HEADER)
    print(report.to_csv_row())
    if recipe.clamped:
        print(f"note: {recipe.clamped} carrier samples were clamped", file=sys.stderr)
    return EXIT_OK


def cmd_extract(args) -> int:
    recipe_file = _recipe_path(args.stego, args.recipe)
    if not Path(recipe_file).is_file():
        raise CliError("recipe", f"recipe required: {recipe_file} not found", EXIT_RECIPE)
    recipe = watermark.EmbedRecipe.from_text(_read_bytes(recipe_file).decode("ascii", "replace"))
    stego = load_media(args.stego)
    payload = watermark.extract(stego, recipe)
    _save_media(args.out, payload)
    return EXIT_OK


def cmd_sweep(args) -> int:
    cover = _load_kind(args.cover, Image)
    message = _load_kind(args.message, Image)
    rows = metrics.sweep(cover, message)
    text = "# elapsed_s: wall-clock seconds for embed + extract + metrics at each n\n"
    text += metrics.REPORT_HEADER + "\n" + "".join(r.to_csv_row() + "\n" for r in rows)
    if args.report:
        _write_bytes(args.report, text.encode("ascii"))
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_metrics(args) -> int:
    a, b = load_media(args.a), load_media(args.b)
    value, db = _pair_metrics(a, b)
    print(f"mse={value:.6f}")
    print(f"psnr={db:.4f}")
    return EXIT_OK


def cmd_histogram(args) -> int:
    img = _load_kind(args.image, Image)
    text = metrics.histogram(img).to_csv()
    if args.out:
        _write_bytes(args.out, text.encode("ascii"))
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_capacity(args) -> int:
    carrier = load_media(args.carrier)
    cap = lsb.capacity(carrier, args.n)
    print(f"{cap.bits} bits")
    if cap.bits_per_second is not None:
        print(f"{cap.bits_per_second:g} bits/s ({cap.kbps:g} kbps)")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="stegkit", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("embed", help="hide a payload in a cover")
    p.add_argument("--mode", required=True, choices=sorted(_MODE_FLAGS))
    p.add_argument("--cover", required=True)
    p.add_argument("--message", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--recipe", help="sidecar path (default: <out>.recipe)")
    p.add_argument("--n", type=_bit_budget, help="LSBs per pixel (image-in-image)")
    p.add_argument("--alpha", type=_positive_float, default=watermark.DEFAULT_ALPHA)
    p.add_argument("--coeff-count", type=_non_negative_int, default=None)
    p.add_argument("--filter", choices=sorted(FILTERS), default="haar")
    p.set_defaults(func=cmd_embed)

    p = sub.add_parser("extract", help="recover a payload using its recipe")
    p.add_argument("--stego", required=True)
    p.add_argument("--recipe", help="sidecar path (default: <stego>.recipe)")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_extract)

    p = sub.add_parser("sweep", help="image-in-image MSE/PSNR table for n = 1..8")
    p.add_argument("--cover", required=True)
    p.add_argument("--message", required=True)
    p.add_argument("--report", help="CSV output path (default: stdout)")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("metrics", help="MSE and PSNR between two files")
    p.add_argument("a")
    p.add_argument("b")
    p.set_defaults(func=cmd_metrics)

    p = sub.add_parser("histogram", help="256-bin grey-level histogram as CSV")
    p.add_argument("image")
    p.add_argument("--out")
    p.set_defaults(func=cmd_histogram)

    p = sub.add_parser("capacity", help="LSB payload capacity of a carrier")
    p.add_argument("carrier")
    p.add_argument("--n", type=_bit_budget, default=1)
    p.set_defaults(func=cmd_capacity)
    return parser


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return args.func(args)
    except CliError as exc:
        kind, message, status = exc.kind, str(exc), exc.status
    except RecipeError as exc:
        kind, message, status = exc.kind, str(exc), EXIT_RECIPE
    except StegError as exc:
        kind, message, status = exc.kind, str(exc), EXIT_VALIDATION
    except Exception as exc:  # noqa: BLE001 - last-resort diagnostic
        kind, message, status = "internal", f"{type(exc).__name__}: {exc}", EXIT_INTERNAL
    print(f"error:{kind}: {message}".replace("\n", " "), file=sys.stderr)
    return status


if __name__ == "__main__":
    sys.exit(main())
