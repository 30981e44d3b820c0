"""stegkit: LSB steganography and transform-domain watermarking for images and audio."""

from ._accel import backend
from .errors import (
    CapacityError,
    DimensionError,
    FormatError,
    HeaderError,
    RecipeError,
    StegError,
    TruncatedError,
    UnsupportedFormatError,
)
from .lsb import (
    Capacity,
    capacity,
    embed_bits,
    embed_bits_repeated,
    embed_plane,
    extract_bits,
    extract_bits_repeated,
    extract_plane,
)
from .media import (
    AudioClip,
    Image,
    RgbImage,
    load_pgm,
    load_ppm,
    load_wav,
    rgb_to_gray,
    save_pgm,
    save_ppm,
    save_wav,
)
from .metrics import Histogram, QualityReport, histogram, mse, psnr, psnr_image, sweep
from .transforms import (
    HAAR,
    FilterPair,
    WaveletBands,
    dct_forward,
    dct_inverse,
    dwt_analyze,
    dwt_synthesize,
)
from .watermark import (
    EmbedRecipe,
    embed_audio_in_audio,
    embed_audio_in_image,
    embed_image_in_audio,
    embed_image_in_image,
    extract,
    extract_audio_in_audio,
    extract_audio_in_image,
    extract_image_in_audio,
    extract_image_in_image,
)

__version__ = "0.1.0"
