import numpy as np
import pytest

from stegkit import _kernels
from stegkit.media import Image

# the eight grey values and the letter-'A' stego from the worked example
EXAMPLE_COVER = [0b10010111, 0b10001100, 0b11010010, 0b01001010,
                 0b00100110, 0b01000011, 0b00010101, 0b01010111]
EXAMPLE_STEGO = [0b10010110, 0b10001101, 0b11010010, 0b01001010,
                 0b00100110, 0b01000010, 0b00010100, 0b01010111]
LETTER_A = "01000001"


@pytest.fixture
def rng():
    return np.random.default_rng(20240613)


@pytest.fixture
def example_cover():
    return Image(np.array([EXAMPLE_COVER], dtype=np.uint8))


def random_image(rng, height, width, bit_depth=8):
    return Image(rng.integers(0, 1 << bit_depth, size=(height, width)), bit_depth)


KERNEL_PAIRS = {
    "dct_direct": (_kernels.dct_direct_numba, _kernels.dct_direct_numpy),
    "dwt_analyze": (_kernels.dwt_analyze_numba, _kernels.dwt_analyze_numpy),
    "dwt_synthesize": (_kernels.dwt_synthesize_numba, _kernels.dwt_synthesize_numpy),
    "embed_plane": (_kernels.embed_plane_numba, _kernels.embed_plane_numpy),
    "histogram": (_kernels.histogram_numba, _kernels.histogram_numpy),
    "majority": (_kernels.majority_numba, _kernels.majority_numpy),
}


ACCEPTANCE_RESULTS = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in ACCEPTANCE_RESULTS:
        terminalreporter.write_line(line)
