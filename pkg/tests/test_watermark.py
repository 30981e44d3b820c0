import numpy as np
import pytest

from stegkit import watermark as wm
from stegkit.errors import CapacityError, DimensionError, RecipeError, StegError
from stegkit.media import MAX_SAMPLE, AudioClip, Image, load_wav, save_wav
from stegkit.transforms import DB2, HAAR, dct_forward, dct_inverse, dwt_analyze, dwt_synthesize
from stegkit.watermark import _read_detail, _write_detail

from conftest import random_image

RATE = 8000


def clip(samples, rate=RATE):
    return AudioClip(np.asarray(samples, dtype=float), rate)


def random_clip(rng, n, amp=0.5, rate=RATE):
    return clip(rng.uniform(-amp, amp, n), rate)


def lowpass_oracle(mark, k):
    """Keep the first k DCT bins of ``mark`` and invert (independent of the embed path)."""
    spec = dct_forward(mark)
    spec[k:] = 0.0
    return dct_inverse(spec)


class TestRecipe:
    def test_round_trip_text(self):
        r = wm.EmbedRecipe(wm.IMAGE_IN_AUDIO, alpha=0.05, width=3, height=2, filter="haar")
        text = r.to_text()
        assert text.splitlines() == ["mode=image_in_audio", "alpha=0.05", "width=3", "height=2",
                                     "filter=haar"]
        assert wm.EmbedRecipe.from_text(text) == r

    def test_alpha_survives_exactly(self):
        r = wm.EmbedRecipe(wm.AUDIO_IN_IMAGE, alpha=0.1 + 0.2, samples=4, sample_rate=8000,
                           filter="db2")
        assert wm.EmbedRecipe.from_text(r.to_text()).alpha == 0.1 + 0.2

    def test_missing_field(self):
        with pytest.raises(RecipeError):
            wm.EmbedRecipe(wm.IMAGE_IN_IMAGE, n=4, width=2)

    def test_foreign_field(self):
        with pytest.raises(RecipeError):
            wm.EmbedRecipe(wm.IMAGE_IN_IMAGE, n=4, width=2, height=2, alpha=0.1)

    @pytest.mark.parametrize("text", [
        "", "mode=bogus\n", "mode=image_in_image\nn=4\nwidth=2\n", "mode=image_in_image\nn=x\n",
        "mode=image_in_image\nn=4\nwidth=2\nheight=2\ncolour=red\n", "garbage\n",
        "mode=image_in_image\nn=9\nwidth=2\nheight=2\n",
        "mode=image_in_image\nmode=image_in_image\n",
    ])
    def test_corrupt(self, text):
        with pytest.raises(RecipeError):
            wm.EmbedRecipe.from_text(text)

    def test_non_positive_alpha(self):
        with pytest.raises(RecipeError):
            wm.EmbedRecipe(wm.IMAGE_IN_AUDIO, alpha=0.0, width=1, height=1, filter="haar")


class TestImageInImage:
    def test_round_trip(self, rng):
        cover, msg = random_image(rng, 5, 6), random_image(rng, 5, 6)
        stego, recipe = wm.embed_image_in_image(cover, msg, 3)
        assert recipe.n == 3 and (recipe.width, recipe.height) == (6, 5)
        out = wm.extract(stego, wm.EmbedRecipe.from_text(recipe.to_text()))
        assert np.array_equal(out.pixels, msg.pixels & 0b11100000)

    def test_size_checked(self, rng):
        stego, recipe = wm.embed_image_in_image(random_image(rng, 2, 2), random_image(rng, 2, 2), 4)
        with pytest.raises(DimensionError):
            wm.extract_image_in_image(random_image(rng, 3, 2), recipe)


class TestAudioInAudio:
    def test_zero_coefficients(self, rng):
        cover = random_clip(rng, 64)
        stego, recipe = wm.embed_audio_in_audio(cover, random_clip(rng, 32), 0)
        assert stego == cover
        out = wm.extract_audio_in_audio(stego, recipe)
        assert len(out) == 32 and not out.samples.any()

    def test_silent_mark_zeroes_band(self, rng):
        cover = random_clip(rng, 100, 0.3)
        stego, _ = wm.embed_audio_in_audio(cover, clip(np.zeros(100)), 30)
        spec = dct_forward(stego.samples)
        assert np.max(np.abs(spec[70:])) <= 1e-12
        expected = dct_forward(cover.samples)
        expected[70:] = 0
        assert np.max(np.abs(stego.samples - dct_inverse(expected))) <= 1e-12

    @pytest.mark.parametrize("n_cover, n_mark, k", [(200, 200, 20), (300, 80, 80), (128, 500, 64)])
    def test_float_round_trip(self, rng, n_cover, n_mark, k):
        cover, mark = random_clip(rng, n_cover, 0.3), random_clip(rng, n_mark, 0.5)
        stego, recipe = wm.embed_audio_in_audio(cover, mark, k)
        assert recipe.clamped == 0
        coeffs = wm.recovered_coefficients(stego, recipe)
        assert np.max(np.abs(coeffs - dct_forward(mark.samples)[:k])) <= 1e-9
        out = wm.extract_audio_in_audio(stego, recipe)
        assert np.max(np.abs(out.samples - lowpass_oracle(mark.samples, k))) <= 1e-9

    def test_band_limited(self, rng):
        cover, mark = random_clip(rng, 256, 0.3), random_clip(rng, 256)
        stego, _ = wm.embed_audio_in_audio(cover, mark, 40)
        delta = dct_forward(stego.samples) - dct_forward(cover.samples)
        assert np.max(np.abs(delta[:216])) <= 1e-9

    def test_default_coeff_count(self, rng):
        _, recipe = wm.embed_audio_in_audio(random_clip(rng, 1000), random_clip(rng, 50))
        assert recipe.coeff_count == 50
        _, recipe = wm.embed_audio_in_audio(random_clip(rng, 1000), random_clip(rng, 500))
        assert recipe.coeff_count == 100

    def test_wav_quantization_bound(self, rng):
        # measured bound: per-sample rounding error of 1/65536 spread by an orthonormal
        # transform cannot exceed sqrt(N)/65536 in any coefficient
        worst = 0.0
        for _ in range(20):
            cover, mark = random_clip(rng, 400, 0.3), random_clip(rng, 400)
            stego, recipe = wm.embed_audio_in_audio(cover, mark, 40)
            exact = wm.recovered_coefficients(stego, recipe)
            quantized = wm.recovered_coefficients(load_wav(save_wav(stego)), recipe)
            worst = max(worst, np.max(np.abs(quantized - exact)))
        assert worst <= np.sqrt(400) / 65536

    def test_errors(self, rng):
        with pytest.raises(CapacityError):
            wm.embed_audio_in_audio(random_clip(rng, 10), random_clip(rng, 20), 11)
        with pytest.raises(StegError):
            wm.embed_audio_in_audio(random_clip(rng, 10), random_clip(rng, 10, rate=16000), 2)
        _, recipe = wm.embed_audio_in_audio(random_clip(rng, 10), random_clip(rng, 10), 5)
        with pytest.raises(DimensionError):
            wm.extract_audio_in_audio(random_clip(rng, 4), recipe)


class TestImageInAudio:
    def test_black_and_white_marks(self, rng):
        cover = random_clip(rng, 64, 0.3)
        black = Image(np.zeros((2, 4), dtype=np.uint8))
        stego, _ = wm.embed_image_in_audio(cover, black, 0.05)
        assert np.max(np.abs(dwt_analyze(stego.samples).detail[:8])) <= 1e-12
        white = Image(np.full((2, 4), 255, dtype=np.uint8))
        stego, _ = wm.embed_image_in_audio(cover, white, 0.01)
        assert np.max(np.abs(dwt_analyze(stego.samples).detail[:8] - 0.01)) <= 1e-12

    @pytest.mark.parametrize("filters", [HAAR, DB2])
    @pytest.mark.parametrize("length", [200, 201])
    def test_float_round_trip(self, rng, filters, length):
        cover, mark = random_clip(rng, length, 0.3), random_image(rng, 8, 10)
        stego, recipe = wm.embed_image_in_audio(cover, mark, 0.05, filters)
        assert recipe.clamped == 0 and recipe.filter == filters.name
        assert wm.extract_image_in_audio(stego, recipe) == mark
        bands_c, bands_s = dwt_analyze(cover.samples[:200], filters), dwt_analyze(stego.samples[:200], filters)
        assert np.max(np.abs(bands_c.approx - bands_s.approx)) <= 1e-9
        assert np.max(np.abs(bands_c.detail[80:] - bands_s.detail[80:])) <= 1e-9

    def test_wav_quantization(self, rng):
        worst = 0
        for _ in range(10):
            cover, mark = random_clip(rng, 2048, 0.5), random_image(rng, 32, 32)
            stego, recipe = wm.embed_image_in_audio(cover, mark, 0.05)
            out = wm.extract_image_in_audio(load_wav(save_wav(stego)), recipe)
            worst = max(worst, int(np.max(np.abs(out.pixels.astype(int) - mark.pixels))))
        assert worst <= 2

    def test_zero_size_mark(self, rng):
        cover = random_clip(rng, 16)
        stego, recipe = wm.embed_image_in_audio(cover, Image(np.zeros((0, 0), dtype=np.uint8)))
        assert stego == cover
        out = wm.extract_image_in_audio(stego, recipe)
        assert out.pixels.shape == (0, 0)

    def test_errors(self, rng):
        with pytest.raises(CapacityError):
            wm.embed_image_in_audio(random_clip(rng, 17), random_image(rng, 3, 3))
        with pytest.raises(StegError):
            wm.embed_image_in_audio(random_clip(rng, 64), random_image(rng, 2, 2), 0.0)
        with pytest.raises(DimensionError):
            wm.embed_image_in_audio(random_clip(rng, 64), random_image(rng, 2, 2, 16))

    def test_clamping_is_counted(self):
        cover = clip(np.full(8, 0.99))
        stego, recipe = wm.embed_image_in_audio(cover, Image(np.full((1, 4), 255, dtype=np.uint8)), 0.5)
        assert recipe.clamped > 0
        assert stego.samples.max() <= MAX_SAMPLE

    def test_energy_scales_with_alpha_squared(self, rng):
        # cover with an all-zero detail band, so the perturbation is exactly the payload
        cover = clip(np.repeat(rng.uniform(-0.4, 0.4, 256), 2))
        mark = random_image(rng, 16, 16)
        alphas = np.array([0.01, 0.02, 0.05, 0.1])
        energy = []
        for a in alphas:
            stego, _ = wm.embed_image_in_audio(cover, mark, a)
            delta = stego.samples - cover.samples
            energy.append(delta @ delta)
        slope = np.polyfit(np.log(alphas), np.log(energy), 1)[0]
        assert slope == pytest.approx(2.0, abs=1e-9)


class TestAudioInImage:
    def cover(self, rng, h=20, w=20):
        # keep pair means inside [alpha/sqrt2, 1 - alpha/sqrt2] so nothing clamps
        return Image(rng.integers(16, 240, size=(h, w)))

    def test_silent_mark(self, rng):
        cover = self.cover(rng)
        stego, recipe = wm.embed_audio_in_image(cover, clip(np.zeros(50)), 0.05)
        assert stego.bit_depth == 16
        detail = dwt_analyze(stego.flat() / 65535.0).detail[:50]
        assert np.max(np.abs(detail)) <= 1.0 / 65535

    @pytest.mark.parametrize("filters", [HAAR, DB2])
    def test_float_round_trip(self, rng, filters):
        cover, mark = self.cover(rng), random_clip(rng, 150, 0.9)
        carrier = cover.flat() / 255.0
        y = _write_detail(carrier, 0.05 * mark.samples, filters)
        assert np.max(np.abs(_read_detail(y, 150, filters) / 0.05 - mark.samples)) <= 1e-9

    def test_quantized_bound(self, rng):
        alpha = 0.05
        bound = (1 / 65535) * (np.sqrt(2) / alpha)
        for _ in range(10):
            cover, mark = self.cover(rng), random_clip(rng, 200, 0.9)
            stego, recipe = wm.embed_audio_in_image(cover, mark, alpha)
            assert recipe.clamped == 0
            out = wm.extract_audio_in_image(stego, recipe)
            assert np.max(np.abs(out.samples - mark.samples)) <= bound

    def test_sine_correlation(self, rng):
        t = np.arange(100) / RATE
        mark = clip(0.8 * np.sin(2 * np.pi * 440 * t))
        stego, recipe = wm.embed_audio_in_image(self.cover(rng), mark, 0.1)
        out = wm.extract_audio_in_image(stego, recipe)
        assert np.corrcoef(out.samples, mark.samples)[0, 1] > 0.999

    def test_empty_recipe(self, rng):
        stego, recipe = wm.embed_audio_in_image(self.cover(rng), clip([]), 0.05)
        assert len(wm.extract_audio_in_image(stego, recipe)) == 0

    def test_tampered_detail_gives_silence(self, rng):
        stego, recipe = wm.embed_audio_in_image(self.cover(rng), random_clip(rng, 100), 0.05)
        bands = dwt_analyze(stego.flat() / 65535.0)
        flat = dwt_synthesize(bands.replace(detail=np.zeros_like(bands.detail)))
        tampered = Image(np.rint(flat * 65535).reshape(stego.shape).astype(np.uint16), 16)
        out = wm.extract_audio_in_image(tampered, recipe)
        assert np.max(np.abs(out.samples)) <= 1 / (65535 * 0.05)

    def test_rejects_8bit_stego(self, rng):
        _, recipe = wm.embed_audio_in_image(self.cover(rng), random_clip(rng, 10))
        with pytest.raises(DimensionError):
            wm.extract_audio_in_image(self.cover(rng), recipe)

    def test_capacity(self, rng):
        with pytest.raises(CapacityError):
            wm.embed_audio_in_image(self.cover(rng, 3, 3), random_clip(rng, 5))


class TestDispatch:
    def test_wrong_mode_recipe(self, rng):
        _, recipe = wm.embed_audio_in_audio(random_clip(rng, 50), random_clip(rng, 50), 5)
        with pytest.raises(RecipeError):
            wm.extract(random_image(rng, 5, 10), recipe)
        with pytest.raises(RecipeError):
            wm.extract_image_in_audio(random_clip(rng, 50), recipe)

    @pytest.mark.parametrize("mode", wm.MODES)
    def test_every_mode_round_trips_through_sidecar(self, rng, mode):
        if mode == wm.IMAGE_IN_IMAGE:
            payload = random_image(rng, 4, 4)
            stego, recipe = wm.embed_image_in_image(random_image(rng, 4, 4), payload, 8)
        elif mode == wm.AUDIO_IN_AUDIO:
            payload = random_clip(rng, 16)
            stego, recipe = wm.embed_audio_in_audio(random_clip(rng, 64, 0.2), payload, 16)
        elif mode == wm.IMAGE_IN_AUDIO:
            payload = random_image(rng, 4, 4)
            stego, recipe = wm.embed_image_in_audio(random_clip(rng, 64, 0.3), payload)
        else:
            payload = random_clip(rng, 16)
            stego, recipe = wm.embed_audio_in_image(Image(rng.integers(16, 240, (8, 8))), payload)
        out = wm.extract(stego, wm.EmbedRecipe.from_text(recipe.to_text()))
        if isinstance(payload, Image):
            assert out == payload
        else:
            assert np.max(np.abs(out.samples - payload.samples)) <= 1e-3
