#!/usr/bin/env python3
"""
Tests for raster types and low-level image operators.
"""

import numpy as np
import pytest

from src.imaging.core import (
    GrayImage,
    RgbImage,
    ThermalFrame,
    blur_array,
    box_filter,
    box_mean,
    gaussian_blur,
    gaussian_kernel,
    interpolated_percentile,
    luminance,
    percentile,
    resize_bilinear,
    rgb_to_ycbcr,
    stretch,
    ycbcr_to_rgb,
)


def sort_interpolate(values, p):
    """Reference order statistic: s[floor(r)] + frac(r) * (s[floor(r)+1] - s[floor(r)])."""
    s = sorted(float(v) for v in np.ravel(values))
    r = p / 100.0 * (len(s) - 1)
    lo = int(np.floor(r))
    hi = min(lo + 1, len(s) - 1)
    return s[lo] + (r - lo) * (s[hi] - s[lo])


def ramp101():
    return GrayImage.from_flat(101, 1, np.linspace(0.0, 1.0, 101))


class TestImageTypes:

    def test_images_are_read_only(self):
        img = GrayImage.full(3, 2, 0.25)
        with pytest.raises(ValueError):
            img.data[0, 0] = 1.0

    def test_from_flat_checks_length(self):
        with pytest.raises(ValueError):
            GrayImage.from_flat(2, 2, [0.0, 1.0, 0.5])
        with pytest.raises(ValueError):
            RgbImage.from_flat(1, 1, [0.0, 1.0])

    def test_from_flat_is_row_major(self):
        img = GrayImage.from_flat(3, 2, [0, 1, 2, 3, 4, 5])
        assert img.width == 3 and img.height == 2
        assert img.data[1, 0] == 3

    def test_thermal_rejects_out_of_range_counts(self):
        with pytest.raises(ValueError):
            ThermalFrame(np.array([[70000]]))
        frame = ThermalFrame(np.array([[0, 65535]]))
        assert frame.counts.dtype == np.uint16

    def test_zero_sized_rejected(self):
        with pytest.raises(ValueError):
            GrayImage(np.zeros((0, 3)))


class TestPercentile:

    def test_midpoint_of_two_samples(self):
        assert percentile(GrayImage.from_flat(2, 1, [0.0, 1.0]), 50) == 0.5

    def test_constant_image(self):
        assert percentile(GrayImage.full(4, 4, 0.0), 98) == 0.0

    def test_ramp_p2(self):
        assert percentile(ramp101(), 2) == pytest.approx(0.02, abs=1e-12)

    def test_empty_input(self):
        with pytest.raises(ValueError, match="empty input"):
            interpolated_percentile(np.array([]), 50)

    def test_p_out_of_range(self):
        with pytest.raises(ValueError):
            interpolated_percentile(np.array([1.0]), 101)

    def test_matches_sort_oracle(self, rng):
        for _ in range(50):
            img = GrayImage(rng.random((rng.integers(1, 20), rng.integers(1, 20))))
            p = float(rng.uniform(0, 100))
            assert percentile(img, p) == pytest.approx(sort_interpolate(img.data, p), abs=1e-7)

    def test_monotone_in_p(self, rng):
        img = GrayImage(rng.random((16, 16)))
        values = [percentile(img, p) for p in np.linspace(0, 100, 41)]
        assert all(a <= b for a, b in zip(values, values[1:]))


class TestStretch:

    def test_constant_gives_half(self):
        out = stretch(GrayImage.full(5, 3, 0.3), 2, 98)
        assert np.all(out.data == 0.5)

    def test_identity_on_full_range_ramp(self):
        img = ramp101()
        np.testing.assert_allclose(stretch(img, 0, 100).data, img.data, atol=1e-12)

    def test_ramp_with_default_percentiles(self):
        out = stretch(ramp101(), 2, 98).data[0]
        assert out[2] == pytest.approx(0.0, abs=1e-12)
        assert out[98] == pytest.approx(1.0, abs=1e-12)
        assert out[50] == pytest.approx(0.5, abs=1e-12)
        assert out.min() >= 0.0 and out.max() <= 1.0

    def test_matches_reference(self, rng):
        for _ in range(50):
            data = rng.random((12, 9))
            lo = sort_interpolate(data, 2)
            hi = sort_interpolate(data, 98)
            expected = np.clip((data - lo) / (hi - lo), 0, 1)
            np.testing.assert_allclose(stretch(GrayImage(data), 2, 98).data, expected, atol=1e-7)

    def test_affine_invariance(self, rng):
        data = rng.random((20, 20))
        base = stretch(GrayImage(data), 2, 98).data
        shifted = stretch(GrayImage(3.5 * data + 0.25), 2, 98).data
        np.testing.assert_allclose(shifted, base, atol=1e-9)

    def test_bad_percentiles(self):
        with pytest.raises(ValueError):
            stretch(ramp101(), 98, 2)


class TestResize:

    def test_same_size_is_identical(self, rng):
        img = GrayImage(rng.random((7, 5)))
        out = resize_bilinear(img, 5, 7)
        assert np.array_equal(out.data, img.data)

    def test_constant_survives(self):
        out = resize_bilinear(GrayImage.full(3, 2, 0.37), 17, 11)
        assert np.all(out.data == 0.37)

    def test_half_pixel_alignment(self):
        out = resize_bilinear(GrayImage.from_flat(2, 1, [0.0, 1.0]), 4, 1)
        np.testing.assert_allclose(out.data[0], [0.0, 0.25, 0.75, 1.0], atol=1e-15)

    def test_range_is_bounded(self, rng):
        img = GrayImage(rng.random((6, 8)))
        out = resize_bilinear(img, 23, 13)
        assert out.data.min() >= img.data.min() - 1e-12
        assert out.data.max() <= img.data.max() + 1e-12

    def test_invalid_size(self):
        with pytest.raises(ValueError):
            resize_bilinear(GrayImage.full(2, 2, 0.0), 0, 2)


class TestGaussianBlur:

    def test_even_kernel_rejected(self):
        with pytest.raises(ValueError, match="kernel width must be odd"):
            gaussian_blur(GrayImage.full(4, 4, 0.0), 4)

    def test_k1_is_identity(self, rng):
        img = GrayImage(rng.random((5, 5)))
        assert np.array_equal(gaussian_blur(img, 1).data, img.data)

    def test_constant_preserved(self):
        out = gaussian_blur(GrayImage.full(9, 6, 0.42), 7)
        np.testing.assert_allclose(out.data, 0.42, atol=1e-12)

    def test_impulse_reproduces_taps(self):
        row = np.zeros(15)
        row[7] = 1.0
        out = gaussian_blur(GrayImage(row[None, :]), 7).data[0]

        sigma = 1.4
        offsets = np.arange(-3, 4)
        taps = np.exp(-offsets ** 2 / (2 * sigma ** 2))
        taps /= taps.sum()
        np.testing.assert_allclose(out[4:11], taps, atol=1e-12)
        np.testing.assert_allclose(gaussian_kernel(7), taps, atol=1e-15)

    def test_mean_preserved_on_interior_image(self, rng):
        data = np.zeros((64, 64))
        data[16:48, 16:48] = rng.random((32, 32))
        out = gaussian_blur(GrayImage(data), 7)
        assert out.data.mean() == pytest.approx(data.mean(), abs=1e-4)

    def test_matches_separable_reference(self, rng):
        data = rng.random((21, 34))
        np.testing.assert_allclose(gaussian_blur(GrayImage(data), 9).data,
                                   separable_blur(data, 9), atol=1e-12)

    def test_channels_blurred_independently(self, rng):
        data = rng.random((12, 16, 3))
        out = blur_array(data, 5)
        assert out.shape == data.shape
        for c in range(3):
            np.testing.assert_allclose(out[..., c], separable_blur(data[..., c], 5), atol=1e-12)

    def test_strided_input_accepted(self, rng):
        data = rng.random((20, 14))
        np.testing.assert_allclose(blur_array(data.T, 5), separable_blur(data.T, 5), atol=1e-12)


def separable_blur(data, k):
    """Rows then columns with edge-replicated padding."""
    taps = gaussian_kernel(k)
    half = k // 2
    padded = np.pad(data, half, mode='edge')
    rows = sum(w * padded[:, i:i + data.shape[1]] for i, w in enumerate(taps))
    return sum(w * rows[i:i + data.shape[0], :] for i, w in enumerate(taps))


def direct_box(data, r):
    padded = np.pad(data, r, mode='edge')
    out = np.empty_like(data)
    for y in range(data.shape[0]):
        for x in range(data.shape[1]):
            out[y, x] = padded[y:y + 2 * r + 1, x:x + 2 * r + 1].mean()
    return out


class TestBoxFilter:

    def test_r0_identity(self, rng):
        img = GrayImage(rng.random((4, 6)))
        assert np.array_equal(box_filter(img, 0).data, img.data)

    def test_constant_preserved(self):
        np.testing.assert_allclose(box_filter(GrayImage.full(10, 10, 0.8), 3).data, 0.8, atol=1e-12)

    def test_centered_impulse(self):
        data = np.zeros((3, 3))
        data[1, 1] = 1.0
        out = box_filter(GrayImage(data), 1)
        assert out.data[1, 1] == pytest.approx(1.0 / 9.0, abs=1e-15)

    def test_matches_direct_window_sums(self, rng):
        data = rng.random((32, 32))
        for r in (1, 2, 5):
            np.testing.assert_allclose(box_filter(GrayImage(data), r).data, direct_box(data, r), atol=1e-5)

    def test_radius_wider_than_image(self, rng):
        data = rng.random((6, 9))
        np.testing.assert_allclose(box_mean(data, 7), direct_box(data, 7), atol=1e-12)

    def test_negative_radius(self):
        with pytest.raises(ValueError):
            box_filter(GrayImage.full(2, 2, 0.0), -1)


class TestColor:

    def test_gray_pixel(self):
        y, cb, cr = rgb_to_ycbcr(RgbImage.full(2, 2, (0.4, 0.4, 0.4)))
        np.testing.assert_allclose(y.data, 0.4, atol=1e-15)
        np.testing.assert_allclose(cb.data, 0.5, atol=1e-15)
        np.testing.assert_allclose(cr.data, 0.5, atol=1e-15)

    def test_pure_red_luma(self):
        assert luminance(RgbImage.full(1, 1, (1.0, 0.0, 0.0))).data[0, 0] == pytest.approx(0.299)

    def test_round_trip(self, rng):
        img = RgbImage(rng.random((10, 10, 3)))
        out = ycbcr_to_rgb(*rgb_to_ycbcr(img))
        assert np.max(np.abs(out.data - img.data)) < 1e-5

    def test_mismatched_planes(self):
        with pytest.raises(ValueError):
            ycbcr_to_rgb(GrayImage.full(2, 2, 0.5), GrayImage.full(3, 2, 0.5), GrayImage.full(2, 2, 0.5))
