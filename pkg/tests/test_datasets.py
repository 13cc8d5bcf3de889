"""IDX container parsing/writing, minibatching, synthetic image generation."""

import struct

import numpy as np
import pytest
from numpy.testing import assert_allclose

from rudopt import (
    IdxFormatError,
    ImageDataset,
    make_synthetic_images,
    minibatches,
    parse_idx_images,
    write_idx_images,
)

MAGIC = 0x00000803


def idx_bytes(count, rows, cols, payload):
    return struct.pack(">IIII", MAGIC, count, rows, cols) + bytes(payload)


class TestParse:
    def test_single_image_scaling(self):
        ds = parse_idx_images(idx_bytes(1, 2, 2, [0, 255, 128, 64]))
        assert ds.count == 1 and ds.rows == 2 and ds.cols == 2
        assert_allclose(ds.images[0], [0.0, 1.0, 128 / 255, 64 / 255])

    def test_label_magic_rejected(self):
        data = struct.pack(">IIII", 0x00000801, 1, 2, 2) + bytes(4)
        with pytest.raises(IdxFormatError, match="0x00000801"):
            parse_idx_images(data)

    def test_truncated_payload_names_offset(self):
        data = idx_bytes(2, 28, 28, bytes(1567))
        with pytest.raises(IdxFormatError, match=str(16 + 1567)):
            parse_idx_images(data)

    def test_trailing_bytes_rejected(self):
        data = idx_bytes(1, 2, 2, bytes(5))
        with pytest.raises(IdxFormatError, match=str(16 + 4)):
            parse_idx_images(data)

    def test_short_header_rejected(self):
        with pytest.raises(IdxFormatError, match="offset 0"):
            parse_idx_images(b"\x00\x00\x08")

    def test_pixels_land_in_unit_interval(self):
        rng = np.random.default_rng(0)
        payload = rng.integers(0, 256, size=3 * 4 * 4, dtype=np.uint8)
        ds = parse_idx_images(idx_bytes(3, 4, 4, payload.tobytes()))
        assert ds.images.min() >= 0.0 and ds.images.max() <= 1.0


class TestRoundTrip:
    def test_write_then_parse_byte_exact(self):
        rng = np.random.default_rng(1)
        payload = rng.integers(0, 256, size=5 * 3 * 3, dtype=np.uint8).tobytes()
        original = idx_bytes(5, 3, 3, payload)
        assert write_idx_images(parse_idx_images(original)) == original

    def test_synthetic_images_survive_round_trip(self):
        ds = make_synthetic_images(12, seed=3, rows=10, cols=10)
        again = parse_idx_images(write_idx_images(ds))
        assert np.array_equal(again.images, ds.images)
        assert again.rows == ds.rows and again.cols == ds.cols


class TestMinibatches:
    def _dataset(self, count):
        return ImageDataset(np.zeros((count, 4)), rows=2, cols=2)

    def test_even_partition_covers_everything(self):
        batches = minibatches(self._dataset(6), 2, seed=0)
        assert len(batches) == 3
        assert sorted(np.concatenate(batches).tolist()) == list(range(6))

    def test_short_final_batch_dropped(self):
        batches = minibatches(self._dataset(5), 2, seed=0)
        assert len(batches) == 2
        assert sum(len(b) for b in batches) == 4

    def test_same_seed_same_batches(self):
        a = minibatches(self._dataset(30), 7, seed=5)
        b = minibatches(self._dataset(30), 7, seed=5)
        assert all(np.array_equal(x, y) for x, y in zip(a, b))

    def test_rejects_bad_batch_size(self):
        with pytest.raises(ValueError):
            minibatches(self._dataset(4), 0, seed=0)
        with pytest.raises(ValueError):
            minibatches(self._dataset(4), 5, seed=0)


class TestSynthetic:
    def test_values_and_shape(self):
        ds = make_synthetic_images(8, seed=2)
        assert ds.images.shape == (8, 28 * 28)
        assert ds.images.min() >= 0.0 and ds.images.max() <= 1.0
        # blobs actually produce signal, not a black frame
        assert ds.images.max() > 0.5

    def test_deterministic(self):
        a = make_synthetic_images(4, seed=9)
        b = make_synthetic_images(4, seed=9)
        assert np.array_equal(a.images, b.images)

    def test_dataset_validates_pixel_range(self):
        with pytest.raises(ValueError):
            ImageDataset(np.full((1, 4), 1.5), rows=2, cols=2)
        with pytest.raises(ValueError):
            ImageDataset(np.zeros((1, 5)), rows=2, cols=2)
