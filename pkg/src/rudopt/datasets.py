"""Image dataset ingestion: IDX container parsing, minibatching, synthetic data.

The IDX image container is the big-endian binary layout used by the MNIST
distribution: magic 0x00000803, then 32-bit count/rows/cols, then
count*rows*cols unsigned bytes, one byte per pixel.
"""

import struct
from dataclasses import dataclass

import numpy as np

__all__ = [
    "ImageDataset",
    "IdxFormatError",
    "IDX_IMAGE_MAGIC",
    "parse_idx_images",
    "write_idx_images",
    "minibatches",
    "make_synthetic_images",
]

IDX_IMAGE_MAGIC = 0x00000803


class IdxFormatError(ValueError):
    """Malformed IDX data; the message names the offending byte offset."""


@dataclass(frozen=True)
class ImageDataset:
    """Images as a (count, rows*cols) matrix of floats in [0, 1]."""

    images: np.ndarray
    rows: int
    cols: int

    def __post_init__(self):
        if self.images.ndim != 2 or self.images.shape[1] != self.rows * self.cols:
            raise ValueError(
                f"images shape {self.images.shape} inconsistent with "
                f"{self.rows}x{self.cols} pixels"
            )
        if len(self.images) and (self.images.min() < 0.0 or self.images.max() > 1.0):
            raise ValueError("pixel values must lie in [0, 1]")

    @property
    def count(self) -> int:
        return self.images.shape[0]


def parse_idx_images(data: bytes) -> ImageDataset:
    """Parse an IDX image byte stream, scaling pixels by 1/255 into [0, 1]."""
    if len(data) < 16:
        raise IdxFormatError(f"truncated IDX header: only {len(data)} bytes at offset 0")
    magic, count, rows, cols = struct.unpack(">IIII", data[:16])
    if magic != IDX_IMAGE_MAGIC:
        raise IdxFormatError(
            f"bad magic 0x{magic:08x} at offset 0 (expected 0x{IDX_IMAGE_MAGIC:08x})"
        )
    expected = count * rows * cols
    payload = data[16:]
    if len(payload) < expected:
        raise IdxFormatError(
            f"truncated IDX payload: data ends at offset {16 + len(payload)}, "
            f"expected {16 + expected} bytes"
        )
    if len(payload) > expected:
        raise IdxFormatError(f"trailing data at offset {16 + expected}")
    pixels = np.frombuffer(payload, dtype=np.uint8).astype(np.float64) / 255.0
    return ImageDataset(images=pixels.reshape(count, rows * cols), rows=rows, cols=cols)


def write_idx_images(dataset: ImageDataset) -> bytes:
    """Serialize a dataset back to IDX bytes (inverse of parse_idx_images)."""
    header = struct.pack(">IIII", IDX_IMAGE_MAGIC, dataset.count, dataset.rows, dataset.cols)
    pixels = np.round(dataset.images * 255.0).astype(np.uint8)
    return header + pixels.tobytes()


def minibatches(dataset: ImageDataset, batch_size: int, seed: int):
    """Seeded shuffled index batches; a final short batch is dropped."""
    if not 0 < batch_size <= dataset.count:
        raise ValueError(
            f"batch_size must be in [1, {dataset.count}], got {batch_size}"
        )
    order = np.random.default_rng(seed).permutation(dataset.count)
    n_batches = dataset.count // batch_size
    return [order[i * batch_size:(i + 1) * batch_size] for i in range(n_batches)]


def make_synthetic_images(count: int, seed: int, rows: int = 28, cols: int = 28) -> ImageDataset:
    """Seeded synthetic stand-ins for handwritten digits.

    Each image is a sum of a few random Gaussian blobs on a dark
    background, clipped to [0, 1] and quantized to the 256 byte levels so
    the IDX round trip is exact.  The blobs give the set a low-dimensional
    structure an autoencoder can actually learn.
    """
    if count < 1:
        raise ValueError(f"count must be >= 1, got {count}")
    rng = np.random.default_rng(seed)
    yy, xx = np.mgrid[0:rows, 0:cols]
    images = np.zeros((count, rows, cols))
    for i in range(count):
        for _ in range(rng.integers(2, 5)):
            cy = rng.uniform(0.2 * rows, 0.8 * rows)
            cx = rng.uniform(0.2 * cols, 0.8 * cols)
            sigma = rng.uniform(0.06, 0.16) * min(rows, cols)
            amp = rng.uniform(0.5, 1.0)
            images[i] += amp * np.exp(-((yy - cy) ** 2 + (xx - cx) ** 2) / (2.0 * sigma**2))
    images = np.round(np.clip(images, 0.0, 1.0) * 255.0) / 255.0
    return ImageDataset(images=images.reshape(count, rows * cols), rows=rows, cols=cols)
