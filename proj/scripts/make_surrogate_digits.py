#!/usr/bin/env python3
"""Build MNIST-format IDX files from the scikit-learn 8x8 digits set.

This sandbox has no network access, so the real MNIST files cannot be
downloaded. The acceptance and integration tests instead run the identical
pipeline (IDX load -> /255 -> PCA -> normalize -> train) on a surrogate:
the bundled 8x8 digits upscaled to 28x28 and augmented with small integer
shifts. Train and test images are generated from disjoint source images so
augmentation cannot leak test content into training.

Outputs gzip-compressed IDX3/IDX1 files under data/surrogate-mnist/.
"""
import gzip
import os
import struct

import numpy as np
from scipy.ndimage import zoom
from sklearn.datasets import load_digits

OUT_DIR = os.path.join(os.path.dirname(__file__), "..", "data", "surrogate-mnist")
TRAIN_PER_CLASS = 400
TEST_PER_CLASS = 200
SEED = 20260826


def upscale(img8):
    img = zoom(img8.reshape(8, 8) / 16.0, 3.5, order=1)
    return np.clip(img * 255.0, 0, 255).astype(np.uint8)


def augment(img28, rng):
    dy, dx = rng.integers(-2, 3, size=2)
    out = np.zeros_like(img28)
    ys = slice(max(0, dy), 28 + min(0, dy))
    xs = slice(max(0, dx), 28 + min(0, dx))
    out[ys, xs] = img28[slice(max(0, -dy), 28 + min(0, -dy)), slice(max(0, -dx), 28 + min(0, -dx))]
    noise = rng.normal(0, 6, size=out.shape)
    return np.clip(out.astype(float) + noise, 0, 255).astype(np.uint8)


def build_split(sources, per_class, rng):
    images, labels = [], []
    for cls, imgs in sources.items():
        for i in range(per_class):
            base = imgs[i % len(imgs)]
            images.append(augment(base, rng))
            labels.append(cls)
    order = rng.permutation(len(images))
    return np.stack(images)[order], np.array(labels, dtype=np.uint8)[order]


def write_idx(path, images=None, labels=None):
    with gzip.open(path, "wb") as f:
        if images is not None:
            n, h, w = images.shape
            f.write(struct.pack(">IIII", 0x00000803, n, h, w))
            f.write(images.tobytes())
        else:
            f.write(struct.pack(">II", 0x00000801, len(labels)))
            f.write(labels.tobytes())


def main():
    rng = np.random.default_rng(SEED)
    digits = load_digits()
    train_src, test_src = {}, {}
    for cls in range(10):
        idx = np.where(digits.target == cls)[0]
        cut = int(len(idx) * 0.75)
        train_src[cls] = [upscale(digits.data[i]) for i in idx[:cut]]
        test_src[cls] = [upscale(digits.data[i]) for i in idx[cut:]]

    train_x, train_y = build_split(train_src, TRAIN_PER_CLASS, rng)
    test_x, test_y = build_split(test_src, TEST_PER_CLASS, rng)

    os.makedirs(OUT_DIR, exist_ok=True)
    write_idx(os.path.join(OUT_DIR, "train-images-idx3-ubyte.gz"), images=train_x)
    write_idx(os.path.join(OUT_DIR, "train-labels-idx1-ubyte.gz"), labels=train_y)
    write_idx(os.path.join(OUT_DIR, "t10k-images-idx3-ubyte.gz"), images=test_x)
    write_idx(os.path.join(OUT_DIR, "t10k-labels-idx1-ubyte.gz"), labels=test_y)
    print(f"wrote {len(train_y)} train / {len(test_y)} test images to {OUT_DIR}")


if __name__ == "__main__":
    main()
