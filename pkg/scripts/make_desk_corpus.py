"""Build the desk benchmark corpus from the images bundled with scikit-image.

Each image is reduced to luma, downscaled so its longest side is at most
256 pixels, and its contrast halved about its own mean, giving a
low-contrast grey image with the original brightness.

    python scripts/make_desk_corpus.py corpus/desk
"""

import argparse
from pathlib import Path

import numpy as np
import skimage.data as data
from skimage.transform import resize

from fimhe.imageio import encode_pgm, luma

# Bundled (no download) natural / photographic images.
SOURCES = [
    "astronaut", "brick", "camera", "cell", "chelsea", "clock", "coffee",
    "coins", "colorwheel", "grass", "gravel", "hubble_deep_field",
    "immunohistochemistry", "microaneurysms", "moon", "page", "retina",
    "rocket", "text", "motorcycle_left",
]
MAX_SIDE = 256
CONTRAST = 0.5


def _load(name):
    if name == "motorcycle_left":
        return data.stereo_motorcycle()[0]
    return getattr(data, name)()


def prepare(rgb_or_gray: np.ndarray) -> np.ndarray:
    img = np.asarray(rgb_or_gray)
    if img.ndim == 3:
        img = luma(img[..., :3])
    img = img.astype(np.float64)
    if img.max() <= 1.0:
        img = img * 255.0
    scale = MAX_SIDE / max(img.shape)
    if scale < 1:
        shape = (round(img.shape[0] * scale), round(img.shape[1] * scale))
        img = resize(img, shape, anti_aliasing=True, preserve_range=True)
    img = np.clip(np.floor(img + 0.5), 0, 255)
    mean = img.mean()
    low = mean + CONTRAST * (img - mean)
    return np.clip(np.floor(low + 0.5), 0, 255).astype(np.uint8)


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("outdir", type=Path)
    args = parser.parse_args()
    args.outdir.mkdir(parents=True, exist_ok=True)
    for name in SOURCES:
        img = prepare(_load(name))
        (args.outdir / f"{name}.pgm").write_bytes(encode_pgm(img))
        print(f"{name}: {img.shape[1]}x{img.shape[0]} range [{img.min()}, {img.max()}]")


if __name__ == "__main__":
    main()
