"""Reading and writing 8-bit grey images (PGM P2/P5, PNG gray/RGB)."""

from __future__ import annotations

import io
import os
import struct
import tempfile
import zlib
from pathlib import Path

import numpy as np

from .histogram import as_gray_image

PNG_SIGNATURE = b"\x89PNG\r\n\x1a\n"
_PGM_WHITESPACE = b" \t\n\r\v\f"


class ImageFormatError(ValueError):
    """Base class for undecodable image content."""


class MalformedHeaderError(ImageFormatError):
    pass


class UnsupportedFormatError(ImageFormatError):
    pass


class TruncatedDataError(ImageFormatError):
    pass


def luma(rgb: np.ndarray) -> np.ndarray:
    """Rec. 601 luma ``round(0.299 R + 0.587 G + 0.114 B)``, ties rounded up."""
    rgb = np.asarray(rgb, dtype=np.float64)
    y = 0.299 * rgb[..., 0] + 0.587 * rgb[..., 1] + 0.114 * rgb[..., 2]
    return np.clip(np.floor(y + 0.5), 0, 255).astype(np.uint8)


def load_image(data: bytes) -> np.ndarray:
    """Decode PGM or PNG bytes into a 2D ``uint8`` grey image."""
    if data.startswith(PNG_SIGNATURE):
        return _decode_png(data)
    if data[:2] in (b"P2", b"P5"):
        return _decode_pgm(data)
    raise MalformedHeaderError("malformed header: not a PGM (P2/P5) or PNG file")


def read_image(path) -> np.ndarray:
    return load_image(Path(path).read_bytes())


def _pgm_tokens(data: bytes, start: int, count: int) -> tuple[list[bytes], int]:
    """Read ``count`` whitespace-separated header tokens, skipping ``#`` comments."""
    tokens = []
    pos = start
    n = len(data)
    while len(tokens) < count:
        while pos < n and data[pos] in _PGM_WHITESPACE:
            pos += 1
        if pos < n and data[pos] == ord("#"):
            while pos < n and data[pos] not in b"\r\n":
                pos += 1
            continue
        if pos >= n:
            raise MalformedHeaderError("malformed header: unexpected end of PGM header")
        end = pos
        while end < n and data[end] not in _PGM_WHITESPACE and data[end] != ord("#"):
            end += 1
        tokens.append(data[pos:end])
        pos = end
    return tokens, pos


def _header_int(token: bytes, what: str) -> int:
    if not token.isdigit():
        raise MalformedHeaderError(f"malformed header: bad {what} {token!r}")
    return int(token)


def _decode_pgm(data: bytes) -> np.ndarray:
    magic = data[:2]
    (w, h, maxval), pos = _pgm_tokens(data, 2, 3)
    width = _header_int(w, "width")
    height = _header_int(h, "height")
    maxval = _header_int(maxval, "maxval")
    if width <= 0 or height <= 0:
        raise MalformedHeaderError("malformed header: width and height must be positive")
    if maxval != 255:
        raise UnsupportedFormatError(f"unsupported maxval {maxval} (only 255 is accepted)")
    size = width * height
    if magic == b"P5":
        if pos >= len(data) or data[pos] not in _PGM_WHITESPACE:
            raise MalformedHeaderError("malformed header: missing whitespace before raster")
        raster = data[pos + 1 : pos + 1 + size]
        if len(raster) < size:
            raise TruncatedDataError(f"truncated data: expected {size} bytes, got {len(raster)}")
        return np.frombuffer(raster, dtype=np.uint8).reshape(height, width).copy()

    body = data[pos:]
    # strip comments inside the plain raster as well
    lines = [line.split(b"#", 1)[0] for line in body.splitlines()]
    words = b" ".join(lines).split()
    if len(words) < size:
        raise TruncatedDataError(f"truncated data: expected {size} samples, got {len(words)}")
    try:
        values = np.array([int(v) for v in words[:size]], dtype=np.int64)
    except ValueError:
        raise MalformedHeaderError("malformed data: non-integer sample in P2 raster") from None
    if values.min() < 0 or values.max() > maxval:
        raise ImageFormatError("malformed data: sample outside [0, maxval]")
    return values.astype(np.uint8).reshape(height, width)


def _decode_png(data: bytes) -> np.ndarray:
    # Validate the IHDR ourselves so each failure mode has its own message,
    # then hand pixel decoding to Pillow.
    if len(data) < 33:
        raise TruncatedDataError("truncated data: PNG shorter than its IHDR chunk")
    length, ctype = struct.unpack(">I4s", data[8:16])
    if ctype != b"IHDR" or length != 13:
        raise MalformedHeaderError("malformed header: PNG does not start with IHDR")
    width, height, depth, color, _, _, interlace = struct.unpack(">IIBBBBB", data[16:29])
    crc = struct.unpack(">I", data[29:33])[0]
    if zlib.crc32(data[12:29]) & 0xFFFFFFFF != crc:
        raise MalformedHeaderError("malformed header: IHDR checksum mismatch")
    if width == 0 or height == 0:
        raise MalformedHeaderError("malformed header: width and height must be positive")
    if depth != 8:
        raise UnsupportedFormatError(f"unsupported bit depth {depth} (only 8-bit PNG)")
    if color not in (0, 2):
        raise UnsupportedFormatError(f"unsupported PNG colour type {color} (gray or RGB only)")

    from PIL import Image

    try:
        with Image.open(io.BytesIO(data)) as im:
            im.load()
            arr = np.asarray(im)
    except (OSError, SyntaxError, ValueError) as exc:
        raise TruncatedDataError(f"truncated data: cannot decode PNG raster ({exc})") from None
    if arr.ndim == 3:
        return luma(arr[..., :3])
    return arr.astype(np.uint8)


def encode_pgm(image) -> bytes:
    """Binary (P5) PGM encoding."""
    pixels = as_gray_image(image)
    h, w = pixels.shape
    return b"P5\n%d %d\n255\n" % (w, h) + np.ascontiguousarray(pixels).tobytes()


def encode_png(image) -> bytes:
    from PIL import Image

    buf = io.BytesIO()
    Image.fromarray(as_gray_image(image), mode="L").save(buf, format="PNG")
    return buf.getvalue()


def encode_image(image, path) -> bytes:
    """Encode as PNG when ``path`` ends in ``.png``, otherwise as P5 PGM."""
    if str(path).lower().endswith(".png"):
        return encode_png(image)
    return encode_pgm(image)


def write_bytes_atomic(path, data: bytes) -> None:
    """Write via a temporary sibling file so a failure never leaves a partial file."""
    path = Path(path)
    fd, tmp = tempfile.mkstemp(dir=path.parent or ".", prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "wb") as fh:
            fh.write(data)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def write_image(image, path) -> None:
    write_bytes_atomic(path, encode_image(image, path))
