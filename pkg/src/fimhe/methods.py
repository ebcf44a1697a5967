"""Method identifiers and dispatch from a method to its grey-level map."""

from __future__ import annotations

from enum import Enum

import numpy as np

from . import baselines
from .adaptive import fimhe_map
from .histogram import GreyLevelMap, HistogramLike, as_gray_image, compute_histogram


class MethodId(str, Enum):
    HE = "he"
    BBHE = "bbhe"
    DSIHE = "dsihe"
    RSIHE = "rsihe"
    BHEPL = "bhepl"
    MHE = "mhe"
    FIMHE = "fimhe"
    # Reserved so reports stay comparable if these are added later.
    BHEPL_D = "bhepl-d"
    ESIHE = "esihe"

    @property
    def label(self) -> str:
        return self.name.replace("_", "-")

    @property
    def implemented(self) -> bool:
        return self not in _UNIMPLEMENTED


_UNIMPLEMENTED = frozenset({MethodId.BHEPL_D, MethodId.ESIHE})

IMPLEMENTED = tuple(m for m in MethodId if m.implemented)

DEFAULT_RSIHE_DEPTH = 2


class UnknownMethodError(ValueError):
    pass


def parse_method(token: str) -> MethodId:
    try:
        method = MethodId(token.strip().lower())
    except ValueError:
        raise UnknownMethodError(f"unknown method {token!r}") from None
    if not method.implemented:
        raise UnknownMethodError(f"method {method.label} is not implemented")
    return method


def parse_methods(text: str) -> list[MethodId]:
    """Parse a comma-separated method list; ``all`` expands to every implemented method."""
    methods: list[MethodId] = []
    for token in text.split(","):
        token = token.strip()
        if not token:
            continue
        found = list(IMPLEMENTED) if token.lower() == "all" else [parse_method(token)]
        methods.extend(m for m in found if m not in methods)
    if not methods:
        raise UnknownMethodError("no methods given")
    return methods


def grey_level_map(
    method: MethodId, hist: HistogramLike, rsihe_depth: int = DEFAULT_RSIHE_DEPTH
) -> GreyLevelMap:
    method = MethodId(method)
    if method is MethodId.FIMHE:
        return fimhe_map(hist)
    if method is MethodId.RSIHE:
        return baselines.rsihe(hist, rsihe_depth)
    if method is MethodId.HE:
        return baselines.classic_he(hist)
    if method is MethodId.BBHE:
        return baselines.bbhe(hist)
    if method is MethodId.DSIHE:
        return baselines.dsihe(hist)
    if method is MethodId.BHEPL:
        return baselines.bhepl(hist)
    if method is MethodId.MHE:
        return baselines.mhe(hist)
    raise UnknownMethodError(f"method {method.label} is not implemented")


def apply_method(
    method: MethodId, image, rsihe_depth: int = DEFAULT_RSIHE_DEPTH
) -> np.ndarray:
    pixels = as_gray_image(image)
    return grey_level_map(method, compute_histogram(pixels), rsihe_depth).apply(pixels)
