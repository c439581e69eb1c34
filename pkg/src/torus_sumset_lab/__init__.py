"""Exact sumset arithmetic on the circle, on Z_p and on the real line."""

from .circle import (
    FULL,
    EMPTY,
    FULL_CIRCLE,
    CircleInterval,
    SimpleSet,
    canonicalize,
    complement,
    covering_interval,
    dilate,
    intersect,
    interval,
    measure,
    n_diameter,
    preimage_divide,
    simple_set,
    sumset,
)
from .literals import (
    SetLiteralError,
    format_circle_set,
    format_real_set,
    format_zp_set,
    parse_circle_set,
    parse_real_set,
    parse_set_literal,
    parse_zp_set,
)
from .zp import ZpSet, abs_p, dilate_zp, discretize, sumset_zp

__version__ = "0.1.0"
