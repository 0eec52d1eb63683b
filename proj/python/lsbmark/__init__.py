"""Keyed LSB watermarking for ARGB images.

Gray images are (h, w) uint8 arrays, ARGB images (h, w, 4) uint8 arrays
in a, r, g, b order. Keys are str (UTF-8, or "hex:..." for raw bytes) or bytes.
"""

from ._core import *  # noqa: F401,F403
from ._core import LsbmarkError

__all__ = [name for name in dir() if not name.startswith("_")]
