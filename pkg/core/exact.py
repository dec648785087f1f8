"""
Exact-zero helpers over sympy numbers and numpy object arrays.
"""

import numpy as np
import sympy


def is_zero(value) -> bool:
    return sympy.expand(value) == 0


def zeros(shape) -> np.ndarray:
    return np.zeros(shape, dtype=object)


def nonzero_count(values) -> int:
    """Number of entries of an array, matrix or iterable that do not expand to 0."""
    if isinstance(values, np.ndarray):
        values = values.flat
    return sum(1 for v in values if not is_zero(v))


def simplify_array(values: np.ndarray) -> np.ndarray:
    out = zeros(values.shape)
    for idx, v in np.ndenumerate(values):
        out[idx] = sympy.expand(v)
    return out
