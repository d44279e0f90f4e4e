"""Dense exhaustive value tables for brute-force checks.

Synthesizing a multilinear polynomial on all 2^N configurations is the
same butterfly used for the transform, applied to the (integer-scaled)
coefficient vector.  Intermediate butterfly values are partial signed
subset sums, so everything stays within sum(|scaled coefficients|); when
that bound fits int64 the loop runs vectorized in numpy, otherwise it
falls back to exact Python integers.  Either way the result is exact.
"""

from __future__ import annotations

import math
from typing import Sequence

import numpy as np

from .poly import Polynomial

_INT64_SAFE = 1 << 62


def dense_int_table(
    p: Polynomial, variables: Sequence[int] | None = None
) -> tuple["np.ndarray | list[int]", int]:
    """(values * scale, scale) on all 2^N configurations of `variables`.

    Index convention matches the transform: bit j-1 of the index is 0 when
    the j-th listed variable is +1.  `variables` must cover the support.
    """
    vars_ = sorted(p.variables if variables is None else variables)
    missing = p.support - set(vars_)
    if missing:
        raise ValueError(f"table variables must cover the support; missing {sorted(missing)}")
    d = len(vars_)
    pos = {v: j for j, v in enumerate(vars_)}
    coeffs = list(p.terms.values())
    scale = math.lcm(*(c.denominator for c in coeffs)) if coeffs else 1
    size = 1 << d
    bound = sum(abs(c.numerator) * (scale // c.denominator) for c in coeffs)
    if bound < _INT64_SAFE:
        vec = np.zeros(size, dtype=np.int64)
        for mono, c in p.terms.items():
            y = 0
            for v in mono:
                y |= 1 << pos[v]
            vec[y] = c.numerator * (scale // c.denominator)
        _butterfly_np(vec)
        return vec, scale
    vec_py = [0] * size
    for mono, c in p.terms.items():
        y = 0
        for v in mono:
            y |= 1 << pos[v]
        vec_py[y] = c.numerator * (scale // c.denominator)
    h = 1
    while h < size:
        for start in range(0, size, h * 2):
            for i in range(start, start + h):
                a, b = vec_py[i], vec_py[i + h]
                vec_py[i], vec_py[i + h] = a + b, a - b
        h *= 2
    return vec_py, scale


def _butterfly_np(vec: "np.ndarray") -> None:
    n = len(vec)
    h = 1
    while h < n:
        blocks = vec.reshape(-1, 2 * h)
        a = blocks[:, :h].copy()
        b = blocks[:, h:].copy()
        blocks[:, :h] = a + b
        blocks[:, h:] = a - b
        h *= 2


def decode_config(x: int, vars_: Sequence[int]) -> dict[int, int]:
    """Assignment for configuration index x over the sorted variable list."""
    return {v: -1 if (x >> j) & 1 else 1 for j, v in enumerate(vars_)}
