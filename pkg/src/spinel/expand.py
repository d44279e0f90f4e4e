"""Multilinear expansion of real functions on {+1,-1}^d.

Every real function F on the d-dimensional spin cube has a unique
multilinear representation F(s) = sum_S c_S prod_{i in S} s_i.  This
module recovers the coefficients three independent ways:

* ``fwht``          -- the fast Walsh-Hadamard butterfly, O(d 2^d);
* ``direct_expand`` -- the defining Walsh sums, O(4^d), kept deliberately
                       naive so it can serve as the oracle for everything
                       else;
* ``symmetric_coeffs`` / ``signed_symmetric_expand`` -- closed binomial
                       formulas for -|sigma_1 s_1 + ... + sigma_n s_n|
                       with sigma_i in {+1,-1,0}.

``expand_neg_abs`` combines evaluation and transform to turn -|P(s)| into
a polynomial, the step that powers spin elimination.

Index convention (wire contract): configuration x in {0..2^d-1} has
bit j-1 equal to 0 when the j-th variable is +1 and equal to 1 when it is
-1; coefficient index y has bit j-1 set iff the j-th variable belongs to
the monomial.  "j-th variable" means position in the sorted variable
list, so for variables 1..d it is s_j itself.

All arithmetic is exact.  Hot paths scale coefficients to integers by the
common denominator and transform machine integers, which is bit-identical
to transforming Fractions.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Callable, Iterable, Sequence

from .poly import Polynomial, RationalLike

DEFAULT_NEIGHBORHOOD_CAP = 22
DIRECT_EXPAND_CAP = 16
NEIGHBORHOOD_CAP_ENV = "SPINEL_NEIGHBORHOOD_CAP"


class CapExceeded(ValueError):
    """A table of 2^d values would exceed the configured cap on d."""


def neighborhood_cap() -> int:
    """Global FWHT cap; SPINEL_NEIGHBORHOOD_CAP overrides the default."""
    raw = os.environ.get(NEIGHBORHOOD_CAP_ENV)
    if raw is None:
        return DEFAULT_NEIGHBORHOOD_CAP
    cap = int(raw)
    if cap < 1:
        raise ValueError(f"{NEIGHBORHOOD_CAP_ENV} must be positive, got {cap}")
    return cap


def spin_config(x: int, d: int) -> tuple[int, ...]:
    """Decode configuration index x: bit j-1 clear means variable j is +1."""
    return tuple(-1 if (x >> j) & 1 else 1 for j in range(d))


@dataclass(frozen=True)
class ValueTable:
    """Values of a function on all 2^d configurations, indexed as above."""

    d: int
    values: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.values) != 1 << self.d:
            raise ValueError(
                f"expected {1 << self.d} values for d={self.d}, got {len(self.values)}"
            )

    @classmethod
    def from_values(cls, values: Sequence[RationalLike]) -> "ValueTable":
        n = len(values)
        if n == 0 or n & (n - 1):
            raise ValueError(f"table length {n} is not a power of two")
        return cls(n.bit_length() - 1, tuple(Fraction(v) for v in values))

    @classmethod
    def from_function(cls, d: int, fn: Callable[[tuple[int, ...]], RationalLike]) -> "ValueTable":
        return cls(d, tuple(Fraction(fn(spin_config(x, d))) for x in range(1 << d)))


def _butterfly(vec: list) -> None:
    """In-place unnormalized Walsh-Hadamard transform (self-inverse up to 2^d)."""
    n = len(vec)
    h = 1
    while h < n:
        for start in range(0, n, h * 2):
            for i in range(start, start + h):
                a, b = vec[i], vec[i + h]
                vec[i], vec[i + h] = a + b, a - b
        h *= 2


def _scaled_ints(values: Iterable[Fraction]) -> tuple[list[int], int]:
    vals = [Fraction(v) for v in values]
    scale = math.lcm(*(v.denominator for v in vals)) if vals else 1
    return [v.numerator * (scale // v.denominator) for v in vals], scale


def fwht(values: Sequence[RationalLike]) -> list[Fraction]:
    """Normalized Walsh coefficients of a 2^d value table.

    The butterfly result divided by 2^d; output index y names the monomial
    with variable j present iff bit j-1 of y is set.
    """
    n = len(values)
    if n == 0 or n & (n - 1):
        raise ValueError(f"table length {n} is not a power of two")
    vec = [Fraction(v) for v in values]
    _butterfly(vec)
    return [v / n for v in vec]


def direct_expand(
    table: ValueTable | Sequence[RationalLike],
    var_ids: Sequence[int] | None = None,
    cap: int = DIRECT_EXPAND_CAP,
) -> Polynomial:
    """Multilinear polynomial through the defining O(4^d) Walsh sums.

    Independent of the butterfly: each coefficient is the plain sum
    (1/2^d) sum_x F(x) * (-1)^popcount(x & y).  This is the oracle the
    fast paths are tested against.
    """
    if not isinstance(table, ValueTable):
        table = ValueTable.from_values(table)
    d = table.d
    if d > cap:
        raise CapExceeded(f"direct expansion over d={d} variables exceeds cap {cap}")
    ids = tuple(var_ids) if var_ids is not None else tuple(range(1, d + 1))
    if len(ids) != d:
        raise ValueError(f"expected {d} variable ids, got {len(ids)}")
    ints, scale = _scaled_ints(table.values)
    denom = scale << d
    terms: dict[tuple[int, ...], Fraction] = {}
    for y in range(1 << d):
        total = 0
        for x, v in enumerate(ints):
            total += -v if (x & y).bit_count() & 1 else v
        if total:
            mono = tuple(sorted(ids[j] for j in range(d) if (y >> j) & 1))
            terms[mono] = Fraction(total, denom)
    return Polynomial(terms, ids)


def expand_neg_abs(p: Polynomial, cap: int | None = None) -> Polynomial:
    """The unique multilinear F with F(s) = -|P(s)| on every configuration.

    Evaluates P on all 2^d configurations of its support by the synthesis
    butterfly, negates absolute values, and transforms back; exact
    throughout.
    """
    variables = sorted(p.support)
    d = len(variables)
    effective_cap = neighborhood_cap() if cap is None else cap
    if d > effective_cap:
        raise CapExceeded(
            f"-|P| expansion needs a 2^{d} table; d={d} exceeds cap {effective_cap}"
        )
    if d == 0:
        if p.is_zero():
            return Polynomial.zero(p.variables)
        return Polynomial.constant(-abs(p.constant_term), p.variables)
    pos = {v: j for j, v in enumerate(variables)}
    coeffs = [Fraction(0)] * (1 << d)
    for mono, c in p.terms.items():
        y = 0
        for v in mono:
            y |= 1 << pos[v]
        coeffs[y] = c
    ints, scale = _scaled_ints(coeffs)
    _butterfly(ints)            # now ints[x] = scale * P(config x)
    ints = [-abs(v) for v in ints]
    _butterfly(ints)            # unnormalized transform of scale * -|P|
    denom = scale << d
    terms: dict[tuple[int, ...], Fraction] = {}
    for y, w in enumerate(ints):
        if w:
            mono = tuple(variables[j] for j in range(d) if (y >> j) & 1)
            terms[mono] = Fraction(w, denom)
    return Polynomial._raw(terms, p.variables)


@dataclass(frozen=True)
class SymmetricCoeffs:
    """Even-order coefficients of -|s_1 + ... + s_n|; c[k] multiplies all
    size-2k monomials, odd orders vanish by the global flip symmetry."""

    n: int
    c: tuple[Fraction, ...]


def symmetric_coeffs(n: int) -> SymmetricCoeffs:
    """Closed-form c_2k via the binomial double sum, independent of any FWHT."""
    if n < 1:
        raise ValueError(f"arity must be >= 1, got {n}")
    out = []
    for k in range(n // 2 + 1):
        size = 2 * k
        total = 0
        for j in range(n + 1):
            inner = sum(
                (-1) ** r * math.comb(j, r) * math.comb(n - j, size - r)
                for r in range(size + 1)
            )
            total += math.comb(n, j) * -abs(n - 2 * j) * inner
        out.append(Fraction(total, (1 << n) * math.comb(n, size)))
    return SymmetricCoeffs(n, tuple(out))


def signed_symmetric_expand(
    sigma: Sequence[int], indices: Sequence[int] | None = None
) -> Polynomial:
    """Multilinear form of -|sigma_1 s_1 + ... + sigma_n s_n|, sigma_i in {+1,-1,0}.

    Zero-sigma variables drop out; each even-size subset S of the survivors
    receives c_|S| times prod_{i in S} sigma_i (the t_i = sigma_i s_i
    substitution into the symmetric expansion).
    """
    n = len(sigma)
    ids = tuple(indices) if indices is not None else tuple(range(1, n + 1))
    if len(ids) != n:
        raise ValueError(f"expected {n} variable ids, got {len(ids)}")
    if any(s not in (-1, 0, 1) for s in sigma):
        raise ValueError("sigma entries must be +1, -1 or 0")
    surviving = [(i, s) for i, s in zip(ids, sigma) if s != 0]
    if not surviving:
        raise ValueError("all-zero sigma: -|0| has no surviving variables")
    m = len(surviving)
    sc = symmetric_coeffs(m).c
    terms: dict[tuple[int, ...], Fraction] = {(): sc[0]}
    for k in range(1, m // 2 + 1):
        coeff = sc[k]
        if coeff == 0:
            continue
        for combo in combinations(surviving, 2 * k):
            sign = 1
            for _, s in combo:
                sign *= s
            terms[tuple(sorted(i for i, _ in combo))] = coeff * sign
    return Polynomial(terms, [i for i, _ in surviving])


def symmetric_expand(n: int, indices: Sequence[int] | None = None) -> Polynomial:
    """-|s_1 + ... + s_n| assembled from the closed-form coefficients."""
    return signed_symmetric_expand((1,) * n, indices)
