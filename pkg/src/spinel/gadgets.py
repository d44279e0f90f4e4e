"""Closed-form elimination gadgets.

Each gadget is the multilinear form of -|P| for a specific block shape P,
computed in constant time from absolute-value slot combinations instead
of a full transform.  The generic expansion covers every other shape, and
the two paths are required to agree exactly, so the catalog doubles as a
test oracle for the transform and vice versa.

Slot layouts (targets in order):

    TWO_SPIN        P = b*sb + c*sc                      targets (sb, sc)
    TWO_SPIN_FIELD  P = a + b*sb + c*sc                  targets (sb, sc)
    THREE_SPIN      P = b*sb + c*sc + d*sd               targets (sb, sc, sd)
    TRIPLET         P = a*sb*sc + b*sb + c*sc            targets (sb, sc)
    TWO_BODY        P = a*s1*s2 + b*s1*s3 + c*s2 + d*s3  targets (s1, s2, s3)
    THREE_BODY      P = a*s1*s2*s3 + b*s1*s2*s4 + c*s3 + d*s4
                                                         targets (s1, s2, s3, s4)

The quarter-magnitude slots h_i (g_i for THREE_SPIN) are indexed by the
binary convention: bit value 1 means the attached sign is +1, bit value 0
means -1, with bit positions reading the coefficient list left to right
after the leading one.  TWO_BODY and THREE_BODY share identical slot
combinations; the suite verifies that reuse against the direct oracle
rather than assuming it.
"""

from __future__ import annotations

from enum import Enum
from fractions import Fraction
from typing import Mapping, Sequence

from .poly import Polynomial, RationalLike


class GadgetKind(Enum):
    TWO_SPIN = "two-spin"
    TWO_SPIN_FIELD = "two-spin-field"
    THREE_SPIN = "three-spin"
    TRIPLET = "triplet"
    TWO_BODY = "two-body"
    THREE_BODY = "three-body"


SLOTS: dict[GadgetKind, tuple[str, ...]] = {
    GadgetKind.TWO_SPIN: ("b", "c"),
    GadgetKind.TWO_SPIN_FIELD: ("a", "b", "c"),
    GadgetKind.THREE_SPIN: ("b", "c", "d"),
    GadgetKind.TRIPLET: ("a", "b", "c"),
    GadgetKind.TWO_BODY: ("a", "b", "c", "d"),
    GadgetKind.THREE_BODY: ("a", "b", "c", "d"),
}

ARITY: dict[GadgetKind, int] = {
    GadgetKind.TWO_SPIN: 2,
    GadgetKind.TWO_SPIN_FIELD: 2,
    GadgetKind.THREE_SPIN: 3,
    GadgetKind.TRIPLET: 2,
    GadgetKind.TWO_BODY: 3,
    GadgetKind.THREE_BODY: 4,
}


def _checked(
    kind: GadgetKind,
    coeffs: Mapping[str, RationalLike],
    targets: Sequence[int],
) -> tuple[list[Fraction], tuple[int, ...]]:
    slots = SLOTS[kind]
    if set(coeffs) != set(slots):
        raise ValueError(
            f"{kind.value} gadget takes coefficients {slots}, got {tuple(coeffs)}"
        )
    tg = tuple(targets)
    if len(tg) != ARITY[kind]:
        raise ValueError(f"{kind.value} gadget needs {ARITY[kind]} targets, got {len(tg)}")
    if len(set(tg)) != len(tg):
        raise ValueError(f"duplicate targets {tg}")
    vals = [Fraction(coeffs[s]) for s in slots]
    # |P| = |-P|: normalize the leading slot nonnegative, the paper's
    # sign convention.  The slot formulas are insensitive to it either way.
    if vals[0] < 0:
        vals = [-v for v in vals]
    return vals, tg


def _quarter_slots(a: Fraction, b: Fraction, c: Fraction) -> list[Fraction]:
    """h_{(sigma1 sigma0)} = |a + sigma1*b + sigma0*c| / 4, bit 1 <-> +1."""
    out = []
    for i in range(4):
        s1 = 1 if i & 2 else -1
        s0 = 1 if i & 1 else -1
        out.append(abs(a + s1 * b + s0 * c) / 4)
    return out


def gadget_block(
    kind: GadgetKind,
    coeffs: Mapping[str, RationalLike],
    targets: Sequence[int],
) -> Polynomial:
    """The local block P whose -|P| the gadget expands (for tests/oracles)."""
    slots = SLOTS[kind]
    if set(coeffs) != set(slots):
        raise ValueError(f"{kind.value} gadget takes coefficients {slots}")
    v = {s: Fraction(coeffs[s]) for s in slots}
    t = tuple(targets)
    if kind is GadgetKind.TWO_SPIN:
        return Polynomial({(t[0],): v["b"], (t[1],): v["c"]}, t)
    if kind is GadgetKind.TWO_SPIN_FIELD:
        return Polynomial({(): v["a"], (t[0],): v["b"], (t[1],): v["c"]}, t)
    if kind is GadgetKind.THREE_SPIN:
        return Polynomial({(t[0],): v["b"], (t[1],): v["c"], (t[2],): v["d"]}, t)
    if kind is GadgetKind.TRIPLET:
        return Polynomial(
            {(t[0], t[1]): v["a"], (t[0],): v["b"], (t[1],): v["c"]}, t
        )
    if kind is GadgetKind.TWO_BODY:
        return Polynomial(
            {
                (t[0], t[1]): v["a"],
                (t[0], t[2]): v["b"],
                (t[1],): v["c"],
                (t[2],): v["d"],
            },
            t,
        )
    return Polynomial(
        {
            (t[0], t[1], t[2]): v["a"],
            (t[0], t[1], t[3]): v["b"],
            (t[2],): v["c"],
            (t[3],): v["d"],
        },
        t,
    )


def apply_gadget(
    kind: GadgetKind,
    coeffs: Mapping[str, RationalLike],
    targets: Sequence[int],
) -> Polynomial:
    """Multilinear form of -|P| for the kind's block shape, in closed form."""
    vals, tg = _checked(kind, coeffs, targets)

    if kind is GadgetKind.TWO_SPIN:
        b, c = vals
        const = -(abs(b + c) + abs(b - c)) / 2
        pair = (abs(b - c) - abs(b + c)) / 2
        return Polynomial({(): const, tuple(sorted(tg)): pair}, tg)

    if kind in (GadgetKind.TWO_SPIN_FIELD, GadgetKind.TRIPLET):
        a, b, c = vals
        h0, h1, h2, h3 = _quarter_slots(a, b, c)
        const = -(h0 + h1 + h2 + h3)
        alpha = -h0 + h1 + h2 - h3
        if kind is GadgetKind.TWO_SPIN_FIELD:
            coef_b = h0 + h1 - h2 - h3
            coef_c = h0 - h1 + h2 - h3
        else:  # a multiplies sb*sc, which swaps the single-spin combinations
            coef_b = h0 - h1 + h2 - h3
            coef_c = h0 + h1 - h2 - h3
        return Polynomial(
            {
                (): const,
                (tg[0],): coef_b,
                (tg[1],): coef_c,
                tuple(sorted(tg)): alpha,
            },
            tg,
        )

    if kind is GadgetKind.THREE_SPIN:
        b, c, d = vals
        g0, g1, g2, g3 = _quarter_slots(b, c, d)
        const = -(g0 + g1 + g2 + g3)
        alpha = g0 + g1 - g2 - g3   # sb*sc
        beta = -g0 + g1 + g2 - g3   # sc*sd
        gamma = g0 - g1 + g2 - g3   # sb*sd
        return Polynomial(
            {
                (): const,
                tuple(sorted((tg[0], tg[1]))): alpha,
                tuple(sorted((tg[1], tg[2]))): beta,
                tuple(sorted((tg[0], tg[2]))): gamma,
            },
            tg,
        )

    # TWO_BODY and THREE_BODY share slot combinations: h indices 1, 2, 4, 7
    # of h_{(sigma2 sigma1 sigma0)} = |a + sigma2*b + sigma1*c + sigma0*d|/4.
    a, b, c, d = vals
    h1 = abs(a - b - c + d) / 4
    h2 = abs(a - b + c - d) / 4
    h4 = abs(a + b - c - d) / 4
    h7 = abs(a + b + c + d) / 4
    const = -(h1 + h2 + h4 + h7)
    alpha = h1 - h2 + h4 - h7
    beta = h1 + h2 - h4 - h7
    gamma = -h1 + h2 + h4 - h7
    if kind is GadgetKind.TWO_BODY:
        return Polynomial(
            {
                (): const,
                (tg[0],): alpha,
                tuple(sorted((tg[1], tg[2]))): beta,
                tuple(sorted(tg)): gamma,
            },
            tg,
        )
    return Polynomial(
        {
            (): const,
            tuple(sorted((tg[0], tg[1]))): alpha,
            tuple(sorted((tg[2], tg[3]))): beta,
            tuple(sorted(tg)): gamma,
        },
        tg,
    )


def match_gadget(
    p: Polynomial,
) -> tuple[GadgetKind, dict[str, Fraction], tuple[int, ...]] | None:
    """Recognize a local block as a catalog shape, or None for the generic path.

    Degenerate blocks (zero slots) that no longer look like a catalog shape
    simply fall through; correctness never depends on a match.
    """
    support = sorted(p.support)
    d = len(support)
    terms = p.terms
    const = p.constant_term

    if d == 2:
        x, y = support
        pair = terms.get((x, y))
        lin_x = terms.get((x,), Fraction(0))
        lin_y = terms.get((y,), Fraction(0))
        extra = len(terms) - (pair is not None) - (lin_x != 0) - (lin_y != 0) - (const != 0)
        if extra:
            return None
        if pair is None:
            if const == 0:
                return GadgetKind.TWO_SPIN, {"b": lin_x, "c": lin_y}, (x, y)
            return GadgetKind.TWO_SPIN_FIELD, {"a": const, "b": lin_x, "c": lin_y}, (x, y)
        if const == 0:
            return GadgetKind.TRIPLET, {"a": pair, "b": lin_x, "c": lin_y}, (x, y)
        return None

    if d == 3 and const == 0:
        sizes = sorted(len(m) for m in terms)
        if sizes == [1, 1, 1]:
            x, y, z = support
            return (
                GadgetKind.THREE_SPIN,
                {"b": terms[(x,)], "c": terms[(y,)], "d": terms[(z,)]},
                (x, y, z),
            )
        pairs = [m for m in terms if len(m) == 2]
        if len(pairs) == 2 and all(len(m) <= 2 for m in terms):
            shared = set(pairs[0]) & set(pairs[1])
            if len(shared) == 1:
                s1 = shared.pop()
                s2 = next(v for v in pairs[0] if v != s1)
                s3 = next(v for v in pairs[1] if v != s1)
                if terms.get((s1,)) is None:
                    return (
                        GadgetKind.TWO_BODY,
                        {
                            "a": terms[pairs[0]],
                            "b": terms[pairs[1]],
                            "c": terms.get((s2,), Fraction(0)),
                            "d": terms.get((s3,), Fraction(0)),
                        },
                        (s1, s2, s3),
                    )
        return None

    if d == 4 and const == 0:
        triples = [m for m in terms if len(m) == 3]
        if len(triples) == 2 and all(len(m) in (1, 3) for m in terms):
            shared = set(triples[0]) & set(triples[1])
            if len(shared) == 2:
                s1, s2 = sorted(shared)
                s3 = next(v for v in triples[0] if v not in shared)
                s4 = next(v for v in triples[1] if v not in shared)
                singles = {m[0] for m in terms if len(m) == 1}
                if singles <= {s3, s4}:
                    return (
                        GadgetKind.THREE_BODY,
                        {
                            "a": terms[triples[0]],
                            "b": terms[triples[1]],
                            "c": terms.get((s3,), Fraction(0)),
                            "d": terms.get((s4,), Fraction(0)),
                        },
                        (s1, s2, s3, s4),
                    )
        return None

    return None
