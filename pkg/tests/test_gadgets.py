"""Gadget catalog against the direct expansion oracle."""

from __future__ import annotations

import random
from fractions import Fraction

import pytest

from conftest import rand_fraction
from spinel import (
    GadgetKind,
    Polynomial,
    ValueTable,
    apply_gadget,
    direct_expand,
    gadget_block,
    match_gadget,
)
from spinel.gadgets import ARITY, SLOTS

HALF = Fraction(1, 2)


def oracle(kind: GadgetKind, coeffs, targets) -> Polynomial:
    block = gadget_block(kind, coeffs, targets)
    d = len(targets)
    table = ValueTable.from_function(
        d, lambda cfg: -abs(block.evaluate(dict(zip(targets, cfg))))
    )
    return direct_expand(table, targets)


def test_two_spin_unit_weights():
    got = apply_gadget(GadgetKind.TWO_SPIN, {"b": 1, "c": 1}, (2, 3))
    assert got == Polynomial({(): -1, (2, 3): -1})


def test_two_spin_weighted():
    got = apply_gadget(GadgetKind.TWO_SPIN, {"b": 2, "c": 1}, (1, 2))
    assert got == Polynomial({(): -2, (1, 2): -1})
    assert got == oracle(GadgetKind.TWO_SPIN, {"b": 2, "c": 1}, (1, 2))


def test_two_spin_field_unit():
    got = apply_gadget(GadgetKind.TWO_SPIN_FIELD, {"a": 1, "b": 1, "c": 1}, (1, 2))
    want = Polynomial({(): Fraction(-3, 2), (1,): -HALF, (2,): -HALF, (1, 2): -HALF})
    assert got == want


def test_three_spin_symmetric():
    got = apply_gadget(GadgetKind.THREE_SPIN, {"b": 1, "c": 1, "d": 1}, (1, 2, 3))
    want = Polynomial(
        {(): Fraction(-3, 2), (1, 2): -HALF, (1, 3): -HALF, (2, 3): -HALF}
    )
    assert got == want


def test_three_spin_weighted():
    got = apply_gadget(GadgetKind.THREE_SPIN, {"b": 2, "c": 1, "d": 1}, (1, 2, 3))
    assert got == Polynomial({(): -2, (1, 2): -1, (1, 3): -1})
    assert got == oracle(GadgetKind.THREE_SPIN, {"b": 2, "c": 1, "d": 1}, (1, 2, 3))


def test_gadgets_match_oracle_randomized():
    rng = random.Random(41)
    for kind in GadgetKind:
        targets = tuple(range(1, ARITY[kind] + 1))
        for _ in range(300):
            coeffs = {s: rand_fraction(rng) for s in SLOTS[kind]}
            assert apply_gadget(kind, coeffs, targets) == oracle(kind, coeffs, targets)


def test_gadgets_handle_degenerate_coefficients():
    rng = random.Random(42)
    for kind in GadgetKind:
        targets = tuple(range(1, ARITY[kind] + 1))
        for _ in range(60):
            coeffs = {s: Fraction(rng.choice((-2, -1, 0, 0, 1, 2))) for s in SLOTS[kind]}
            assert apply_gadget(kind, coeffs, targets) == oracle(kind, coeffs, targets)


def _flip_variable(p: Polynomial, v: int) -> Polynomial:
    return Polynomial(
        {m: (-c if v in m else c) for m, c in p.terms.items()}, p.variables
    )


def test_sign_covariance():
    # negating the coefficient attached to one spin flips that spin in the result
    rng = random.Random(43)
    flip_var = {
        GadgetKind.TWO_SPIN: ("b", 0),
        GadgetKind.TWO_SPIN_FIELD: ("b", 0),
        GadgetKind.THREE_SPIN: ("c", 1),
    }
    for kind, (slot, pos) in flip_var.items():
        targets = tuple(range(1, ARITY[kind] + 1))
        for _ in range(100):
            coeffs = {s: rand_fraction(rng) for s in SLOTS[kind]}
            flipped = dict(coeffs)
            flipped[slot] = -flipped[slot]
            assert apply_gadget(kind, flipped, targets) == _flip_variable(
                apply_gadget(kind, coeffs, targets), targets[pos]
            )


def test_locality_bounds():
    rng = random.Random(44)
    bounds = {
        GadgetKind.TWO_SPIN: 2,
        GadgetKind.TWO_SPIN_FIELD: 2,
        GadgetKind.THREE_SPIN: 2,
        GadgetKind.TRIPLET: 2,
        GadgetKind.TWO_BODY: 3,
        GadgetKind.THREE_BODY: 4,
    }
    for kind, bound in bounds.items():
        targets = tuple(range(1, ARITY[kind] + 1))
        for _ in range(50):
            coeffs = {s: rand_fraction(rng) for s in SLOTS[kind]}
            assert apply_gadget(kind, coeffs, targets).locality() <= bound


def test_three_body_reuses_two_body_combinations():
    # the three-body form quotes the two-body slot values verbatim; check the
    # claim against the oracle instead of trusting it
    rng = random.Random(45)
    for _ in range(200):
        coeffs = {s: rand_fraction(rng) for s in SLOTS[GadgetKind.THREE_BODY]}
        three = apply_gadget(GadgetKind.THREE_BODY, coeffs, (1, 2, 3, 4))
        assert three == oracle(GadgetKind.THREE_BODY, coeffs, (1, 2, 3, 4))
        two = apply_gadget(GadgetKind.TWO_BODY, coeffs, (9, 2, 3))
        pairs = {
            (): two.coefficient(()),
            (9,): two.coefficient((9,)),
            (2, 3): two.coefficient((2, 3)),
            (2, 3, 9): two.coefficient((2, 3, 9)),
        }
        assert three.coefficient(()) == pairs[()]
        assert three.coefficient((1, 2)) == pairs[(9,)]
        assert three.coefficient((3, 4)) == pairs[(2, 3)]
        assert three.coefficient((1, 2, 3, 4)) == pairs[(2, 3, 9)]


def test_arity_and_slot_validation():
    with pytest.raises(ValueError):
        apply_gadget(GadgetKind.TWO_SPIN, {"b": 1}, (1, 2))
    with pytest.raises(ValueError):
        apply_gadget(GadgetKind.TWO_SPIN, {"b": 1, "c": 1}, (1,))
    with pytest.raises(ValueError):
        apply_gadget(GadgetKind.TWO_SPIN, {"b": 1, "c": 1}, (2, 2))
    with pytest.raises(ValueError):
        apply_gadget(GadgetKind.TRIPLET, {"a": 1, "x": 1, "c": 1}, (1, 2))


def test_match_gadget_recognizes_catalog_shapes():
    cases = [
        (GadgetKind.TWO_SPIN, {"b": Fraction(2), "c": Fraction(-1)}, (4, 7)),
        (GadgetKind.TWO_SPIN_FIELD,
         {"a": Fraction(1, 2), "b": Fraction(3), "c": Fraction(-1)}, (2, 5)),
        (GadgetKind.THREE_SPIN,
         {"b": Fraction(1), "c": Fraction(2), "d": Fraction(3)}, (1, 2, 3)),
        (GadgetKind.TRIPLET,
         {"a": Fraction(2), "b": Fraction(1), "c": Fraction(-1)}, (3, 6)),
        (GadgetKind.TWO_BODY,
         {"a": Fraction(2), "b": Fraction(-1), "c": Fraction(1), "d": Fraction(3)},
         (1, 2, 3)),
        (GadgetKind.THREE_BODY,
         {"a": Fraction(2), "b": Fraction(-1), "c": Fraction(0), "d": Fraction(1)},
         (1, 2, 3, 4)),
    ]
    for kind, coeffs, targets in cases:
        block = gadget_block(kind, coeffs, targets)
        matched = match_gadget(block)
        assert matched is not None
        mkind, mcoeffs, mtargets = matched
        assert apply_gadget(mkind, mcoeffs, mtargets) == oracle(kind, coeffs, targets)


def test_match_gadget_declines_non_catalog():
    assert match_gadget(Polynomial({(): 1, (1, 2): 1})) is None
    assert match_gadget(Polynomial({(1, 2, 3): 1, (4,): 1})) is None
    assert match_gadget(Polynomial({(1,): 1, (2,): 1, (3,): 1, (4,): 1})) is None
