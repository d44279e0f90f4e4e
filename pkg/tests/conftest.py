"""Shared helpers: seeded random instances and state-set comparisons."""

from __future__ import annotations

import math
import random
from fractions import Fraction
from typing import Iterable, Mapping

from spinel import Polynomial


def rand_fraction(rng: random.Random, num: int = 9, den: int = 4) -> Fraction:
    return Fraction(rng.randint(-num, num), rng.randint(1, den))


def random_polynomial(
    rng: random.Random,
    n_vars: int,
    n_terms: int,
    max_locality: int = 4,
    with_constant: bool = True,
) -> Polynomial:
    """Random sparse k-local Hamiltonian over variables 1..n_vars."""
    width = min(max_locality, n_vars)
    available = sum(math.comb(n_vars, k) for k in range(1, width + 1))
    wanted = min(n_terms, available)
    terms: dict[tuple[int, ...], Fraction] = {}
    if with_constant and rng.random() < 0.5:
        terms[()] = rand_fraction(rng)
    count = 0
    while count < wanted:
        size = rng.randint(1, width)
        mono = tuple(sorted(rng.sample(range(1, n_vars + 1), size)))
        if mono in terms:
            continue
        c = rand_fraction(rng)
        if c:
            terms[mono] = c
            count += 1
    return Polynomial(terms, range(1, n_vars + 1))


def random_capped_polynomial(
    rng: random.Random,
    n_vars: int,
    n_terms: int,
    max_locality: int = 4,
    max_neighborhood: int = 8,
) -> Polynomial:
    """Random Hamiltonian whose every spin has at most max_neighborhood
    co-occurring variables, so any single elimination fits the table cap."""
    nbrs: dict[int, set[int]] = {v: set() for v in range(1, n_vars + 1)}
    terms: dict[tuple[int, ...], Fraction] = {}
    attempts = 0
    while len(terms) < n_terms and attempts < 50 * n_terms:
        attempts += 1
        size = rng.randint(1, min(max_locality, n_vars))
        mono = tuple(sorted(rng.sample(range(1, n_vars + 1), size)))
        if mono in terms:
            continue
        ok = all(
            len(nbrs[v] | (set(mono) - {v})) <= max_neighborhood for v in mono
        )
        if not ok:
            continue
        c = rand_fraction(rng)
        if not c:
            continue
        terms[mono] = c
        for v in mono:
            nbrs[v].update(set(mono) - {v})
    return Polynomial(terms, range(1, n_vars + 1))


def state_set(assignments: Iterable[Mapping[int, int]]) -> frozenset[tuple[int, ...]]:
    return frozenset(tuple(a[k] for k in sorted(a)) for a in assignments)


def all_assignments(variables: Iterable[int]):
    vs = sorted(variables)
    for x in range(1 << len(vs)):
        yield {v: (-1 if (x >> j) & 1 else 1) for j, v in enumerate(vs)}
