"""Builders for the application domains.

Max-Cut on random cubic graphs (with the 2-local and k-local elimination
strategies), the J-Moebius ladder and its critical-coupling scan, Hebbian
and dense Hopfield energies with the block elimination used in the memory
experiment, the two-bit ripple-carry adder, and the integer-factorization
presets.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Iterable, Mapping, Sequence

from .eliminate import (
    EliminationRefused,
    ReductionLimits,
    Trace,
    eliminate_spin,
    reduce_hamiltonian,
)
from .poly import (
    ParseError,
    Polynomial,
    RationalLike,
    format_rational,
    parse_rational,
)

# -- graphs ----------------------------------------------------------------


@dataclass(frozen=True)
class Graph:
    """Weighted undirected graph; edges as (u, v, weight) with u < v."""

    n: int
    edges: tuple[tuple[int, int, Fraction], ...]

    def __post_init__(self):
        seen = set()
        for u, v, _ in self.edges:
            if not 1 <= u < v <= self.n:
                raise ValueError(f"bad edge ({u}, {v}) for n={self.n}")
            if (u, v) in seen:
                raise ValueError(f"duplicate edge ({u}, {v})")
            seen.add((u, v))
        object.__setattr__(self, "edges", tuple(sorted(self.edges)))

    @classmethod
    def from_pairs(
        cls, n: int, pairs: Iterable[tuple[int, int]], weight: RationalLike = 1
    ) -> "Graph":
        w = Fraction(weight)
        return cls(n, tuple(sorted((min(u, v), max(u, v), w) for u, v in pairs)))

    def degrees(self) -> dict[int, int]:
        deg = {v: 0 for v in range(1, self.n + 1)}
        for u, v, _ in self.edges:
            deg[u] += 1
            deg[v] += 1
        return deg

    def total_weight(self) -> Fraction:
        return sum((w for _, _, w in self.edges), Fraction(0))

    def is_connected(self) -> bool:
        if self.n == 0:
            return True
        adj: dict[int, list[int]] = {v: [] for v in range(1, self.n + 1)}
        for u, v, _ in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        seen = {1}
        stack = [1]
        while stack:
            for w in adj[stack.pop()]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == self.n

    def to_text(self) -> str:
        lines = [f"n {self.n}"]
        for u, v, w in sorted(self.edges):
            lines.append(f"e {u} {v}" + ("" if w == 1 else f" {format_rational(w)}"))
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "Graph":
        n = None
        pairs: list[tuple[int, int, Fraction]] = []
        for lineno, raw in enumerate(text.splitlines(), start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split()
            if parts[0] == "n":
                if n is not None or len(parts) != 2:
                    raise ParseError(f"line {lineno}: bad header")
                n = int(parts[1])
            elif parts[0] == "e":
                if n is None or len(parts) not in (3, 4):
                    raise ParseError(f"line {lineno}: bad edge line")
                u, v = int(parts[1]), int(parts[2])
                w = parse_rational(parts[3]) if len(parts) == 4 else Fraction(1)
                pairs.append((min(u, v), max(u, v), w))
            else:
                raise ParseError(f"line {lineno}: unknown tag {parts[0]!r}")
        if n is None:
            raise ParseError("missing `n <count>` header")
        return cls(n, tuple(sorted(pairs)))


def random_cubic_graph(n: int, seed: int = 0) -> Graph:
    """Random connected 3-regular graph by the pairing model.

    Three stubs per vertex are matched uniformly; matchings with loops or
    repeated edges are rejected wholesale, as are disconnected graphs, so
    every accepted graph is simple, cubic and connected.  Deterministic
    per seed.
    """
    if n < 4 or n % 2:
        raise ValueError(f"cubic graphs need even n >= 4, got {n}")
    rng = random.Random(seed)
    while True:
        stubs = [v for v in range(1, n + 1) for _ in range(3)]
        rng.shuffle(stubs)
        pairs = list(zip(stubs[0::2], stubs[1::2]))
        edges = {(min(u, v), max(u, v)) for u, v in pairs}
        if any(u == v for u, v in pairs) or len(edges) != len(pairs):
            continue
        g = Graph.from_pairs(n, edges)
        if g.is_connected():
            return g


def maxcut_hamiltonian(g: Graph) -> Polynomial:
    """Antiferromagnetic encoding: H = sum w * s_u s_v; min H <-> max cut."""
    return Polynomial(
        {(u, v): w for u, v, w in g.edges}, range(1, g.n + 1)
    )


def cut_value(g: Graph, assignment: Mapping[int, int]) -> Fraction:
    """Cut weight of a +-1 partition: (total weight - H) / 2."""
    h = maxcut_hamiltonian(g)
    return (g.total_weight() - h.evaluate(assignment)) / 2


@dataclass(frozen=True)
class MaxcutStats:
    """Outcome of one elimination run on a cubic instance."""

    n: int
    seed: int
    removed_fraction: float
    degree_histogram: dict[int, int]
    final_locality: int

    def csv_row(self) -> str:
        hist = self.degree_histogram
        cells = [str(self.n), str(self.seed), f"{self.removed_fraction:.6f}"]
        cells += [str(hist.get(d, 0)) for d in (0, 3, 4, 5, 6)]
        return ",".join(cells)


MAXCUT_CSV_HEADER = "n,seed,removed_fraction,deg0,deg3,deg4,deg5,deg6"


def _degree_histogram(h: Polynomial) -> dict[int, int]:
    hist: dict[int, int] = {}
    for v in sorted(h.variables):
        d = h.degree(v)
        hist[d] = hist.get(d, 0) + 1
    return hist


def maxcut_reduce_2local(
    g: Graph, seed: int = 0, limits: ReductionLimits | None = None
) -> tuple[Polynomial, Trace, MaxcutStats]:
    """Strategy for pairwise-only hardware: keep eliminating degree <= 3
    vertices while every survivor stays at degree <= 6 and the Hamiltonian
    stays 2-local.

    Each pass walks the vertices in a seeded random order and retries
    until a full pass makes no progress.  Degree-2/1/0 vertices ride the
    two-spin, single-neighbor and free gadgets.
    """
    degs = set(g.degrees().values())
    if degs and degs != {3}:
        raise ValueError(f"expected a cubic graph, found degrees {sorted(degs)}")
    if limits is None:
        limits = ReductionLimits(max_neighborhood=3, max_locality=2, max_degree=6)
    rng = random.Random(seed)
    order = list(range(1, g.n + 1))
    rng.shuffle(order)
    h = maxcut_hamiltonian(g)
    trace = Trace()
    progressed = True
    while progressed:
        progressed = False
        for v in order:
            if v not in h.variables:
                continue
            if len(h.neighborhood(v)) > 3:
                continue
            try:
                h, rec = eliminate_spin(h, v, limits)
            except EliminationRefused:
                continue
            trace.append(rec)
            progressed = True
    stats = MaxcutStats(
        n=g.n,
        seed=seed,
        removed_fraction=len(trace) / g.n,
        degree_histogram=_degree_histogram(h),
        final_locality=h.locality(),
    )
    return h, trace, stats


def maxcut_reduce_klocal(
    g: Graph, rounds: int = 1, limits: ReductionLimits | None = None
) -> tuple[Polynomial, Trace, MaxcutStats]:
    """Strategy for k-local hardware: per round, eliminate the centers of a
    maximal packing of vertex-disjoint stars.

    Round r packs stars of r+2 neighbors around each chosen center, so
    surviving degrees stay at most 2r+2 and the interaction order at most
    max(2, 2r); round 1 removes about a quarter of the spins.
    """
    degs = set(g.degrees().values())
    if degs and degs != {3}:
        raise ValueError(f"expected a cubic graph, found degrees {sorted(degs)}")
    h = maxcut_hamiltonian(g)
    trace = Trace()
    for r in range(1, rounds + 1):
        width = r + 2
        round_limits = limits or ReductionLimits(
            max_locality=max(2, 2 * r), max_degree=2 * r + 2
        )
        used: set[int] = set()
        centers = []
        for v in sorted(h.variables):
            if v in used:
                continue
            nbrs = h.neighborhood(v)
            if len(nbrs) != width or nbrs & used:
                continue
            centers.append(v)
            used.add(v)
            used.update(nbrs)
        for v in centers:
            try:
                h, rec = eliminate_spin(h, v, round_limits)
            except EliminationRefused:
                continue
            trace.append(rec)
    stats = MaxcutStats(
        n=g.n,
        seed=-1,
        removed_fraction=len(trace) / g.n,
        degree_histogram=_degree_histogram(h),
        final_locality=h.locality(),
    )
    return h, trace, stats


# -- Moebius ladder ----------------------------------------------------------


def mobius_ladder(n: int, j: RationalLike) -> Polynomial:
    """Ring of n spins with unit nearest-neighbor couplings plus weight-J
    chords between antipodal spins; n must be a multiple of 4."""
    if n < 4 or n % 4:
        raise ValueError(f"Moebius ladder size must be a positive multiple of 4, got {n}")
    jw = Fraction(j)
    terms: dict[tuple[int, ...], Fraction] = {}
    for i in range(1, n + 1):
        u, v = i, i % n + 1
        terms[(min(u, v), max(u, v))] = Fraction(1)
    if jw:
        for i in range(1, n // 2 + 1):
            terms[(i, i + n // 2)] = jw
    return Polynomial(terms, range(1, n + 1))


def is_alternating(state: Mapping[int, int], n: int) -> bool:
    return all(state[i] != state[i % n + 1] for i in range(1, n + 1))


def is_two_wall(state: Mapping[int, int], n: int) -> bool:
    """Exactly two aligned ring bonds, diametrically opposite (the S1 class)."""
    walls = [i for i in range(1, n + 1) if state[i] == state[i % n + 1]]
    return len(walls) == 2 and (walls[1] - walls[0]) == n // 2


def critical_j_scan(n: int, j_grid: Sequence[RationalLike]) -> Fraction:
    """Smallest grid coupling at which the two-wall state reaches the minimum.

    Brute-forces the ladder at each J and classifies the ground set; the
    grid must be ascending and straddle the transition (alternating-only
    at the low end, two-wall present at the high end).
    """
    from .solve import brute_force

    grid = [Fraction(j) for j in j_grid]
    if any(a >= b for a, b in zip(grid, grid[1:])):
        raise ValueError("J grid must be strictly ascending")
    flips: list[bool] = []
    for j in grid:
        _, states = brute_force(mobius_ladder(n, j))
        flips.append(any(is_two_wall(st, n) for st in states))
    if flips[0] or not flips[-1]:
        raise ValueError(f"grid does not straddle the critical coupling 4/{n}")
    return grid[flips.index(True)]


# -- Hopfield / Hebbian ------------------------------------------------------


@dataclass(frozen=True)
class PatternSet:
    """Stored +-1 patterns, one per row."""

    patterns: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if not self.patterns:
            raise ValueError("pattern set is empty")
        n = len(self.patterns[0])
        if any(len(p) != n for p in self.patterns):
            raise ValueError("patterns must share one length")
        if any(v not in (-1, 1) for p in self.patterns for v in p):
            raise ValueError("patterns must be +-1 valued")

    @property
    def n(self) -> int:
        return len(self.patterns[0])

    @property
    def p(self) -> int:
        return len(self.patterns)

    def assignments(self) -> list[dict[int, int]]:
        return [dict(enumerate(pat, start=1)) for pat in self.patterns]


def hadamard_patterns(n: int, p: int) -> PatternSet:
    """p mutually orthogonal patterns from Sylvester-Hadamard rows.

    Row indices are 1 + mu * (n // p), a coset of a bit-subgroup whenever p
    is a power of two dividing n.  That choice makes the Hebbian couplings
    vanish between different contiguous blocks of n/p spins, so the block
    eliminations of the memory experiment stay local and the uniform
    +-1/(n/4)-style magnitudes match the signed symmetric gadget.
    """
    if n < 2 or n & (n - 1):
        raise ValueError(f"pattern length must be a power of two, got {n}")
    if not 1 <= p <= n:
        raise ValueError(f"need 1 <= p <= {n} patterns, got {p}")
    if p == n:
        rows = list(range(n))
    elif n % p == 0:
        rows = [1 + mu * (n // p) for mu in range(p)]
    else:
        rows = [1 + mu for mu in range(p)]
    pats = tuple(
        tuple(-1 if (r & c).bit_count() & 1 else 1 for c in range(n)) for r in rows
    )
    return PatternSet(pats)


def hebbian_couplings(ps: PatternSet, keep_diagonal: bool = False) -> Polynomial:
    """Pairwise Hebbian energy -1/2 sum_{i != j} J_ij s_i s_j with
    J_ij = (1/N) sum_mu xi_i xi_j; keep_diagonal adds the constant -p/2
    contributed by the i = j terms."""
    n, p = ps.n, ps.p
    terms: dict[tuple[int, ...], Fraction] = {}
    if keep_diagonal:
        terms[()] = Fraction(-p, 2)
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            q = sum(pat[i - 1] * pat[j - 1] for pat in ps.patterns)
            if q:
                terms[(i, j)] = Fraction(-q, n)
    return Polynomial(terms, range(1, n + 1))


def dense_hebbian(ps: PatternSet, k: int) -> Polynomial:
    """Rank-k Hebbian tensor energy -sum_{i1<...<ik} J_{i1..ik} s_i1...s_ik
    with J = (1/N^(k-1)) sum_mu xi_i1 ... xi_ik."""
    from itertools import combinations

    n = ps.n
    if not 2 <= k <= n:
        raise ValueError(f"tensor order must satisfy 2 <= k <= {n}, got {k}")
    norm = Fraction(1, n ** (k - 1))
    terms: dict[tuple[int, ...], Fraction] = {}
    for combo in combinations(range(1, n + 1), k):
        q = 0
        for pat in ps.patterns:
            prod = 1
            for i in combo:
                prod *= pat[i - 1]
            q += prod
        if q:
            terms[combo] = -q * norm
    return Polynomial(terms, range(1, n + 1))


def eliminate_block_spins(
    h: Polynomial,
    blocks: int,
    per_block: int,
    limits: ReductionLimits | None = None,
) -> tuple[Polynomial, Trace]:
    """Remove the lowest-indexed per_block spins from each of `blocks`
    contiguous, equally sized blocks of the variable range."""
    vars_ = sorted(h.variables)
    if len(vars_) % blocks:
        raise ValueError(f"{len(vars_)} spins do not split into {blocks} blocks")
    width = len(vars_) // blocks
    if per_block > width:
        raise ValueError(f"cannot remove {per_block} spins from blocks of {width}")
    order = [
        vars_[b * width + i] for b in range(blocks) for i in range(per_block)
    ]
    return reduce_hamiltonian(h, order=order, limits=limits or ReductionLimits())


# -- two-bit ripple-carry adder ----------------------------------------------


def _spin_var(i: int) -> Polynomial:
    return Polynomial.term(1, (i,))


def _carry(a: Polynomial, b: Polynomial, c: Polynomial) -> Polynomial:
    # majority on spins: (a + b + c - a*b*c) / 2
    return (a + b + c - a * b * c) * Fraction(1, 2)


def adder_hamiltonian() -> Polynomial:
    """Two-bit ripple-carry adder energy over spins s1..s8.

    (s1, s2) and (s3, s4) are the addend bits (high, low), s6/s5 the low
    sum and intermediate carry, s7/s8 the high sum and final carry; the
    input carry is fixed to -1 (logical 0) at build time.  Each full-adder
    constraint enters as a squared residual and the constant offset is
    dropped, so the 16 valid additions sit at the minimum.
    """
    s = {i: _spin_var(i) for i in range(1, 9)}
    s9 = Polynomial.constant(-1)
    residuals = [
        s[6] - s[2] * s[4] * s9,
        s[5] - _carry(s[2], s[4], s9),
        s[7] - s[1] * s[3] * s[5],
        s[8] - _carry(s[1], s[3], s[5]),
    ]
    h = Polynomial.zero(range(1, 9))
    for r in residuals:
        h = h + r * r
    return (h - Polynomial.constant(h.constant_term)).with_variables(range(1, 9))


def adder_valid_states() -> list[dict[int, int]]:
    """The 16 spin configurations encoding correct two-bit additions."""
    out = []
    for s1, s2, s3, s4 in product((1, -1), repeat=4):
        s9 = -1
        s6 = s2 * s4 * s9
        s5 = (s2 + s4 + s9 - s2 * s4 * s9) // 2
        s7 = s1 * s3 * s5
        s8 = (s1 + s3 + s5 - s1 * s3 * s5) // 2
        out.append({1: s1, 2: s2, 3: s3, 4: s4, 5: s5, 6: s6, 7: s7, 8: s8})
    return out


# -- factorization presets -----------------------------------------------------

_H10_PAIRS = {
    (1, 2): 22, (1, 3): 16, (1, 4): 8, (1, 5): -14, (1, 6): 8,
    (1, 7): 4, (1, 8): -8, (1, 9): -10, (1, 10): -22,
    (2, 3): -14, (2, 4): 20, (2, 5): 14, (2, 6): -12, (2, 7): 2,
    (2, 8): -24, (2, 9): -28, (2, 10): 2,
    (3, 4): -18, (3, 5): 10, (3, 6): 36, (3, 7): 12, (3, 8): 16,
    (3, 9): 6, (3, 10): -30,
    (4, 5): 28, (4, 6): -26, (4, 7): 10, (4, 8): 10, (4, 9): 16,
    (4, 10): -4,
    (5, 6): 10, (5, 7): 24, (5, 8): 20, (5, 9): 12, (5, 10): -8,
    (6, 7): -8, (6, 8): 22, (6, 9): -6, (6, 10): -36,
    (7, 8): -16, (7, 9): 16, (7, 10): 20,
    (8, 9): 34, (8, 10): -42,
    (9, 10): 18,
}

_H10_FIELDS = {
    1: -46, 2: -16, 3: -78, 4: -72, 5: -116,
    6: -12, 7: -84, 8: -36, 9: -74, 10: -24,
}

PRESET_NAMES = ("n291311_3", "n291311_binary", "bit48_10")


def _binary_var(i: int) -> Polynomial:
    # q_i = (1 - s_i) / 2: spin +1 is bit 0, spin -1 is bit 1
    return (Polynomial.constant(1) - _spin_var(i)) * Fraction(1, 2)


def factor_preset(name: str) -> Polynomial:
    """Bundled factorization Hamiltonians.

    n291311_3       three-spin form 3/2 + (s1 s2 + s1 s3 - s2 s3)/2
    n291311_binary  the squared binary constraints for 291311, mapped to
                    spins through q_i = (1 - s_i)/2 (equals n291311_3)
    bit48_10        the ten-spin Hamiltonian of the 48-bit factorization
    """
    if name == "n291311_3":
        half = Fraction(1, 2)
        return Polynomial(
            {(): Fraction(3, 2), (1, 2): half, (1, 3): half, (2, 3): -half},
            (1, 2, 3),
        )
    if name == "n291311_binary":
        q1, q2, q5 = _binary_var(1), _binary_var(2), _binary_var(3)
        one = Polynomial.constant(1)
        two = Polynomial.constant(2)
        t1 = q1 + q2 - two * q1 * q2 - one
        t2 = q2 + q5 - two * q2 * q5
        t3 = q1 + q5 - two * q1 * q5 - one
        return (t1 * t1 + t2 * t2 + t3 * t3).with_variables((1, 2, 3))
    if name == "bit48_10":
        terms: dict[tuple[int, ...], Fraction] = {
            k: Fraction(v) for k, v in _H10_PAIRS.items()
        }
        for i, v in _H10_FIELDS.items():
            terms[(i,)] = Fraction(v)
        return Polynomial(terms, range(1, 11))
    raise ValueError(f"unknown preset {name!r}; choose from {PRESET_NAMES}")


def spins_to_bits(assignment: Mapping[int, int]) -> str:
    """Bit string under q_i = (1 - s_i)/2, ordered by spin index."""
    return "".join("0" if assignment[i] > 0 else "1" for i in sorted(assignment))


def factor_from_assignment_291311(assignment: Mapping[int, int]) -> int:
    """Decode a ground state of the 291311 presets into its factor.

    Spins (s1, s2, s3) carry the free bits (q1, q2, q5) of the template
    1 0 0 0 q5 0 1 q2 q1 1.
    """
    q1 = (1 - assignment[1]) // 2
    q2 = (1 - assignment[2]) // 2
    q5 = (1 - assignment[3]) // 2
    bits = [1, 0, 0, 0, q5, 0, 1, q2, q1, 1]
    value = 0
    for b in bits:
        value = value * 2 + b
    return value
