"""Exact spin elimination.

Removing spin a replaces its local block s_a * P(neighbors) with the
multilinear form of -|P|, which equals min over s_a = +-1 of the block
pointwise.  The reduced Hamiltonian therefore satisfies, configuration by
configuration,

    h'(s) = min_{sigma} h(s, s_a = sigma),

so minima, ground states and their degeneracies survive every step.  The
eliminated spin is recovered afterwards as s_a = -sgn(P); P = 0 leaves it
free and the back-substitution branches.

Each elimination picks the cheapest exact route for the block: a catalog
gadget when the shape matches, the closed symmetric form for uniform
magnitudes, and the generic Walsh expansion otherwise.  All routes produce
the identical polynomial.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

from . import expand
from .gadgets import apply_gadget, match_gadget
from .poly import (
    Polynomial,
    SpinAssignment,
    UnassignedVariableError,
    format_polynomial,
    parse_polynomial,
)

DEFAULT_BRANCH_CAP = 1 << 20


class EliminationRefused(RuntimeError):
    """Eliminating this spin would violate the configured limits; the
    Hamiltonian is unchanged."""

    def __init__(self, spin: int, reason: str):
        self.spin = spin
        self.reason = reason
        super().__init__(f"refusing to eliminate s{spin}: {reason}")


class BranchLimitExceeded(RuntimeError):
    """Degeneracy branching produced more completions than the cap allows."""


@dataclass(frozen=True)
class ReductionLimits:
    """Caps applied per elimination; None means unlimited (global FWHT cap
    still applies to the neighborhood)."""

    max_neighborhood: int | None = None
    max_locality: int | None = None
    max_degree: int | None = None

    def neighborhood_cap(self) -> int:
        cap = expand.neighborhood_cap()
        if self.max_neighborhood is None:
            return cap
        return min(self.max_neighborhood, cap)


UNLIMITED = ReductionLimits()


@dataclass(frozen=True)
class EliminationRecord:
    """One removed spin: its local block P and the replacement -|P|."""

    eliminated: int
    local_block: Polynomial
    replacement: Polynomial


class Trace:
    """Ordered elimination records; replayed last-first to back-substitute."""

    def __init__(self, records: Sequence[EliminationRecord] = ()):
        self._records: list[EliminationRecord] = list(records)
        seen: set[int] = set()
        for rec in self._records:
            if rec.eliminated in seen:
                raise ValueError(f"spin s{rec.eliminated} eliminated twice")
            seen.add(rec.eliminated)

    def append(self, rec: EliminationRecord) -> None:
        if any(r.eliminated == rec.eliminated for r in self._records):
            raise ValueError(f"spin s{rec.eliminated} eliminated twice")
        self._records.append(rec)

    def __len__(self) -> int:
        return len(self._records)

    def __iter__(self) -> Iterator[EliminationRecord]:
        return iter(self._records)

    def __getitem__(self, i: int) -> EliminationRecord:
        return self._records[i]

    def eliminated_spins(self) -> list[int]:
        return [r.eliminated for r in self._records]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Trace):
            return NotImplemented
        return self._records == other._records

    # Trace file format: per record a header `E <spin>`, a `P:` block and
    # an `F:` block in the polynomial text format, then a `---` separator.

    def to_text(self) -> str:
        chunks = []
        for rec in self._records:
            chunks.append(f"E {rec.eliminated}\n")
            chunks.append("P:\n")
            chunks.append(format_polynomial(rec.local_block))
            chunks.append("F:\n")
            chunks.append(format_polynomial(rec.replacement))
            chunks.append("---\n")
        return "".join(chunks)

    @classmethod
    def from_text(cls, text: str) -> "Trace":
        records = []
        lines = [ln for ln in text.splitlines()]
        i = 0
        while i < len(lines):
            line = lines[i].strip()
            if not line or line.startswith("#"):
                i += 1
                continue
            if not line.startswith("E "):
                raise ValueError(f"trace line {i + 1}: expected `E <spin>`")
            spin = int(line.split()[1])
            i += 1
            if i >= len(lines) or lines[i].strip() != "P:":
                raise ValueError(f"trace line {i + 1}: expected `P:`")
            i += 1
            p_lines = []
            while i < len(lines) and lines[i].strip() != "F:":
                p_lines.append(lines[i])
                i += 1
            if i >= len(lines):
                raise ValueError("trace ended inside a P: block")
            i += 1
            f_lines = []
            while i < len(lines) and lines[i].strip() != "---":
                f_lines.append(lines[i])
                i += 1
            if i >= len(lines):
                raise ValueError("trace ended inside an F: block")
            i += 1
            records.append(
                EliminationRecord(
                    spin,
                    parse_polynomial("\n".join(p_lines)),
                    parse_polynomial("\n".join(f_lines)),
                )
            )
        return cls(records)

    def save(self, path: str) -> None:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(self.to_text())

    @classmethod
    def load(cls, path: str) -> "Trace":
        with open(path, "r", encoding="utf-8") as fh:
            return cls.from_text(fh.read())


def extract_local_block(h: Polynomial, a: int) -> tuple[Polynomial, Polynomial]:
    """Split h = s_a * p + rest; neither part mentions a.

    A declared spin with no surviving terms yields p = 0 (its elimination
    is free and branches during back-substitution).
    """
    if a not in h.variables:
        raise ValueError(f"spin s{a} is not a variable of the Hamiltonian")
    p_terms: dict[tuple[int, ...], Fraction] = {}
    rest_terms: dict[tuple[int, ...], Fraction] = {}
    for mono, c in h.terms.items():
        if a in mono:
            p_terms[tuple(i for i in mono if i != a)] = c
        else:
            rest_terms[mono] = c
    p = Polynomial._raw(p_terms, frozenset())
    rest = Polynomial._raw(rest_terms, h.variables - {a})
    return p, rest


def expand_block(p: Polynomial, cap: int | None = None) -> Polynomial:
    """Multilinear form of -|P|, via gadget, symmetric form, or generic FWHT."""
    if p.is_zero():
        return p
    if p.is_constant():
        return Polynomial.constant(-abs(p.constant_term))
    matched = match_gadget(p)
    if matched is not None:
        return apply_gadget(*matched)
    sym = _uniform_linear(p)
    if sym is not None:
        weight, sigma, ids = sym
        return weight * expand.signed_symmetric_expand(sigma, ids)
    return expand.expand_neg_abs(p, cap)


def _uniform_linear(
    p: Polynomial,
) -> tuple[Fraction, tuple[int, ...], tuple[int, ...]] | None:
    """Detect P = w * sum(sigma_i * s_i) with uniform |coefficient| w."""
    if () in p.terms or any(len(m) != 1 for m in p.terms):
        return None
    weight: Fraction | None = None
    sigma = []
    ids = []
    for mono, c in sorted(p.terms.items()):
        if weight is None:
            weight = abs(c)
        elif abs(c) != weight:
            return None
        sigma.append(1 if c > 0 else -1)
        ids.append(mono[0])
    assert weight is not None
    return weight, tuple(sigma), tuple(ids)


def eliminate_spin(
    h: Polynomial, a: int, limits: ReductionLimits = UNLIMITED
) -> tuple[Polynomial, EliminationRecord]:
    """Remove spin a exactly: h' = rest + (-|P| expanded), plus the record.

    Raises EliminationRefused, leaving h untouched, when the neighborhood
    exceeds the table cap or the result would violate the locality/degree
    limits.
    """
    p, rest = extract_local_block(h, a)
    d = len(p.support)
    cap = limits.neighborhood_cap()
    if d > cap:
        raise EliminationRefused(a, f"neighborhood size {d} exceeds cap {cap}")
    replacement = expand_block(p, cap)
    h2 = rest + replacement
    if limits.max_locality is not None and h2.locality() > limits.max_locality:
        raise EliminationRefused(
            a, f"resulting locality {h2.locality()} exceeds {limits.max_locality}"
        )
    if limits.max_degree is not None and h2.max_degree() > limits.max_degree:
        raise EliminationRefused(
            a, f"resulting degree {h2.max_degree()} exceeds {limits.max_degree}"
        )
    return h2, EliminationRecord(a, p, replacement)


def back_substitute(
    trace: Trace,
    reduced: SpinAssignment,
    branch_cap: int = DEFAULT_BRANCH_CAP,
) -> list[dict[int, int]]:
    """Complete a solution of the reduced problem through the trace.

    Replays records last-first, setting s_a = -sgn(P); whenever P
    evaluates to zero both extensions are kept, so the returned list
    enumerates every completion.
    """
    completions: list[dict[int, int]] = [dict(reduced)]
    for rec in reversed(list(trace)):
        nxt: list[dict[int, int]] = []
        for cur in completions:
            try:
                val = rec.local_block.evaluate(cur)
            except UnassignedVariableError as e:
                raise UnassignedVariableError(e.index) from None
            if val > 0:
                cur[rec.eliminated] = -1
                nxt.append(cur)
            elif val < 0:
                cur[rec.eliminated] = 1
                nxt.append(cur)
            else:
                branch = dict(cur)
                cur[rec.eliminated] = 1
                branch[rec.eliminated] = -1
                nxt.append(cur)
                nxt.append(branch)
        if len(nxt) > branch_cap:
            raise BranchLimitExceeded(
                f"{len(nxt)} completions exceed the branch cap {branch_cap}"
            )
        completions = nxt
    return completions


def reduce_hamiltonian(
    h: Polynomial,
    order: Sequence[int] | str | None = "greedy",
    limits: ReductionLimits = UNLIMITED,
    target_remaining: int = 0,
) -> tuple[Polynomial, Trace]:
    """Eliminate spins per strategy until nothing more is allowed.

    order may be an explicit spin sequence (refusals are skipped, not
    raised) or "greedy" (default): repeatedly remove the spin with the
    fewest co-occurring variables, ties to the lowest index.  Stops when
    no spin is eliminable under the limits or only target_remaining
    variables are left.
    """
    trace = Trace()
    cur = h
    if order is None:
        order = ()
    if not isinstance(order, str):
        for a in order:
            if len(cur.variables) <= target_remaining:
                break
            try:
                cur, rec = eliminate_spin(cur, a, limits)
            except EliminationRefused:
                continue
            trace.append(rec)
        return cur, trace
    if order != "greedy":
        raise ValueError(f"unknown order strategy {order!r}")
    blocked: set[int] = set()
    while len(cur.variables) > target_remaining:
        candidates = sorted(
            (v for v in cur.variables if v not in blocked),
            key=lambda v: (len(cur.neighborhood(v)), v),
        )
        progressed = False
        for a in candidates:
            try:
                cur, rec = eliminate_spin(cur, a, limits)
            except EliminationRefused:
                blocked.add(a)
                continue
            trace.append(rec)
            # an elimination rewires neighborhoods, so blocked spins may
            # become eliminable again
            blocked.clear()
            progressed = True
            break
        if not progressed:
            break
    return cur, trace


def full_solve(
    h: Polynomial, order: Sequence[int] | None = None
) -> tuple[Fraction, list[dict[int, int]]]:
    """Eliminate every spin, then recover all ground states by replay.

    The minimum is the surviving constant; the ground-state set (with all
    degenerate branches) comes from back-substituting the empty
    assignment.  Any elimination order yields the same answer.
    """
    seq = list(order) if order is not None else sorted(h.variables)
    if set(seq) != set(h.variables) or len(seq) != len(h.variables):
        raise ValueError("order must enumerate every variable exactly once")
    cur = h
    trace = Trace()
    for a in seq:
        try:
            cur, rec = eliminate_spin(cur, a)
        except EliminationRefused as e:
            raise expand.CapExceeded(
                f"{e.reason} after {len(trace)} of {len(seq)} eliminations"
            ) from None
        trace.append(rec)
    assert cur.is_constant()
    return cur.constant_term, back_substitute(trace, {})


def spectrum(h: Polynomial, max_vars: int = 24) -> list[tuple[Fraction, int]]:
    """Exhaustive (energy, multiplicity) levels over the declared variables."""
    from ._tables import dense_int_table

    variables = sorted(h.variables)
    if len(variables) > max_vars:
        raise expand.CapExceeded(
            f"spectrum over {len(variables)} variables exceeds cap {max_vars}"
        )
    table, scale = dense_int_table(h, variables)
    if not isinstance(table, list):
        import numpy as np

        values, mult = np.unique(table, return_counts=True)
        return [(Fraction(int(v), scale), int(c)) for v, c in zip(values, mult)]
    counts: dict[int, int] = {}
    for v in table:
        counts[v] = counts.get(v, 0) + 1
    return sorted((Fraction(v, scale), c) for v, c in counts.items())
