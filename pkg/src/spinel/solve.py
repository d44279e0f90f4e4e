"""Verification oracles and continuous retrieval dynamics.

``brute_force`` enumerates every configuration exactly and is the
independent check for the elimination pipeline.  The Hopfield side
integrates

    tau * dx_i/dt = -x_i - dH/dy_i |_{y = tanh(x)}

by explicit Euler; for a pairwise Hamiltonian -sum J_ij s_i s_j this is
the classical tau*dx = -x + J tanh(x) retrieval dynamics, and the same
multilinear gradient extends it to higher-order terms.  Trajectories run
in 64-bit floats (the one non-rational corner of the package); clamped
states s_i = sgn(tanh x_i) are re-scored with exact arithmetic, so
histograms always report exact energies.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

import numpy as np

from ._tables import decode_config, dense_int_table
from .expand import CapExceeded
from .poly import Polynomial, format_rational

BRUTE_FORCE_CAP = 26


def brute_force(
    h: Polynomial, max_vars: int = BRUTE_FORCE_CAP
) -> tuple[Fraction, list[dict[int, int]]]:
    """Exhaustive minimum and every ground state over the declared variables."""
    vars_ = sorted(h.variables)
    if len(vars_) > max_vars:
        raise CapExceeded(
            f"brute force over {len(vars_)} variables exceeds cap {max_vars}"
        )
    table, scale = dense_int_table(h, vars_)
    if isinstance(table, list):
        vmin = min(table)
        winners: Iterable[int] = (x for x, v in enumerate(table) if v == vmin)
    else:
        vmin = int(table.min())
        winners = (int(x) for x in np.flatnonzero(table == vmin))
    states = [decode_config(x, vars_) for x in winners]
    return Fraction(int(vmin), scale), states


def state_key(assignment: Mapping[int, int]) -> tuple[int, ...]:
    """Values ordered by spin index, for set comparisons of assignments."""
    return tuple(assignment[v] for v in sorted(assignment))


@dataclass(frozen=True)
class DescentParams:
    """Euler integration controls for the retrieval dynamics."""

    tau: float = 1.0
    dt: float = 0.05
    max_steps: int = 5000
    convergence_eps: float = 1e-6
    seed: int = 0

    def __post_init__(self):
        if self.tau <= 0:
            raise ValueError("tau must be positive")
        if not 0 < self.dt < self.tau:
            raise ValueError("dt must satisfy 0 < dt < tau")
        if self.convergence_eps <= 0:
            raise ValueError("convergence_eps must be positive")
        if self.max_steps < 1:
            raise ValueError("max_steps must be at least 1")


class GradientModel:
    """Float-compiled polynomial: batched energy and multilinear gradient."""

    def __init__(self, h: Polynomial):
        self.poly = h
        self.vars = sorted(h.variables)
        self.n = len(self.vars)
        pos = {v: j for j, v in enumerate(self.vars)}
        monos = sorted((m for m in h.terms if m), key=lambda m: (len(m), m))
        self.const = float(h.constant_term)
        m = len(monos)
        k = max((len(mo) for mo in monos), default=1)
        # padding column n holds a constant 1.0 during products
        idx = np.full((m, k), self.n, dtype=np.intp)
        coeff = np.empty(m, dtype=np.float64)
        for r, mo in enumerate(monos):
            coeff[r] = float(h.terms[mo])
            for c, v in enumerate(mo):
                idx[r, c] = pos[v]
        self.idx = idx
        self.coeff = coeff
        # scatter matrix: gradient contributions (term, slot) -> variable
        scat = np.zeros((m * k, self.n), dtype=np.float64)
        for r in range(m):
            for c in range(k):
                if idx[r, c] != self.n:
                    scat[r * k + c, idx[r, c]] = 1.0
        self._scatter = scat

    def _padded(self, y: np.ndarray) -> np.ndarray:
        return np.concatenate([y, np.ones((y.shape[0], 1))], axis=1)

    def energy(self, y: np.ndarray) -> np.ndarray:
        """H(y) for a batch of rows."""
        if not len(self.coeff):
            return np.full(y.shape[0], self.const)
        picks = self._padded(y)[:, self.idx]
        return self.const + (self.coeff * picks.prod(axis=2)).sum(axis=1)

    def gradient(self, y: np.ndarray) -> np.ndarray:
        """dH/dy_i for a batch of rows, via leave-one-out products."""
        batch = y.shape[0]
        if not len(self.coeff):
            return np.zeros((batch, self.n))
        picks = self._padded(y)[:, self.idx]          # (B, M, K)
        m, k = self.idx.shape
        pref = np.ones((batch, m, k))
        np.cumprod(picks[:, :, :-1], axis=2, out=pref[:, :, 1:])
        suff = np.ones((batch, m, k))
        np.cumprod(picks[:, :, :0:-1], axis=2, out=suff[:, :, -2::-1])
        contrib = (self.coeff[None, :, None] * pref * suff).reshape(batch, m * k)
        return contrib @ self._scatter


def lyapunov_value(model: GradientModel | Polynomial, x: np.ndarray) -> float:
    """H(tanh x) + sum_i [x_i tanh(x_i) - log cosh(x_i)].

    Non-increasing along exact trajectories of the descent dynamics for
    any multilinear H; the Euler discretization may raise it by O(dt^2)
    per step.
    """
    if isinstance(model, Polynomial):
        model = GradientModel(model)
    x = np.asarray(x, dtype=np.float64).reshape(1, -1)
    y = np.tanh(x)
    # log cosh computed overflow-safe
    logcosh = np.abs(x) + np.log1p(np.exp(-2.0 * np.abs(x))) - math.log(2.0)
    return float(model.energy(y)[0] + np.sum(x * y - logcosh))


def _descend(
    model: GradientModel, x0: np.ndarray, params: DescentParams
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Integrate a batch until each row converges; returns (x, converged, steps)."""
    x = np.array(x0, dtype=np.float64)
    batch = x.shape[0]
    if x.shape[1] == 0:
        return x, np.ones(batch, dtype=bool), np.zeros(batch, dtype=np.int64)
    converged = np.zeros(batch, dtype=bool)
    steps = np.zeros(batch, dtype=np.int64)
    active = np.arange(batch)
    rate = params.dt / params.tau
    for step in range(params.max_steps):
        xa = x[active]
        vel = (-xa - model.gradient(np.tanh(xa))) / params.tau
        x[active] = xa + params.dt * vel
        steps[active] = step + 1
        done = np.abs(vel).max(axis=1) < params.convergence_eps
        if done.any():
            converged[active[done]] = True
            active = active[~done]
            if active.size == 0:
                break
    return x, converged, steps


@dataclass(frozen=True)
class DescentResult:
    assignment: dict[int, int]
    energy: Fraction
    converged: bool
    steps: int


def hopfield_descent(
    h: Polynomial, x0: Sequence[float], params: DescentParams = DescentParams()
) -> DescentResult:
    """Relax one trajectory, clamp by sign, and score the state exactly.

    A run that hits max_steps still returns its best-so-far clamp, flagged
    converged=False.
    """
    model = GradientModel(h)
    if len(x0) != model.n:
        raise ValueError(f"x0 has {len(x0)} entries for {model.n} variables")
    x, converged, steps = _descend(
        model, np.asarray(x0, dtype=np.float64).reshape(1, -1), params
    )
    assignment = _clamp_row(x[0], model.vars)
    return DescentResult(
        assignment, h.evaluate(assignment), bool(converged[0]), int(steps[0])
    )


def _clamp_row(x: np.ndarray, vars_: Sequence[int]) -> dict[int, int]:
    # sgn(tanh x) = sgn(x); ties at exactly zero clamp to +1
    return {v: (1 if x[j] >= 0 else -1) for j, v in enumerate(vars_)}


@dataclass
class TrialHistogram:
    """Clamped outcomes of repeated retrieval trials with exact energies.

    Keys are value tuples over the sorted variable list; when the
    Hamiltonian is even (only even-size monomials) states are canonicalized
    under the global spin flip.
    """

    variables: tuple[int, ...]
    n_trials: int
    flip_canonical: bool
    counts: dict[tuple[int, ...], int] = field(default_factory=dict)
    energies: dict[tuple[int, ...], Fraction] = field(default_factory=dict)

    def distinct_states(self) -> int:
        return len(self.counts)

    def min_energy(self) -> Fraction:
        return min(self.energies.values())

    def frequency_of(self, states: Iterable[Mapping[int, int]]) -> float:
        """Fraction of trials that clamped to one of the given states."""
        wanted = set()
        for st in states:
            key = tuple(st[v] for v in self.variables)
            wanted.add(self._canonical(key))
        hits = sum(c for k, c in self.counts.items() if k in wanted)
        return hits / self.n_trials

    def _canonical(self, key: tuple[int, ...]) -> tuple[int, ...]:
        if self.flip_canonical and key and key[0] < 0:
            return tuple(-v for v in key)
        return key

    def to_csv(self) -> str:
        rows = sorted(
            self.counts.items(), key=lambda kv: (self.energies[kv[0]], kv[0])
        )
        lines = ["energy,count,state"]
        for key, count in rows:
            state = "".join("+" if v > 0 else "-" for v in key)
            lines.append(f"{format_rational(self.energies[key])},{count},{state}")
        return "\n".join(lines) + "\n"


def _is_even(h: Polynomial) -> bool:
    return all(len(m) % 2 == 0 for m in h.terms)


def run_trials(
    h: Polynomial,
    n_trials: int,
    params: DescentParams = DescentParams(),
    batch_size: int = 512,
) -> TrialHistogram:
    """Seeded retrieval statistics: n_trials random starts in [-1, 1]^N.

    Each trial draws its own generator from (seed, trial index), so the
    histogram is identical however trials are batched or parallelized.
    """
    if n_trials < 1:
        raise ValueError("n_trials must be >= 1")
    model = GradientModel(h)
    hist = TrialHistogram(
        variables=tuple(model.vars),
        n_trials=n_trials,
        flip_canonical=_is_even(h),
    )
    for lo in range(0, n_trials, batch_size):
        hi = min(lo + batch_size, n_trials)
        x0 = np.stack(
            [
                np.random.default_rng((params.seed, t)).uniform(-1.0, 1.0, model.n)
                for t in range(lo, hi)
            ]
        )
        x, _, _ = _descend(model, x0, params)
        for row in x:
            assignment = _clamp_row(row, model.vars)
            key = hist._canonical(tuple(assignment[v] for v in model.vars))
            hist.counts[key] = hist.counts.get(key, 0) + 1
            if key not in hist.energies:
                hist.energies[key] = h.evaluate(
                    dict(zip(model.vars, key))
                )
    return hist
