"""Exact sparse multilinear polynomials over Ising spin variables.

A Hamiltonian is stored as a mapping from monomials to rational
coefficients.  A monomial is a strictly increasing tuple of 1-based spin
indices; the empty tuple is the constant term.  Spins take values in
{+1, -1}, so repeated indices cancel in pairs (s*s = 1) and the
representation is canonical: two polynomials agree on every configuration
iff their term maps are identical.

Coefficients are `fractions.Fraction` throughout.  Elimination produces
dyadic coefficients (divisions by powers of two) and the test suite
demands bit-exact equality, so floating point never enters this module.

Besides its terms, a polynomial carries a declared variable set, a
superset of the indices appearing in its terms.  Variables whose terms
have all cancelled stay declared, which keeps them enumerable and
addressable during back-substitution.  Equality (`==`) compares terms
only; the declared set is bookkeeping.
"""

from __future__ import annotations

from fractions import Fraction
from types import MappingProxyType
from typing import Iterable, Iterator, Mapping, Tuple, Union

Monomial = Tuple[int, ...]
RationalLike = Union[int, Fraction]
SpinAssignment = Mapping[int, int]

_ZERO = Fraction(0)


class ParseError(ValueError):
    """Malformed Hamiltonian text."""


class UnassignedVariableError(LookupError):
    """An evaluation was attempted with a spin left unassigned."""

    def __init__(self, index: int):
        self.index = index
        super().__init__(f"spin s{index} is not assigned")


def canonicalize_monomial(indices: Iterable[int]) -> Monomial:
    """Sort spin indices and cancel repeats in pairs (s_i * s_i = 1)."""
    parity: dict[int, int] = {}
    for i in indices:
        if i < 1:
            raise ValueError(f"spin indices are 1-based, got {i}")
        parity[i] = parity.get(i, 0) ^ 1
    return tuple(sorted(i for i, odd in parity.items() if odd))


class Polynomial:
    """Immutable multilinear spin polynomial with exact coefficients."""

    __slots__ = ("_terms", "_variables", "_support")

    def __init__(
        self,
        terms: Mapping[Iterable[int], RationalLike]
        | Iterable[tuple[Iterable[int], RationalLike]]
        | None = None,
        variables: Iterable[int] = (),
    ):
        acc: dict[Monomial, Fraction] = {}
        if terms is not None:
            items = terms.items() if isinstance(terms, Mapping) else terms
            for indices, coeff in items:
                mono = canonicalize_monomial(indices)
                c = acc.get(mono, _ZERO) + Fraction(coeff)
                if c:
                    acc[mono] = c
                elif mono in acc:
                    del acc[mono]
        support: set[int] = set()
        for mono in acc:
            support.update(mono)
        self._terms = acc
        self._support = frozenset(support)
        self._variables = self._support | frozenset(variables)

    @classmethod
    def _raw(cls, terms: dict[Monomial, Fraction], variables: frozenset[int]) -> "Polynomial":
        """Trusted constructor: terms already canonical and zero-free."""
        p = object.__new__(cls)
        p._terms = terms
        support = set()
        for mono in terms:
            support.update(mono)
        p._support = frozenset(support)
        p._variables = p._support | variables
        return p

    @classmethod
    def zero(cls, variables: Iterable[int] = ()) -> "Polynomial":
        return cls(None, variables)

    @classmethod
    def constant(cls, value: RationalLike, variables: Iterable[int] = ()) -> "Polynomial":
        return cls({(): value}, variables)

    @classmethod
    def term(cls, coeff: RationalLike, indices: Iterable[int]) -> "Polynomial":
        return cls([(indices, coeff)])

    # -- inspection ------------------------------------------------------

    @property
    def terms(self) -> Mapping[Monomial, Fraction]:
        return MappingProxyType(self._terms)

    @property
    def variables(self) -> frozenset[int]:
        """Declared variable set (support plus any vanished variables)."""
        return self._variables

    @property
    def support(self) -> frozenset[int]:
        """Variables actually appearing in some monomial."""
        return self._support

    @property
    def constant_term(self) -> Fraction:
        return self._terms.get((), _ZERO)

    def coefficient(self, indices: Iterable[int]) -> Fraction:
        return self._terms.get(canonicalize_monomial(indices), _ZERO)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return not self._support

    def locality(self) -> int:
        """Largest monomial size (0 for a constant or zero polynomial)."""
        return max((len(m) for m in self._terms), default=0)

    def degree(self, v: int) -> int:
        """Number of distinct monomials of size >= 2 containing v."""
        return sum(1 for m in self._terms if len(m) >= 2 and v in m)

    def neighborhood(self, v: int) -> frozenset[int]:
        """Variables co-occurring with v in some monomial."""
        nbrs: set[int] = set()
        for m in self._terms:
            if v in m:
                nbrs.update(m)
        nbrs.discard(v)
        return frozenset(nbrs)

    def max_degree(self) -> int:
        counts: dict[int, int] = {}
        for m in self._terms:
            if len(m) >= 2:
                for v in m:
                    counts[v] = counts.get(v, 0) + 1
        return max(counts.values(), default=0)

    def evaluate(self, assignment: SpinAssignment) -> Fraction:
        """Exact value at a +-1 assignment covering every declared variable."""
        missing = self._variables - assignment.keys()
        if missing:
            raise UnassignedVariableError(min(missing))
        total = _ZERO
        for mono, coeff in self._terms.items():
            sign = 1
            for i in mono:
                sign *= assignment[i]
            total += coeff if sign > 0 else -coeff
        return total

    # -- arithmetic ------------------------------------------------------

    def __add__(self, other: "Polynomial") -> "Polynomial":
        if not isinstance(other, Polynomial):
            return NotImplemented
        out = dict(self._terms)
        for mono, coeff in other._terms.items():
            c = out.get(mono, _ZERO) + coeff
            if c:
                out[mono] = c
            elif mono in out:
                del out[mono]
        return Polynomial._raw(out, self._variables | other._variables)

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self + (-other)

    def __neg__(self) -> "Polynomial":
        return Polynomial._raw(
            {m: -c for m, c in self._terms.items()}, self._variables
        )

    def __mul__(self, other: "Polynomial | RationalLike") -> "Polynomial":
        if isinstance(other, Polynomial):
            out: dict[Monomial, Fraction] = {}
            for m1, c1 in self._terms.items():
                s1 = set(m1)
                for m2, c2 in other._terms.items():
                    mono = tuple(sorted(s1.symmetric_difference(m2)))
                    c = out.get(mono, _ZERO) + c1 * c2
                    if c:
                        out[mono] = c
                    elif mono in out:
                        del out[mono]
            return Polynomial._raw(out, self._variables | other._variables)
        scalar = Fraction(other)
        if scalar == 0:
            return Polynomial.zero(self._variables)
        return Polynomial._raw(
            {m: c * scalar for m, c in self._terms.items()}, self._variables
        )

    def __rmul__(self, other: RationalLike) -> "Polynomial":
        return self.__mul__(other)

    def with_variables(self, extra: Iterable[int]) -> "Polynomial":
        """Declare additional variables without adding terms."""
        return Polynomial._raw(dict(self._terms), self._variables | frozenset(extra))

    # -- comparison / display --------------------------------------------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self._terms == other._terms

    def __len__(self) -> int:
        return len(self._terms)

    def __iter__(self) -> Iterator[tuple[Monomial, Fraction]]:
        return iter(sorted(self._terms.items(), key=lambda kv: (len(kv[0]), kv[0])))

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for mono, coeff in self:
            prod = "*".join(f"s{i}" for i in mono)
            if not mono:
                body = format_rational(abs(coeff))
            elif abs(coeff) == 1:
                body = prod
            else:
                body = f"{format_rational(abs(coeff))}*{prod}"
            parts.append(("- " if coeff < 0 else "+ ") + body)
        first = parts[0].replace("+ ", "", 1).replace("- ", "-", 1)
        return " ".join([first] + parts[1:])

    def __repr__(self) -> str:
        return f"Polynomial<{self}>"


# -- canonical line-oriented text format ----------------------------------
#
#   # comment            ignored
#   c <rational>         constant term
#   t <rational> <i>...  one monomial, indices strictly increasing, 1-based
#
# Rationals are written `p` or `p/q` in lowest terms.  Duplicate monomials
# are a parse error.


def format_rational(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def parse_rational(token: str) -> Fraction:
    body = token[1:] if token[:1] in "+-" else token
    num, slash, den = body.partition("/")
    if not num.isdigit() or (slash and not den.isdigit()):
        raise ParseError(f"bad rational {token!r}")
    try:
        return Fraction(token)
    except ZeroDivisionError:
        raise ParseError(f"zero denominator in {token!r}") from None


def format_polynomial(p: Polynomial) -> str:
    """Serialize deterministically; parse(format(p)) reproduces p bit-exactly."""
    lines = []
    for mono, coeff in p:
        if mono:
            lines.append(f"t {format_rational(coeff)} {' '.join(map(str, mono))}")
        else:
            lines.append(f"c {format_rational(coeff)}")
    return "\n".join(lines) + ("\n" if lines else "")


def parse_polynomial(text: str) -> Polynomial:
    terms: dict[Monomial, Fraction] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        tag = parts[0]
        if tag == "c":
            if len(parts) != 2:
                raise ParseError(f"line {lineno}: expected `c <rational>`")
            mono: Monomial = ()
            coeff = parse_rational(parts[1])
        elif tag == "t":
            if len(parts) < 3:
                raise ParseError(f"line {lineno}: expected `t <rational> <i> ...`")
            coeff = parse_rational(parts[1])
            try:
                idx = [int(tok) for tok in parts[2:]]
            except ValueError:
                raise ParseError(f"line {lineno}: bad spin index") from None
            if any(i < 1 for i in idx):
                raise ParseError(f"line {lineno}: spin indices are 1-based")
            if any(a >= b for a, b in zip(idx, idx[1:])):
                raise ParseError(f"line {lineno}: indices must be strictly increasing")
            mono = tuple(idx)
        else:
            raise ParseError(f"line {lineno}: unknown tag {tag!r}")
        if mono in terms:
            raise ParseError(f"line {lineno}: duplicate monomial {mono}")
        terms[mono] = coeff
    return Polynomial(terms)


def load_polynomial(path: str) -> Polynomial:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_polynomial(fh.read())


def save_polynomial(p: Polynomial, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_polynomial(p))
