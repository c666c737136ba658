"""Exact arithmetic kernel: prime fields, monomials, polynomials, and
dense matrix rank over F_p.

Everything in this module is exact (Python big integers throughout) and
pure: no function mutates its inputs, so values are safe to share across
threads.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Dict, Iterable, Iterator, Mapping, Optional, Tuple

import numpy as np

__all__ = [
    "PrimeField",
    "Monomial",
    "Polynomial",
    "MatrixFp",
    "binom",
    "graded_piece_basis",
    "graded_piece_dim",
    "monomial_index",
    "parse_polynomial",
    "poly_mul",
    "poly_pow",
    "matrix_rank",
    "rank_mod_p",
]


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p < 4:
        return True
    if p % 2 == 0:
        return False
    i = 3
    while i * i <= p:
        if p % i == 0:
            return False
        i += 2
    return True


@dataclass(frozen=True)
class PrimeField:
    """The prime field F_p.  Elements are plain ints reduced into [0, p)."""

    p: int

    def __post_init__(self) -> None:
        if not _is_prime(self.p):
            raise ValueError(f"characteristic must be prime, got {self.p}")

    def reduce(self, a: int) -> int:
        return a % self.p

    def add(self, a: int, b: int) -> int:
        return (a + b) % self.p

    def sub(self, a: int, b: int) -> int:
        return (a - b) % self.p

    def neg(self, a: int) -> int:
        return (-a) % self.p

    def mul(self, a: int, b: int) -> int:
        return (a * b) % self.p

    def inv(self, a: int) -> int:
        a %= self.p
        if a == 0:
            raise ZeroDivisionError(f"0 is not invertible in {self}")
        return pow(a, -1, self.p)

    def __str__(self) -> str:
        return f"F_{self.p}"


def binom(a: int, b: int) -> int:
    """Binomial coefficient C(a, b) as an exact big integer.

    Convention: C(a, b) = 0 for 0 <= a < b.  Negative arguments are
    rejected; dimension formulas route negative twists through duality
    instead of using the polynomial extension of the binomial.
    """
    if a < 0 or b < 0:
        raise ValueError(f"binom requires non-negative arguments, got ({a}, {b})")
    return math.comb(a, b)


class Monomial:
    """A monomial in variables x0..x{n-1}, stored as an exponent tuple.

    The total order is graded lexicographic with x0 largest: lower total
    degree sorts first, and within one degree x0-heavy monomials sort
    first.  Instances are immutable by convention and hashable.
    """

    __slots__ = ("exponents",)

    def __init__(self, exponents: Iterable[int]):
        exps = tuple(int(e) for e in exponents)
        if not exps:
            raise ValueError("monomial needs at least one variable")
        if any(e < 0 for e in exps):
            raise ValueError(f"negative exponent in {exps}")
        self.exponents = exps

    @property
    def n_vars(self) -> int:
        return len(self.exponents)

    @property
    def degree(self) -> int:
        return sum(self.exponents)

    def __mul__(self, other: "Monomial") -> "Monomial":
        if not isinstance(other, Monomial):
            return NotImplemented
        if len(self.exponents) != len(other.exponents):
            raise ValueError("cannot multiply monomials in different variable sets")
        return Monomial(a + b for a, b in zip(self.exponents, other.exponents))

    def _key(self) -> Tuple[int, Tuple[int, ...]]:
        return (self.degree, tuple(-e for e in self.exponents))

    def _check_comparable(self, other: "Monomial") -> None:
        if len(self.exponents) != len(other.exponents):
            raise ValueError("cannot compare monomials in different variable sets")

    def __lt__(self, other: "Monomial") -> bool:
        self._check_comparable(other)
        return self._key() < other._key()

    def __le__(self, other: "Monomial") -> bool:
        self._check_comparable(other)
        return self._key() <= other._key()

    def __gt__(self, other: "Monomial") -> bool:
        return not self.__le__(other)

    def __ge__(self, other: "Monomial") -> bool:
        return not self.__lt__(other)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Monomial) and self.exponents == other.exponents

    def __hash__(self) -> int:
        return hash(self.exponents)

    def __str__(self) -> str:
        parts = []
        for i, e in enumerate(self.exponents):
            if e == 1:
                parts.append(f"x{i}")
            elif e > 1:
                parts.append(f"x{i}^{e}")
        return "*".join(parts) if parts else "1"

    def __repr__(self) -> str:
        return f"Monomial({self.exponents})"


@lru_cache(maxsize=None)
def graded_piece_basis(n_vars: int, t: int) -> Tuple[Monomial, ...]:
    """All monomials of total degree t in n_vars variables, in the fixed
    graded-lex order.  Empty for t < 0.  The result is cached and shared;
    treat it as read-only.
    """
    if n_vars < 1:
        raise ValueError(f"need at least one variable, got {n_vars}")
    if t < 0:
        return ()
    out: list = []

    def rec(prefix: Tuple[int, ...], remaining: int, slots: int) -> None:
        if slots == 1:
            out.append(prefix + (remaining,))
            return
        for e in range(remaining, -1, -1):
            rec(prefix + (e,), remaining - e, slots - 1)

    rec((), t, n_vars)
    return tuple(Monomial(e) for e in out)


def graded_piece_dim(n_vars: int, t: int) -> int:
    """Dimension of the degree-t graded piece of a polynomial ring in
    n_vars variables; 0 for t < 0."""
    if n_vars < 1:
        raise ValueError(f"need at least one variable, got {n_vars}")
    if t < 0:
        return 0
    return binom(t + n_vars - 1, n_vars - 1)


@lru_cache(maxsize=None)
def monomial_index(n_vars: int, t: int) -> Mapping[Monomial, int]:
    """Position of each degree-t monomial within graded_piece_basis.
    Cached and shared; treat it as read-only."""
    return {m: i for i, m in enumerate(graded_piece_basis(n_vars, t))}


class Polynomial:
    """A polynomial over a prime field, stored as {Monomial: coefficient}
    with coefficients reduced into [1, p).  Zero coefficients are dropped
    at construction, so the zero polynomial has no terms.
    """

    __slots__ = ("field", "n_vars", "terms")

    def __init__(
        self,
        field: PrimeField,
        n_vars: int,
        terms: Optional[Mapping[Monomial, int]] = None,
    ):
        if n_vars < 1:
            raise ValueError(f"need at least one variable, got {n_vars}")
        self.field = field
        self.n_vars = n_vars
        clean: Dict[Monomial, int] = {}
        for mono, coeff in (terms or {}).items():
            if not isinstance(mono, Monomial):
                mono = Monomial(mono)
            if mono.n_vars != n_vars:
                raise ValueError(
                    f"monomial {mono!r} has {mono.n_vars} variables, expected {n_vars}"
                )
            c = coeff % field.p
            if c:
                clean[mono] = c
        self.terms = clean

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls, field: PrimeField, n_vars: int) -> "Polynomial":
        return cls(field, n_vars)

    @classmethod
    def constant(cls, field: PrimeField, n_vars: int, c: int) -> "Polynomial":
        return cls(field, n_vars, {Monomial((0,) * n_vars): c})

    @classmethod
    def variable(cls, field: PrimeField, n_vars: int, i: int) -> "Polynomial":
        if not 0 <= i < n_vars:
            raise ValueError(f"variable index {i} out of range for n_vars={n_vars}")
        exps = [0] * n_vars
        exps[i] = 1
        return cls(field, n_vars, {Monomial(exps): 1})

    @classmethod
    def monomial(
        cls, field: PrimeField, n_vars: int, exponents: Iterable[int], coeff: int = 1
    ) -> "Polynomial":
        return cls(field, n_vars, {Monomial(exponents): coeff})

    # -- queries ------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(m.degree for m in self.terms)

    def is_homogeneous(self) -> bool:
        return len({m.degree for m in self.terms}) <= 1

    def coefficient(self, mono: Monomial) -> int:
        return self.terms.get(mono, 0)

    # -- arithmetic ---------------------------------------------------

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.field != self.field or other.n_vars != self.n_vars:
                raise ValueError("polynomials live in different rings")
            return other
        if isinstance(other, int):
            return Polynomial.constant(self.field, self.n_vars, other)
        return NotImplemented

    def __add__(self, other) -> "Polynomial":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self.terms)
        for mono, c in other.terms.items():
            out[mono] = out.get(mono, 0) + c
        return Polynomial(self.field, self.n_vars, out)

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return Polynomial(
            self.field, self.n_vars, {m: -c for m, c in self.terms.items()}
        )

    def __sub__(self, other) -> "Polynomial":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "Polynomial":
        return (-self) + other

    def __mul__(self, other) -> "Polynomial":
        if isinstance(other, int):
            return Polynomial(
                self.field, self.n_vars, {m: c * other for m, c in self.terms.items()}
            )
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        p = self.field.p
        out: Dict[Monomial, int] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = m1 * m2
                out[m] = (out.get(m, 0) + c1 * c2) % p
        return Polynomial(self.field, self.n_vars, out)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "Polynomial":
        if not isinstance(e, int) or e < 0:
            raise ValueError(f"exponent must be a non-negative integer, got {e}")
        result = Polynomial.constant(self.field, self.n_vars, 1)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, Polynomial)
            and self.field == other.field
            and self.n_vars == other.n_vars
            and self.terms == other.terms
        )

    __hash__ = None  # type: ignore[assignment]

    # -- text form ----------------------------------------------------

    def to_text(self) -> str:
        """Canonical text form: terms in graded-lex order joined by '+',
        e.g. 'x0^2+2*x0*x1+x1^2'."""
        if not self.terms:
            return "0"
        parts = []
        for mono in sorted(self.terms):
            c = self.terms[mono]
            if mono.degree == 0:
                parts.append(str(c))
            elif c == 1:
                parts.append(str(mono))
            else:
                parts.append(f"{c}*{mono}")
        return "+".join(parts)

    def __str__(self) -> str:
        return self.to_text()

    def __repr__(self) -> str:
        return f"Polynomial({self.field}, n_vars={self.n_vars}, {self.to_text()!r})"


_FACTOR_VAR = re.compile(r"x(\d+)(?:\^(\d+))?\Z")
_FACTOR_INT = re.compile(r"\d+\Z")


def parse_polynomial(text: str, n_vars: int, field: PrimeField) -> Polynomial:
    """Parse the flat text form: terms joined by '+' or '-', each term a
    '*'-separated product of integer coefficients and factors x<i> or
    x<i>^<e>.  Whitespace is ignored; coefficients reduce mod p.

    Example: 'x0^4+x1^4+x2^4+x3^4+x0*x1*x2*x3'.
    """
    s = re.sub(r"\s+", "", text)
    if not s:
        raise ValueError("empty polynomial text")
    tokens = re.findall(r"[+-]?[^+-]+", s)
    if "".join(tokens) != s:
        raise ValueError(f"cannot parse polynomial text {text!r}")
    terms: Dict[Monomial, int] = {}
    for tok in tokens:
        sign = 1
        body = tok
        if body[0] == "+":
            body = body[1:]
        elif body[0] == "-":
            sign = -1
            body = body[1:]
        if not body:
            raise ValueError(f"dangling sign in polynomial text {text!r}")
        coeff = sign
        exps = [0] * n_vars
        for factor in body.split("*"):
            m = _FACTOR_VAR.match(factor)
            if m:
                i = int(m.group(1))
                e = int(m.group(2)) if m.group(2) else 1
                if i >= n_vars:
                    raise ValueError(
                        f"variable x{i} out of range: expected x0..x{n_vars - 1}"
                    )
                exps[i] += e
            elif _FACTOR_INT.match(factor):
                coeff *= int(factor)
            else:
                raise ValueError(f"cannot parse factor {factor!r} in {text!r}")
        mono = Monomial(exps)
        terms[mono] = terms.get(mono, 0) + coeff
    return Polynomial(field, n_vars, terms)


def poly_mul(f: Polynomial, g: Polynomial) -> Polynomial:
    """Exact product in F_p[x0..x{n-1}]."""
    return f * g


def poly_pow(f: Polynomial, e: int) -> Polynomial:
    """Exact power f**e by repeated squaring, e >= 0."""
    return f**e


# -- dense matrices over F_p ------------------------------------------


class MatrixFp:
    """A dense matrix over F_p with entries reduced into [0, p)."""

    __slots__ = ("field", "entries")

    def __init__(self, field: PrimeField, entries) -> None:
        arr = np.asarray(entries, dtype=np.int64)
        if arr.ndim != 2:
            raise ValueError(f"expected a 2-D matrix, got shape {arr.shape}")
        self.field = field
        self.entries = arr % field.p

    @property
    def rows(self) -> int:
        return self.entries.shape[0]

    @property
    def cols(self) -> int:
        return self.entries.shape[1]

    def rank(self) -> int:
        return rank_mod_p(self.entries, self.field.p)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, MatrixFp)
            and self.field == other.field
            and self.entries.shape == other.entries.shape
            and bool(np.array_equal(self.entries, other.entries))
        )

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        return f"MatrixFp({self.field}, {self.entries.tolist()!r})"


def matrix_rank(m: MatrixFp) -> int:
    """Exact rank of a MatrixFp over its prime field."""
    return m.rank()


def rank_mod_p(matrix, p: int, panel: int = 64) -> int:
    """Exact rank of an integer matrix over F_p.

    Blocked Gaussian elimination in float64: multipliers are stored in
    the eliminated positions, and trailing columns are updated one panel
    at a time with matrix products so the n^3 bulk runs through BLAS.
    Every intermediate value is bounded by panel * (p-1)^2 + p, far below
    2**53, so float64 arithmetic is exact.
    """
    if panel < 1:
        raise ValueError(f"panel must be positive, got {panel}")
    if (p - 1) * (p - 1) * panel >= 2**52:
        raise ValueError(f"characteristic {p} too large for exact float64 elimination")
    a = np.asarray(matrix)
    if a.ndim != 2:
        raise ValueError(f"expected a 2-D matrix, got shape {a.shape}")
    m, n = a.shape
    if m == 0 or n == 0:
        return 0
    A = np.ascontiguousarray(np.asarray(a, dtype=np.int64) % p, dtype=np.float64)
    inv = np.zeros(p)
    for x in range(1, p):
        inv[x] = pow(x, -1, p)
    r = 0
    for c0 in range(0, n, panel):
        if r >= m:
            break
        c1 = min(c0 + panel, n)
        pivcols: list = []
        rr = r
        for c in range(c0, c1):
            if rr >= m:
                break
            col = A[rr:, c] % p
            A[rr:, c] = col
            nz = np.flatnonzero(col)
            if nz.size == 0:
                continue
            i0 = rr + int(nz[0])
            if i0 != rr:
                A[[rr, i0], c0:] = A[[i0, rr], c0:]
            fac = inv[int(A[rr, c])]
            if rr + 1 < m:
                mult = (A[rr + 1 :, c] * fac) % p
                A[rr + 1 :, c] = mult
                prow = A[rr, c + 1 : c1] % p
                A[rr, c + 1 : c1] = prow
                if prow.size:
                    A[rr + 1 :, c + 1 : c1] = (
                        A[rr + 1 :, c + 1 : c1] - np.outer(mult, prow)
                    ) % p
            pivcols.append(c)
            rr += 1
        npiv = rr - r
        if npiv and c1 < n:
            # Deferred update of the trailing columns.  lam holds the
            # stored multipliers; its top npiv rows must be strictly
            # lower triangular (pivot rows are never eliminated against
            # later pivots).
            lam = A[r:, pivcols].copy()
            lam[:npiv] = np.tril(lam[:npiv], k=-1)
            trail = A[r:rr, c1:].copy()
            for j in range(1, npiv):
                trail[j] = (trail[j] - lam[j, :j] @ trail[:j]) % p
            if rr < m:
                A[rr:, c1:] = (A[rr:, c1:] - lam[npiv:] @ trail) % p
        r = rr
    return r
