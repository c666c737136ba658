"""Frobenius splitting of hypersurfaces, decided two independent ways.

The membership route: a degree-d hypersurface V(f) in P^n is Frobenius
split iff f^(p-1) lies outside the ideal (x0^p, ..., xn^p), i.e. iff some
monomial of f^(p-1) has every exponent at most p-1.

The action route: the p-linear map xi -> f^(p-1) * xi^p on the top
cohomology of O(-d) on P^n, written in the Laurent-monomial basis.  For
d = n+1 the two routes agree exactly: both reduce to the coefficient of
(x0...xn)^(p-1) in f^(p-1).
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from .kernel import (
    MatrixFp,
    Monomial,
    Polynomial,
    PrimeField,
    graded_piece_basis,
)

__all__ = [
    "SplitVerdict",
    "FrobActionMatrix",
    "fedder_check",
    "frobenius_action",
    "random_homogeneous",
]


@dataclass(frozen=True)
class SplitVerdict:
    """Outcome of the p-th-power ideal membership test.

    When split is true, witness is a monomial of f^(p-1) with every
    exponent at most p-1 (and total degree d*(p-1)); otherwise witness
    is None.
    """

    split: bool
    witness: Optional[Monomial]
    p: int
    d: int

    def __post_init__(self) -> None:
        if self.split:
            if self.witness is None:
                raise ValueError("split verdict requires a witness monomial")
            if max(self.witness.exponents) > self.p - 1:
                raise ValueError(f"witness {self.witness} has an exponent >= p")
            if self.witness.degree != self.d * (self.p - 1):
                raise ValueError(
                    f"witness degree {self.witness.degree} != d*(p-1) = {self.d * (self.p - 1)}"
                )
        elif self.witness is not None:
            raise ValueError("non-split verdict must not carry a witness")


def _validate_hypersurface_poly(p: int, f: Polynomial, d: int, n: int) -> None:
    PrimeField(p)
    if f.field.p != p:
        raise ValueError(f"polynomial is over F_{f.field.p}, expected F_{p}")
    if f.n_vars != n + 1:
        raise ValueError(f"polynomial has {f.n_vars} variables, expected {n + 1}")
    if f.is_zero():
        raise ValueError("defining polynomial must be nonzero")
    if not f.is_homogeneous() or f.degree() != d:
        raise ValueError(f"polynomial must be homogeneous of degree {d}")


def fedder_check(p: int, f: Polynomial, d: int, n: int) -> SplitVerdict:
    """Decide Frobenius splitting of V(f) in P^n by expanding f^(p-1).

    Splitting holds iff some monomial of f^(p-1) has all exponents at
    most p-1; the smallest such monomial in the fixed graded-lex order is
    returned as the witness.
    """
    _validate_hypersurface_poly(p, f, d, n)
    g = f ** (p - 1)
    survivors = [m for m in g.terms if max(m.exponents) <= p - 1]
    if survivors:
        return SplitVerdict(True, min(survivors), p, d)
    return SplitVerdict(False, None, p, d)


@dataclass
class FrobActionMatrix:
    """The p-linear action xi -> f^(p-1) * xi^p on top cohomology of
    O(-d) on P^n, in the Laurent basis of monomials with all exponents
    <= -1 and total degree -d.  Columns are images of basis vectors;
    entries are plain F_p scalars.
    """

    basis: Tuple[Tuple[int, ...], ...]
    matrix: MatrixFp

    def is_zero(self) -> bool:
        return not np.any(self.matrix.entries)


def frobenius_action(p: int, f: Polynomial, d: int, n: int) -> FrobActionMatrix:
    """Compute the Frobenius action matrix for V(f) of degree d in P^n.

    The basis has size binom(d-1, n); it is empty (a 0x0 matrix) for
    d <= n.  Applying the map to x^c multiplies f^(p-1) into x^(p*c) and
    projects onto the monomials with every exponent still <= -1.
    """
    _validate_hypersurface_poly(p, f, d, n)
    interior = graded_piece_basis(n + 1, d - n - 1)
    basis = tuple(tuple(-1 - e for e in m.exponents) for m in interior)
    size = len(basis)
    index = {c: i for i, c in enumerate(basis)}
    mat = np.zeros((size, size), dtype=np.int64)
    g = f ** (p - 1)
    for j, cvec in enumerate(basis):
        shifted = tuple(p * ci for ci in cvec)
        for mono, coeff in g.terms.items():
            w = tuple(u + v for u, v in zip(mono.exponents, shifted))
            if all(x <= -1 for x in w):
                mat[index[w], j] = (mat[index[w], j] + coeff) % p
    return FrobActionMatrix(basis, MatrixFp(PrimeField(p), mat))


def random_homogeneous(
    field: PrimeField, n_vars: int, degree: int, rng: random.Random
) -> Polynomial:
    """A uniformly random nonzero homogeneous polynomial of the given
    degree, drawn coefficient-by-coefficient from the seeded generator."""
    basis = graded_piece_basis(n_vars, degree)
    if not basis:
        raise ValueError(f"no monomials of degree {degree}")
    while True:
        poly = Polynomial(
            field, n_vars, {m: rng.randrange(field.p) for m in basis}
        )
        if not poly.is_zero():
            return poly
