"""Frobenius pushforwards as explicit graded matrices.

Over S = F_p[x_0..x_n], the pushforward F_*S splits by exponent residue
class: every monomial is x^a * (x^v)^p for a unique a in {0..p-1}^(n+1),
so F_*O(k) is free with one generator e_a for each residue tuple a with
|a| = k (mod p), placed in degree w_a = (|a| - k)/p.  There are exactly
p^n such tuples.  Multiplication-by-f maps between two of these free
modules give finite presentations of F_*O_X(k) and of B1_X on a
hypersurface X = V(f), and their graded cokernel dimensions are Hilbert
functions that can be cross-checked against sheaf-cohomology formulas.

Coefficients come from F_p, so they are fixed by Frobenius and the
matrix entries need no p-th roots of scalars.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

import numpy as np

from .kernel import (
    Monomial,
    Polynomial,
    PrimeField,
    graded_piece_basis,
    graded_piece_dim,
    monomial_index,
    rank_mod_p,
)
from .cohomology import Hypersurface

__all__ = [
    "TwistMultiset",
    "decompose_pn",
    "PresentationMatrix",
    "build_frobpush_presentation",
    "build_b1_presentation",
    "hilbert_function",
    "rank_from_hilbert",
    "InsufficientWindow",
]


class InsufficientWindow(Exception):
    """The sampled Hilbert-function window does not pin down a rank."""


@dataclass(frozen=True)
class TwistMultiset:
    """A finite multiset of line-bundle twists, e.g. O + O(-1)^3."""

    counts: Mapping[int, int]

    def __post_init__(self) -> None:
        for t, m in self.counts.items():
            if m <= 0:
                raise ValueError(f"multiplicity of twist {t} must be positive, got {m}")

    @property
    def total(self) -> int:
        return sum(self.counts.values())

    def multiplicity(self, t: int) -> int:
        return self.counts.get(t, 0)

    def items(self) -> Iterable[Tuple[int, int]]:
        return self.counts.items()

    def pretty(self) -> str:
        parts = []
        for t in sorted(self.counts, reverse=True):
            name = "O" if t == 0 else f"O({t})"
            m = self.counts[t]
            parts.append(name if m == 1 else f"{name}^{m}")
        return " ⊕ ".join(parts) if parts else "0"

    def __str__(self) -> str:
        return self.pretty()


def _residue_box(p: int, n_vars: int, k: int) -> List[Tuple[int, ...]]:
    """Residue tuples a in {0..p-1}^n_vars with |a| = k (mod p), sorted
    by (|a|, a) so generator weights come out non-decreasing."""
    kk = k % p
    box: List[Tuple[int, ...]] = []

    def rec(prefix: Tuple[int, ...], slots: int) -> None:
        if slots == 0:
            if sum(prefix) % p == kk:
                box.append(prefix)
            return
        for e in range(p):
            rec(prefix + (e,), slots - 1)

    rec((), n_vars)
    box.sort(key=lambda a: (sum(a), a))
    return box


def decompose_pn(p: int, n: int, k: int) -> TwistMultiset:
    """Direct-sum decomposition of F_*O(k) on P^n into line bundles.

    The summand for residue tuple a is O((k - |a|)/p); the multiset has
    exactly p^n members.  k is taken as given, not normalized mod p.
    """
    PrimeField(p)
    if not 1 <= n <= 4:
        raise ValueError(f"projective space dimension must be in 1..4, got {n}")
    counts: Counter = Counter()
    for a in _residue_box(p, n + 1, k):
        counts[(k - sum(a)) // p] += 1
    out = TwistMultiset(dict(counts))
    assert out.total == p**n
    return out


@dataclass(frozen=True)
class PresentationMatrix:
    """A graded matrix over S = F_p[x_0..x_{n_vars-1}] presenting a
    module: cokernel of  (+)_c S(-col_twists[c]) -> (+)_r S(-row_twists[r]).

    Twists are generator weights: a generator of weight w spans a copy
    of S(-w).  A nonzero entry at (r, c) must be homogeneous of degree
    col_twists[c] - row_twists[r].  Entries are stored sparsely; absent
    pairs are zero.
    """

    kind: str
    p: int
    n_vars: int
    d: int
    k: int
    row_twists: Tuple[int, ...]
    col_twists: Tuple[int, ...]
    row_labels: Tuple[str, ...]
    col_labels: Tuple[str, ...]
    entries: Mapping[Tuple[int, int], Polynomial] = field(default_factory=dict)

    def __post_init__(self) -> None:
        PrimeField(self.p)
        if self.kind not in ("frobpush", "b1"):
            raise ValueError(f"unknown presentation kind {self.kind!r}")
        if len(self.row_twists) != len(self.row_labels):
            raise ValueError("row labels and twists disagree in length")
        if len(self.col_twists) != len(self.col_labels):
            raise ValueError("column labels and twists disagree in length")
        for (r, c), poly in self.entries.items():
            if not 0 <= r < len(self.row_twists) or not 0 <= c < len(self.col_twists):
                raise ValueError(f"entry index ({r}, {c}) out of range")
            if poly.field.p != self.p:
                raise ValueError(f"entry ({r}, {c}) lives over F_{poly.field.p}, expected F_{self.p}")
            if poly.is_zero():
                raise ValueError(f"entry ({r}, {c}) is zero; omit it instead")
            want = self.col_twists[c] - self.row_twists[r]
            if not poly.is_homogeneous() or poly.degree() != want:
                raise ValueError(
                    f"inconsistent degrees at entry ({r}, {c}): expected "
                    f"homogeneous of degree {want}, got {poly}"
                )

    @property
    def shape(self) -> Tuple[int, int]:
        return (len(self.row_twists), len(self.col_twists))


def _check_poly(p: int, f: Polynomial, d: int, n: int) -> None:
    PrimeField(p)
    if not 1 <= n <= 4:
        raise ValueError(f"ambient dimension must be in 1..4, got {n}")
    if f.field.p != p:
        raise ValueError(f"polynomial is over F_{f.field.p}, expected F_{p}")
    if f.n_vars != n + 1:
        raise ValueError(f"polynomial has {f.n_vars} variables, expected {n + 1}")
    if f.is_zero() or not f.is_homogeneous() or f.degree() != d:
        raise ValueError(f"polynomial must be homogeneous of degree {d}")


def _mult_entries(
    f: Polynomial,
    p: int,
    source: Sequence[Tuple[int, ...]],
    target_index: Mapping[Tuple[int, ...], int],
) -> Dict[Tuple[int, int], Polynomial]:
    """Matrix of multiplication-by-f between residue-class summands.

    A term f_u x^u times the class of x^(a') lands in the class of the
    residue a = u + a' mod p, carrying x^((u + a' - a)/p).
    """
    field_ = f.field
    n_vars = f.n_vars
    acc: Dict[Tuple[int, int], Dict[Monomial, int]] = {}
    for cidx, aprime in enumerate(source):
        for mono, coeff in f.terms.items():
            b = tuple(u + ap for u, ap in zip(mono.exponents, aprime))
            a = tuple(e % p for e in b)
            v = Monomial((e - r) // p for e, r in zip(b, a))
            ridx = target_index[a]
            bucket = acc.setdefault((ridx, cidx), {})
            bucket[v] = (bucket.get(v, 0) + coeff) % p
    out: Dict[Tuple[int, int], Polynomial] = {}
    for key, bucket in acc.items():
        poly = Polynomial(field_, n_vars, bucket)
        if not poly.is_zero():
            out[key] = poly
    return out


def build_frobpush_presentation(
    p: int, f: Polynomial, d: int, n: int, k: int
) -> PresentationMatrix:
    """Presentation of F_*O_X(k) on X = V(f): multiplication by f from
    the F_*O(k-d) summands to the F_*O(k) summands, a p^n x p^n matrix."""
    _check_poly(p, f, d, n)
    target = _residue_box(p, n + 1, k)
    source = _residue_box(p, n + 1, k - d)
    tindex = {a: i for i, a in enumerate(target)}
    entries = _mult_entries(f, p, source, tindex)
    return PresentationMatrix(
        kind="frobpush",
        p=p,
        n_vars=n + 1,
        d=d,
        k=k,
        row_twists=tuple((sum(a) - k) // p for a in target),
        col_twists=tuple((sum(a) - (k - d)) // p for a in source),
        row_labels=tuple(str(Monomial(a)) for a in target),
        col_labels=tuple(str(Monomial(a)) for a in source),
        entries=entries,
    )


def build_b1_presentation(p: int, f: Polynomial, d: int, n: int) -> PresentationMatrix:
    """Presentation of B1_X = coker(O_X -> F_*O_X) on X = V(f).

    This is the k = 0 pushforward presentation with one extra source
    column for the structure section: g -> g^p hits the weight-0
    generator (residue tuple 0) with entry 1.  Shape p^n x (p^n + 1).
    """
    _check_poly(p, f, d, n)
    target = _residue_box(p, n + 1, 0)
    source = _residue_box(p, n + 1, -d)
    tindex = {a: i for i, a in enumerate(target)}
    entries = _mult_entries(f, p, source, tindex)
    unit_col = len(source)
    zero_row = tindex[(0,) * (n + 1)]
    entries[(zero_row, unit_col)] = Polynomial.constant(f.field, n + 1, 1)
    return PresentationMatrix(
        kind="b1",
        p=p,
        n_vars=n + 1,
        d=d,
        k=0,
        row_twists=tuple(sum(a) // p for a in target),
        col_twists=tuple((sum(a) + d) // p for a in source) + (0,),
        row_labels=tuple(str(Monomial(a)) for a in target),
        col_labels=tuple(str(Monomial(a)) for a in source) + ("unit",),
        entries=entries,
    )


def hilbert_function(P: PresentationMatrix, t: int) -> int:
    """Dimension over F_p of the degree-t piece of the cokernel.

    Assembles the degree-t block matrix (monomial bases of each
    generator's graded piece) and subtracts its exact rank from the
    target dimension.
    """
    nv = P.n_vars
    row_dims = [graded_piece_dim(nv, t - w) for w in P.row_twists]
    col_dims = [graded_piece_dim(nv, t - w) for w in P.col_twists]
    total_rows = sum(row_dims)
    total_cols = sum(col_dims)
    if total_rows == 0:
        return 0
    if total_cols == 0:
        return total_rows
    row_off = np.concatenate(([0], np.cumsum(row_dims)))
    col_off = np.concatenate(([0], np.cumsum(col_dims)))
    M = np.zeros((total_rows, total_cols), dtype=np.int64)
    for (r, c), poly in P.entries.items():
        if col_dims[c] == 0 or row_dims[r] == 0:
            continue
        src_basis = graded_piece_basis(nv, t - P.col_twists[c])
        dst_index = monomial_index(nv, t - P.row_twists[r])
        r0, c0 = row_off[r], col_off[c]
        for j, mu in enumerate(src_basis):
            for mono, coeff in poly.terms.items():
                M[r0 + dst_index[mono * mu], c0 + j] += coeff
    return total_rows - rank_mod_p(M % P.p, P.p)


def rank_from_hilbert(
    P: PresentationMatrix,
    space: Hypersurface,
    window: Iterable[int] = range(3, 9),
) -> int:
    """Rank of the presented module as a sheaf on X, fitted from the
    Hilbert function.

    For a module whose sheaf is locally free of rank r on the degree-d
    hypersurface of dimension q, the q-th finite differences of the
    Hilbert function stabilize at r*d.  The window must be consecutive,
    long enough for q-th differences plus a constancy check, and far
    enough out that the differences have in fact stabilized; anything
    else raises InsufficientWindow.
    """
    if P.p != space.p or P.d != space.d or P.n_vars != space.n + 1:
        raise ValueError("presentation and hypersurface disagree on (p, d, n)")
    q = space.q
    ts = list(window)
    if not ts or ts != list(range(ts[0], ts[-1] + 1)):
        raise InsufficientWindow(f"window must be consecutive integers, got {ts}")
    if len(ts) < q + 2:
        raise InsufficientWindow(
            f"need at least {q + 2} consecutive window values for dimension {q}, got {len(ts)}"
        )
    values = [hilbert_function(P, t) for t in ts]
    diffs = list(values)
    for _ in range(q):
        diffs = [b - a for a, b in zip(diffs, diffs[1:])]
    if len(set(diffs)) != 1:
        raise InsufficientWindow(
            f"order-{q} differences are not constant over the window: {diffs}"
        )
    lead = diffs[0]
    if lead <= 0 or lead % P.d != 0:
        raise InsufficientWindow(
            f"stable order-{q} difference {lead} is not a positive multiple of d={P.d}"
        )
    return lead // P.d
