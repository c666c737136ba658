"""Closed-form line-bundle cohomology on P^n and on hypersurfaces, the
twist arithmetic for Frobenius pushforward bundles, and an exact decision
procedure for vanishing along infinite twist rays.

Dimension formulas (all exact big integers):

  P^n:            h^0(O(t)) = C(n+t, n) for t >= 0, else 0
                  h^n(O(t)) = C(-t-1, n) for t <= -n-1, else 0
                  h^i(O(t)) = 0 for 0 < i < n

  X = V(f) in P^n of degree d, q = dim X = n-1 (n >= 2):
                  h^0(O_X(t)) = h^0(O(t)) - h^0(O(t-d))
                  h^i(O_X(t)) = 0 for 1 <= i <= q-1
                  h^q(O_X(t)) = h^n(O(t-d)) - h^n(O(t))

These depend only on (n, d); smoothness of f is never checked.  The
dualizing twist is d - n - 1, so h^q(O_X(t)) = h^0(O_X(d-n-1-t)).

Bundle twists.  For E = (F_* O_X(k))(c) the projection formula along the
(finite, flat) Frobenius gives h^i(E(m)) = h^i(O_X(k + p(c+m))).  For
E = B1_X(c), the cokernel of the structure inclusion O_X -> F_* O_X,
the direct-sum reduction h^i(E(m)) = h^i(O_X(p(c+m))) - h^i(O_X(c+m))
is valid only when the inclusion splits; the engine refuses it otherwise
(NotSplit).

All functions here are pure.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, List, Optional, Sequence, Tuple, Union

from .kernel import Polynomial, PrimeField, binom
from .splitting import SplitVerdict, fedder_check

__all__ = [
    "ProjectiveSpace",
    "Hypersurface",
    "AmbientSpace",
    "FrobPush",
    "B1",
    "BundleSpec",
    "TwistFamily",
    "Ray",
    "ProvenVanishing",
    "Counterexample",
    "RayVerdict",
    "NotSplit",
    "pn_cohom",
    "hyp_cohom",
    "line_cohom",
    "serre_dual_check",
    "twist_model",
    "bundle_cohom_dim",
    "vanishes_on_ray",
]


class NotSplit(Exception):
    """The direct-sum reduction for B1 was requested without an
    established Frobenius splitting, or with one that is inconsistent."""


class ProjectiveSpace:
    """P^n over F_p (1 <= n <= 4)."""

    __slots__ = ("n", "p")

    def __init__(self, n: int, p: int):
        if not 1 <= n <= 4:
            raise ValueError(f"projective space dimension must be in 1..4, got {n}")
        PrimeField(p)
        self.n = n
        self.p = p

    @property
    def q(self) -> int:
        return self.n

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, ProjectiveSpace)
            and (self.n, self.p) == (other.n, other.p)
        )

    def __repr__(self) -> str:
        return f"ProjectiveSpace(n={self.n}, p={self.p})"


class Hypersurface:
    """A degree-d hypersurface in P^n over F_p, of dimension q = n - 1.

    Ambient dimension is restricted to 2 <= n <= 4: the two-term closed
    forms above separate h^0 from h^q only when q >= 1.  The defining
    polynomial is optional; it is needed only for splitting checks and
    for presentation-matrix builders, never for the closed forms.
    """

    __slots__ = ("n", "d", "p", "f", "_fedder")

    def __init__(self, n: int, d: int, p: int, f: Optional[Polynomial] = None):
        if not 2 <= n <= 4:
            raise ValueError(f"hypersurface ambient dimension must be in 2..4, got {n}")
        if d < 1:
            raise ValueError(f"degree must be positive, got {d}")
        PrimeField(p)
        if f is not None:
            if f.field.p != p:
                raise ValueError(f"polynomial is over F_{f.field.p}, expected F_{p}")
            if f.n_vars != n + 1:
                raise ValueError(
                    f"polynomial has {f.n_vars} variables, expected {n + 1}"
                )
            if f.is_zero() or not f.is_homogeneous() or f.degree() != d:
                raise ValueError(f"polynomial must be homogeneous of degree {d}")
        self.n = n
        self.d = d
        self.p = p
        self.f = f
        self._fedder: Optional[SplitVerdict] = None

    @property
    def q(self) -> int:
        return self.n - 1

    def split_verdict(self) -> Optional[SplitVerdict]:
        """Cached Fedder verdict for the defining polynomial, or None
        when no polynomial was given."""
        if self.f is None:
            return None
        if self._fedder is None:
            self._fedder = fedder_check(self.p, self.f, self.d, self.n)
        return self._fedder

    def __repr__(self) -> str:
        ftxt = "None" if self.f is None else f"'{self.f.to_text()}'"
        return f"Hypersurface(n={self.n}, d={self.d}, p={self.p}, f={ftxt})"


AmbientSpace = Union[ProjectiveSpace, Hypersurface]


@dataclass(frozen=True)
class FrobPush:
    """The bundle (F_* O_X(k))(c)."""

    k: int
    c: int


@dataclass(frozen=True)
class B1:
    """The bundle B1_X(c), with B1_X the cokernel of O_X -> F_* O_X."""

    c: int


BundleSpec = Union[FrobPush, B1]


@dataclass(frozen=True)
class TwistFamily:
    """The affine twist family m -> a + b*m."""

    a: int
    b: int

    def __call__(self, m: int) -> int:
        return self.a + self.b * m


@dataclass(frozen=True)
class Ray:
    """A one-sided infinite set of integer twists: m <= bound or
    m >= bound."""

    direction: str
    bound: int

    def __post_init__(self) -> None:
        if self.direction not in ("le", "ge"):
            raise ValueError(f"ray direction must be 'le' or 'ge', got {self.direction!r}")

    @classmethod
    def le(cls, bound: int) -> "Ray":
        return cls("le", bound)

    @classmethod
    def ge(cls, bound: int) -> "Ray":
        return cls("ge", bound)

    def contains(self, m: int) -> bool:
        return m <= self.bound if self.direction == "le" else m >= self.bound

    def __str__(self) -> str:
        op = "<=" if self.direction == "le" else ">="
        return f"m{op}{self.bound}"


@dataclass(frozen=True)
class ProvenVanishing:
    """Every twist in the ray has zero cohomology (exact statement, not a
    sample)."""

    @property
    def vanishes(self) -> bool:
        return True


@dataclass(frozen=True)
class Counterexample:
    """A twist in the ray with nonzero cohomology; m has the smallest
    absolute value among all such twists (non-negative m wins ties)."""

    m: int
    dim: int

    @property
    def vanishes(self) -> bool:
        return False


RayVerdict = Union[ProvenVanishing, Counterexample]


# -- closed forms -----------------------------------------------------


def pn_cohom(n: int, i: int, t: int) -> int:
    """h^i(P^n, O(t)) as an exact big integer."""
    if n < 1:
        raise ValueError(f"projective space dimension must be positive, got {n}")
    if not 0 <= i <= n:
        raise ValueError(f"cohomological degree {i} out of range 0..{n}")
    if i == 0:
        return binom(n + t, n) if t >= 0 else 0
    if i == n:
        return binom(-t - 1, n) if t <= -n - 1 else 0
    return 0


def hyp_cohom(space: Hypersurface, i: int, t: int) -> int:
    """h^i(X, O_X(t)) for a degree-d hypersurface X in P^n.

    Needs only (n, d); the defining polynomial and its smoothness never
    enter.
    """
    if not isinstance(space, Hypersurface):
        raise TypeError(f"expected a Hypersurface, got {type(space).__name__}")
    n, d, q = space.n, space.d, space.q
    if not 0 <= i <= q:
        raise ValueError(f"cohomological degree {i} out of range 0..{q}")
    if i == 0:
        return pn_cohom(n, 0, t) - pn_cohom(n, 0, t - d)
    if i == q:
        return pn_cohom(n, n, t - d) - pn_cohom(n, n, t)
    return 0


def line_cohom(space: AmbientSpace, i: int, t: int) -> int:
    """h^i of the twist-t line bundle on the given space."""
    if isinstance(space, ProjectiveSpace):
        return pn_cohom(space.n, i, t)
    return hyp_cohom(space, i, t)


def serre_dual_check(space: Hypersurface, t: int) -> bool:
    """Check h^q(O_X(t)) == h^0(O_X(d-n-1-t)) (dualizing twist d-n-1)."""
    if not isinstance(space, Hypersurface):
        raise TypeError(f"expected a Hypersurface, got {type(space).__name__}")
    dual_t = space.d - space.n - 1 - t
    return hyp_cohom(space, space.q, t) == hyp_cohom(space, 0, dual_t)


# -- bundle twist models ----------------------------------------------


def _resolve_split(space: AmbientSpace, split: Optional[bool]) -> None:
    """Gate for the B1 direct-sum reduction.

    P^n always splits.  On a hypersurface the caller may pass an explicit
    verdict (e.g. from the Frobenius-action route on a Calabi-Yau
    instance); otherwise the defining polynomial is run through the
    membership test, and its absence refuses the reduction.
    """
    if isinstance(space, ProjectiveSpace):
        return
    if split is True:
        return
    if split is False:
        raise NotSplit("splitting was reported false; the direct-sum reduction is invalid")
    verdict = space.split_verdict()
    if verdict is None:
        raise NotSplit(
            "cannot verify Frobenius splitting: the hypersurface has no defining polynomial"
        )
    if not verdict.split:
        raise NotSplit(
            f"V(f) is not Frobenius split for p={space.p}: every monomial of "
            f"f^(p-1) has an exponent >= p"
        )


def twist_model(
    space: AmbientSpace, spec: BundleSpec, *, split: Optional[bool] = None
) -> Tuple[Tuple[int, TwistFamily], ...]:
    """Signed twist families with h^i(E(m)) = sum s * h^i(O(fam(m))).

    FrobPush gives the single family k + p*c + p*m; B1 gives the split
    difference p*c + p*m minus c + m and raises NotSplit when splitting
    is not established.
    """
    p = space.p
    if isinstance(spec, FrobPush):
        return ((1, TwistFamily(spec.k + p * spec.c, p)),)
    if isinstance(spec, B1):
        _resolve_split(space, split)
        return ((1, TwistFamily(p * spec.c, p)), (-1, TwistFamily(spec.c, 1)))
    raise TypeError(f"unknown bundle spec {spec!r}")


def _dim_for_terms(
    space: AmbientSpace, i: int, terms: Sequence[Tuple[int, TwistFamily]], m: int
) -> int:
    val = sum(s * line_cohom(space, i, fam(m)) for s, fam in terms)
    if val < 0:
        raise NotSplit(
            "difference formula produced a negative dimension; the claimed "
            "splitting is inconsistent"
        )
    return val


def bundle_cohom_dim(
    space: AmbientSpace,
    spec: BundleSpec,
    i: int,
    m: int,
    *,
    split: Optional[bool] = None,
) -> int:
    """h^i(E(m)) for E described by spec, as an exact big integer."""
    terms = twist_model(space, spec, split=split)
    return _dim_for_terms(space, i, terms, m)


# -- exact ray decisions ----------------------------------------------


def _thresholds(space: AmbientSpace, i: int) -> Tuple[int, ...]:
    """Safe cut thresholds for the degree-i closed form.

    Each binomial component sits at a twist offset delta (0 for P^n;
    0 and d for a hypersurface) and is described by one polynomial for
    t - delta >= -n and by zero for t - delta <= -1; the two regimes
    agree on the gap [-n, -1].  Cutting at T = delta - 1 keeps both
    sides of the cut inside a single regime whichever way the twist
    family is sloped.
    """
    if isinstance(space, ProjectiveSpace):
        return (-1,) if i in (0, space.n) else ()
    if i in (0, space.q):
        return (-1, space.d - 1)
    return ()


def _cuts_for_term(fam: TwistFamily, thresholds: Sequence[int]) -> List[int]:
    """Integer cut points: a cut at c separates the pieces {..., c-1} and
    {c, ...}.  For threshold T the pieces are {m : fam(m) <= T} and its
    complement when b > 0, {m : fam(m) >= T} and its complement when
    b < 0; either way c = floor((T-a)/b) + 1."""
    if fam.b == 0:
        raise ValueError("ray decisions need a non-constant twist family (b != 0)")
    return [(T - fam.a) // fam.b + 1 for T in thresholds]


def _pieces_for_ray(
    ray: Ray, cuts: Sequence[int]
) -> List[Tuple[Optional[int], Optional[int]]]:
    """Split the ray at the cut points into maximal integer intervals
    (lo, hi), with None marking an infinite end."""
    pieces: List[Tuple[Optional[int], Optional[int]]] = []
    if ray.direction == "ge":
        inner = sorted({c for c in cuts if c > ray.bound})
        lo: Optional[int] = ray.bound
        for c in inner:
            pieces.append((lo, c - 1))
            lo = c
        pieces.append((lo, None))
    else:
        inner = sorted({c for c in cuts if c <= ray.bound})
        prev: Optional[int] = None
        for c in inner:
            pieces.append((prev, c - 1))
            prev = c
        pieces.append((prev, ray.bound))
    return pieces


def _piece_points(lo: Optional[int], hi: Optional[int]) -> Iterator[int]:
    """Integers of the interval in order of increasing absolute value,
    non-negative first on ties.  Infinite for unbounded intervals."""
    if lo is not None and hi is not None:
        if hi < lo:
            return
        if lo >= 0:
            yield from range(lo, hi + 1)
        elif hi <= 0:
            yield from range(hi, lo - 1, -1)
        else:
            yield 0
            k = 1
            while k <= hi or -k >= lo:
                if k <= hi:
                    yield k
                if -k >= lo:
                    yield -k
                k += 1
    elif lo is None and hi is not None:
        if hi <= 0:
            m = hi
            while True:
                yield m
                m -= 1
        else:
            yield 0
            k = 1
            while True:
                if k <= hi:
                    yield k
                yield -k
                k += 1
    elif hi is None and lo is not None:
        if lo >= 0:
            m = lo
            while True:
                yield m
                m += 1
        else:
            yield 0
            k = 1
            while True:
                yield k
                if -k >= lo:
                    yield -k
                k += 1
    else:
        raise ValueError("interval cannot be unbounded on both sides")


def _vanishes_for_terms(
    space: AmbientSpace,
    i: int,
    terms: Sequence[Tuple[int, TwistFamily]],
    ray: Ray,
) -> RayVerdict:
    """Exact decision of 'sum s * h^i(O(fam(m))) = 0 for all m in ray'.

    Between consecutive cut points every term sits in one polynomial
    regime, so the total is a polynomial in m of degree <= n; it
    vanishes on a piece iff it vanishes at n+1 integer points of the
    piece.  Scanning each piece in order of increasing |m| makes the
    first nonzero value the piece's best witness.
    """
    n = space.n
    need = n + 1
    cuts: List[int] = []
    for _, fam in terms:
        cuts.extend(_cuts_for_term(fam, _thresholds(space, i)))
    witnesses: List[Tuple[int, int]] = []
    for lo, hi in _pieces_for_ray(ray, cuts):
        seen = 0
        for m in _piece_points(lo, hi):
            val = sum(s * line_cohom(space, i, fam(m)) for s, fam in terms)
            if val < 0:
                raise NotSplit(
                    "difference formula produced a negative dimension; the "
                    "claimed splitting is inconsistent"
                )
            if val:
                witnesses.append((m, val))
                break
            seen += 1
            if seen >= need:
                break
    if not witnesses:
        return ProvenVanishing()
    m, dim = min(witnesses, key=lambda w: (abs(w[0]), 0 if w[0] >= 0 else 1))
    return Counterexample(m, dim)


def _negate_slope(
    terms: Sequence[Tuple[int, TwistFamily]]
) -> Tuple[Tuple[int, TwistFamily], ...]:
    return tuple((s, TwistFamily(fam.a, -fam.b)) for s, fam in terms)


def vanishes_on_ray(
    space: AmbientSpace,
    spec: BundleSpec,
    i: int,
    ray: Ray,
    *,
    split: Optional[bool] = None,
) -> RayVerdict:
    """Exact decision of 'h^i(E(-m)) = 0 for every m in the ray'.

    Returns ProvenVanishing, or the Counterexample whose twist m has the
    smallest absolute value among all failures in the ray.
    """
    terms = _negate_slope(twist_model(space, spec, split=split))
    return _vanishes_for_terms(space, i, terms, ray)
