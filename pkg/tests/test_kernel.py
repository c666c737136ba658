"""Exact arithmetic kernel: fields, monomial order, polynomials, rank."""
import math
import random

import numpy as np
import pytest

from ulrichlab import (
    Monomial,
    Polynomial,
    PrimeField,
    binom,
    graded_piece_basis,
    graded_piece_dim,
    matrix_rank,
    MatrixFp,
    parse_polynomial,
    rank_mod_p,
)

from oracles import convolve, count_monomials, rank_reference


def test_prime_field_accepts_primes_only():
    for p in (2, 3, 5, 7, 97):
        PrimeField(p)
    for p in (0, 1, 4, 6, 9, 100, -3):
        with pytest.raises(ValueError):
            PrimeField(p)


def test_prime_field_inverse():
    rng = random.Random(1)
    for p in (2, 3, 5, 101):
        F = PrimeField(p)
        for _ in range(40):
            a = rng.randrange(1, p)
            assert F.mul(a, F.inv(a)) == 1


def test_binom_matches_comb_and_rejects_negatives():
    for a in range(0, 12):
        for b in range(0, a + 1):
            assert binom(a, b) == math.comb(a, b)
    with pytest.raises(ValueError):
        binom(-1, 2)
    with pytest.raises(ValueError):
        binom(3, -1)


def test_graded_piece_dim_against_enumeration():
    for n_vars in range(1, 6):
        for t in range(-3, 9):
            assert graded_piece_dim(n_vars, t) == count_monomials(n_vars, t)


def test_graded_piece_basis_is_sorted_and_complete():
    for n_vars in (2, 3, 4):
        for t in (0, 1, 3, 5):
            basis = graded_piece_basis(n_vars, t)
            assert len(basis) == graded_piece_dim(n_vars, t)
            assert len(set(basis)) == len(basis)
            assert all(m.degree == t for m in basis)
            assert list(basis) == sorted(basis)


def test_graded_lex_order_two_variables():
    # x0-heavy first within a degree; degree dominates across degrees
    b2 = graded_piece_basis(2, 2)
    assert [str(m) for m in b2] == ["x0^2", "x0*x1", "x1^2"]
    assert Monomial((2, 0)) < Monomial((1, 1)) < Monomial((0, 2)) < Monomial((3, 0))


def test_monomials_of_different_arity_do_not_compare():
    with pytest.raises(ValueError):
        Monomial((1, 0)) < Monomial((1, 0, 0))
    with pytest.raises(ValueError):
        Monomial((1, 0)) * Monomial((1, 0, 0))


def test_parse_round_trip_and_normalization():
    F = PrimeField(3)
    f = parse_polynomial("x0^4+x1^4+x2^4+x3^4+2*x0*x1*x2*x3", 4, F)
    assert f.degree() == 4 and f.is_homogeneous()
    assert parse_polynomial(f.to_text(), 4, F) == f
    # coefficients reduce mod p; 3*x0 == 0
    assert parse_polynomial("3*x0+x1", 2, F) == parse_polynomial("x1", 2, F)
    assert parse_polynomial("x0-x0", 2, F).is_zero()
    assert parse_polynomial("x0^2-x1*x0", 2, F).to_text() == "x0^2+2*x0*x1"


def test_parse_errors_name_the_offending_factor():
    F = PrimeField(3)
    with pytest.raises(ValueError, match="zork"):
        parse_polynomial("x0^2+zork", 3, F)
    with pytest.raises(ValueError, match="x7"):
        parse_polynomial("x7+x0", 3, F)
    with pytest.raises(ValueError):
        parse_polynomial("", 3, F)
    with pytest.raises(ValueError):
        parse_polynomial("+", 3, F)


def test_polynomial_ring_axioms_random():
    rng = random.Random(7)
    for p in (2, 3, 5):
        F = PrimeField(p)
        for _ in range(25):
            fs = []
            for _ in range(3):
                terms = {}
                for _ in range(rng.randrange(1, 6)):
                    mono = Monomial(tuple(rng.randrange(0, 3) for _ in range(3)))
                    terms[mono] = rng.randrange(p)
                fs.append(Polynomial(F, 3, terms))
            f, g, h = fs
            assert (f + g) * h == f * h + g * h
            assert f * g == g * f
            assert f - f == Polynomial.zero(F, 3)
            assert f * Polynomial.constant(F, 3, 1) == f


def test_multiplication_against_convolution_oracle():
    rng = random.Random(11)
    for p in (2, 3, 5):
        F = PrimeField(p)
        for _ in range(20):
            da = {
                tuple(rng.randrange(0, 4) for _ in range(3)): rng.randrange(1, p)
                for _ in range(rng.randrange(1, 5))
            }
            db = {
                tuple(rng.randrange(0, 4) for _ in range(3)): rng.randrange(1, p)
                for _ in range(rng.randrange(1, 5))
            }
            fa = Polynomial(F, 3, {Monomial(e): c for e, c in da.items()})
            fb = Polynomial(F, 3, {Monomial(e): c for e, c in db.items()})
            want = convolve(da, db, p)
            got = fa * fb
            assert {m.exponents: c for m, c in got.terms.items()} == want


def test_pow_matches_repeated_multiplication():
    F = PrimeField(5)
    f = parse_polynomial("x0+2*x1+x2^2", 3, F)
    acc = Polynomial.constant(F, 3, 1)
    for e in range(6):
        assert f**e == acc
        acc = acc * f
    with pytest.raises(ValueError):
        f ** (-1)


def test_rank_against_reference_random():
    rng = random.Random(13)
    for p in (2, 3, 5):
        for _ in range(15):
            rows = rng.randrange(1, 30)
            cols = rng.randrange(1, 30)
            mat = [[rng.randrange(p) for _ in range(cols)] for _ in range(rows)]
            want = rank_reference(mat, p)
            got = rank_mod_p(np.array(mat, dtype=np.int64), p)
            assert got == want
            assert matrix_rank(MatrixFp(PrimeField(p), mat)) == want


def test_rank_edge_cases():
    assert rank_mod_p(np.zeros((0, 5), dtype=np.int64), 3) == 0
    assert rank_mod_p(np.zeros((5, 0), dtype=np.int64), 3) == 0
    assert rank_mod_p(np.zeros((4, 4), dtype=np.int64), 5) == 0
    assert rank_mod_p(np.eye(7, dtype=np.int64), 2) == 7
    # 2 == -1 mod 3: [1,2] and [2,1] rows independent, [1,2],[2,4] not
    assert rank_mod_p(np.array([[1, 2], [2, 4]]), 3) == 1
    with pytest.raises(ValueError):
        rank_mod_p(np.array([[1]]), (1 << 30) + 3)


def test_rank_wide_and_tall_structured():
    # block with known rank: r copies of the identity stacked and padded
    rng = random.Random(17)
    p = 3
    base = np.eye(6, dtype=np.int64)
    tall = np.vstack([base, base, (2 * base) % p])
    assert rank_mod_p(tall, p) == 6
    mix = np.array([[rng.randrange(p) for _ in range(90)] for _ in range(40)])
    assert rank_mod_p(mix, p) == rank_reference(mix.tolist(), p)
