import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from weylchar.scalar import (
    FpScalar,
    Prime,
    binomial_mod,
    factorial_mod,
    falling_binomial_weight,
    fp_add,
    fp_inv,
    fp_mul,
    fp_neg,
    fp_weight,
    inv_mod,
    is_prime,
)

PRIMES = [2, 3, 5, 7]


def test_prime_validation():
    assert Prime(7) == 7
    for bad in (0, 1, 4, 9, -3, 2 ** 64 + 13):
        with pytest.raises(ValueError):
            Prime(bad)
    assert [k for k in range(30) if is_prime(k)] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
    assert is_prime(2 ** 61 - 1) and not is_prime(2 ** 61 + 1)


def test_is_prime_matches_trial_division():
    def slow(n):
        return n >= 2 and all(n % d for d in range(2, math.isqrt(n) + 1))

    assert all(is_prime(k) == slow(k) for k in range(5000))


def test_field_examples():
    assert fp_add(FpScalar(1, 2), FpScalar(1, 2)) == FpScalar(0, 2)
    assert fp_mul(FpScalar(3, 5), FpScalar(4, 5)) == FpScalar(2, 5)
    assert fp_neg(FpScalar(0, 7)) == FpScalar(0, 7)
    assert fp_inv(FpScalar(2, 5)) == FpScalar(3, 5)
    assert fp_inv(FpScalar(6, 7)) == FpScalar(6, 7)
    for p in PRIMES:
        assert fp_inv(FpScalar(1, p)) == FpScalar(1, p)


def test_residue_reduced_and_moduli_checked():
    assert FpScalar(12, 5).residue == 2
    assert FpScalar(-1, 5).residue == 4
    with pytest.raises(ValueError):
        FpScalar(1, 5) + FpScalar(1, 7)
    with pytest.raises(ZeroDivisionError):
        fp_inv(FpScalar(0, 5))
    with pytest.raises(ZeroDivisionError):
        inv_mod(10, 5)


@given(st.sampled_from(PRIMES + [11, 101]), st.integers(1, 10 ** 6))
def test_inverse_laws(p, r):
    a = FpScalar(r, p)
    if not a:
        return
    assert a * fp_inv(a) == FpScalar(1, p)
    assert fp_inv(fp_inv(a)) == a
    assert (a / a) == FpScalar(1, p)


def test_weight_examples():
    assert falling_binomial_weight(1, 1, 1, 5) == 1
    assert falling_binomial_weight(2, 2, 1, 7) == 4
    for p in PRIMES:
        assert falling_binomial_weight(p, 1, 1, p) == 0
    assert fp_weight(2, 2, 1, Prime(7)) == FpScalar(4, 7)
    with pytest.raises(ValueError):
        falling_binomial_weight(1, 3, 2, 5)


@pytest.mark.parametrize("p", PRIMES)
def test_weight_matches_big_integers(p):
    for b in range(41):
        for c in range(41):
            for k in range(min(b, c) + 1):
                exact = math.factorial(k) * math.comb(b, k) * math.comb(c, k) % p
                assert falling_binomial_weight(b, c, k, p) == exact
                if k >= p:
                    assert falling_binomial_weight(b, c, k, p) == 0


@given(st.sampled_from(PRIMES), st.integers(0, 500), st.integers(0, 500))
def test_lucas_binomial(p, n, k):
    assert binomial_mod(n, k, p) == math.comb(n, k) % p


@given(st.sampled_from(PRIMES), st.integers(0, 60))
def test_factorial(p, k):
    assert factorial_mod(k, p) == math.factorial(k) % p
