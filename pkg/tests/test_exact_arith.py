import math
from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from irrbounds import (DomainError, QuadRat, SieveCapacityError, d_upto,
                       primes_between, rat_floor, rat_frac)
from irrbounds.exact_arith import (format_rat, parse_rat, primes_above_sqrt,
                                   rat_to_decimal, sqrt_bounds)

rationals = st.fractions(min_value=-1000, max_value=1000, max_denominator=997)


# ---------------------------------------------------------------------------
# rationals
# ---------------------------------------------------------------------------

def test_floor_frac_examples():
    assert rat_floor(F(-7, 2)) == -4
    assert rat_frac(F(-7, 2)) == F(1, 2)
    assert F(1, 3) + F(1, 6) == F(1, 2)
    assert rat_frac(F(22, 7)) == F(1, 7)


@given(rationals)
def test_floor_bracket(x):
    assert rat_floor(x) <= x < rat_floor(x) + 1
    assert x == rat_floor(x) + rat_frac(x)
    assert 0 <= rat_frac(x) < 1


@given(rationals)
def test_fraction_render_roundtrip(x):
    assert parse_rat(format_rat(x)) == x


@given(st.integers(-10**6, 10**6), st.integers(0, 6), st.integers(0, 6))
def test_decimal_render_roundtrip_exact(num, a, b):
    x = F(num, 2**a * 5**b)
    assert parse_rat(rat_to_decimal(x, a + b)) == x


def test_decimal_render_truncates_toward_zero():
    assert rat_to_decimal(F(-7, 2), 3) == "-3.500"
    assert rat_to_decimal(F(1, 3), 4) == "0.3333"
    assert rat_to_decimal(F(-1, 3), 4) == "-0.3333"


def test_parse_rat_rejects_garbage():
    with pytest.raises(DomainError):
        parse_rat("seven halves")


def test_sqrt_bounds_enclose():
    for d in (2, 13, 17, 25, 101):
        lo, hi = sqrt_bounds(d, 30)
        assert lo * lo <= d <= hi * hi
        assert hi - lo <= F(1, 10**30)


# ---------------------------------------------------------------------------
# quadratic extension
# ---------------------------------------------------------------------------

def test_t1_t2_product_is_minus_k_half():
    # the two transform values for k = 6 multiply to -k/2 = -3
    t1 = QuadRat(F(1, 2), F(-1, 2), 13)
    t2 = QuadRat(F(1, 2), F(1, 2), 13)
    assert t1 * t2 == QuadRat(-3)
    assert t1 + t2 == QuadRat(1)


def test_norm_t1_direct_expansion():
    # norm(u + v sqrt(D)) = u^2 - D v^2 expanded by hand
    t1 = QuadRat(F(1, 2), F(-1, 2), 13)
    assert t1.norm() == F(1, 4) - F(13, 4) == -3


quadrats = st.builds(
    QuadRat,
    st.fractions(min_value=-50, max_value=50, max_denominator=40),
    st.fractions(min_value=-50, max_value=50, max_denominator=40),
    st.sampled_from([2, 3, 13, 17]),
)


@given(quadrats)
def test_conj_involution(x):
    assert x.conj().conj() == x


@given(quadrats, quadrats)
def test_norm_multiplicative(x, y):
    if x.D != y.D:
        y = QuadRat(y.u, y.v, x.D)
    assert (x * y).norm() == x.norm() * y.norm()


@given(quadrats, st.integers(0, 8))
def test_pow_matches_repeated_multiplication(x, e):
    expected = QuadRat(1, 0, x.D)
    for _ in range(e):
        expected = expected * x
    assert x**e == expected


@given(quadrats)
def test_inverse(x):
    if x and x.norm() != 0:
        assert x * x.inverse() == QuadRat(1, 0, x.D)
        assert x**-2 == (x.inverse()) ** 2


@given(quadrats, quadrats)
def test_division_round_trip(x, y):
    if y.D != x.D:
        y = QuadRat(y.u, y.v, x.D)
    if y and y.norm() != 0:
        assert (x / y) * y == x


def test_mismatched_radicands_rejected():
    x = QuadRat(1, 1, 13)
    y = QuadRat(1, 1, 17)
    with pytest.raises(DomainError):
        x * y
    # rational values mix with anything
    assert QuadRat(2, 0, 17) * x == QuadRat(2, 2, 13)


def test_perfect_square_collapse():
    assert QuadRat(0, 1, 9) == QuadRat(3)
    assert QuadRat(F(5, 4), F(-1, 4), 9) == QuadRat(F(1, 2))
    assert QuadRat(1, 2, 25).is_rational


def test_division_by_zero_signals():
    with pytest.raises(DomainError):
        QuadRat(1, 1, 13) / QuadRat(0, 0, 13)


# ---------------------------------------------------------------------------
# d_n and primes
# ---------------------------------------------------------------------------

def _lcm_fold(n):
    out = 1
    for i in range(1, n + 1):
        out = out * i // math.gcd(out, i)
    return out


def test_d_upto_examples():
    assert d_upto(1) == 1
    assert d_upto(6) == _lcm_fold(6) == 60
    assert d_upto(10) == _lcm_fold(10) == 2520


@pytest.mark.parametrize("n", [2, 3, 17, 30, 100, 257])
def test_d_upto_against_fold_oracle(n):
    assert d_upto(n) == _lcm_fold(n)


@given(st.integers(2, 300))
def test_d_upto_divisibility_and_steps(n):
    d = d_upto(n)
    assert all(d % m == 0 for m in range(1, n + 1))
    step = d // d_upto(n - 1)
    assert step == 1 or _is_prime_trial(step)


def _is_prime_trial(n):
    if n < 2:
        return False
    return all(n % f for f in range(2, math.isqrt(n) + 1))


def test_sieve_against_trial_division(small_sieve):
    expected = [p for p in range(2, 2000) if _is_prime_trial(p)]
    assert small_sieve.primes(2, 1999) == expected


def test_primes_between_examples(small_sieve):
    assert primes_above_sqrt(7, 7, small_sieve) == [3, 5, 7]
    assert primes_between(10, 10, small_sieve) == []
    assert primes_between(2, 20, small_sieve) == [3, 5, 7, 11, 13, 17, 19]
    assert primes_between(F(5, 2), 11, small_sieve) == [3, 5, 7, 11]


def test_sieve_capacity_error(small_sieve):
    with pytest.raises(SieveCapacityError):
        primes_between(2, 100_000, small_sieve)
    with pytest.raises(SieveCapacityError):
        small_sieve.is_prime(100_000)
