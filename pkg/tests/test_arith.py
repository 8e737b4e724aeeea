from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from almin.arith import (
    REAL,
    FactorizationExceeded,
    FinitePrime,
    ZeroInput,
    factorize,
    hilbert_symbol,
    is_prime,
    is_rational_square,
    legendre,
    relevant_places,
    squarefree_part,
)
from oracles import PRIMES_LE_50, oracle_solvable

NONZERO = st.integers(min_value=-200, max_value=200).filter(lambda n: n != 0)


def test_factorize_known():
    assert factorize(360) == {2: 3, 3: 2, 5: 1}
    assert factorize(-97) == {97: 1}
    assert factorize(1) == {}
    with pytest.raises(ZeroInput):
        factorize(0)


def test_is_prime_small():
    primes = [p for p in range(2, 100) if is_prime(p)]
    assert primes == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47,
                      53, 59, 61, 67, 71, 73, 79, 83, 89, 97]


@given(NONZERO)
def test_squarefree_part_is_squarefree_and_same_class(n):
    s = squarefree_part(n)
    assert squarefree_part(s) == s
    # n / s is a positive rational square
    assert is_rational_square(Fraction(n, s))


def test_squarefree_part_rationals():
    assert squarefree_part(Fraction(8, 9)) == 2
    assert squarefree_part(Fraction(-1, 2)) == -2
    assert squarefree_part(Fraction(49, 4)) == 1


def test_is_rational_square():
    assert is_rational_square(Fraction(9, 4))
    assert not is_rational_square(Fraction(8, 4))
    assert not is_rational_square(-4)
    assert is_rational_square(0)


def test_legendre_matches_euler():
    for p in [3, 5, 7, 11, 13]:
        for a in range(1, p):
            assert legendre(a, p) == pow(a, (p - 1) // 2, p) % p or (
                legendre(a, p) == -1 and pow(a, (p - 1) // 2, p) == p - 1
            )


def test_hilbert_symbol_known_values():
    assert hilbert_symbol(-1, -1, FinitePrime(2)) == -1
    assert hilbert_symbol(-1, -1, REAL) == -1
    assert hilbert_symbol(-1, -1, FinitePrime(5)) == 1
    assert hilbert_symbol(2, 3, FinitePrime(3)) == -1
    assert hilbert_symbol(1, 7, FinitePrime(7)) == 1


def test_hilbert_symbol_matches_oracle_sample():
    for a in range(-12, 13):
        for b in range(-12, 13):
            if a == 0 or b == 0:
                continue
            for p in [0, 2, 3, 5, 7]:
                v = REAL if p == 0 else FinitePrime(p)
                assert hilbert_symbol(a, b, v) == (
                    1 if oracle_solvable(a, b, p) else -1
                ), (a, b, p)


@settings(max_examples=300, deadline=None)
@given(NONZERO, NONZERO)
def test_hilbert_product_formula(a, b):
    prod = 1
    for v in relevant_places([a, b]):
        prod *= hilbert_symbol(a, b, v)
    assert prod == 1


@settings(max_examples=200, deadline=None)
@given(NONZERO, NONZERO, NONZERO)
def test_hilbert_bimultiplicative(a, b, c):
    for p in [2, 3, 5]:
        v = FinitePrime(p)
        assert hilbert_symbol(a * c, b, v) == hilbert_symbol(
            a, b, v
        ) * hilbert_symbol(c, b, v)


def test_relevant_places_cover_ramification():
    places = relevant_places([-1, -1])
    assert REAL in places and FinitePrime(2) in places
