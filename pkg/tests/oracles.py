"""Independent oracles used only by the test suite.

Everything here is implemented from first principles, sharing no code with
the package under test:

- local solvability of z^2 = a x^2 + b y^2 by exhaustive primitive-triple
  search modulo 32 at the prime 2, by residue case analysis with explicit
  quadratic-residue sets at odd primes, and by sign inspection at the real
  place.  A found residue solution lifts to a 2-adic/p-adic solution because
  with squarefree coefficients a primitive zero always has a coordinate
  whose partial derivative has small enough valuation for Hensel's lemma;
  conversely a p-adic solution scales to a primitive integral one and
  reduces.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

PRIMES_LE_50 = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47]


def squarefree_int(x) -> int:
    """Squarefree part of a nonzero rational, by plain trial division."""
    x = Fraction(x)
    n = abs(x.numerator * x.denominator)
    sign = 1 if x > 0 else -1
    s = 1
    d = 2
    while d * d <= n:
        e = 0
        while n % d == 0:
            n //= d
            e += 1
        if e % 2:
            s *= d
        d += 1
    return sign * s * n  # leftover n is prime (or 1), exponent 1


@lru_cache(maxsize=None)
def _qr_set(p: int) -> frozenset:
    return frozenset((z * z) % p for z in range(1, p))


def _is_qr(u: int, p: int) -> bool:
    return u % p in _qr_set(p)


_SQ32 = frozenset((z * z) % 32 for z in range(32))
_ODD_SQ32 = frozenset((z * z) % 32 for z in range(1, 32, 2))


@lru_cache(maxsize=None)
def _solvable_mod32(a32: int, b32: int) -> bool:
    for x in range(32):
        for y in range(32):
            w = (a32 * x * x + b32 * y * y) % 32
            if x % 2 or y % 2:
                if w in _SQ32:
                    return True
            elif w in _ODD_SQ32:
                return True
    return False


@lru_cache(maxsize=None)
def _solvable_odd(a: int, b: int, p: int) -> bool:
    alpha, u = (1, a // p) if a % p == 0 else (0, a)
    beta, v = (1, b // p) if b % p == 0 else (0, b)
    if alpha == 0 and beta == 0:
        # a nondegenerate ternary form over F_p has a nontrivial zero
        # (Chevalley-Warning) at a smooth point, so it lifts
        return True
    if alpha == 1 and beta == 0:
        return _is_qr(v, p)
    if alpha == 0 and beta == 1:
        return _is_qr(u, p)
    return _is_qr(-u * v, p)


def oracle_solvable(a, b, place) -> bool:
    """Does z^2 = a x^2 + b y^2 have a nontrivial solution over the given
    completion of Q?  `place` is 0 for the real place or a prime."""
    a = squarefree_int(a)
    b = squarefree_int(b)
    if place == 0:
        return a > 0 or b > 0
    p = int(place)
    if p == 2:
        return _solvable_mod32(a % 32, b % 32)
    return _solvable_odd(a, b, p)
