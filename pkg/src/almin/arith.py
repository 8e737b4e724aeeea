"""Exact integer and rational number theory: factorization, square classes,
Legendre and Hilbert symbols over the places of the rationals.

All values are immutable and all functions are pure.  Rationals are
`fractions.Fraction` throughout; places are `RealPlace` or `FinitePrime`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Union

Rational = Union[int, Fraction]

DEFAULT_FACTOR_BOUND = 10**6


class ZeroInput(ValueError):
    pass


class NotPrime(ValueError):
    pass


class FactorizationExceeded(RuntimeError):
    """Raised when factoring an input exceeds the configured effort budget."""


@dataclass(frozen=True)
class RealPlace:
    def __repr__(self) -> str:
        return "RealPlace()"


@dataclass(frozen=True)
class FinitePrime:
    p: int

    def __post_init__(self):
        if not is_prime(self.p):
            raise NotPrime(f"{self.p} is not prime")

    def __repr__(self) -> str:
        return f"FinitePrime({self.p})"


Place = Union[RealPlace, FinitePrime]

REAL = RealPlace()


def _miller_rabin(n: int, a: int) -> bool:
    d, r = n - 1, 0
    while d % 2 == 0:
        d //= 2
        r += 1
    x = pow(a, d, n)
    if x in (1, n - 1):
        return True
    for _ in range(r - 1):
        x = x * x % n
        if x == n - 1:
            return True
    return False


# Deterministic for all n < 3.3 * 10^24.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    return all(_miller_rabin(n, a) for a in _MR_BASES if a < n)


def _pollard_rho(n: int) -> int:
    """Deterministic Brent-style rho; returns a nontrivial factor of odd composite n."""
    if n % 2 == 0:
        return 2
    for c in range(1, 100):
        x = y = 2
        d = 1
        while d == 1:
            x = (x * x + c) % n
            y = (y * y + c) % n
            y = (y * y + c) % n
            d = math.gcd(abs(x - y), n)
        if d != n:
            return d
    raise FactorizationExceeded(f"pollard rho failed on {n}")


def factorize(n: int, bound: Optional[int] = None) -> dict[int, int]:
    """Prime factorization of |n| as {prime: exponent}.

    Trial division up to `bound`, then deterministic Pollard rho for any
    remaining cofactor.  Raises FactorizationExceeded rather than returning
    a partial answer.
    """
    if n == 0:
        raise ZeroInput("cannot factor 0")
    if bound is None:
        bound = DEFAULT_FACTOR_BOUND
    n = abs(n)
    out: dict[int, int] = {}
    for p in (2, 3, 5):
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    d = 7
    wheel = (4, 2, 4, 2, 4, 6, 2, 6)
    i = 0
    while d * d <= n and d <= bound:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += wheel[i]
        i = (i + 1) % 8
    # Remaining cofactor is either 1, prime, or has no factor <= bound.
    stack = [n] if n > 1 else []
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if is_prime(m):
            out[m] = out.get(m, 0) + 1
            continue
        f = _pollard_rho(m)
        stack.extend([f, m // f])
    return out


def squarefree_part(x: Rational, bound: Optional[int] = None) -> int:
    """Squarefree integer s with x = s * (rational square); sign(s) = sign(x)."""
    x = Fraction(x)
    if x == 0:
        raise ZeroInput("squarefree_part(0)")
    n = x.numerator * x.denominator  # same square class as x
    s = 1
    for p, e in factorize(n, bound).items():
        if e % 2:
            s *= p
    return s if n > 0 else -s


def is_rational_square(x: Rational) -> bool:
    x = Fraction(x)
    if x == 0:
        return True
    if x < 0:
        return False
    return (
        math.isqrt(x.numerator) ** 2 == x.numerator
        and math.isqrt(x.denominator) ** 2 == x.denominator
    )


def legendre(a: int, p: int) -> int:
    """Legendre symbol (a|p) for an odd prime p."""
    if p == 2 or not is_prime(p):
        raise NotPrime(f"{p} is not an odd prime")
    a %= p
    if a == 0:
        return 0
    r = pow(a, (p - 1) // 2, p)
    return 1 if r == 1 else -1


def _two_adic_split(x: Fraction, p: int) -> tuple[int, int]:
    """Write x = p^alpha * u with u a p-unit; returns (alpha, u mod p^3) as ints.

    u is returned exactly as an integer congruent to the unit part modulo
    a power of p large enough for the symbol formulas (we return the exact
    integer num*den with p-powers removed, which is in the same square class).
    """
    num, den = x.numerator, x.denominator
    alpha = 0
    while num % p == 0:
        num //= p
        alpha += 1
    while den % p == 0:
        den //= p
        alpha -= 1
    return alpha, num * den  # same square class as the unit part of x


def hilbert_symbol(a: Rational, b: Rational, v: Place) -> int:
    """Hilbert symbol (a,b)_v: +1 iff z^2 = a x^2 + b y^2 has a nontrivial
    solution over the completion at v."""
    a = Fraction(a)
    b = Fraction(b)
    if a == 0 or b == 0:
        raise ZeroInput("hilbert symbol needs nonzero arguments")
    if isinstance(v, RealPlace):
        return -1 if (a < 0 and b < 0) else 1
    p = v.p
    alpha, u = _two_adic_split(a, p)
    beta, w = _two_adic_split(b, p)
    if p != 2:
        sign = 1
        if alpha * beta % 2 and (p - 1) // 2 % 2:
            sign = -sign
        if beta % 2:
            sign *= legendre(u, p)
        if alpha % 2:
            sign *= legendre(w, p)
        return sign
    eps_u = (u % 8 - 1) // 2 % 2  # (u-1)/2 mod 2
    eps_w = (w % 8 - 1) // 2 % 2
    omega_u = (u % 8) in (3, 5)  # (u^2-1)/8 mod 2
    omega_w = (w % 8) in (3, 5)
    e = eps_u * eps_w + alpha * omega_w + beta * omega_u
    return -1 if e % 2 else 1


def relevant_places(values: Iterable[Rational]) -> list[Place]:
    """The real place, 2, and every odd prime dividing a numerator or
    denominator of the given nonzero rationals.  Hilbert symbols in the
    values are +1 away from this set."""
    primes = {2}
    for x in values:
        x = Fraction(x)
        if x == 0:
            continue
        primes.update(factorize(x.numerator * x.denominator))
    return [REAL] + [FinitePrime(p) for p in sorted(primes)]
