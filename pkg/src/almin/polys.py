"""Dense univariate polynomials over the rationals.

Coefficients are stored low degree first as tuples of Fraction.  Only the
operations needed for number-field certificates live here: euclidean
division, gcd, Sturm chains, and arithmetic modulo a defining polynomial.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

Poly = tuple[Fraction, ...]


def poly(coeffs: Sequence) -> Poly:
    out = tuple(Fraction(c) for c in coeffs)
    while len(out) > 1 and out[-1] == 0:
        out = out[:-1]
    if not out:
        out = (Fraction(0),)
    return out


def degree(f: Poly) -> int:
    return len(f) - 1 if any(c != 0 for c in f) else -1


def is_zero(f: Poly) -> bool:
    return all(c == 0 for c in f)


def add(f: Poly, g: Poly) -> Poly:
    n = max(len(f), len(g))
    return poly([(f[i] if i < len(f) else 0) + (g[i] if i < len(g) else 0) for i in range(n)])


def neg(f: Poly) -> Poly:
    return poly([-c for c in f])


def sub(f: Poly, g: Poly) -> Poly:
    return add(f, neg(g))


def scale(f: Poly, c) -> Poly:
    return poly([Fraction(c) * x for x in f])


def mul(f: Poly, g: Poly) -> Poly:
    out = [Fraction(0)] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a == 0:
            continue
        for j, b in enumerate(g):
            out[i + j] += a * b
    return poly(out)


def evaluate(f: Poly, x) -> Fraction:
    acc = Fraction(0)
    for c in reversed(f):
        acc = acc * x + c
    return acc


def derivative(f: Poly) -> Poly:
    if len(f) == 1:
        return poly([0])
    return poly([Fraction(i) * f[i] for i in range(1, len(f))])


def divmod_poly(f: Poly, g: Poly) -> tuple[Poly, Poly]:
    if is_zero(g):
        raise ZeroDivisionError("polynomial division by zero")
    q = [Fraction(0)] * max(1, len(f) - len(g) + 1)
    r = list(f)
    dg = degree(g)
    lg = g[dg]
    while degree(poly(r)) >= dg:
        dr = degree(poly(r))
        c = r[dr] / lg
        q[dr - dg] = c
        for i in range(len(g)):
            r[dr - dg + i] -= c * g[i]
    return poly(q), poly(r)


def mod(f: Poly, g: Poly) -> Poly:
    return divmod_poly(f, g)[1]


def monic(f: Poly) -> Poly:
    d = degree(f)
    if d < 0:
        return f
    return scale(f, Fraction(1, 1) / f[d])


def gcd(f: Poly, g: Poly) -> Poly:
    a, b = f, g
    while not is_zero(b):
        a, b = b, mod(a, b)
    return monic(a) if not is_zero(a) else poly([0])


def is_squarefree(f: Poly) -> bool:
    return degree(gcd(f, derivative(f))) == 0


def xgcd_mod(f: Poly, modulus: Poly) -> Poly:
    """Inverse of f modulo `modulus`; raises ZeroDivisionError if not coprime."""
    # extended euclid on (modulus, f)
    r0, r1 = modulus, mod(f, modulus)
    s0, s1 = poly([0]), poly([1])
    while not is_zero(r1):
        q, r2 = divmod_poly(r0, r1)
        r0, r1 = r1, r2
        s0, s1 = s1, sub(s0, mul(q, s1))
    if degree(r0) != 0:
        raise ZeroDivisionError("element not invertible modulo defining polynomial")
    return mod(scale(s0, Fraction(1) / r0[0]), modulus)


def mulmod(f: Poly, g: Poly, modulus: Poly) -> Poly:
    return mod(mul(f, g), modulus)


def compose(f: Poly, g: Poly) -> Poly:
    """f(g(x))."""
    acc = poly([0])
    for c in reversed(f):
        acc = add(mul(acc, g), poly([c]))
    return acc


def _sign_changes(signs: list[int]) -> int:
    signs = [s for s in signs if s != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a * b < 0)


def sturm_chain(f: Poly) -> list[Poly]:
    chain = [f, derivative(f)]
    while degree(chain[-1]) > 0:
        r = mod(chain[-2], chain[-1])
        if is_zero(r):
            break
        chain.append(neg(r))
    return chain


def count_real_roots(f: Poly) -> int:
    """Number of distinct real roots of a squarefree polynomial (Sturm)."""
    chain = sturm_chain(f)

    def sign_at_inf(g: Poly, positive: bool) -> int:
        d = degree(g)
        if d < 0:
            return 0
        lc = g[d]
        s = 1 if lc > 0 else -1
        if not positive and d % 2:
            s = -s
        return s

    at_minus = [sign_at_inf(g, False) for g in chain]
    at_plus = [sign_at_inf(g, True) for g in chain]
    return _sign_changes(at_minus) - _sign_changes(at_plus)


def rational_roots(f: Poly) -> list[Fraction]:
    """All rational roots of f, via the rational root theorem."""
    from .arith import factorize

    d = degree(f)
    if d < 0:
        raise ValueError("zero polynomial")
    # clear denominators to an integer polynomial
    den = 1
    for c in f:
        den = den * c.denominator // __import__("math").gcd(den, c.denominator)
    ic = [int(c * den) for c in f]
    while ic and ic[0] == 0:
        ic = ic[1:]  # factor out x; zero is a root
    roots = []
    if len(ic) < len(f):
        roots.append(Fraction(0))
    if len(ic) <= 1:
        return sorted(set(roots))
    a0, an = abs(ic[0]), abs(ic[-1])

    def divisors(n: int) -> list[int]:
        ds = [1]
        for p, e in factorize(n).items():
            ds = [d * p**k for d in ds for k in range(e + 1)]
        return sorted(set(ds))

    for p in divisors(a0):
        for q in divisors(an):
            for s in (1, -1):
                cand = Fraction(s * p, q)
                if evaluate(f, cand) == 0:
                    roots.append(cand)
    return sorted(set(roots))


def is_irreducible(f: Poly) -> bool:
    """Irreducibility over the rationals (delegated to sympy)."""
    import sympy

    x = sympy.Symbol("x")
    expr = sum(sympy.Rational(c.numerator, c.denominator) * x**i for i, c in enumerate(f))
    p = sympy.Poly(expr, x, domain="QQ")
    if p.degree() < 1:
        return False
    factors = sympy.factor_list(p)[1]
    return len(factors) == 1 and factors[0][1] == 1 and factors[0][0].degree() == p.degree()
