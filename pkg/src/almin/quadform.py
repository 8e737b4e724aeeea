"""Quadratic forms over the rationals with exact arithmetic.

Forms are symmetric Gram matrices of Fractions.  The module provides
congruence diagonalization, signatures, Hasse invariants, local and global
isotropy tests, explicit Witt decompositions (with certified isotropic
vectors), and a constrained search for represented values.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Literal, Optional, Sequence, Union

from .arith import (
    REAL,
    FinitePrime,
    Place,
    RealPlace,
    hilbert_symbol,
    is_rational_square,
    relevant_places,
    squarefree_part,
)

Matrix = tuple[tuple[Fraction, ...], ...]
Vector = tuple[Fraction, ...]


class Degenerate(ValueError):
    pass


class NotSymmetric(ValueError):
    pass


class SearchExhausted(RuntimeError):
    """An isotropic vector provably exists but was not found within bounds."""


def _mat(rows: Sequence[Sequence]) -> Matrix:
    return tuple(tuple(Fraction(x) for x in row) for row in rows)


@dataclass(frozen=True)
class QuadForm:
    gram: Matrix

    @staticmethod
    def from_rows(rows: Sequence[Sequence]) -> "QuadForm":
        g = _mat(rows)
        n = len(g)
        if any(len(row) != n for row in g):
            raise NotSymmetric("gram matrix must be square")
        for i in range(n):
            for j in range(i):
                if g[i][j] != g[j][i]:
                    raise NotSymmetric("gram matrix must be symmetric")
        return QuadForm(g)

    @staticmethod
    def diagonal(coeffs: Sequence) -> "QuadForm":
        cs = [Fraction(c) for c in coeffs]
        n = len(cs)
        return QuadForm(
            tuple(
                tuple(cs[i] if i == j else Fraction(0) for j in range(n))
                for i in range(n)
            )
        )

    @property
    def dim(self) -> int:
        return len(self.gram)

    def value(self, v: Sequence) -> Fraction:
        """q(v) = v^T G v."""
        v = [Fraction(x) for x in v]
        return sum(
            self.gram[i][j] * v[i] * v[j] for i in range(self.dim) for j in range(self.dim)
        )

    def bilinear(self, u: Sequence, v: Sequence) -> Fraction:
        u = [Fraction(x) for x in u]
        v = [Fraction(x) for x in v]
        return sum(
            self.gram[i][j] * u[i] * v[j] for i in range(self.dim) for j in range(self.dim)
        )

    def determinant(self) -> Fraction:
        return _det(self.gram)


def _det(g: Matrix) -> Fraction:
    n = len(g)
    m = [list(row) for row in g]
    det = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            det = -det
        det *= m[col][col]
        for r in range(col + 1, n):
            f = m[r][col] / m[col][col]
            for c in range(col, n):
                m[r][c] -= f * m[col][c]
    return det


@dataclass(frozen=True)
class DiagForm:
    """A diagonalization q(Bx) = sum coeffs[i] x_i^2: B^T G B = diag(coeffs)."""

    coeffs: tuple[Fraction, ...]
    basis_change: Matrix
    source: QuadForm

    def check(self) -> bool:
        n = len(self.coeffs)
        b = self.basis_change
        g = self.source.gram
        for i in range(n):
            for j in range(n):
                want = self.coeffs[i] if i == j else Fraction(0)
                got = sum(
                    b[k][i] * g[k][l] * b[l][j] for k in range(n) for l in range(n)
                )
                if got != want:
                    return False
        return True


def diagonalize(f: QuadForm) -> DiagForm:
    """Exact congruence diagonalization; raises Degenerate on singular input."""
    n = f.dim
    g = [list(row) for row in f.gram]
    b = [[Fraction(1) if i == j else Fraction(0) for j in range(n)] for i in range(n)]

    def add_col(dst: int, src: int, c: Fraction):
        # column op on g (both sides, keeping symmetry) and on b
        for r in range(n):
            g[r][dst] += c * g[r][src]
        for r in range(n):
            g[dst][r] += c * g[src][r]
        for r in range(n):
            b[r][dst] += c * b[r][src]

    def swap_col(i: int, j: int):
        for r in range(n):
            g[r][i], g[r][j] = g[r][j], g[r][i]
        for r in range(n):
            g[i][r], g[j][r] = g[j][r], g[i][r]
        for r in range(n):
            b[r][i], b[r][j] = b[r][j], b[r][i]

    for k in range(n):
        if g[k][k] == 0:
            piv = next((i for i in range(k + 1, n) if g[i][i] != 0), None)
            if piv is not None:
                swap_col(k, piv)
            else:
                # all remaining diagonal entries vanish; use an off-diagonal one
                pair = next(
                    (
                        (i, j)
                        for i in range(k, n)
                        for j in range(i + 1, n)
                        if g[i][j] != 0
                    ),
                    None,
                )
                if pair is None:
                    raise Degenerate("form is singular")
                i, j = pair
                add_col(i, j, Fraction(1))  # now g[i][i] = 2*g[i][j] != 0
                if i != k:
                    swap_col(k, i)
        for i in range(k + 1, n):
            if g[k][i] != 0:
                add_col(i, k, -g[k][i] / g[k][k])
    coeffs = tuple(g[i][i] for i in range(n))
    if any(c == 0 for c in coeffs):
        raise Degenerate("form is singular")
    return DiagForm(coeffs, tuple(tuple(row) for row in b), f)


def signature(f: QuadForm) -> tuple[int, int]:
    """(positive, negative) inertia indices of a nondegenerate form."""
    cs = diagonalize(f).coeffs
    pos = sum(1 for c in cs if c > 0)
    return pos, len(cs) - pos


def canonical_coeffs(f: QuadForm) -> tuple[int, ...]:
    """Diagonal coefficients reduced to squarefree square-class representatives."""
    return tuple(squarefree_part(c) for c in diagonalize(f).coeffs)


def hasse_invariant(f: QuadForm, v: Place) -> int:
    """Product of hilbert(c_i, c_j)_v over i < j for a diagonalization."""
    cs = diagonalize(f).coeffs
    out = 1
    for i in range(len(cs)):
        for j in range(i + 1, len(cs)):
            out *= hilbert_symbol(cs[i], cs[j], v)
    return out


def _is_isotropic_local(f: QuadForm, v: Place) -> bool:
    cs = diagonalize(f).coeffs
    n = len(cs)
    det = Fraction(1)
    for c in cs:
        det *= c
    if isinstance(v, RealPlace):
        pos = sum(1 for c in cs if c > 0)
        return pos > 0 and pos < n
    if n == 1:
        return False
    if n == 2:
        # isotropic iff -det is a square in Q_p
        return _is_local_square(-det, v.p)
    if n == 3:
        return hasse_invariant(f, v) == hilbert_symbol(-1, -det, v)
    if n == 4:
        if not _is_local_square(det, v.p):
            return True
        return hasse_invariant(f, v) != -hilbert_symbol(-1, -1, v)
    return True  # every form of rank >= 5 is isotropic at a finite place


def _is_local_square(x: Fraction, p: int) -> bool:
    """Whether x is a square in Q_p.  Reduces to the squarefree part s:
    a squarefree integer is a p-adic square iff p does not divide it and
    it is a square unit (QR mod p for odd p; 1 mod 8 for p = 2)."""
    x = Fraction(x)
    if x == 0:
        return True
    s = squarefree_part(x)
    if s == 1:
        return True
    if s % p == 0:
        return False
    if p == 2:
        return s % 8 == 1
    from .arith import legendre

    return legendre(s, p) == 1


def is_isotropic(f: QuadForm, place: Union[Place, Literal["global"]]) -> bool:
    """Isotropy over a completion, or over Q ("global", by Hasse-Minkowski)."""
    if place != "global":
        return _is_isotropic_local(f, place)
    cs = diagonalize(f).coeffs
    return all(_is_isotropic_local(f, v) for v in relevant_places(cs))


@dataclass(frozen=True)
class WittDecomposition:
    """hyperbolic_pairs are (u, v) with q(u)=q(v)=0, B(u,v)=1, in source coords.
    anisotropic_basis spans the orthogonal complement; anisotropic_coeffs is a
    diagonalization of the restricted form."""

    source: QuadForm
    hyperbolic_pairs: tuple[tuple[Vector, Vector], ...]
    anisotropic_basis: tuple[Vector, ...]
    anisotropic_coeffs: tuple[Fraction, ...]

    @property
    def witt_index(self) -> int:
        return len(self.hyperbolic_pairs)

    def check(self) -> bool:
        f = self.source
        vecs: list[Vector] = []
        for u, v in self.hyperbolic_pairs:
            if f.value(u) != 0 or f.value(v) != 0 or f.bilinear(u, v) != 1:
                return False
            vecs.extend([u, v])
        for w in self.anisotropic_basis:
            vecs.append(w)
        n = f.dim
        if len(vecs) != n:
            return False
        if _det(tuple(tuple(Fraction(x) for x in v) for v in vecs)) == 0:
            return False
        # hyperbolic pairs orthogonal to each other and to the tail; tail
        # vectors need not be pairwise orthogonal (the coefficients record a
        # diagonalization of the restricted form, not of this basis)
        hyp = 2 * len(self.hyperbolic_pairs)
        for i, u in enumerate(vecs):
            for j in range(i + 1, len(vecs)):
                if i >= hyp:
                    continue
                paired = i % 2 == 0 and j == i + 1
                if not paired and f.bilinear(u, vecs[j]) != 0:
                    return False
        k = 2 * len(self.hyperbolic_pairs)
        tail = QuadForm.from_rows(
            [[f.bilinear(vecs[k + i], vecs[k + j]) for j in range(n - k)] for i in range(n - k)]
        )
        if tail.dim:
            if tuple(diagonalize(tail).coeffs) != tuple(self.anisotropic_coeffs):
                # coefficients are basis-dependent; require same squarefree classes
                got = tuple(squarefree_part(c) for c in diagonalize(tail).coeffs)
                want = tuple(squarefree_part(c) for c in self.anisotropic_coeffs)
                if sorted(got) != sorted(want):
                    return False
            if is_isotropic(tail, "global"):
                return False
        return True


_SEARCH_BUDGET = 3_000_000  # max tuples enumerated per half of the search


def find_isotropic_vector(f: QuadForm, height_bound: int = 10000) -> Optional[Vector]:
    """A nonzero rational vector with q(v) = 0, or None if the form is
    globally anisotropic.  Raises SearchExhausted if isotropy is certified by
    the local criteria but no vector of height <= height_bound turns up."""
    if not is_isotropic(f, "global"):
        return None
    d = diagonalize(f)
    v = _search_isotropic_diag(d.coeffs, height_bound)
    if v is None:
        raise SearchExhausted(
            f"form is isotropic but no vector of height <= {height_bound} found"
        )
    # translate back through the basis change: columns of B are the diag basis
    n = f.dim
    out = tuple(
        sum(d.basis_change[i][j] * v[j] for j in range(n)) for i in range(n)
    )
    assert f.value(out) == 0 and any(x != 0 for x in out)
    return _scale_primitive(out)


def _scale_primitive(v: Vector) -> Vector:
    import math

    den = 1
    for x in v:
        den = den * x.denominator // math.gcd(den, x.denominator)
    ints = [int(x * den) for x in v]
    g = 0
    for x in ints:
        g = math.gcd(g, x)
    ints = [x // g for x in ints]
    # deterministic sign: first nonzero coordinate positive
    first = next(x for x in ints if x != 0)
    if first < 0:
        ints = [-x for x in ints]
    return tuple(Fraction(x) for x in ints)


def _search_isotropic_diag(coeffs: Sequence[Fraction], height_bound: int) -> Optional[Vector]:
    """Meet-in-the-middle search for sum c_i x_i^2 = 0 with integer x_i."""
    cs = [squarefree_part(c) for c in coeffs]  # same isotropy, smaller values
    n = len(cs)
    left = cs[: (n + 1) // 2]
    right = cs[(n + 1) // 2 :]
    k = max(len(left), 1)
    max_bound = min(height_bound, max(10, int(_SEARCH_BUDGET ** (1.0 / k)) - 1))
    bounds = [b for b in (10, 40, max_bound) if b <= max_bound]
    if not bounds or bounds[-1] != max_bound:
        bounds.append(max_bound)
    for bound in sorted(set(bounds)):
        table: dict[int, tuple[int, ...]] = {}
        for xs in _int_tuples(len(left), bound):
            s = sum(c * x * x for c, x in zip(left, xs))
            if s not in table:
                table[s] = xs
        for ys in _int_tuples(len(right), bound):
            s = sum(c * y * y for c, y in zip(right, ys))
            xs = table.get(-s)
            if xs is not None and (any(xs) or any(ys)):
                v = xs + ys
                # undo the square-class scaling: c_i = cs_i * w_i^2 means
                # x_i in the original diagonal basis is x_i / w_i
                import math

                out = []
                for c0, c1, x in zip(coeffs, cs, v):
                    w2 = Fraction(c0, c1)
                    w = Fraction(
                        math.isqrt(w2.numerator), math.isqrt(w2.denominator)
                    )
                    out.append(Fraction(x) / w)
                return tuple(out)
    return None


def _int_tuples(k: int, bound: int):
    """All integer tuples with 0 <= x_i <= bound in lexicographic order.

    Signs are unnecessary for the meet-in-the-middle matching since
    c x^2 only depends on |x|; sign choices are resolved by the caller
    accepting any nonzero match (both halves use nonnegative entries, and
    a sum of the two halves being zero is sign-independent).
    """
    if k == 0:
        yield ()
        return
    for x in range(bound + 1):
        for rest in _int_tuples(k - 1, bound):
            yield (x,) + rest


def witt_decompose(f: QuadForm, height_bound: int = 10000) -> WittDecomposition:
    """Split off hyperbolic planes until the rest is anisotropic."""
    n = f.dim
    basis: list[Vector] = [
        tuple(Fraction(1) if i == j else Fraction(0) for j in range(n)) for i in range(n)
    ]
    pairs: list[tuple[Vector, Vector]] = []

    def restrict(vectors: list[Vector]) -> QuadForm:
        return QuadForm.from_rows(
            [[f.bilinear(u, v) for v in vectors] for u in vectors]
        )

    while len(basis) >= 2:
        sub = restrict(basis)
        u_sub = find_isotropic_vector(sub, height_bound)
        if u_sub is None:
            break
        u = tuple(
            sum(u_sub[i] * basis[i][j] for i in range(len(basis))) for j in range(n)
        )
        # find v with B(u, v) != 0 among the current basis, deterministically
        mate = next(w for w in basis if f.bilinear(u, w) != 0)
        bu = f.bilinear(u, mate)
        v1 = tuple(x / bu for x in mate)
        qv = f.value(v1)
        v = tuple(v1[j] - qv / 2 * u[j] for j in range(n))
        assert f.value(u) == 0 and f.value(v) == 0 and f.bilinear(u, v) == 1
        pairs.append((u, v))
        # new basis: projections orthogonal to the pair
        new_basis: list[Vector] = []
        for w in basis:
            w2 = tuple(
                w[j] - f.bilinear(w, v) * u[j] - f.bilinear(w, u) * v[j]
                for j in range(n)
            )
            if any(x != 0 for x in w2):
                new_basis.append(w2)
        # prune to an independent set of the right size
        basis = _independent_subset(new_basis, n - 2 * len(pairs), f)
    tail_form = restrict(basis) if basis else QuadForm.from_rows([])
    tail_coeffs: tuple[Fraction, ...] = ()
    if basis:
        tail_coeffs = diagonalize(tail_form).coeffs
    return WittDecomposition(f, tuple(pairs), tuple(basis), tail_coeffs)


def _independent_subset(vectors: list[Vector], k: int, f: QuadForm) -> list[Vector]:
    """First k vectors (in given order) that are linearly independent."""
    chosen: list[Vector] = []
    rows: list[list[Fraction]] = []
    for v in vectors:
        cand = rows + [list(v)]
        if _rank(cand) == len(cand):
            chosen.append(v)
            rows = cand
            if len(chosen) == k:
                return chosen
    return chosen


def _rank(rows: list[list[Fraction]]) -> int:
    m = [row[:] for row in rows]
    rank = 0
    cols = len(m[0]) if m else 0
    for col in range(cols):
        piv = next((r for r in range(rank, len(m)) if m[r][col] != 0), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        for r in range(len(m)):
            if r != rank and m[r][col] != 0:
                fct = m[r][col] / m[rank][col]
                for c in range(cols):
                    m[r][c] -= fct * m[rank][c]
        rank += 1
    return rank


def witt_index(f: QuadForm, height_bound: int = 10000) -> int:
    return witt_decompose(f, height_bound).witt_index


@dataclass(frozen=True)
class RepresentedValue:
    value: Fraction
    vector: Vector  # in the coordinates of the diagonal coefficients
    square_class: int


def represent_constrained(
    coeffs: Sequence,
    want_positive: bool = True,
    forbid_square: bool = True,
    height_bound: int = 12,
    forbid_classes: frozenset = frozenset(),
) -> RepresentedValue:
    """A nonzero value of the diagonal form sum c_i x_i^2 subject to the
    sign/square constraints, with square class outside `forbid_classes`.

    Deterministic: shells of increasing max-norm; within a shell the valid
    vector with the smallest value (then lexicographically smallest) wins.
    Only nonnegative coordinates are enumerated since values depend on x_i^2.

    Raises SearchExhausted on failure.  Existence is guaranteed under the
    callers' rank hypotheses (a rank-one indefinite tail cannot represent
    only squares: that would force a split ⟨1,1,...⟩-like form), so
    exhaustion signals a bad input or too small a bound.
    """
    cs = [Fraction(c) for c in coeffs]
    n = len(cs)
    if want_positive and all(c < 0 for c in cs):
        raise SearchExhausted(
            "negative definite form cannot represent a positive value"
        )
    for height in range(1, height_bound + 1):
        best: Optional[tuple[Fraction, tuple[int, ...]]] = None
        for xs in _shell_tuples(n, height):
            val = sum(c * x * x for c, x in zip(cs, xs))
            if val == 0:
                continue
            if want_positive and val <= 0:
                continue
            if forbid_square and is_rational_square(val):
                continue
            if squarefree_part(val) in forbid_classes:
                continue
            if best is None or (val, xs) < best:
                best = (val, xs)
        if best is not None:
            val, xs = best
            return RepresentedValue(
                val, tuple(Fraction(x) for x in xs), squarefree_part(val)
            )
    raise SearchExhausted(
        f"no represented value satisfying the constraints up to height {height_bound};"
        " under the intended rank hypotheses such a value exists, so the input or"
        " bound is at fault"
    )


def _shell_tuples(n: int, h: int):
    """Nonnegative integer tuples with max coordinate exactly h, lexicographic."""

    def rec(i: int, cur: tuple[int, ...], has_h: bool):
        if i == n:
            if has_h:
                yield cur
            return
        for x in range(h + 1):
            yield from rec(i + 1, cur + (x,), has_h or x == h)

    yield from rec(0, (), False)
