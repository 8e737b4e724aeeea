"""Quaternion algebras over the rationals (and their quadratic extensions)
with exact arithmetic: ramification, splitting fields, hermitian and
skew-hermitian diagonal forms, and the constructions that reduce unitary
groups over quaternion algebras to orthogonal or field data.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Union

from . import numfield, polys
from .arith import (
    REAL,
    FinitePrime,
    Place,
    ZeroInput,
    hilbert_symbol,
    is_rational_square,
    relevant_places,
    squarefree_part,
)
from .numfield import (
    NumberFieldCert,
    QuadElement,
    QuadraticField,
    is_square_in_quadfield,
)
from .quadform import QuadForm, RepresentedValue, SearchExhausted, represent_constrained

Scalar = Union[Fraction, QuadElement]


class InfeasibleSign(ValueError):
    pass


class NotSymmetric(ValueError):
    pass


class NotInFprime(RuntimeError):
    """a3^{-1} a4 fails to centralize alpha -- impossible by construction."""


class DegenerateTower(ValueError):
    """-c is already a square in F', so no quartic tower exists."""


class Degenerate(ValueError):
    pass


@dataclass(frozen=True)
class QuaternionAlgebra:
    """(a, b) over Q: i^2 = a, j^2 = b, ij = -ji."""

    a: Fraction
    b: Fraction

    def __post_init__(self):
        if self.a == 0 or self.b == 0:
            raise ZeroInput("quaternion algebra parameters must be nonzero")
        object.__setattr__(self, "a", Fraction(self.a))
        object.__setattr__(self, "b", Fraction(self.b))

    def element(self, t, x=0, y=0, z=0) -> "QuatElement":
        return QuatElement(self, *(_as_scalar(v) for v in (t, x, y, z)))

    def one(self) -> "QuatElement":
        return self.element(1)

    def gen_i(self) -> "QuatElement":
        return self.element(0, 1)

    def gen_j(self) -> "QuatElement":
        return self.element(0, 0, 1)

    def gen_k(self) -> "QuatElement":
        return self.element(0, 0, 0, 1)


def _as_scalar(v) -> Scalar:
    if isinstance(v, QuadElement):
        return v
    return Fraction(v)


def _conj_scalar(v: Scalar) -> Scalar:
    """Identity on rationals, field conjugation on quadratic elements."""
    if isinstance(v, QuadElement):
        return v.conj()
    return v


def _is_zero_scalar(v: Scalar) -> bool:
    if isinstance(v, QuadElement):
        return v.is_zero()
    return v == 0


@dataclass(frozen=True)
class QuatElement:
    """t + x i + y j + z ij with coefficients rational or in a quadratic
    field (the latter realizes the scalar extension D tensor L)."""

    alg: QuaternionAlgebra
    t: Scalar
    x: Scalar
    y: Scalar
    z: Scalar

    def _coerce(self, o) -> "QuatElement":
        if isinstance(o, QuatElement):
            if o.alg != self.alg:
                raise ValueError("mixed quaternion algebras")
            return o
        return QuatElement(self.alg, _as_scalar(o), *( _as_scalar(0),)*3)

    def __add__(self, o):
        o = self._coerce(o)
        return QuatElement(self.alg, self.t + o.t, self.x + o.x, self.y + o.y, self.z + o.z)

    def __radd__(self, o):
        return self + o

    def __neg__(self):
        return QuatElement(self.alg, -self.t, -self.x, -self.y, -self.z)

    def __sub__(self, o):
        return self + (-self._coerce(o))

    def __rsub__(self, o):
        return (-self) + o

    def __mul__(self, o):
        o = self._coerce(o)
        a, b = self.alg.a, self.alg.b
        t1, x1, y1, z1 = self.t, self.x, self.y, self.z
        t2, x2, y2, z2 = o.t, o.x, o.y, o.z
        return QuatElement(
            self.alg,
            t1 * t2 + a * x1 * x2 + b * y1 * y2 - a * b * z1 * z2,
            t1 * x2 + x1 * t2 - b * y1 * z2 + b * z1 * y2,
            t1 * y2 + y1 * t2 + a * x1 * z2 - a * z1 * x2,
            t1 * z2 + z1 * t2 + x1 * y2 - y1 * x2,
        )

    def __rmul__(self, o):
        return self._coerce(o) * self

    def conj(self) -> "QuatElement":
        """Canonical (quaternion) involution: negates the pure part."""
        return QuatElement(self.alg, self.t, -self.x, -self.y, -self.z)

    def nrd(self) -> Scalar:
        a, b = self.alg.a, self.alg.b
        return self.t * self.t - a * self.x * self.x - b * self.y * self.y + a * b * self.z * self.z

    def trd(self) -> Scalar:
        return 2 * self.t if not isinstance(self.t, QuadElement) else self.t + self.t

    def is_zero(self) -> bool:
        return all(_is_zero_scalar(v) for v in (self.t, self.x, self.y, self.z))

    def is_pure(self) -> bool:
        return _is_zero_scalar(self.t)

    def is_central(self) -> bool:
        return all(_is_zero_scalar(v) for v in (self.x, self.y, self.z))

    def inverse(self) -> "QuatElement":
        n = self.nrd()
        if _is_zero_scalar(n):
            raise ZeroDivisionError("element has reduced norm zero")
        c = self.conj()
        if isinstance(n, QuadElement):
            inv = n.inverse()
        else:
            inv = Fraction(1) / n
        return QuatElement(self.alg, c.t * inv, c.x * inv, c.y * inv, c.z * inv)

    def field_conj(self) -> "QuatElement":
        """Coefficientwise quadratic-field conjugation (identity on rationals)."""
        return QuatElement(
            self.alg,
            _conj_scalar(self.t),
            _conj_scalar(self.x),
            _conj_scalar(self.y),
            _conj_scalar(self.z),
        )

    def __eq__(self, o):
        if not isinstance(o, QuatElement):
            o = self._coerce(o)
        return (
            self.alg == o.alg
            and (self - o).is_zero()
        )

    def __hash__(self):
        return hash((self.alg, self.t, self.x, self.y, self.z))


def ramification_set(d: QuaternionAlgebra) -> frozenset[Place]:
    """Places of Q where (a,b) is a division algebra; always even in size."""
    out = [v for v in relevant_places([d.a, d.b]) if hilbert_symbol(d.a, d.b, v) == -1]
    assert len(out) % 2 == 0, "product formula violated"
    return frozenset(out)


def is_division(d: QuaternionAlgebra) -> bool:
    return bool(ramification_set(d))


def is_ramified_at_infinity(d: QuaternionAlgebra) -> bool:
    return hilbert_symbol(d.a, d.b, REAL) == -1


@dataclass(frozen=True)
class SplittingField:
    field: QuadraticField
    witness: tuple[Fraction, Fraction, Fraction]  # (c1, c2, c3)
    value: Fraction  # a c1^2 + b c2^2 - ab c3^2, with sqrt(value) in D


def find_splitting_quadratic(
    d: QuaternionAlgebra,
    sign_constraint: str = "any",
    height_bound: int = 12,
) -> SplittingField:
    """A quadratic field Q(sqrt(e)) that splits d, with e a represented value
    e = a c1^2 + b c2^2 - ab c3^2 of the pure norm form (so sqrt(e) exists
    inside d).  sign_constraint in {"positive", "negative", "any"}.

    A definite algebra (a < 0, b < 0) admits only negative e; its canonical
    generator i gives e in the class of a directly.  Otherwise the search
    prefers a square class transverse to those of a and b.
    """
    a, b = d.a, d.b
    coeffs = [a, b, -a * b]
    if a < 0 and b < 0:
        if sign_constraint == "positive":
            raise InfeasibleSign(
                "pure norm form of a definite algebra is negative definite"
            )
        e = squarefree_part(a)
        return SplittingField(
            QuadraticField(e), (Fraction(1), Fraction(0), Fraction(0)), a
        )
    if sign_constraint == "negative":
        # negate the form, search positive, flip the value back
        rep = represent_constrained(
            [-c for c in coeffs],
            want_positive=True,
            forbid_square=False,
            height_bound=height_bound,
            forbid_classes=frozenset({squarefree_part(-a), squarefree_part(-b)}),
        )
        val = -rep.value
    else:
        rep = represent_constrained(
            coeffs,
            want_positive=(sign_constraint == "positive"),
            forbid_square=True,
            height_bound=height_bound,
            forbid_classes=frozenset({squarefree_part(a), squarefree_part(b)}),
        )
        val = rep.value
    if is_rational_square(val) or val == 0:
        raise SearchExhausted("represented value is a square; widen the bound")
    e = squarefree_part(val)
    c1, c2, c3 = rep.vector
    check = a * c1 * c1 + b * c2 * c2 - a * b * c3 * c3
    assert check == val
    return SplittingField(QuadraticField(e), (c1, c2, c3), val)


@dataclass(frozen=True)
class HermForm:
    """Hermitian form over a quadratic field L with its conjugation."""

    field: QuadraticField
    matrix: tuple[tuple[QuadElement, ...], ...]

    def __post_init__(self):
        n = len(self.matrix)
        for i in range(n):
            if len(self.matrix[i]) != n:
                raise NotSymmetric("matrix must be square")
            for j in range(n):
                if self.matrix[i][j] != self.matrix[j][i].conj():
                    raise NotSymmetric("matrix must equal its conjugate transpose")

    @staticmethod
    def diagonal(field: QuadraticField, coeffs: Sequence) -> "HermForm":
        cs = [c if isinstance(c, QuadElement) else field.element(c) for c in coeffs]
        n = len(cs)
        zero = field.element(0)
        return HermForm(
            field,
            tuple(
                tuple(cs[i] if i == j else zero for j in range(n)) for i in range(n)
            ),
        )

    @property
    def dim(self) -> int:
        return len(self.matrix)


@dataclass(frozen=True)
class QuatForm:
    """Diagonal hermitian or skew-hermitian form over a quaternion algebra
    with its canonical involution, plus a count of leading hyperbolic planes."""

    algebra: QuaternionAlgebra
    kind: str  # "hermitian" | "skew_hermitian"
    diagonal: tuple[QuatElement, ...]
    hyperbolic_count: int = 0

    def __post_init__(self):
        if self.kind not in ("hermitian", "skew_hermitian"):
            raise ValueError("kind must be hermitian or skew_hermitian")
        for e in self.diagonal:
            if e.is_zero():
                raise Degenerate("diagonal entries must be nonzero")
            if self.kind == "hermitian" and not e.is_central():
                raise NotSymmetric("hermitian entries must be central (rational)")
            if self.kind == "skew_hermitian" and not e.is_pure():
                raise NotSymmetric("skew-hermitian entries must be pure")

    @property
    def rank(self) -> int:
        return 2 * self.hyperbolic_count + len(self.diagonal)


@dataclass(frozen=True)
class QuatSecondKindForm:
    """Hermitian form over D = D' tensor L with the second-kind involution
    int(unit) o (canonical involution tensor conjugation of L)."""

    l_field: QuadraticField
    inner_algebra: QuaternionAlgebra
    unit: QuatElement
    diagonal: tuple[QuatElement, ...]
    hyperbolic_count: int = 0

    def __post_init__(self):
        u = self.unit
        if u.is_zero():
            raise Degenerate("unit must be invertible")
        if second_kind_involution(self, u) != u:
            raise NotSymmetric("unit must be fixed by the involution it twists")
        for e in self.diagonal:
            if e.is_zero():
                raise Degenerate("diagonal entries must be nonzero")
            if second_kind_involution(self, e) != e:
                raise NotSymmetric("diagonal entries must be involution-symmetric")

    @property
    def rank(self) -> int:
        return 2 * self.hyperbolic_count + len(self.diagonal)


def second_kind_involution(form: QuatSecondKindForm, x: QuatElement) -> QuatElement:
    """tau(x) = u * (conj_D' tensor conj_L)(x) * u^{-1}."""
    base = x.conj().field_conj()
    u = form.unit
    return u * base * u.inverse()


def normalize_hermitian(form, d) -> object:
    """Rescale a (quaternion- or field-)hermitian form by a symmetric unit d;
    the special unitary group is unchanged.  Returns the same kind of form."""
    if isinstance(form, HermForm):
        dd = Fraction(d) if not isinstance(d, QuadElement) else d
        if isinstance(dd, QuadElement):
            if dd.fld != form.field or dd.conj() != dd:
                raise NotSymmetric("scaling element must be conjugation-fixed")
            if dd.is_zero():
                raise Degenerate("scaling element must be a unit")
        elif dd == 0:
            raise Degenerate("scaling element must be a unit")
        return HermForm(
            form.field,
            tuple(tuple(dd * e for e in row) for row in form.matrix),
        )
    if isinstance(form, QuatForm):
        dd = form.algebra.element(d) if not isinstance(d, QuatElement) else d
        if form.kind == "hermitian":
            if not dd.is_central():
                raise NotSymmetric("canonical involution fixes only the center")
            if dd.is_zero():
                raise Degenerate("scaling element must be a unit")
            return QuatForm(
                form.algebra,
                form.kind,
                tuple(dd * e for e in form.diagonal),
                form.hyperbolic_count,
            )
        raise NotSymmetric(
            "skew-hermitian rescaling twists the involution; handled in skew_restriction"
        )
    if isinstance(form, QuatSecondKindForm):
        dd = d
        if not isinstance(dd, QuatElement):
            dd = form.inner_algebra.element(d)
        if second_kind_involution(form, dd) != dd:
            raise NotSymmetric("scaling element must be involution-symmetric")
        if dd.is_zero():
            raise Degenerate("scaling element must be a unit")
        return QuatSecondKindForm(
            form.l_field,
            form.inner_algebra,
            form.unit,
            tuple(dd * e for e in form.diagonal),
            form.hyperbolic_count,
        )
    raise TypeError(f"unsupported form type {type(form)!r}")


def common_orthogonal_pure(a3: QuatElement, a4: QuatElement) -> QuatElement:
    """A nonzero pure alpha anticommuting with both a3 and a4.

    For pure p, q: pq + qp = 2(a p_x q_x + b p_y q_y - ab p_z q_z), so
    anticommutation is orthogonality in the 3-dimensional pure part; a
    nonzero solution of the two linear conditions always exists.  The
    deterministic first kernel basis vector (reduced echelon form) is chosen.
    """
    if not (a3.is_pure() and a4.is_pure()) or a3.is_zero() or a4.is_zero():
        raise ValueError("arguments must be nonzero pure quaternions")
    alg = a3.alg
    a, b = alg.a, alg.b
    rows = [
        [a * p.x, b * p.y, -a * b * p.z]
        for p in (a3, a4)
    ]
    sol = _kernel_first_vector(rows)
    alpha = QuatElement(alg, Fraction(0), sol[0], sol[1], sol[2])
    assert (a3 * alpha + alpha * a3).is_zero() and (a4 * alpha + alpha * a4).is_zero()
    return alpha


def _kernel_first_vector(rows: list[list[Fraction]]) -> tuple[Fraction, ...]:
    """First kernel basis vector of a rational matrix, in the deterministic
    order given by reduced row echelon form with free variables set to the
    standard basis, lowest free index first; scaled to a primitive vector."""
    import math

    m = [ [Fraction(x) for x in row] for row in rows ]
    ncols = len(m[0]) if m else 0
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        pr = m[r][c]
        m[r] = [x / pr for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    free = [c for c in range(ncols) if c not in pivots]
    if not free:
        raise ValueError("kernel is trivial")
    fc = free[0]
    v = [Fraction(0)] * ncols
    v[fc] = Fraction(1)
    for i, pc in enumerate(pivots):
        v[pc] = -m[i][fc]
    den = 1
    for x in v:
        den = den * x.denominator // math.gcd(den, x.denominator)
    ints = [int(x * den) for x in v]
    g = 0
    for x in ints:
        g = math.gcd(g, x)
    ints = [x // g for x in ints]
    first = next(x for x in ints if x != 0)
    if first < 0:
        ints = [-x for x in ints]
    return tuple(Fraction(x) for x in ints)


def b2_realization(d: QuaternionAlgebra, h: QuatForm) -> QuadForm:
    """The 5-dimensional rational quadratic form q(m) = Trd(m^2) on the
    h-symmetric trace-zero endomorphisms of D^2; SO(q) is isogenous to
    SU_2(D, h).  Computed from an explicit basis by quaternion arithmetic."""
    if h.kind != "hermitian" or len(h.diagonal) != 2 or h.hyperbolic_count:
        raise ValueError("need a diagonal hermitian form of rank 2")
    h1, h2 = (e.t for e in h.diagonal)
    if h1 == 0 or h2 == 0:
        raise Degenerate("degenerate hermitian form")
    one = d.one()
    zero = d.element(0)

    def make(m11: QuatElement, m21: QuatElement):
        # m12 = h1^{-1} conj(m21) h2; with rational h_i this is (h2/h1) conj(m21)
        m12 = (Fraction(h2) / Fraction(h1)) * m21.conj()
        return ((m11, m12), (m21, -m11))

    basis = [make(one, zero)] + [
        make(zero, g) for g in (one, d.gen_i(), d.gen_j(), d.gen_k())
    ]

    def mat_mul(p, q):
        return tuple(
            tuple(
                p[i][0] * q[0][j] + p[i][1] * q[1][j] for j in range(2)
            )
            for i in range(2)
        )

    def trd2(p) -> Fraction:
        return Fraction(p[0][0].trd() + p[1][1].trd())

    gram = [
        [
            (trd2(mat_mul(u, v)) + trd2(mat_mul(v, u))) / 2
            for v in basis
        ]
        for u in basis
    ]
    q = QuadForm.from_rows(gram)
    from .quadform import diagonalize

    diagonalize(q)  # raises Degenerate if h was degenerate in disguise
    return q


@dataclass(frozen=True)
class SkewRestriction:
    alpha: QuatElement
    fprime: QuadraticField
    c: QuadElement  # a3^{-1} a4 expressed inside F'
    k_cert: NumberFieldCert
    k_is_biquadratic: bool


def skew_restriction(form: QuatForm, i3: int, i4: int) -> SkewRestriction:
    """From two anisotropic diagonal entries a3, a4 of a skew-hermitian form,
    build the tower: alpha pure anticommuting with both, F' = Q(alpha),
    c = a3^{-1} a4 in F', and the degree-4 certificate for K = F'(sqrt(-c)).
    """
    a3 = form.diagonal[i3]
    a4 = form.diagonal[i4]
    alpha = common_orthogonal_pure(a3, a4)
    alpha_sq = alpha.nrd()
    alpha_sq = -Fraction(alpha_sq)  # alpha^2 = -Nrd(alpha) for pure alpha
    if is_rational_square(alpha_sq):
        raise Degenerate(
            "alpha generates no quadratic field; the algebra is not division"
        )
    dprime = squarefree_part(alpha_sq)
    fprime = QuadraticField(dprime)
    import math

    w2 = alpha_sq / dprime
    w = Fraction(math.isqrt(w2.numerator), math.isqrt(w2.denominator))
    # c = a3^{-1} a4 commutes with alpha, hence c = u + v*alpha with u, v in Q
    cq = a3.inverse() * a4
    u = Fraction(cq.t)
    v = _pure_ratio(cq, alpha)
    if v is None:
        raise NotInFprime("a3^{-1} a4 does not centralize alpha")
    c = fprime.element(u, v * w)  # u + (v w) sqrt(d')
    if is_square_in_quadfield(-c):
        raise DegenerateTower("-c is a square in F'; no quadratic tower over F'")
    vprime = v * w
    if vprime == 0:
        # c rational: K is the biquadratic compositum Q(sqrt(d'), sqrt(-c))
        e = squarefree_part(-u)
        k_cert = numfield.compositum_quadratic(fprime, QuadraticField(e))
        return SkewRestriction(alpha, fprime, c, k_cert, True)
    # minimal polynomial of sqrt(-c): x^4 + 2u x^2 + (u^2 - v'^2 d')
    raw = polys.poly([u * u - vprime * vprime * dprime, 0, 2 * u, 0, 1])
    k_cert = _integral_quartic_cert(raw)
    return SkewRestriction(alpha, fprime, c, k_cert, False)


def _pure_ratio(cq: QuatElement, alpha: QuatElement) -> Optional[Fraction]:
    """v with pure(cq) = v * alpha, or None."""
    pure = cq - cq.alg.element(cq.t)
    for comp in ("x", "y", "z"):
        av = Fraction(getattr(alpha, comp))
        if av != 0:
            v = Fraction(getattr(pure, comp)) / av
            scaled = QuatElement(
                alpha.alg, Fraction(0), v * alpha.x, v * alpha.y, v * alpha.z
            )
            return v if (pure - scaled).is_zero() else None
    return None


def _integral_quartic_cert(raw: polys.Poly) -> NumberFieldCert:
    """Rescale the generator so the monic quartic has integer coefficients,
    then certify the field (signature and complete quadratic subfields)."""
    import math

    m = 1
    while True:
        scaled = polys.poly(
            [raw[0] * m**4, 0, raw[2] * m**2, 0, 1]
        )
        if all(c.denominator == 1 for c in scaled):
            return numfield.field_cert([int(c) for c in scaled])
        m += 1
