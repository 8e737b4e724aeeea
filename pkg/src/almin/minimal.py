"""Verdict engine: decides minimality of an isotropic almost-simple group
over Q and constructs independently verifiable witness subgroups.

A NotMinimal verdict always carries a Witness: a proper isotropic almost
simple subgroup with real rank at least 2, plus embedding data that
re-validates by exact arithmetic inside the parent.  verify_witness runs
that re-validation from the witness data alone, sharing no intermediate
state with the construction.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

from . import algebra as alg
from . import numfield, polys, qgroup, quadform
from .algebra import HermForm, QuatForm, QuaternionAlgebra, is_ramified_at_infinity
from .arith import is_rational_square, squarefree_part
from .numfield import (
    NumberFieldCert,
    QuadElement,
    QuadraticField,
    SubfieldCert,
    quadratic_field_cert,
    verify_subfield,
)
from .qgroup import (
    ConvertibleTo,
    GroupSpec,
    NotAlmostSimple,
    Orthogonal,
    ResSL2,
    ResSU3,
    SpecialLinear,
    Symplectic,
    TailNotCertified,
    Unitary1,
    Unitary2,
    Unitary2Quat,
    Unsupported,
    is_absolutely_almost_simple,
    q_rank,
    real_rank,
)
from .quadform import QuadForm, SearchExhausted, represent_constrained, witt_index


class InternalSoundnessError(AssertionError):
    """A constructed witness failed its own verification."""


# --------------------------------------------------------------------------
# Embedding data


@dataclass(frozen=True)
class TraceRealizationContext:
    """Subform vectors live in the 5-dimensional trace realization of the
    hyperbolic quaternion-hermitian plane of the parent (recomputed fresh
    during verification)."""


@dataclass(frozen=True)
class SplitUnitaryContext:
    """Subform vectors live in the standard 4-dimensional unitary group over
    the splitting field recorded here, built from the parent's quaternion
    hermitian data."""

    e_value: Fraction
    e_class: int
    e_coords: tuple[Fraction, Fraction, Fraction]
    a_value: Fraction
    a_vector: tuple[int, ...]
    tail_coeffs: tuple[Fraction, ...]
    k_index: int


@dataclass(frozen=True)
class SubformIndices:
    """Four pairwise-orthogonal vectors spanning a quaternary subform whose
    special orthogonal group is the restriction of scalars of SL2 named by
    the witness; a_value is the represented value produced by the witness
    vector on the tail coefficients."""

    basis: tuple[tuple, ...]
    tail_coeffs: tuple[Fraction, ...]
    a_value: Fraction
    witness_vector: tuple[int, ...]
    context: Optional[Union[TraceRealizationContext, SplitUnitaryContext]] = None


@dataclass(frozen=True)
class SubfieldElement:
    """c = a c1^2 + b c2^2 - a b c3^2: a square inside the quaternion algebra
    generating the quadratic field of the witness."""

    c_value: Fraction
    coords: tuple[Fraction, Fraction, Fraction]


@dataclass(frozen=True)
class BlockEmbedding:
    """A 3x3 coordinate block of a special linear group."""

    offset: int = 0


@dataclass(frozen=True)
class SplitSO5:
    """The split five-dimensional form <1,-1,-1,1,a> inside a group of
    rational rank at least 2, with the chosen positive nonsquare a."""

    form_coeffs: tuple[Fraction, ...]
    a_value: Fraction


@dataclass(frozen=True)
class CompositumTower:
    """K = E.L with K0 the fixed field of the product conjugation; E is a
    splitting field of the inner quaternion algebra, certified by the
    represented value e_value of its pure norm form."""

    e_value: Fraction
    e_class: int
    e_coords: tuple[Fraction, Fraction, Fraction]
    l_class: int
    k0_class: int
    k_cert: NumberFieldCert


@dataclass(frozen=True)
class PureQuaternionTower:
    """alpha anticommutes with the two chosen skew diagonal entries; F' is
    the quadratic field it generates, c = a3^{-1} a4 in F', and k_cert
    certifies K = F'(sqrt(-c)) of degree 4."""

    entry_indices: tuple[int, int]
    alpha_coords: tuple[Fraction, Fraction, Fraction]
    fprime_class: int
    c_x: Fraction
    c_y: Fraction
    k_cert: NumberFieldCert
    k_is_biquadratic: bool


@dataclass(frozen=True)
class SubfieldRestriction:
    """Descent to a certified proper subfield."""

    cert: SubfieldCert


EmbeddingData = Union[
    SubformIndices,
    SubfieldElement,
    BlockEmbedding,
    SplitSO5,
    CompositumTower,
    PureQuaternionTower,
    SubfieldRestriction,
]


# --------------------------------------------------------------------------
# Verdicts


@dataclass(frozen=True)
class DerivationStep:
    rule: str
    detail: str


@dataclass(frozen=True)
class Witness:
    subgroup: GroupSpec
    embedding: EmbeddingData
    derivation: tuple[DerivationStep, ...]


@dataclass(frozen=True)
class Minimal:
    matched_case: str  # one of "i", "ii", "iii", "iv"
    conditions: tuple[str, ...]
    derivation: tuple[DerivationStep, ...]


@dataclass(frozen=True)
class NotMinimal:
    witness: Witness


@dataclass(frozen=True)
class NotApplicable:
    reason: str


@dataclass(frozen=True)
class UnsupportedVerdict:
    reason: str


Verdict = Union[Minimal, NotMinimal, NotApplicable, UnsupportedVerdict]


@dataclass(frozen=True)
class VerifyCheck:
    name: str
    passed: bool
    detail: str


@dataclass(frozen=True)
class VerifyReport:
    ok: bool
    checks: tuple[VerifyCheck, ...]

    @property
    def failures(self) -> tuple[VerifyCheck, ...]:
        return tuple(c for c in self.checks if not c.passed)


def _step(rule: str, detail: str) -> DerivationStep:
    return DerivationStep(rule, detail)


# --------------------------------------------------------------------------
# Small helpers


def _cls(x) -> int:
    return squarefree_part(Fraction(x))


def _herm_eval(m, u, v) -> QuadElement:
    """Sesquilinear value sum conj(u_k) m[k][l] v_l."""
    n = len(m)
    total = None
    for k in range(n):
        if u[k].is_zero():
            continue
        ck = u[k].conj()
        for l in range(n):
            if v[l].is_zero():
                continue
            term = ck * m[k][l] * v[l]
            total = term if total is None else total + term
    if total is None:
        total = u[0].fld.element(0)
    return total


def _lvec_scale(v, s: QuadElement):
    return tuple(x * s for x in v)


def _lvec_add(u, v):
    return tuple(a + b for a, b in zip(u, v))


def _lvec_sub(u, v):
    return tuple(a - b for a, b in zip(u, v))


def _first_squarefree_at_least(n: int) -> int:
    a = n
    while True:
        if a not in (0, 1) and squarefree_part(a) == a:
            return a
        a += 1


def _shells(n: int, bound: int):
    from .quadform import _shell_tuples

    for h in range(1, bound + 1):
        yield from sorted(_shell_tuples(n, h))


def _splitting_field(
    dp: QuaternionAlgebra,
    constraint: str,
    avoid: frozenset[int] = frozenset(),
    height_bound: int = 16,
) -> alg.SplittingField:
    """find_splitting_quadratic, additionally avoiding square classes."""
    first = alg.find_splitting_quadratic(dp, constraint, height_bound)
    if first.field.d not in avoid:
        return first
    a, b = Fraction(dp.a), Fraction(dp.b)
    for h in range(1, height_bound + 1):
        best = None
        from .quadform import _shell_tuples

        for xs in sorted(_shell_tuples(3, h)):
            val = a * xs[0] ** 2 + b * xs[1] ** 2 - a * b * xs[2] ** 2
            if val == 0:
                continue
            if constraint == "positive" and val <= 0:
                continue
            if constraint == "negative" and val >= 0:
                continue
            s = _cls(val)
            if s == 1 or s in avoid:
                continue
            key = (abs(val), xs)
            if best is None or key < best[0]:
                best = (key, val, xs, s)
        if best is not None:
            _, val, xs, s = best
            return alg.SplittingField(
                QuadraticField(s), tuple(Fraction(x) for x in xs), val
            )
    raise SearchExhausted("no admissible splitting field within the bound")


def _so4_conversion_field(g4: QuadForm):
    """The quadratic field certificate of the restriction of scalars that an
    isotropic nonsquare-discriminant quaternary form converts to, or an
    error string."""
    try:
        res = is_absolutely_almost_simple(Orthogonal(g4))
    except NotAlmostSimple:
        return None, "a is a rational square => subgroup not almost simple"
    except (Unsupported, qgroup.InvalidSpec, quadform.Degenerate) as exc:
        return None, f"quaternary subform does not convert: {exc}"
    if not isinstance(res, ConvertibleTo) or not isinstance(res.spec, ResSL2):
        return None, "quaternary subform did not convert to a restriction of scalars"
    return res.spec.field, ""


# --------------------------------------------------------------------------
# Witness constructions


def _orthogonal_subform_witness(
    form: QuadForm, height_bound: int, represent_bound: int
) -> tuple[Witness, tuple[DerivationStep, ...]]:
    """Normalize to <1,-1,-1,...> and represent a positive nonsquare a on the
    tail, giving the restriction of scalars of SL2 from Q(sqrt(a)) on the
    quaternary subform."""
    deriv: list[DerivationStep] = []
    d = quadform.diagonalize(form)
    coeffs = list(d.coeffs)
    n = len(coeffs)
    cols = [tuple(row[j] for row in d.basis_change) for j in range(n)]

    pair = None
    for i, j in itertools.combinations(range(n), 2):
        if _cls(coeffs[i] * coeffs[j]) == -1:
            pair = (i, j)
            break
    if pair is not None:
        i, j = pair
        w1, w2 = cols[i], cols[j]
        rest = [(cols[k], coeffs[k]) for k in range(n) if k not in pair]
        deriv.append(
            _step(
                "hyperbolic-pair",
                f"diagonal entries {i},{j} have square-class product -1",
            )
        )
    else:
        wd = quadform.witt_decompose(form, height_bound)
        u, v = wd.hyperbolic_pairs[0]
        w1 = tuple(a + b for a, b in zip(u, v))
        w2 = tuple(a - b for a, b in zip(u, v))
        rest = list(zip(wd.anisotropic_basis, wd.anisotropic_coeffs))
        deriv.append(
            _step(
                "hyperbolic-pair",
                "split one certified hyperbolic plane by isotropic-vector search",
            )
        )
    kpos = next((t for t, (_, c) in enumerate(rest) if c < 0), None)
    assert kpos is not None, "real rank >= 2 guarantees a negative tail entry"
    w3, ck = rest[kpos]
    tail = [rest[t] for t in range(len(rest)) if t != kpos]
    assert tail, "dimension >= 5 guarantees a nonempty tail"
    tail_coeffs = tuple(-c / ck for _, c in tail)
    deriv.append(
        _step(
            "normalize-scale",
            f"scale the form by -1/({ck}) so the chosen slot is -1;"
            f" scaled tail {tail_coeffs}",
        )
    )
    rep = represent_constrained(
        tail_coeffs,
        want_positive=True,
        forbid_square=True,
        height_bound=represent_bound,
    )
    a = rep.value
    w4 = [Fraction(0)] * form.dim
    for m, (vec, _) in enumerate(tail):
        for t in range(form.dim):
            w4[t] += rep.vector[m] * Fraction(vec[t])
    w4 = tuple(w4)
    s = _cls(a)
    deriv.append(
        _step(
            "represent-positive-nonsquare",
            f"a = {a} (class {s}) at tail vector {rep.vector}",
        )
    )
    sub = ResSL2(quadratic_field_cert(s))
    emb = SubformIndices(
        basis=(w1, w2, w3, w4),
        tail_coeffs=tail_coeffs,
        a_value=a,
        witness_vector=tuple(rep.vector),
    )
    deriv.append(
        _step(
            "orthogonal-quaternary-descent",
            f"the quaternary subform has discriminant class {s}; its special"
            f" orthogonal group is the restriction of scalars of SL2 from"
            f" Q(sqrt({s}))",
        )
    )
    return Witness(sub, emb, tuple(deriv)), tuple(deriv)


def _herm_orthogonalize(L: QuadraticField, hfun, vectors):
    """Orthogonal L-basis and rational values for the span of `vectors` under
    the sesquilinear form hfun (nondegenerate on the span)."""
    work = [tuple(v) for v in vectors]
    out_vecs, out_vals = [], []
    while work:
        idx = next(
            (i for i, w in enumerate(work) if not hfun(w, w).is_zero()), None
        )
        if idx is None:
            pair = next(
                (
                    (i, j)
                    for i in range(len(work))
                    for j in range(i + 1, len(work))
                    if not hfun(work[i], work[j]).is_zero()
                ),
                None,
            )
            if pair is None:
                break  # remaining vectors span a totally degenerate piece
            i, j = pair
            for lam in (L.element(1), L.sqrt_gen()):
                if (hfun(work[i], work[j]) * lam).trace() != 0:
                    work[i] = _lvec_add(work[i], _lvec_scale(work[j], lam))
                    break
            continue
        x = work.pop(idx)
        val = hfun(x, x)
        assert val.is_rational()
        out_vecs.append(x)
        out_vals.append(val.x)
        inv = val.inverse()
        work = [
            _lvec_sub(w, _lvec_scale(x, hfun(x, w) * inv)) for w in work
        ]
        work = [w for w in work if any(not c.is_zero() for c in w)]
    return out_vecs, out_vals


def _hermitian_subform_witness(
    form: HermForm, height_bound: int, represent_bound: int
) -> tuple[Witness, tuple[DerivationStep, ...]]:
    """The quadratic-field hermitian construction: split a hyperbolic plane,
    normalize a slot to -1, represent a positive nonsquare a as a sum of
    tail entries times norms, descend to the rational quaternary subform."""
    L = form.field
    d = L.d
    n = form.dim
    m = form.matrix
    deriv: list[DerivationStep] = []

    def h(u, v):
        return _herm_eval(m, u, v)

    # isotropic vector via the rational trace form on Q^{2n}
    basis_q = []
    for j in range(n):
        for s in (L.element(1), L.sqrt_gen()):
            vec = [L.element(0)] * n
            vec[j] = s
            basis_q.append(tuple(vec))
    gram = [
        [(h(u, v).trace()) / 2 for v in basis_q] for u in basis_q
    ]
    tf = QuadForm.from_rows(gram)
    iso = quadform.find_isotropic_vector(tf, height_bound)
    if iso is None:
        raise qgroup.InvalidSpec("hermitian form is anisotropic")
    v = tuple(
        L.element(iso[2 * j], iso[2 * j + 1]) for j in range(n)
    )
    assert h(v, v).is_zero()
    j0 = next(j for j in range(n) if not h(v, basis_q[2 * j]).is_zero())
    e_j = basis_q[2 * j0]
    u1 = _lvec_scale(e_j, h(v, e_j).inverse())
    r = h(u1, u1)
    assert r.is_rational()
    u = _lvec_add(u1, _lvec_scale(v, L.element(-r.x / 2)))
    p1 = _lvec_add(v, u)
    p2 = _lvec_sub(v, u)
    deriv.append(
        _step(
            "hermitian-hyperbolic-pair",
            "split one hyperbolic plane from an isotropic vector of the"
            " rational trace form",
        )
    )
    # orthogonal complement of the plane
    proj = []
    for e in (basis_q[2 * j] for j in range(n)):
        w = _lvec_sub(
            _lvec_sub(e, _lvec_scale(u, h(v, e))), _lvec_scale(v, h(u, e))
        )
        if any(not c.is_zero() for c in w):
            proj.append(w)
    o_vecs, o_vals = _herm_orthogonalize(L, h, proj)
    assert len(o_vecs) == n - 2, "complement of a hyperbolic plane has rank n-2"
    kpos = next(
        (
            t
            for t, c in enumerate(o_vals)
            if quadform.is_isotropic(QuadForm.diagonal([1, -d, c]), "global")
        ),
        None,
    )
    if kpos is None:
        raise Unsupported(
            "no tail entry can be normalized to -1 by a field norm"
        )
    w3, ck = o_vecs[kpos], o_vals[kpos]
    tail = [(o_vecs[t], o_vals[t]) for t in range(len(o_vecs)) if t != kpos]
    assert tail, "dimension >= 4 guarantees a nonempty hermitian tail"
    tail_t = [-c / ck for _, c in tail]
    trace_coeffs = []
    for t in tail_t:
        trace_coeffs.extend([t, -t * d])
    deriv.append(
        _step(
            "normalize-scale",
            f"scale by -1/({ck}): -1/({ck}) is a norm of the quadratic field;"
            f" scaled tail {tuple(tail_t)}",
        )
    )
    rep = represent_constrained(
        trace_coeffs,
        want_positive=True,
        forbid_square=True,
        height_bound=represent_bound,
    )
    a = rep.value
    s = _cls(a)
    w4 = tuple(L.element(0) for _ in range(n))
    for t in range(len(tail)):
        b = L.element(rep.vector[2 * t], rep.vector[2 * t + 1])
        w4 = _lvec_add(w4, _lvec_scale(tail[t][0], b))
    assert h(w4, w4).is_rational() and h(w4, w4).x == -ck * a
    deriv.append(
        _step(
            "represent-positive-nonsquare",
            f"a = {a} (class {s}) as a sum of tail entries times norms, at"
            f" coefficient vector {rep.vector}",
        )
    )
    sub = ResSL2(quadratic_field_cert(s))
    emb = SubformIndices(
        basis=(p1, p2, w3, w4),
        tail_coeffs=tuple(trace_coeffs),
        a_value=a,
        witness_vector=tuple(rep.vector),
    )
    deriv.append(
        _step(
            "orthogonal-quaternary-descent",
            f"the rational quaternary subform on the orthogonal basis has"
            f" discriminant class {s}",
        )
    )
    return Witness(sub, emb, tuple(deriv)), tuple(deriv)


def _sl2_quaternion_witness(
    d: QuaternionAlgebra, m: int, height_bound: int
) -> Witness:
    sp = alg.find_splitting_quadratic(d, "positive", height_bound)
    s = sp.field.d
    deriv = [
        _step(
            "quaternion-subfield",
            f"c = a c1^2 + b c2^2 - a b c3^2 = {sp.value} at {sp.witness} is"
            f" positive, so Q(sqrt({s})) embeds in the algebra and its"
            f" restriction of scalars of SL2 embeds in the group",
        )
    ]
    if m > 2:
        deriv.append(
            _step(
                "block-restriction",
                f"the subgroup sits inside the leading 2x2 block of the"
                f" m = {m} special linear group",
            )
        )
    return Witness(
        ResSL2(quadratic_field_cert(s)),
        SubfieldElement(sp.value, sp.witness),
        tuple(deriv),
    )


def _split_so5_witness(detail: str) -> Witness:
    a = Fraction(_first_squarefree_at_least(2))
    coeffs = (Fraction(1), Fraction(-1), Fraction(-1), Fraction(1), a)
    deriv = (
        _step("split-rank-2-reduction", detail),
        _step(
            "split-so5",
            f"the split five-dimensional form <1,-1,-1,1,{a}> realizes the"
            f" split rank-2 subgroup; its quaternary subform <1,-1,-1,{a}>"
            f" carries the restriction of scalars of SL2 from Q(sqrt({a}))",
        ),
    )
    return Witness(
        ResSL2(quadratic_field_cert(int(a))), SplitSO5(coeffs, a), deriv
    )


def _second_kind_witness(g: Unitary2Quat, height_bound: int) -> Witness:
    f = g.form
    d = f.l_field.d
    dp = f.inner_algebra
    if f.rank == 2:
        constraint = "positive" if d > 0 else "negative"
    else:
        constraint = "negative" if d < 0 else "any"
    sp = _splitting_field(dp, constraint, avoid=frozenset({d}))
    e = sp.field.d
    kc = numfield.compositum_quadratic(sp.field, f.l_field)
    k0 = squarefree_part(e * d)
    emb = CompositumTower(
        e_value=sp.value,
        e_class=e,
        e_coords=sp.witness,
        l_class=d,
        k0_class=k0,
        k_cert=kc,
    )
    deriv = [
        _step(
            "splitting-field-compositum",
            f"E = Q(sqrt({e})) splits the inner quaternion algebra (pure norm"
            f" value {sp.value} at {sp.witness}, sign constraint"
            f" {constraint}); K = E.L is biquadratic with fixed field"
            f" K0 = Q(sqrt({k0}))",
        )
    ]
    if f.rank == 2:
        deriv.append(
            _step(
                "compositum-sl2-descent",
                f"rank 2: the restriction of scalars of SL2 from the real"
                f" field K0 = Q(sqrt({k0})) embeds via the hyperbolic plane"
                f" over K",
            )
        )
        return Witness(ResSL2(quadratic_field_cert(k0)), emb, tuple(deriv))
    deriv.append(
        _step(
            "normalize-unit",
            "replace the involution by its twist making the third diagonal"
            " entry 1; the unitary group is unchanged",
        )
    )
    deriv.append(
        _step(
            "su3-restriction",
            f"the restriction of scalars from K0 of the quasisplit special"
            f" unitary group of <1,-1,1> over K embeds; both real-place"
            f" rank bullets re-verified by the generic rank checks",
        )
    )
    sub = ResSU3(QuadraticField(k0), kc, witness_context=True)
    return Witness(sub, emb, tuple(deriv))


def _skew_witness(g: Unitary1) -> Witness:
    f = g.form
    entries = f.diagonal
    last_err: Optional[Exception] = None
    for i, j in itertools.combinations(range(len(entries)), 2):
        try:
            sr = alg.skew_restriction(f, i, j)
        except (alg.DegenerateTower, alg.NotInFprime, alg.Degenerate) as exc:
            last_err = exc
            continue
        emb = PureQuaternionTower(
            entry_indices=(i, j),
            alpha_coords=(
                Fraction(sr.alpha.x),
                Fraction(sr.alpha.y),
                Fraction(sr.alpha.z),
            ),
            fprime_class=sr.fprime.d,
            c_x=sr.c.x,
            c_y=sr.c.y,
            k_cert=sr.k_cert,
            k_is_biquadratic=sr.k_is_biquadratic,
        )
        deriv = (
            _step(
                "pure-quaternion-tower",
                f"alpha = {sr.alpha} anticommutes with skew entries {i},{j};"
                f" F' = Q(sqrt({sr.fprime.d})); c = {sr.c} with -c nonsquare"
                f" in F', so K = F'(sqrt(-c)) has degree 4",
            ),
            _step(
                "skew-orthogonal-descent",
                "the restriction of scalars from F' of the special orthogonal"
                " group of the transferred quaternary form contains the"
                " restriction of scalars of SL2 from K",
            ),
        )
        return Witness(ResSL2(sr.k_cert), emb, deriv)
    raise Unsupported(
        f"no admissible pair of skew entries yields a quartic tower:"
        f" {last_err}"
    )


def _quat_hermitian_witness(
    g: Unitary1, height_bound: int, represent_bound: int
) -> Witness:
    f = g.form
    d = f.algebra
    cs = [Fraction(e.t) for e in f.diagonal]
    ramified = is_ramified_at_infinity(d)
    if ramified:
        kpos = next((t for t, c in enumerate(cs) if c < 0), None)
    else:
        kpos = 0 if cs else None
    if kpos is None or len(cs) < 2:
        return _split_so5_witness(
            "quaternion hermitian form with no usable anisotropic tail;"
            " rational rank at least 2 provides a split rank-2 subgroup"
        )
    ck = cs[kpos]
    tail_idx = [t for t in range(len(cs)) if t != kpos]
    tail_coeffs = tuple(-cs[t] / ck for t in tail_idx)
    try:
        rep = represent_constrained(
            tail_coeffs,
            want_positive=True,
            forbid_square=False,
            height_bound=represent_bound,
        )
    except SearchExhausted:
        if ramified:
            # real rank >= 2 with a definite tail forces at least two
            # hyperbolic planes, so the split descent applies
            return _split_so5_witness(
                "quaternion hermitian form whose tail represents no usable"
                " value; rational rank at least 2 provides a split rank-2"
                " subgroup"
            )
        rep = represent_constrained(
            [-c for c in tail_coeffs],
            want_positive=True,
            forbid_square=False,
            height_bound=represent_bound,
        )
        rep = quadform.RepresentedValue(-rep.value, rep.vector, rep.square_class)
    a = rep.value
    sp = alg.find_splitting_quadratic(
        d, "positive" if not ramified else "any", represent_bound
    )
    e = sp.field.d
    efield = QuadraticField(e)
    H = HermForm.diagonal(efield, [1, -1, -1, a])
    inner, _ = _hermitian_subform_witness(H, height_bound, represent_bound)
    ctx = SplitUnitaryContext(
        e_value=sp.value,
        e_class=e,
        e_coords=sp.witness,
        a_value=a,
        a_vector=tuple(rep.vector),
        tail_coeffs=tail_coeffs,
        k_index=kpos,
    )
    assert isinstance(inner.embedding, SubformIndices)
    emb = SubformIndices(
        basis=inner.embedding.basis,
        tail_coeffs=inner.embedding.tail_coeffs,
        a_value=inner.embedding.a_value,
        witness_vector=inner.embedding.witness_vector,
        context=ctx,
    )
    deriv = (
        _step(
            "splitting-field",
            f"E = Q(sqrt({e})) splits the quaternion algebra (pure norm value"
            f" {sp.value} at {sp.witness}); real when the algebra is split at"
            f" infinity",
        ),
        _step(
            "split-unitary-descent",
            f"normalize slot {kpos} to -1 and represent a = {a} on the tail"
            f" ({'positive required: algebra ramified at infinity' if ramified else 'sign free: algebra split at infinity'});"
            f" the standard quaternary unitary group over E of <1,-1,-1,{a}>"
            f" embeds",
        ),
    ) + inner.derivation
    return Witness(inner.subgroup, emb, deriv)


def _b2_witness(
    g: Unitary1, height_bound: int, represent_bound: int
) -> Witness:
    d = g.form.algebra
    h2 = QuatForm(d, "hermitian", (d.element(1), d.element(-1)), 0)
    q5 = alg.b2_realization(d, h2)
    inner, _ = _orthogonal_subform_witness(q5, height_bound, represent_bound)
    assert isinstance(inner.embedding, SubformIndices)
    emb = SubformIndices(
        basis=inner.embedding.basis,
        tail_coeffs=inner.embedding.tail_coeffs,
        a_value=inner.embedding.a_value,
        witness_vector=inner.embedding.witness_vector,
        context=TraceRealizationContext(),
    )
    deriv = (
        _step(
            "b2-trace-realization",
            "the rank-2 hyperbolic quaternion-hermitian subgroup is realized"
            " as the special orthogonal group of the 5-dimensional trace"
            " form on symmetric trace-zero endomorphisms",
        ),
    ) + inner.derivation
    return Witness(inner.subgroup, emb, deriv)


# --------------------------------------------------------------------------
# analyze


def analyze(
    g: GroupSpec, height_bound: int = 10000, represent_bound: int = 16
) -> Verdict:
    deriv: list[DerivationStep] = []
    try:
        aas = is_absolutely_almost_simple(g)
    except NotAlmostSimple as exc:
        return NotApplicable(f"not almost simple over Q: {exc}")
    except Unsupported as exc:
        return UnsupportedVerdict(str(exc))
    if isinstance(aas, ConvertibleTo) and aas.spec is not g:
        deriv.append(_step("absolute-type-conversion", aas.reason))
        g = aas.spec
    try:
        rr = real_rank(g)
    except Unsupported as exc:
        return UnsupportedVerdict(str(exc))
    if rr < 2:
        return NotApplicable(f"real_rank = {rr}")
    try:
        qr = q_rank(g, height_bound)
    except TailNotCertified as exc:
        return UnsupportedVerdict(str(exc))
    except Unsupported as exc:
        return UnsupportedVerdict(str(exc))
    if qr == 0:
        return NotApplicable("anisotropic over Q (q_rank = 0)")
    deriv.append(
        _step("rank-computation", f"q_rank = {qr}, real_rank = {rr}")
    )
    conditions: tuple[str, ...] = ()
    if isinstance(g, (Unitary1, Unitary2Quat)) and getattr(
        g, "assume_tail_anisotropic", False
    ):
        conditions = ("conditional_on_assumed_tail_anisotropy",)

    try:
        return _dispatch(g, qr, tuple(deriv), conditions, height_bound, represent_bound)
    except TailNotCertified as exc:
        return UnsupportedVerdict(str(exc))
    except Unsupported as exc:
        return UnsupportedVerdict(str(exc))


def _dispatch(
    g: GroupSpec,
    qr: int,
    deriv: tuple[DerivationStep, ...],
    conditions: tuple[str, ...],
    height_bound: int,
    represent_bound: int,
) -> Verdict:
    if isinstance(g, SpecialLinear):
        if g.algebra is None:
            if g.m == 3:
                return Minimal(
                    "i",
                    conditions,
                    deriv + (_step("standard-sl3", "the split rank-2 special"
                                   " linear group of degree 3"),),
                )
            w = Witness(
                SpecialLinear(3),
                BlockEmbedding(0),
                deriv
                + (
                    _step(
                        "sl3-block",
                        f"the leading 3x3 block of the degree-{g.m} special"
                        f" linear group is a proper isotropic almost simple"
                        f" subgroup of rank 2",
                    ),
                ),
            )
            return _not_minimal(g, w)
        if not alg.is_division(g.algebra):
            m_eff = 2 * g.m
            w = Witness(
                SpecialLinear(3),
                BlockEmbedding(0),
                deriv
                + (
                    _step(
                        "matrix-algebra-reduction",
                        f"the algebra is split, so the group is the degree-"
                        f"{m_eff} special linear group over Q",
                    ),
                    _step("sl3-block", "leading 3x3 block"),
                ),
            )
            return _not_minimal(g, w)
        if is_ramified_at_infinity(g.algebra):
            # definite algebra: only reachable with m >= 3 (rank >= 2)
            w = _split_so5_witness(
                "special linear group over a definite quaternion algebra with"
                " rational rank at least 2"
            )
            return _not_minimal(g, _prefix(w, deriv))
        w = _sl2_quaternion_witness(g.algebra, g.m, represent_bound)
        return _not_minimal(g, _prefix(w, deriv))

    if isinstance(g, Symplectic):
        w = _split_so5_witness(
            f"the split symplectic group of rank {g.n} >= 2 contains a split"
            f" rank-2 subgroup"
        )
        return _not_minimal(g, _prefix(w, deriv))

    if isinstance(g, Orthogonal):
        w, _ = _orthogonal_subform_witness(g.form, height_bound, represent_bound)
        return _not_minimal(g, _prefix(w, deriv))

    if isinstance(g, Unitary2):
        if g.form.dim == 3:
            assert g.form.field.is_real
            return Minimal(
                "ii",
                conditions,
                deriv
                + (
                    _step(
                        "ternary-hermitian-minimal",
                        "isotropic ternary hermitian form over a real"
                        " quadratic field; any such form is accepted, since"
                        " the criterion depends only on the absolute type",
                    ),
                ),
            )
        w, _ = _hermitian_subform_witness(g.form, height_bound, represent_bound)
        return _not_minimal(g, _prefix(w, deriv))

    if isinstance(g, Unitary2Quat):
        w = _second_kind_witness(g, represent_bound)
        return _not_minimal(g, _prefix(w, deriv))

    if isinstance(g, Unitary1):
        n = g.form.rank
        if g.form.kind == "hermitian":
            if n <= 3:
                w = _b2_witness(g, height_bound, represent_bound)
            else:
                w = _quat_hermitian_witness(g, height_bound, represent_bound)
            return _not_minimal(g, _prefix(w, deriv))
        if n == 3:
            return UnsupportedVerdict(
                "rank-3 skew-hermitian unitary groups need a realization"
                " transfer that is not provided"
            )
        if len(g.form.diagonal) < 2:
            w = _split_so5_witness(
                "skew-hermitian form with fewer than two anisotropic entries"
                " and rational rank at least 2"
            )
        else:
            w = _skew_witness(g)
        return _not_minimal(g, _prefix(w, deriv))

    if isinstance(g, ResSL2):
        return _analyze_res_sl2(g, deriv, conditions)

    if isinstance(g, ResSU3):
        return _analyze_res_su3(g, deriv, conditions)

    raise TypeError(f"unknown spec {type(g)!r}")


def _prefix(w: Witness, deriv: tuple[DerivationStep, ...]) -> Witness:
    return Witness(w.subgroup, w.embedding, deriv + w.derivation)


def _quadratic_disc(sub_poly) -> Fraction:
    # monic integer quadratic x^2 + b x + c
    b, c = sub_poly[1], sub_poly[0]
    return b * b - 4 * c


def _analyze_res_sl2(
    g: ResSL2, deriv: tuple[DerivationStep, ...], conditions: tuple[str, ...]
) -> Verdict:
    K = g.field
    certs = sorted(
        K.subfields, key=lambda c: (polys.degree(c.sub_poly), c.sub_poly)
    )
    for cert in certs:
        if not verify_subfield(K, cert):
            raise qgroup.InvalidSpec("subfield certificate fails verification")
        deg = polys.degree(cert.sub_poly)
        if deg <= 1 or deg >= K.degree:
            raise qgroup.InvalidSpec("subfield certificate must be proper")
        if deg == 2 and _quadratic_disc(cert.sub_poly) < 0:
            continue  # imaginary quadratic subfields are admissible
        sub_coeffs = [int(c) for c in cert.sub_poly]
        mfield = numfield.field_cert(sub_coeffs)
        w = Witness(
            ResSL2(mfield),
            SubfieldRestriction(cert),
            deriv
            + (
                _step(
                    "subfield-descent",
                    f"the certified proper subfield of degree {deg} is"
                    f" neither Q nor imaginary quadratic; the restriction of"
                    f" scalars of SL2 from it is a proper isotropic almost"
                    f" simple subgroup of real rank >= 2",
                ),
            ),
        )
        return _not_minimal(g, w)
    if not K.subfields_complete:
        conditions = conditions + ("conditional_on_certified_subfield_list",)
    return Minimal(
        "iv",
        conditions,
        deriv
        + (
            _step(
                "res-sl2-field-criterion",
                "every certified proper subfield is Q or imaginary quadratic"
                " and the field has at least two archimedean places",
            ),
        ),
    )


def _analyze_res_su3(
    g: ResSU3, deriv: tuple[DerivationStep, ...], conditions: tuple[str, ...]
) -> Verdict:
    subs = numfield.quadratic_subfields_of_quartic(g.l_quartic.defining_poly)
    deriv = deriv + (
        _step(
            "quartic-subfield-scan",
            f"quadratic subfields of the quartic (by cubic resolvent):"
            f" classes {sorted(subs)}",
        ),
    )
    real_ds = sorted(dd for dd in subs if dd > 1)
    if real_ds:
        d0 = real_ds[0]
        fld = QuadraticField(d0)
        w = Witness(
            Unitary2(HermForm.diagonal(fld, [1, -1, -1])),
            SubfieldRestriction(subs[d0]),
            deriv
            + (
                _step(
                    "real-quadratic-descent",
                    f"the quartic contains the real quadratic field"
                    f" Q(sqrt({d0})); the quasisplit special unitary group of"
                    f" <1,-1,-1> over it is a proper isotropic almost simple"
                    f" subgroup of real rank 2",
                ),
            ),
        )
        return _not_minimal(g, w)
    return Minimal(
        "iii",
        conditions,
        deriv
        + (
            _step(
                "res-su3-field-criterion",
                "the quartic extension contains no real quadratic subfield",
            ),
        ),
    )


def _not_minimal(parent: GroupSpec, w: Witness) -> NotMinimal:
    rep = verify_witness(parent, w)
    if not rep.ok:
        raise InternalSoundnessError(
            f"constructed witness failed verification: {rep.failures}"
        )
    return NotMinimal(w)


# --------------------------------------------------------------------------
# verify_witness


def _check(name: str, passed: bool, detail: str = "") -> VerifyCheck:
    return VerifyCheck(name, bool(passed), detail)


def _coerce_lelem(fld: QuadraticField, x) -> QuadElement:
    if isinstance(x, QuadElement):
        return x
    if isinstance(x, (tuple, list)):
        return fld.element(*x)
    return fld.element(x)


def _verify_quaternary(
    g4_diag: list[Fraction], emb: SubformIndices, w: Witness
) -> list[VerifyCheck]:
    """Checks shared by all quaternary-subform descents, given the diagonal
    rational Gram of the restricted subform."""
    out: list[VerifyCheck] = []
    a = emb.a_value
    s = _cls(a) if a != 0 else 0
    out.append(_check("represented value positive", a > 0, f"a = {a}"))
    out.append(
        _check(
            "represented value is not a rational square",
            a > 0 and s != 1,
            "a is a rational square => subgroup not almost simple"
            if a > 0 and s == 1
            else f"square class {s}",
        )
    )
    recomputed = sum(
        c * x * x for c, x in zip(emb.tail_coeffs, emb.witness_vector)
    )
    out.append(
        _check(
            "witness vector reproduces the represented value",
            recomputed == a and len(emb.tail_coeffs) == len(emb.witness_vector),
            f"recomputed {recomputed}",
        )
    )
    if any(c == 0 for c in g4_diag):
        out.append(_check("restricted subform nondegenerate", False, str(g4_diag)))
        return out
    out.append(_check("restricted subform nondegenerate", True, str(g4_diag)))
    det_cls = _cls(g4_diag[0] * g4_diag[1] * g4_diag[2] * g4_diag[3])
    out.append(
        _check(
            "subform discriminant matches the represented value",
            s != 0 and det_cls == s,
            f"discriminant class {det_cls} vs {s}",
        )
    )
    g4 = QuadForm.diagonal(g4_diag)
    out.append(
        _check(
            "restricted subform isotropic over Q",
            quadform.is_isotropic(g4, "global"),
            "",
        )
    )
    p, q = quadform.signature(g4)
    out.append(
        _check("restricted subform has signature (2,2)", (p, q) == (2, 2), f"({p},{q})")
    )
    fld, err = _so4_conversion_field(g4)
    if fld is None:
        out.append(_check("subform converts to a restriction of scalars", False, err))
    else:
        match = (
            isinstance(w.subgroup, ResSL2)
            and w.subgroup.field.defining_poly == fld.defining_poly
        )
        out.append(
            _check(
                "conversion field matches the witness field",
                match,
                f"conversion gives {fld.defining_poly}",
            )
        )
    return out


def _restricted_rational_diag(
    form: QuadForm, basis
) -> tuple[Optional[list[Fraction]], str]:
    if len(basis) != 4 or any(len(v) != form.dim for v in basis):
        return None, "basis must be four vectors of the ambient dimension"
    for i, j in itertools.combinations(range(4), 2):
        if form.bilinear(basis[i], basis[j]) != 0:
            return None, f"basis vectors {i},{j} are not orthogonal"
    return [form.value(v) for v in basis], ""


def _restricted_hermitian_diag(
    hform: HermForm, basis
) -> tuple[Optional[list[Fraction]], str]:
    if len(basis) != 4 or any(len(v) != hform.dim for v in basis):
        return None, "basis must be four vectors of the ambient dimension"
    m = hform.matrix
    for i, j in itertools.combinations(range(4), 2):
        if not _herm_eval(m, basis[i], basis[j]).is_zero():
            return None, f"basis vectors {i},{j} are not orthogonal"
    diag = []
    for v in basis:
        val = _herm_eval(m, v, v)
        if not val.is_rational():
            return None, "restricted value escaped the fixed field"
        diag.append(val.x)
    return diag, ""


def _verify_subform(parent, emb: SubformIndices, w: Witness) -> list[VerifyCheck]:
    ctx = emb.context
    if ctx is None and isinstance(parent, Orthogonal):
        diag, err = _restricted_rational_diag(parent.form, emb.basis)
        if diag is None:
            return [_check("embedding basis valid", False, err)]
        return [_check("embedding basis valid", True, "")] + _verify_quaternary(
            diag, emb, w
        )
    if ctx is None and isinstance(parent, Unitary2):
        basis = tuple(
            tuple(_coerce_lelem(parent.form.field, x) for x in v)
            for v in emb.basis
        )
        diag, err = _restricted_hermitian_diag(parent.form, basis)
        if diag is None:
            return [_check("embedding basis valid", False, err)]
        return [_check("embedding basis valid", True, "")] + _verify_quaternary(
            diag, emb, w
        )
    if isinstance(ctx, TraceRealizationContext) and isinstance(parent, Unitary1):
        if parent.form.kind != "hermitian" or parent.form.hyperbolic_count < 1:
            return [
                _check(
                    "trace realization applicable",
                    False,
                    "parent has no hyperbolic quaternion-hermitian plane",
                )
            ]
        d = parent.form.algebra
        q5 = alg.b2_realization(
            d, QuatForm(d, "hermitian", (d.element(1), d.element(-1)), 0)
        )
        diag, err = _restricted_rational_diag(q5, emb.basis)
        if diag is None:
            return [_check("embedding basis valid", False, err)]
        return [
            _check("trace realization applicable", True, ""),
            _check("embedding basis valid", True, ""),
        ] + _verify_quaternary(diag, emb, w)
    if isinstance(ctx, SplitUnitaryContext) and isinstance(parent, Unitary1):
        out: list[VerifyCheck] = []
        f = parent.form
        if f.kind != "hermitian":
            return [_check("split unitary context applicable", False, "not hermitian")]
        d = parent.form.algebra
        a_, b_ = Fraction(d.a), Fraction(d.b)
        c1, c2, c3 = ctx.e_coords
        e_val = a_ * c1 * c1 + b_ * c2 * c2 - a_ * b_ * c3 * c3
        out.append(
            _check(
                "splitting value recomputes",
                e_val == ctx.e_value and _cls(e_val) == ctx.e_class,
                f"recomputed {e_val}",
            )
        )
        xi = d.element(0, c1, c2, c3)
        out.append(
            _check(
                "splitting element squares to its value",
                (xi * xi - d.element(ctx.e_value)).is_zero(),
                "",
            )
        )
        ramified = is_ramified_at_infinity(d)
        out.append(
            _check(
                "splitting field real when the algebra splits at infinity",
                ramified or ctx.e_class > 0,
                f"e class {ctx.e_class}",
            )
        )
        cs = [Fraction(x.t) for x in f.diagonal]
        k = ctx.k_index
        if not (0 <= k < len(cs)) or len(cs) < 2:
            out.append(_check("tail indices valid", False, ""))
            return out
        tail = tuple(-cs[t] / cs[k] for t in range(len(cs)) if t != k)
        out.append(
            _check(
                "tail coefficients recompute from the parent diagonal",
                tail == ctx.tail_coeffs,
                f"recomputed {tail}",
            )
        )
        a_rec = sum(c * x * x for c, x in zip(tail, ctx.a_vector))
        out.append(
            _check(
                "intermediate represented value recomputes",
                a_rec == ctx.a_value and len(ctx.a_vector) == len(tail),
                f"recomputed {a_rec}",
            )
        )
        out.append(
            _check(
                "intermediate value positive where the algebra ramifies",
                (not ramified) or ctx.a_value > 0,
                f"a = {ctx.a_value}",
            )
        )
        if any(not c.passed for c in out):
            return out
        efield = QuadraticField(ctx.e_class)
        H = HermForm.diagonal(efield, [1, -1, -1, ctx.a_value])
        basis = tuple(
            tuple(_coerce_lelem(efield, x) for x in v) for v in emb.basis
        )
        diag, err = _restricted_hermitian_diag(H, basis)
        if diag is None:
            return out + [_check("embedding basis valid", False, err)]
        return (
            out
            + [_check("embedding basis valid", True, "")]
            + _verify_quaternary(diag, emb, w)
        )
    return [
        _check(
            "embedding applies to the parent",
            False,
            f"subform data does not apply to {type(parent).__name__}",
        )
    ]


def _verify_subfield_element(
    parent, emb: SubfieldElement, w: Witness
) -> list[VerifyCheck]:
    if not isinstance(parent, SpecialLinear) or parent.algebra is None:
        return [
            _check(
                "embedding applies to the parent",
                False,
                "subfield-element data needs a special linear group over a"
                " quaternion algebra",
            )
        ]
    d = parent.algebra
    a_, b_ = Fraction(d.a), Fraction(d.b)
    c1, c2, c3 = emb.coords
    val = a_ * c1 * c1 + b_ * c2 * c2 - a_ * b_ * c3 * c3
    out = [
        _check("c recomputes", val == emb.c_value, f"recomputed {val}"),
        _check("c positive", val > 0, f"c = {val}"),
    ]
    s = _cls(val) if val != 0 else 0
    out.append(
        _check(
            "c is not a rational square",
            val != 0 and s != 1,
            "a is a rational square => subgroup not almost simple"
            if s == 1
            else f"class {s}",
        )
    )
    xi = d.element(0, c1, c2, c3)
    out.append(
        _check(
            "pure element squares to c",
            (xi * xi - d.element(emb.c_value)).is_zero(),
            "",
        )
    )
    out.append(
        _check(
            "witness field matches",
            isinstance(w.subgroup, ResSL2)
            and s != 0
            and w.subgroup.field.defining_poly == polys.poly([-s, 0, 1]),
            "",
        )
    )
    return out


def _verify_block(parent, emb: BlockEmbedding, w: Witness) -> list[VerifyCheck]:
    if not isinstance(parent, SpecialLinear):
        return [_check("embedding applies to the parent", False, "")]
    if parent.algebra is None:
        m_eff = parent.m
    elif not alg.is_division(parent.algebra):
        m_eff = 2 * parent.m
    else:
        return [
            _check(
                "embedding applies to the parent",
                False,
                "block embedding needs a split coefficient algebra",
            )
        ]
    return [
        _check(
            "block fits",
            0 <= emb.offset and emb.offset + 3 <= m_eff,
            f"offset {emb.offset} in degree {m_eff}",
        ),
        _check(
            "witness is the degree-3 special linear group",
            w.subgroup == SpecialLinear(3),
            "",
        ),
    ]


def _verify_split_so5(parent, emb: SplitSO5, w: Witness) -> list[VerifyCheck]:
    out: list[VerifyCheck] = []
    a = emb.a_value
    expected = (Fraction(1), Fraction(-1), Fraction(-1), Fraction(1), a)
    out.append(
        _check(
            "form is <1,-1,-1,1,a>",
            tuple(emb.form_coeffs) == expected,
            str(emb.form_coeffs),
        )
    )
    out.append(_check("a positive", a > 0, f"a = {a}"))
    s = _cls(a) if a != 0 else 0
    out.append(
        _check(
            "a is not a rational square",
            a > 0 and s != 1,
            "a is a rational square => subgroup not almost simple"
            if a > 0 and s == 1
            else f"class {s}",
        )
    )
    if a > 0:
        out.append(
            _check(
                "five-dimensional form is split",
                witt_index(QuadForm.diagonal(list(expected))) == 2,
                "",
            )
        )
        fld, err = _so4_conversion_field(QuadForm.diagonal([1, -1, -1, a]))
        if fld is None:
            out.append(_check("quaternary subform converts", False, err))
        else:
            out.append(
                _check(
                    "conversion field matches the witness field",
                    isinstance(w.subgroup, ResSL2)
                    and w.subgroup.field.defining_poly == fld.defining_poly,
                    "",
                )
            )
    try:
        qr = q_rank(parent)
        out.append(
            _check("parent has rational rank >= 2", qr >= 2, f"q_rank = {qr}")
        )
    except (TailNotCertified, Unsupported, qgroup.InvalidSpec) as exc:
        out.append(_check("parent has rational rank >= 2", False, str(exc)))
    return out


def _verify_compositum(parent, emb: CompositumTower, w: Witness) -> list[VerifyCheck]:
    if not isinstance(parent, Unitary2Quat):
        return [_check("embedding applies to the parent", False, "")]
    out: list[VerifyCheck] = []
    f = parent.form
    d = f.l_field.d
    dp = f.inner_algebra
    a_, b_ = Fraction(dp.a), Fraction(dp.b)
    c1, c2, c3 = emb.e_coords
    val = a_ * c1 * c1 + b_ * c2 * c2 - a_ * b_ * c3 * c3
    out.append(
        _check(
            "splitting value recomputes",
            val == emb.e_value and val != 0 and _cls(val) == emb.e_class,
            f"recomputed {val}",
        )
    )
    xi = dp.element(0, c1, c2, c3)
    out.append(
        _check(
            "splitting element squares to its value",
            (xi * xi - dp.element(emb.e_value)).is_zero(),
            "",
        )
    )
    out.append(
        _check(
            "base quadratic class matches the parent",
            emb.l_class == d,
            f"{emb.l_class} vs {d}",
        )
    )
    out.append(
        _check(
            "compositum is biquadratic",
            emb.e_class not in (1, d),
            f"e class {emb.e_class}",
        )
    )
    out.append(
        _check(
            "fixed-field class recomputes",
            emb.k0_class == squarefree_part(emb.e_class * d) and emb.k0_class != 1,
            f"k0 class {emb.k0_class}",
        )
    )
    if f.rank == 2:
        sign_ok = (emb.e_class > 0) == (d > 0)
        out.append(
            _check(
                "splitting field sign matches the base field",
                sign_ok,
                f"e class {emb.e_class}, l class {d}",
            )
        )
        out.append(
            _check(
                "fixed field real",
                emb.k0_class > 0,
                f"k0 class {emb.k0_class}",
            )
        )
    else:
        out.append(
            _check(
                "splitting field imaginary when the base field is",
                d > 0 or emb.e_class < 0,
                f"e class {emb.e_class}, l class {d}",
            )
        )
    kc = emb.k_cert
    out.append(_check("compositum certificate has degree 4", kc.degree == 4, ""))
    for cls_ in (emb.e_class, d, emb.k0_class):
        target = polys.poly([-cls_, 0, 1])
        cert = next((c for c in kc.subfields if c.sub_poly == target), None)
        ok = cert is not None and verify_subfield(kc, cert)
        out.append(
            _check(
                f"compositum contains Q(sqrt({cls_}))",
                ok,
                "" if ok else "missing or invalid subfield certificate",
            )
        )
    if f.rank == 2:
        out.append(
            _check(
                "witness is the restriction of scalars of SL2 from the fixed"
                " field",
                isinstance(w.subgroup, ResSL2)
                and emb.k0_class != 1
                and w.subgroup.field.defining_poly
                == polys.poly([-emb.k0_class, 0, 1]),
                "",
            )
        )
    else:
        out.append(
            _check(
                "witness is the restriction from the fixed field of the"
                " quasisplit unitary group over the compositum",
                isinstance(w.subgroup, ResSU3)
                and w.subgroup.k_field.d == emb.k0_class
                and w.subgroup.l_quartic == kc,
                "",
            )
        )
    return out


def _verify_quartic_tower(
    parent, emb: PureQuaternionTower, w: Witness
) -> list[VerifyCheck]:
    if not isinstance(parent, Unitary1) or parent.form.kind != "skew_hermitian":
        return [_check("embedding applies to the parent", False, "")]
    out: list[VerifyCheck] = []
    f = parent.form
    i, j = emb.entry_indices
    if not (0 <= i < j < len(f.diagonal)):
        return [_check("entry indices valid", False, f"{emb.entry_indices}")]
    a3, a4 = f.diagonal[i], f.diagonal[j]
    d = f.algebra
    alpha = d.element(0, *emb.alpha_coords)
    out.append(_check("alpha nonzero and pure", not alpha.is_zero(), ""))
    anti = (a3 * alpha + alpha * a3).is_zero() and (
        a4 * alpha + alpha * a4
    ).is_zero()
    out.append(_check("alpha anticommutes with both entries", anti, ""))
    alpha_sq = -Fraction(alpha.nrd())
    dprime = emb.fprime_class
    ok_sq = (
        alpha_sq != 0
        and not is_rational_square(alpha_sq)
        and squarefree_part(alpha_sq) == dprime
    )
    out.append(
        _check(
            "alpha generates the claimed quadratic field",
            ok_sq,
            f"alpha^2 = {alpha_sq}",
        )
    )
    if not ok_sq:
        return out
    import math

    fprime = QuadraticField(dprime)
    w2 = alpha_sq / dprime
    wr = Fraction(math.isqrt(w2.numerator), math.isqrt(w2.denominator))
    c = fprime.element(emb.c_x, emb.c_y)
    # a3 * (c_x + c_y * alpha / wr) should equal a4
    c_in_d = d.element(emb.c_x) + (emb.c_y / wr) * alpha
    out.append(
        _check(
            "c equals the ratio of the two entries inside F'",
            (a3 * c_in_d - a4).is_zero(),
            "",
        )
    )
    minus_c = fprime.element(-c.x, -c.y)
    out.append(
        _check(
            "-c is not a square in F'",
            not numfield.is_square_in_quadfield(minus_c),
            "",
        )
    )
    kc = emb.k_cert
    out.append(_check("tower certificate has degree 4", kc.degree == 4, ""))
    if emb.k_is_biquadratic:
        ok_rational = c.y == 0
        out.append(
            _check("biquadratic tower has rational c", ok_rational, f"c = {c}")
        )
        if ok_rational:
            d2 = squarefree_part(-c.x)
            wanted = {dprime, d2, squarefree_part(Fraction(dprime * d2))}
            have = set()
            for cert in kc.subfields:
                if polys.degree(cert.sub_poly) == 2 and verify_subfield(kc, cert):
                    have.add(int(-cert.sub_poly[0]))
            out.append(
                _check(
                    "biquadratic certificate has the three expected subfields",
                    wanted <= have,
                    f"wanted {sorted(wanted)}, certified {sorted(have)}",
                )
            )
    else:
        g4 = kc.defining_poly
        even = all(
            g4[k] == 0 for k in range(1, 4, 2)
        )
        out.append(_check("tower polynomial is even", even, str(g4)))
        if even:
            B, C = g4[2], g4[0]
            delta = B * B - 4 * C
            ok_delta = delta != 0 and squarefree_part(delta) == dprime
            out.append(
                _check(
                    "tower discriminant lies in F'",
                    ok_delta,
                    f"delta = {delta}",
                )
            )
            if ok_delta:
                md = delta / dprime
                mr = Fraction(
                    math.isqrt(md.numerator), math.isqrt(md.denominator)
                )
                sdelta = fprime.element(0, mr)
                two_c = c + c
                found = False
                for sgn in (1, -1):
                    r2 = (fprime.element(B) + sgn * sdelta) / (-two_c)
                    if r2.is_rational() and r2.x > 0 and is_rational_square(r2.x):
                        found = True
                out.append(
                    _check(
                        "tower polynomial has the root sqrt(-c) up to a"
                        " rational scale",
                        found,
                        "",
                    )
                )
    out.append(
        _check(
            "witness field is the tower certificate",
            isinstance(w.subgroup, ResSL2) and w.subgroup.field == kc,
            "",
        )
    )
    return out


def _verify_subfield_restriction(
    parent, emb: SubfieldRestriction, w: Witness
) -> list[VerifyCheck]:
    out: list[VerifyCheck] = []
    cert = emb.cert
    deg = polys.degree(cert.sub_poly)
    if isinstance(parent, ResSL2):
        out.append(
            _check(
                "subfield certificate verifies in the parent field",
                verify_subfield(parent.field, cert),
                "",
            )
        )
        out.append(
            _check(
                "subfield proper",
                1 < deg < parent.field.degree,
                f"degree {deg} in degree {parent.field.degree}",
            )
        )
        inadmissible = deg > 2 or (deg == 2 and _quadratic_disc(cert.sub_poly) > 0)
        out.append(
            _check(
                "subfield is neither Q nor imaginary quadratic",
                inadmissible,
                f"degree {deg}",
            )
        )
        out.append(
            _check(
                "witness field matches the certificate",
                isinstance(w.subgroup, ResSL2)
                and w.subgroup.field.defining_poly == cert.sub_poly,
                "",
            )
        )
        return out
    if isinstance(parent, ResSU3):
        out.append(
            _check(
                "subfield certificate verifies in the quartic",
                verify_subfield(parent.l_quartic, cert),
                "",
            )
        )
        is_quad = deg == 2 and cert.sub_poly[1] == 0
        d0 = int(-cert.sub_poly[0]) if is_quad else 0
        out.append(
            _check(
                "subfield is real quadratic",
                is_quad and d0 > 1,
                str(cert.sub_poly),
            )
        )
        ok_w = (
            isinstance(w.subgroup, Unitary2)
            and w.subgroup.form.field.d == d0
            and qgroup.diagonalize_hermitian(w.subgroup.form)
            == (Fraction(1), Fraction(-1), Fraction(-1))
        )
        out.append(
            _check(
                "witness is the quasisplit ternary unitary group over the"
                " subfield",
                ok_w,
                "",
            )
        )
        return out
    return [_check("embedding applies to the parent", False, "")]


def verify_witness(parent: GroupSpec, w: Witness) -> VerifyReport:
    """Re-validate a witness with fresh computations: the embedding data
    evaluates inside the parent, and the witness subgroup is isotropic,
    almost simple, and of real rank at least 2."""
    checks: list[VerifyCheck] = []
    emb = w.embedding
    if isinstance(emb, SubformIndices):
        checks.extend(_verify_subform(parent, emb, w))
    elif isinstance(emb, SubfieldElement):
        checks.extend(_verify_subfield_element(parent, emb, w))
    elif isinstance(emb, BlockEmbedding):
        checks.extend(_verify_block(parent, emb, w))
    elif isinstance(emb, SplitSO5):
        checks.extend(_verify_split_so5(parent, emb, w))
    elif isinstance(emb, CompositumTower):
        checks.extend(_verify_compositum(parent, emb, w))
    elif isinstance(emb, PureQuaternionTower):
        checks.extend(_verify_quartic_tower(parent, emb, w))
    elif isinstance(emb, SubfieldRestriction):
        checks.extend(_verify_subfield_restriction(parent, emb, w))
    else:
        checks.append(_check("embedding kind known", False, str(type(emb))))

    try:
        qr = q_rank(w.subgroup)
        checks.append(_check("witness q_rank >= 1", qr >= 1, f"q_rank = {qr}"))
    except (TailNotCertified, Unsupported, qgroup.InvalidSpec) as exc:
        checks.append(_check("witness q_rank >= 1", False, str(exc)))
    try:
        rr = real_rank(w.subgroup)
        checks.append(
            _check("witness real_rank >= 2", rr >= 2, f"real_rank = {rr}")
        )
    except Unsupported as exc:
        checks.append(_check("witness real_rank >= 2", False, str(exc)))
    try:
        is_absolutely_almost_simple(w.subgroup)
        checks.append(_check("witness almost simple", True, ""))
    except (NotAlmostSimple, Unsupported) as exc:
        checks.append(_check("witness almost simple", False, str(exc)))
    ok = all(c.passed for c in checks)
    return VerifyReport(ok, tuple(checks))
