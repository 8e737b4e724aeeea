"""Exact root-system combinatorics in fixed integer realizations.

Bourbaki bases are hard-coded per type; realizations that would need
half-integers (F4, E6/E7/E8) are scaled by 2 so every root is an integer
vector and every inner product an integer.  Subsystems generated by root
subsets are closed under addition, their type is identified by matching
Cartan matrices over base orderings, and simple-connectedness of the
corresponding standard subgroup is decided by the long-root span criterion.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

Vec = tuple[int, ...]


class Reducible(ValueError):
    pass


class NotARoot(ValueError):
    pass


def _dot(u: Vec, v: Vec) -> int:
    return sum(a * b for a, b in zip(u, v))


def _add(u: Vec, v: Vec) -> Vec:
    return tuple(a + b for a, b in zip(u, v))


def _neg(u: Vec) -> Vec:
    return tuple(-a for a in u)


def _reflect(beta: Vec, alpha: Vec) -> Vec:
    num = 2 * _dot(beta, alpha)
    den = _dot(alpha, alpha)
    assert num % den == 0, "reflection left the lattice"
    c = num // den
    return tuple(b - c * a for b, a in zip(beta, alpha))


@dataclass(frozen=True)
class RootSystem:
    type_tag: str
    roots: frozenset[Vec]
    base: tuple[Vec, ...]

    @property
    def rank(self) -> int:
        return len(self.base)

    def positive_roots(self) -> list[Vec]:
        return sorted(r for r in self.roots if _lex_positive(r))


def _lex_positive(v: Vec) -> bool:
    for x in v:
        if x != 0:
            return x > 0
    return False


def _generate(base: Sequence[Vec]) -> frozenset[Vec]:
    """Closure of the base under simple reflections (the full root system)."""
    roots = set(base) | {_neg(b) for b in base}
    frontier = list(roots)
    while frontier:
        nxt = []
        for r in frontier:
            for s in base:
                img = _reflect(r, s)
                if img not in roots:
                    roots.add(img)
                    nxt.append(img)
        frontier = nxt
    return frozenset(roots)


def _e(i: int, n: int, c: int = 1) -> Vec:
    return tuple(c if j == i else 0 for j in range(n))


def _base_for(type_tag: str) -> tuple[Vec, ...]:
    fam, num = type_tag[0], type_tag[1:]
    n = int(num)
    if fam == "A":
        dim = n + 1
        return tuple(_add(_e(i, dim), _e(i + 1, dim, -1)) for i in range(n))
    if fam == "B":
        return tuple(
            [_add(_e(i, n), _e(i + 1, n, -1)) for i in range(n - 1)] + [_e(n - 1, n)]
        )
    if fam == "C":
        return tuple(
            [_add(_e(i, n), _e(i + 1, n, -1)) for i in range(n - 1)]
            + [_e(n - 1, n, 2)]
        )
    if fam == "D":
        return tuple(
            [_add(_e(i, n), _e(i + 1, n, -1)) for i in range(n - 1)]
            + [_add(_e(n - 2, n), _e(n - 1, n))]
        )
    if type_tag == "G2":
        return ((1, -1, 0), (-2, 1, 1))
    if type_tag == "F4":
        # Bourbaki realization scaled by 2
        return (
            (0, 2, -2, 0),
            (0, 0, 2, -2),
            (0, 0, 0, 2),
            (1, -1, -1, -1),
        )
    if type_tag in ("E6", "E7", "E8"):
        # Bourbaki E8 simple roots scaled by 2, restricted to the first rank
        e8 = (
            (1, -1, -1, -1, -1, -1, -1, 1),
            (2, 2, 0, 0, 0, 0, 0, 0),
            (-2, 2, 0, 0, 0, 0, 0, 0),
            (0, -2, 2, 0, 0, 0, 0, 0),
            (0, 0, -2, 2, 0, 0, 0, 0),
            (0, 0, 0, -2, 2, 0, 0, 0),
            (0, 0, 0, 0, -2, 2, 0, 0),
            (0, 0, 0, 0, 0, -2, 2, 0),
        )
        return e8[: int(type_tag[1])]
    raise ValueError(f"unknown type {type_tag!r}")


_EXPECTED_COUNTS = {"F4": 48, "E6": 72, "E7": 126, "E8": 240, "G2": 12}


def root_system(type_tag: str) -> RootSystem:
    base = _base_for(type_tag)
    roots = _generate(base)
    fam, rest = type_tag[0], type_tag[1:]
    n = int(rest)
    expected = _EXPECTED_COUNTS.get(
        type_tag,
        {
            "A": n * (n + 1),
            "B": 2 * n * n,
            "C": 2 * n * n,
            "D": 2 * n * (n - 1),
        }.get(fam),
    )
    assert expected is None or len(roots) == expected, (type_tag, len(roots))
    return RootSystem(type_tag, roots, base)


def simple_combination(sys: RootSystem, root: Vec) -> tuple[Fraction, ...]:
    """Coordinates of a vector in the base of the system (exact)."""
    base = sys.base
    cols = len(base)
    dim = len(root)
    # solve base^T x = root by Gaussian elimination over Q
    m = [[Fraction(base[j][i]) for j in range(cols)] + [Fraction(root[i])] for i in range(dim)]
    rank = 0
    pivots = []
    for c in range(cols):
        piv = next((r for r in range(rank, dim) if m[r][c] != 0), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        pr = m[rank][c]
        m[rank] = [x / pr for x in m[rank]]
        for r in range(dim):
            if r != rank and m[r][c] != 0:
                f = m[r][c]
                m[r] = [x - f * y for x, y in zip(m[r], m[rank])]
        pivots.append(c)
        rank += 1
    for r in range(rank, dim):
        if m[r][cols] != 0:
            raise NotARoot("vector outside the root lattice span")
    out = [Fraction(0)] * cols
    for r, c in enumerate(pivots):
        out[c] = m[r][cols]
    return tuple(out)


def from_base_coeffs(sys: RootSystem, coeffs: Sequence[int]) -> Vec:
    """The vector sum coeffs[i] * base[i]."""
    dim = len(sys.base[0])
    out = [0] * dim
    for c, b in zip(coeffs, sys.base):
        for i in range(dim):
            out[i] += c * b[i]
    return tuple(out)


@dataclass(frozen=True)
class RootSubset:
    system: RootSystem
    generators: frozenset[Vec]

    def __post_init__(self):
        for g in self.generators:
            if g not in self.system.roots:
                raise NotARoot(f"{g} is not a root of the ambient system")


@dataclass(frozen=True)
class Subsystem:
    """A closed subsystem with an identified type decomposition."""

    ambient: RootSystem
    roots: frozenset[Vec]
    base: tuple[Vec, ...]
    components: tuple[str, ...]  # type tags of the irreducible components

    @property
    def type_string(self) -> str:
        return "+".join(sorted(self.components)) if self.components else "0"


def closed_subsystem(s: RootSubset) -> Subsystem:
    """Smallest subsystem of the ambient system containing +-generators:
    the closure under the reflections it contains, with a chosen base and
    an identified type decomposition."""
    roots = set()
    for g in s.generators:
        roots.add(g)
        roots.add(_neg(g))
    frontier = list(roots)
    while frontier:
        nxt = []
        for x in sorted(roots):
            for g in list(roots):
                img = _reflect(x, g)
                if img not in roots:
                    roots.add(img)
                    nxt.append(img)
        frontier = nxt
    base = _base_of(roots)
    comps = _identify_components(base)
    return Subsystem(s.system, frozenset(roots), base, comps)


def _base_of(roots: Iterable[Vec]) -> tuple[Vec, ...]:
    pos = sorted(r for r in roots if _lex_positive(r))
    posset = set(pos)
    simple = []
    for r in pos:
        decomposable = any(
            tuple(r[i] - q[i] for i in range(len(r))) in posset for q in pos if q != r
        )
        if not decomposable:
            simple.append(r)
    return tuple(simple)


def _cartan_matrix(base: Sequence[Vec]) -> tuple[tuple[int, ...], ...]:
    out = []
    for b in base:
        row = []
        for c in base:
            num = 2 * _dot(b, c)
            den = _dot(c, c)
            assert num % den == 0
            row.append(num // den)
        out.append(tuple(row))
    return tuple(out)


def _identify_components(base: Sequence[Vec]) -> tuple[str, ...]:
    if not base:
        return ()
    n = len(base)
    cart = _cartan_matrix(base)
    # connected components of the Dynkin graph
    seen = [False] * n
    comps = []
    for start in range(n):
        if seen[start]:
            continue
        stack, comp = [start], []
        seen[start] = True
        while stack:
            v = stack.pop()
            comp.append(v)
            for w in range(n):
                if not seen[w] and cart[v][w] != 0 and v != w:
                    seen[w] = True
                    stack.append(w)
        comps.append(sorted(comp))
    return tuple(_identify_irreducible([base[i] for i in comp]) for comp in comps)


def _candidate_tags(k: int) -> list[str]:
    tags = [f"A{k}"]
    if k >= 2:
        tags += [f"B{k}", f"C{k}", "G2" if k == 2 else None]
    if k >= 3:
        tags.append(f"D{k}" if k >= 4 else None)
        if k == 4:
            tags.append("F4")
    if k in (6, 7, 8):
        tags.append(f"E{k}")
    return [t for t in tags if t]


def _identify_irreducible(base: list[Vec]) -> str:
    k = len(base)
    cart = _cartan_matrix(base)
    for tag in _candidate_tags(k):
        ref = _cartan_matrix(_base_for(tag))
        for perm in itertools.permutations(range(k)):
            if all(
                cart[perm[i]][perm[j]] == ref[i][j] for i in range(k) for j in range(k)
            ):
                return tag
    raise AssertionError("unidentifiable Cartan matrix (not a root base?)")


def is_simply_connected_subgroup(s: RootSubset) -> bool:
    """The standard subgroup generated by the subset (in a simply connected
    ambient group) is simply connected iff every long root of the ambient
    system lying in the rational span of the subsystem belongs to it."""
    sub = closed_subsystem(s)
    if not sub.roots:
        return True
    longest = max(_dot(r, r) for r in s.system.roots)
    span = [list(map(Fraction, v)) for v in sub.base]
    for r in s.system.roots:
        if _dot(r, r) != longest:
            continue
        if r in sub.roots:
            continue
        if _in_span(span, r):
            return False
    return True


def _in_span(span_rows: list[list[Fraction]], v: Vec) -> bool:
    rows = [row[:] for row in span_rows]
    target = list(map(Fraction, v))
    cols = len(target)
    rank = 0
    for c in range(cols):
        piv = next((r for r in range(rank, len(rows)) if rows[r][c] != 0), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        pr = rows[rank][c]
        rows[rank] = [x / pr for x in rows[rank]]
        if target[c] != 0:
            target = [x - target[c] * y for x, y in zip(target, rows[rank])]
        for r in range(len(rows)):
            if r != rank and rows[r][c] != 0:
                f = rows[r][c]
                rows[r] = [x - f * y for x, y in zip(rows[r], rows[rank])]
        rank += 1
    # second pass for columns whose pivot came after a nonzero target entry
    for c in range(cols):
        if target[c] != 0:
            piv = next((r for r in range(len(rows)) if rows[r][c] != 0 and all(rows[r][cc] == 0 for cc in range(c))), None)
            if piv is None:
                return False
            f = target[c] / rows[piv][c]
            target = [x - f * y for x, y in zip(target, rows[piv])]
    return all(x == 0 for x in target)


def highest_root(sys: RootSystem) -> Vec:
    comps = _identify_components(sys.base)
    if len(comps) != 1:
        raise Reducible("highest root needs an irreducible system")
    best: Optional[tuple[Fraction, Vec]] = None
    for r in sys.roots:
        coeffs = simple_combination(sys, r)
        h = sum(coeffs)
        if best is None or h > best[0]:
            best = (h, r)
    assert best is not None
    return best[1]


def minimal_root(sys: RootSystem) -> Vec:
    """The negative of the highest root."""
    return _neg(highest_root(sys))


# --------------------------------------------------------------------------
# The hard-coded verification suites


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str


def triality_orbit_check() -> list[CheckResult]:
    """On D4: the four positive roots fixed (as a set) by the outer
    S3-action are pairwise orthogonal, and all 24 signed-permutation cases
    of the action send alpha_2 into the set."""
    d4 = root_system("D4")
    a1, a2, a3, a4 = d4.base
    phi_plus = (
        a2,
        _add(_add(a2, a1), a3),
        _add(_add(a2, a1), a4),
        _add(_add(a2, a3), a4),
    )
    out: list[CheckResult] = []
    for u, v in itertools.combinations(phi_plus, 2):
        out.append(
            CheckResult(
                f"orthogonal {u} . {v}",
                _dot(u, v) == 0,
                f"pairing = {_dot(u, v)}",
            )
        )
    outer = {1: a1, 3: a3, 4: a4}
    labels = (1, 3, 4)
    case_no = 0
    orbit = set()
    for sigma in itertools.permutations(labels):
        perm = dict(zip(labels, sigma))  # sigma as a map on labels
        inv = {v: k for k, v in perm.items()}
        for eps in itertools.product((0, 1), repeat=3):
            if sum(eps) % 2:
                continue
            case_no += 1
            eps_of = dict(zip(labels, eps))
            img = a2
            for i in labels:
                if eps_of[inv[i]]:
                    img = _add(img, outer[i])
            ok = img in phi_plus
            orbit.add(img)
            out.append(
                CheckResult(
                    f"case {case_no}: sigma={sigma} eps={eps}",
                    ok,
                    f"image {img}",
                )
            )
    out.append(
        CheckResult(
            "orbit equals the four-element set",
            orbit == set(phi_plus),
            f"orbit size {len(orbit)}",
        )
    )
    return out


def triality_fixed_subgroup_not_simply_connected() -> CheckResult:
    d4 = root_system("D4")
    a1, a2, a3, a4 = d4.base
    gens = frozenset(
        {
            a2,
            _add(_add(a2, a1), a3),
            _add(_add(a2, a1), a4),
            _add(_add(a2, a3), a4),
        }
    )
    sc = is_simply_connected_subgroup(RootSubset(d4, gens))
    return CheckResult(
        "triality-fixed rank-4 subgroup is not simply connected",
        sc is False,
        f"is_simply_connected_subgroup = {sc}",
    )


def f4_c3_check() -> list[CheckResult]:
    f4 = root_system("F4")
    a1, a2, a3, a4 = f4.base
    gen3 = _add(a1, _add(_add(a2, a2), _add(a3, a3)))  # a1 + 2a2 + 2a3
    sub = closed_subsystem(RootSubset(f4, frozenset({a3, a4, gen3})))
    sc = is_simply_connected_subgroup(RootSubset(f4, frozenset({a3, a4, gen3})))
    hr = highest_root(f4)
    want_hr = from_base_coeffs(f4, [2, 3, 4, 2])
    return [
        CheckResult("F4 subsystem type", sub.type_string == "C3", sub.type_string),
        CheckResult("F4 subsystem size", len(sub.roots) == 18, str(len(sub.roots))),
        CheckResult("F4 subsystem simply connected", sc, str(sc)),
        CheckResult(
            "F4 highest root = 2a1+3a2+4a3+2a4", hr == want_hr, f"{hr} vs {want_hr}"
        ),
    ]


def verify_e6_identities() -> list[CheckResult]:
    e6 = root_system("E6")
    a = e6.base  # a[0] = alpha_1, ..., a[5] = alpha_6
    b1 = from_base_coeffs(e6, [1, 0, 1, 1, 0, 0])
    b3 = from_base_coeffs(e6, [0, 0, 1, 1, 1, 0])
    b4 = from_base_coeffs(e6, [0, 0, 0, 1, 1, 1])
    mu = minimal_root(e6)
    want_mu = _neg(from_base_coeffs(e6, [1, 2, 2, 3, 2, 1]))
    lhs = _neg(mu)
    rhs = _add(_add(from_base_coeffs(e6, [0, 2, 0, 0, 0, 0]), b1), _add(b3, b4))
    out = [
        CheckResult("E6 minimal root", mu == want_mu, f"{mu} vs {want_mu}"),
        CheckResult("-mu = 2a2 + b1 + b3 + b4", lhs == rhs, f"{lhs} vs {rhs}"),
    ]
    d4gens = frozenset({b1, b3, b4, a[1]})
    d4sub = closed_subsystem(RootSubset(e6, d4gens))
    out.append(CheckResult("beta subsystem type", d4sub.type_string == "D4", d4sub.type_string))
    out.append(CheckResult("beta subsystem size", len(d4sub.roots) == 24, str(len(d4sub.roots))))
    out.append(
        CheckResult(
            "beta subsystem contains the minimal root",
            mu in d4sub.roots and _neg(mu) in d4sub.roots,
            "",
        )
    )
    a5gens = frozenset(
        {a[2], a[0], from_base_coeffs(e6, [0, 1, 1, 2, 1, 0]), a[5], a[4]}
    )
    a5sub = closed_subsystem(RootSubset(e6, a5gens))
    a5sc = is_simply_connected_subgroup(RootSubset(e6, a5gens))
    out.append(CheckResult("A5 subsystem type", a5sub.type_string == "A5", a5sub.type_string))
    out.append(CheckResult("A5 subsystem size", len(a5sub.roots) == 30, str(len(a5sub.roots))))
    out.append(CheckResult("A5 subsystem simply connected", a5sc, str(a5sc)))
    return out


def full_report() -> list[CheckResult]:
    out = []
    out.extend(triality_orbit_check())
    out.append(triality_fixed_subgroup_not_simply_connected())
    out.extend(f4_c3_check())
    out.extend(verify_e6_identities())
    return out
