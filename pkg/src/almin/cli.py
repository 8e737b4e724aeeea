"""Command-line frontend: analyze group specifications, compute ranks,
verify serialized witnesses, and run the built-in verification suites.

Exit codes: 0 decided (minimal or not minimal, or requested data printed);
1 parse/internal error; 2 not applicable; 3 search exhausted or unsupported.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import arith, minimal, qgroup, roots, serde
from .arith import REAL, FinitePrime, hilbert_symbol, relevant_places
from .algebra import QuaternionAlgebra, ramification_set
from .minimal import NotMinimal, analyze, verify_witness
from .quadform import QuadForm, diagonalize, is_isotropic, witt_decompose
from .serde import ParseError, rat_to_str

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_NOT_APPLICABLE = 2
EXIT_EXHAUSTED = 3


def _emit(doc, out) -> None:
    json.dump(doc, out, indent=2)
    out.write("\n")


def _fail(out, code: int, error: str, detail: str, path: str = "") -> int:
    doc = {"schema": serde.SCHEMA, "error": error, "detail": detail}
    if path:
        doc["path"] = path
    _emit(doc, out)
    return code


def _load_json(source: str):
    if source == "-":
        return json.load(sys.stdin)
    with open(source, "r", encoding="utf-8") as fh:
        return json.load(fh)


def _parse_coeff_list(text: str) -> list[Fraction]:
    try:
        return [Fraction(part.strip()) for part in text.split(",") if part.strip()]
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError("$", f"bad coefficient list {text!r}: {exc}") from None


def _parse_place(text: str):
    if text in ("inf", "oo", "real"):
        return REAL
    try:
        return FinitePrime(int(text))
    except Exception as exc:
        raise ParseError("$", f"bad place {text!r}: {exc}") from None


# --------------------------------------------------------------------------
# Commands


def cmd_analyze(args, out) -> int:
    try:
        raw = _load_json(args.path)
    except (OSError, json.JSONDecodeError) as exc:
        return _fail(out, EXIT_ERROR, "read_error", str(exc))
    if args.factor_bound is not None:
        arith.DEFAULT_FACTOR_BOUND = args.factor_bound
    try:
        g = serde.group_from_doc(raw)
    except ParseError as exc:
        return _fail(out, EXIT_ERROR, "parse_error", exc.message, exc.path)
    try:
        verdict = analyze(g, height_bound=args.height_bound)
    except minimal.SearchExhausted as exc:
        return _fail(out, EXIT_EXHAUSTED, "search_exhausted", str(exc))
    except qgroup.InvalidSpec as exc:
        return _fail(out, EXIT_ERROR, "invalid_spec", str(exc))
    report = None
    if isinstance(verdict, NotMinimal):
        # recompute the verification report from the witness data alone
        parent = g
        converted = qgroup.is_absolutely_almost_simple(g)
        if isinstance(converted, qgroup.ConvertibleTo):
            parent = converted.spec
        report = verify_witness(parent, verdict.witness)
    doc = serde.verdict_to_doc(raw, verdict, report)
    _emit(doc, out)
    return serde.exit_code_for(verdict)


def cmd_rank(args, out) -> int:
    try:
        raw = _load_json(args.path)
        g = serde.group_from_doc(raw)
    except (OSError, json.JSONDecodeError) as exc:
        return _fail(out, EXIT_ERROR, "read_error", str(exc))
    except ParseError as exc:
        return _fail(out, EXIT_ERROR, "parse_error", exc.message, exc.path)
    try:
        profile = qgroup.rank_profile(g)
    except (qgroup.TailNotCertified, qgroup.Unsupported) as exc:
        return _fail(out, EXIT_EXHAUSTED, "unsupported", str(exc))
    except qgroup.InvalidSpec as exc:
        return _fail(out, EXIT_ERROR, "invalid_spec", str(exc))
    _emit(
        {
            "q_rank": profile.q_rank,
            "real_rank": profile.real_rank,
            "s_g_nonempty": profile.s_g_nonempty,
        },
        out,
    )
    return EXIT_OK


def cmd_witness(args, out) -> int:
    try:
        raw = _load_json(args.path)
        g = serde.group_from_doc(raw)
    except (OSError, json.JSONDecodeError) as exc:
        return _fail(out, EXIT_ERROR, "read_error", str(exc))
    except ParseError as exc:
        return _fail(out, EXIT_ERROR, "parse_error", exc.message, exc.path)
    try:
        verdict = analyze(g, height_bound=args.height_bound)
    except minimal.SearchExhausted as exc:
        return _fail(out, EXIT_EXHAUSTED, "search_exhausted", str(exc))
    except qgroup.InvalidSpec as exc:
        return _fail(out, EXIT_ERROR, "invalid_spec", str(exc))
    if not isinstance(verdict, NotMinimal):
        doc = serde.verdict_to_doc(raw, verdict)
        _emit(doc, out)
        return serde.exit_code_for(verdict)
    _emit(
        {"schema": serde.SCHEMA, "witness": serde.witness_to_doc(verdict.witness)},
        out,
    )
    return EXIT_OK


def cmd_verify(args, out) -> int:
    try:
        raw = _load_json(args.path)
    except (OSError, json.JSONDecodeError) as exc:
        return _fail(out, EXIT_ERROR, "read_error", str(exc))
    if not isinstance(raw, dict) or raw.get("schema") != serde.SCHEMA:
        return _fail(
            out, EXIT_ERROR, "parse_error", f"expected schema {serde.SCHEMA}", "$.schema"
        )
    if raw.get("verdict") != "not_minimal":
        return _fail(
            out,
            EXIT_NOT_APPLICABLE,
            "nothing_to_verify",
            "document does not carry a witness",
            "$.verdict",
        )
    try:
        parent = serde.group_from_doc(raw.get("input"), "$.input")
        witness = serde.witness_from_doc(raw.get("witness"), "$.witness")
    except ParseError as exc:
        return _fail(out, EXIT_ERROR, "parse_error", exc.message, exc.path)
    converted = qgroup.is_absolutely_almost_simple(parent)
    if isinstance(converted, qgroup.ConvertibleTo):
        parent = converted.spec
    report = verify_witness(parent, witness)
    _emit({"schema": serde.SCHEMA, "verification": serde.report_to_doc(report)}, out)
    return EXIT_OK if report.ok else EXIT_EXHAUSTED


def cmd_form(args, out) -> int:
    sub = args.form_command
    if sub == "hilbert":
        a, b = Fraction(args.a), Fraction(args.b)
        v = _parse_place(args.place)
        out.write(f"{hilbert_symbol(a, b, v)}\n")
        return EXIT_OK
    if sub == "ramify":
        d = QuaternionAlgebra(Fraction(args.a), Fraction(args.b))
        places = ramification_set(d)
        doc = sorted(p.p for p in places if isinstance(p, FinitePrime))
        if any(not isinstance(p, FinitePrime) for p in places):
            _emit({"finite": doc, "infinite": True}, out)
        else:
            _emit({"finite": doc, "infinite": False}, out)
        return EXIT_OK
    text = args.coeffs.strip()
    if text.startswith("["):
        try:
            rows = json.loads(text)
            f = QuadForm.from_rows(
                [[Fraction(v) for v in row] for row in rows]
            )
        except (ValueError, TypeError, json.JSONDecodeError) as exc:
            raise ParseError("$", f"bad gram matrix: {exc}") from None
    else:
        f = QuadForm.diagonal(_parse_coeff_list(text))
    if sub == "diag":
        d = diagonalize(f)
        _emit({"diagonal": [rat_to_str(c) for c in d.coeffs]}, out)
        return EXIT_OK
    if sub == "witt":
        w = witt_decompose(f, height_bound=args.height_bound)
        _emit(
            {
                "witt_index": len(w.hyperbolic_pairs),
                "anisotropic_dimension": len(w.anisotropic_coeffs),
                "anisotropic_coeffs": [
                    rat_to_str(c) for c in w.anisotropic_coeffs
                ],
            },
            out,
        )
        return EXIT_OK
    if sub == "isotropic":
        if args.place == "global":
            res = is_isotropic(f, "global")
        else:
            res = is_isotropic(f, _parse_place(args.place))
        _emit({"isotropic": res}, out)
        return EXIT_OK
    return _fail(out, EXIT_ERROR, "usage", f"unknown form subcommand {sub!r}")


def cmd_roots(args, out) -> int:
    report = roots.full_report()
    ok = True
    for c in report:
        mark = "ok" if c.passed else "FAIL"
        detail = f" ({c.detail})" if (not c.passed and c.detail) else ""
        out.write(f"{mark} {c.name}{detail}\n")
        ok = ok and c.passed
    return EXIT_OK if ok else EXIT_ERROR


# A small frozen table of Hilbert symbol values with independently known
# answers, plus the product formula, used as the self-test oracle.
_HILBERT_TABLE = [
    (-1, -1, FinitePrime(2), -1),
    (-1, -1, REAL, -1),
    (-1, -1, FinitePrime(3), 1),
    (2, 3, FinitePrime(2), -1),
    (2, 3, FinitePrime(3), -1),
    (2, 3, FinitePrime(5), 1),
    (2, 3, REAL, 1),
    (-1, 3, FinitePrime(3), -1),
    (-1, 7, FinitePrime(7), -1),
    (5, 5, FinitePrime(5), 1),
    (2, 2, FinitePrime(2), 1),
    (3, 3, FinitePrime(3), -1),
    (-2, -5, REAL, -1),
    (1, -17, FinitePrime(17), 1),
    (-1, 2, FinitePrime(2), 1),
]


def _hilbert_selftest() -> bool:
    for a, b, v, want in _HILBERT_TABLE:
        if hilbert_symbol(a, b, v) != want:
            return False
    for a in range(-10, 11):
        for b in range(-10, 11):
            if a == 0 or b == 0:
                continue
            prod = 1
            for v in relevant_places([a, b]):
                prod *= hilbert_symbol(a, b, v)
            if prod != 1:
                return False
    return True


_E6_GROUPS = {
    "minimal-root identity": ("E6 minimal root", "-mu = 2a2 + b1 + b3 + b4"),
    "triple subsystem": (
        "beta subsystem type",
        "beta subsystem size",
        "beta subsystem contains the minimal root",
    ),
    "A5 subsystem": ("A5 subsystem type", "A5 subsystem size"),
    "A5 simply connected": ("A5 subsystem simply connected",),
}


def cmd_selftest(args, out) -> int:
    ok = True

    tri = roots.triality_orbit_check()
    cases = [c for c in tri if c.name.startswith("case ")]
    cases_ok = sum(1 for c in cases if c.passed)
    side_ok = all(c.passed for c in tri if not c.name.startswith("case "))
    fixed = roots.triality_fixed_subgroup_not_simply_connected()
    ok = ok and cases_ok == len(cases) and side_ok and fixed.passed
    for c in tri + [fixed]:
        if not c.passed:
            out.write(f"FAIL {c.name}: {c.detail}\n")

    e6 = {c.name: c for c in roots.verify_e6_identities()}
    e6_ok = 0
    for label, names in _E6_GROUPS.items():
        group_ok = all(e6[n].passed for n in names if n in e6) and all(
            n in e6 for n in names
        )
        if group_ok:
            e6_ok += 1
        else:
            for n in names:
                c = e6.get(n)
                if c is None:
                    out.write(f"FAIL {label}: missing check {n}\n")
                elif not c.passed:
                    out.write(f"FAIL {c.name}: {c.detail}\n")
    ok = ok and e6_ok == len(_E6_GROUPS)

    f4 = roots.f4_c3_check()
    f4_ok = all(c.passed for c in f4)
    for c in f4:
        if not c.passed:
            out.write(f"FAIL {c.name}: {c.detail}\n")
    ok = ok and f4_ok

    hil_ok = _hilbert_selftest()
    if not hil_ok:
        out.write("FAIL hilbert oracle\n")
    ok = ok and hil_ok

    out.write(
        f"triality {cases_ok}/{len(cases)},"
        f" E6 identities {e6_ok}/{len(_E6_GROUPS)},"
        f" F4 C3 {'ok' if f4_ok else 'FAIL'},"
        f" hilbert oracle {'ok' if hil_ok else 'FAIL'}\n"
    )
    return EXIT_OK if ok else EXIT_ERROR


# --------------------------------------------------------------------------
# Argument parsing


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="almin",
        description=(
            "Decide minimality of isotropic almost-simple groups over Q and"
            " produce independently verifiable witness certificates."
        ),
    )
    sub = p.add_subparsers(dest="command", required=True)

    def add_bounds(sp):
        sp.add_argument(
            "--height-bound",
            type=int,
            default=10000,
            help="search bound for isotropic-vector searches",
        )
        sp.add_argument(
            "--factor-bound",
            type=int,
            default=None,
            help="trial-division budget before Pollard rho",
        )

    sp = sub.add_parser("analyze", help="decide minimality; emit a verdict document")
    sp.add_argument("path", help="specification JSON file, or - for stdin")
    add_bounds(sp)

    sp = sub.add_parser("rank", help="print the rational/real rank profile")
    sp.add_argument("path")
    add_bounds(sp)

    sp = sub.add_parser("witness", help="print only the witness of a non-minimal group")
    sp.add_argument("path")
    add_bounds(sp)

    sp = sub.add_parser(
        "verify", help="re-verify a serialized not-minimal verdict document"
    )
    sp.add_argument("path")

    sp = sub.add_parser("form", help="quadratic form and symbol utilities")
    fsub = sp.add_subparsers(dest="form_command", required=True)
    fp = fsub.add_parser("diag", help="diagonal coefficients of a form")
    fp.add_argument("coeffs")
    fp.add_argument("--height-bound", type=int, default=10000)
    fp = fsub.add_parser("witt", help="Witt decomposition of a diagonal form")
    fp.add_argument("coeffs")
    fp.add_argument("--height-bound", type=int, default=10000)
    fp = fsub.add_parser("isotropic", help="isotropy at a place or globally")
    fp.add_argument("coeffs")
    fp.add_argument("--place", default="global")
    fp = fsub.add_parser("hilbert", help="Hilbert symbol (a,b)_v")
    fp.add_argument("a")
    fp.add_argument("b")
    fp.add_argument("place")
    fp = fsub.add_parser("ramify", help="ramification set of (a,b)")
    fp.add_argument("a")
    fp.add_argument("b")

    sub.add_parser("roots", help="run the root-system verification report")
    sub.add_parser("selftest", help="run every built-in identity check")
    return p


_COMMANDS = {
    "analyze": cmd_analyze,
    "rank": cmd_rank,
    "witness": cmd_witness,
    "verify": cmd_verify,
    "form": cmd_form,
    "roots": cmd_roots,
    "selftest": cmd_selftest,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    out = sys.stdout
    try:
        return _COMMANDS[args.command](args, out)
    except ParseError as exc:
        return _fail(out, EXIT_ERROR, "parse_error", exc.message, exc.path)
    except minimal.SearchExhausted as exc:
        return _fail(out, EXIT_EXHAUSTED, "search_exhausted", str(exc))
    except (qgroup.Unsupported, qgroup.TailNotCertified) as exc:
        return _fail(out, EXIT_EXHAUSTED, "unsupported", str(exc))
    except (ValueError, ZeroDivisionError) as exc:
        return _fail(out, EXIT_ERROR, "invalid_input", str(exc))


if __name__ == "__main__":
    sys.exit(main())
