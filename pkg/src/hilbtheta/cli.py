"""Command line front end.

Exit codes: 0 success, 1 computation or verification failure, 2 usage error.
Singular points are named ``A<n>`` throughout.
"""

import argparse
import json
import re
import sys
from fractions import Fraction
from pathlib import Path

from . import envelope
from .hilb import SurfaceSpec, hilb_series_A, k_independence_check, local_parameter, \
    quot_series_A, surface_hilb_series, theta_from_hilb
from .lattice import NotPositiveDefiniteError, QuadraticForm, base_change_form, \
    decompose_theta, galois_invariance_check, theta_form, theta_n, theta_qm, verify_table1
from .qspecial import IdentityReport, jacobi_triple_check
from .series import NotRationalError, format_rational
from .young import appendix_index, enumerate_tuples, ideal_oracle, quot_count

DEFAULT_ORDER = 20
DEFAULT_CHECK_ORDER = 36
SUITES = ("table1", "jacobi", "oracle-vs-product", "form-a", "k-independence")
SUITE_ORDERS = {"table1": 36, "jacobi": 30, "oracle-vs-product": 6, "form-a": 20,
                "k-independence": 12}


class UsageError(Exception):
    pass


class Failure(Exception):
    pass


def parse_type(text):
    m = re.fullmatch(r"A(\d+)", text.strip())
    if not m:
        raise argparse.ArgumentTypeError(f"expected A<n> with n >= 0, got {text!r}")
    return int(m.group(1))


def parse_form(text):
    """A JSON file ``{rank, coeffs: [[i, j, c], ...]}``, ``diag(a, b, ...)``
    or ``upper(c11, c12, ..., c1n, c22, ..., cnn)``."""
    text = text.strip()
    m = re.fullmatch(r"(diag|upper)\(([-\d,\s]*)\)", text)
    if m:
        vals = [int(x) for x in m.group(2).split(",") if x.strip()]
        if m.group(1) == "diag":
            return QuadraticForm.diag(*vals)
        n = 0
        while n * (n + 1) // 2 < len(vals):
            n += 1
        if n * (n + 1) // 2 != len(vals) or n == 0:
            raise UsageError(f"upper(...) needs a triangular number of entries, got {len(vals)}")
        it = iter(vals)
        return QuadraticForm.from_coeffs(
            n, {(i, j): next(it) for i in range(1, n + 1) for j in range(i, n + 1)})
    path = Path(text)
    if not path.exists():
        raise UsageError(f"form {text!r} is neither an inline spec nor an existing file")
    try:
        return QuadraticForm.from_record(json.loads(path.read_text()))
    except (KeyError, TypeError, json.JSONDecodeError) as exc:
        raise UsageError(f"malformed form file {text}: {exc}") from exc


def _form_arg(text):
    try:
        return parse_form(text)
    except NotPositiveDefiniteError as exc:
        raise UsageError(f"{exc} (failing minor {exc.minor_index})") from exc


# ---------------------------------------------------------------------------
# rendering

def _series_csv(s):
    lines = ["q_power,coefficient"]
    for i, c in enumerate(s.coeffs):
        lines.append(f"{format_rational(s.offset + i)},{format_rational(c)}")
    return "\n".join(lines)


def _series_text(s):
    return ",".join(format_rational(c) for c in s.coeffs)


def _report_line(r):
    status = "PASS" if r.passed else "FAIL"
    where = ""
    if r.discrepancy:
        where = " first discrepancy: " + ", ".join(
            f"{k}={format_rational(v) if not isinstance(v, str) else v}"
            for k, v in r.discrepancy.items())
    return f"{status} {r.name}{where}"


def emit(args, command, params, results, meta=None):
    fmt = args.format
    if fmt == "json":
        print(envelope.dumps(command, params, results, meta))
        return
    out = []
    if fmt == "text":
        header = " ".join(f"{k}={v}" for k, v in params.items())
        out.append(f"# {command} {header}".rstrip())
        for k, v in (meta or {}).items():
            out.append(f"# {k}: {format_rational(v) if isinstance(v, (int, Fraction)) else v}")
    for name, (kind, val) in results.items():
        if kind == "series":
            out.append(_series_csv(val) if fmt == "csv" else _series_text(val))
        elif kind == "count":
            out.append(f"count,{val}" if fmt == "csv" else str(val))
        elif kind == "terms":
            if fmt == "csv":
                out.append("coefficient,form")
                out.extend(f"{format_rational(t.coefficient)},{t.form}" for t in val)
            else:
                out.extend(f"({format_rational(t.coefficient)}, {t.form})" for t in val)
        elif kind in ("report", "reports"):
            reps = [val] if kind == "report" else val
            if fmt == "csv":
                out.append("check,passed")
                out.extend(f"{r.name},{str(r.passed).lower()}" for r in reps)
            else:
                out.extend(_report_line(r) for r in reps)
        elif kind == "listing":
            for tup in val:
                out.append(" ".join("[" + ",".join(map(str, rows)) + "]" for rows in tup))
    print("\n".join(out))


# ---------------------------------------------------------------------------
# commands

def _sheaf(j):
    if j == 0:
        return "O"
    return "O(D)" if j == 1 else "O(-D)" if j == -1 else f"O({j}D)"


def cmd_hilb(args):
    s = hilb_series_A(args.type, args.order)
    emit(args, "hilb", {"type": f"A{args.type}", "order": args.order},
         {"series": ("series", s)})


def cmd_quot(args):
    n = local_parameter(args.type)
    if not 0 <= args.j <= args.type:
        raise UsageError(f"--j must lie in 0..{args.type} for A{args.type}")
    s = quot_series_A(n, args.j, args.k, args.order)
    emit(args, "quot", {"type": f"A{args.type}", "j": args.j, "k": args.k, "order": args.order},
         {"series": ("series", s)},
         {"sheaf": _sheaf(args.j), "isomorphic_to": _sheaf(-appendix_index(n, args.j)),
          "product_parameter": n})


def _theta_source(args):
    if (args.n is None) == (args.form is None):
        raise UsageError("give exactly one of --n or --form")
    if args.n is not None and args.n < 1:
        raise UsageError("--n must be >= 1")


def cmd_theta(args):
    _theta_source(args)
    if args.n is not None:
        s = theta_n(args.n, args.order)
        params = {"n": args.n, "order": args.order}
    else:
        form = _form_arg(args.form)
        m = args.modulus or 1
        s = theta_form(form, args.order) if m == 1 else theta_qm(form, m, args.order)
        params = {"form": str(form), "modulus": m, "order": args.order}
    emit(args, "theta", params, {"series": ("series", s)})


def cmd_decompose(args):
    _theta_source(args)
    M = args.check_order
    if args.n is not None:
        form, m = base_change_form(args.n)
        params = {"n": args.n, "check_order": M}
    else:
        if args.modulus is None:
            raise UsageError("--form needs --modulus")
        form, m = _form_arg(args.form), args.modulus
        params = {"form": str(form), "modulus": m, "check_order": M}
    gal = galois_invariance_check(form, m, M)
    if not gal:
        emit(args, "decompose", params, {"galois": ("report", gal)})
        raise Failure(f"not Galois invariant: conjugate s={gal.discrepancy['conjugate']} "
                      f"differs at q^{gal.discrepancy['q_power']}")
    terms = decompose_theta(form, m, M)
    emit(args, "decompose", params,
         {"terms": ("terms", terms),
          "residual": ("report", IdentityReport("residual", True, None, {"order": M}))},
         {"base_form": str(form), "modulus": m})


def cmd_oracle(args):
    n = local_parameter(args.type)
    if not 0 <= args.j <= args.type:
        raise UsageError(f"--j must lie in 0..{args.type} for A{args.type}")
    if args.m < 0:
        raise UsageError("--m must be >= 0")
    ja = appendix_index(n, args.j)
    tuples = enumerate_tuples(n, ja, args.m)
    results = {"count": ("count", len(tuples))}
    if args.list:
        results["tuples"] = ("listing", [t.rows() for t in tuples])
    emit(args, "oracle", {"type": f"A{args.type}", "j": args.j, "m": args.m}, results,
         {"sheaf": _sheaf(args.j), "appendix_j": ja})


def cmd_surface(args):
    sing = [parse_type("A" + x.strip()) for x in args.sing.split(",") if x.strip()] \
        if args.sing else []
    if args.chi_resolution is None and args.chi is None:
        raise UsageError("give --chi-resolution or --chi")
    try:
        spec = SurfaceSpec(tuple(sing), args.chi_resolution, args.chi)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    res = surface_hilb_series(spec, args.order, args.normalized)
    emit(args, "surface",
         {"chi_resolution": spec.chi_resolution, "chi": spec.chi_surface,
          "sing": list(spec.singularities), "order": args.order,
          "normalized": args.normalized},
         {"series": ("series", res.series)},
         {"weight": res.weight, "offset": Fraction(-spec.chi_resolution, 24)})


def run_suite(name, M):
    reports = []
    if name == "table1":
        reports += [verify_table1(n, M) for n in range(1, 5)]
    elif name == "jacobi":
        reports.append(jacobi_triple_check(M, M))
    elif name == "oracle-vs-product":
        for n in range(1, 5):
            for j in range(n):
                product = quot_series_A(n, j, 0, M)
                bad = None
                for m in range(M + 1):
                    a = quot_count(n, j, m)
                    b = ideal_oracle(n, appendix_index(n, j), m)
                    if not product[m] == a == b:
                        bad = {"q_power": m, "product": product[m], "tuples": a, "ideals": b}
                        break
                reports.append(IdentityReport(f"oracle-vs-product-n{n}-j{j}", bad is None, bad,
                                              {"order": M}))
    elif name == "form-a":
        for n in range(1, 5):
            lhs, rhs = theta_from_hilb(n, M), theta_n(n, M)
            bad = next(({"q_power": i, "left": lhs[i], "right": rhs[i]}
                        for i in range(M + 1) if lhs[i] != rhs[i]), None)
            reports.append(IdentityReport(f"form-a-n{n}", bad is None, bad, {"order": M}))
    elif name == "k-independence":
        for n in range(1, 5):
            for j in range(n):
                r = k_independence_check(n, j, 2, M)
                r.name = f"k-independence-n{n}-j{j}"
                reports.append(r)
    return reports


def cmd_verify(args):
    suites = SUITES if args.suite == "all" else (args.suite,)
    reports = []
    for s in suites:
        M = args.order if args.order is not None else SUITE_ORDERS[s]
        reports += run_suite(s, M)
    emit(args, "verify", {"suite": args.suite, "order": args.order},
         {"reports": ("reports", reports)})
    if not all(r.passed for r in reports):
        raise Failure("verification failed")


# ---------------------------------------------------------------------------

def _nonneg(text):
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError("must be >= 0")
    return v


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json", "csv"), default="text")

    p = argparse.ArgumentParser(prog="hilbtheta", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    h = sub.add_parser("hilb", parents=[common], help="Hilb series of an A_n point")
    h.add_argument("--type", type=parse_type, required=True)
    h.add_argument("--order", type=_nonneg, default=DEFAULT_ORDER)
    h.set_defaults(func=cmd_hilb)

    q = sub.add_parser("quot", parents=[common], help="Quot series of O(jD) on A_n")
    q.add_argument("--type", type=parse_type, required=True)
    q.add_argument("--j", type=int, default=0)
    q.add_argument("--k", type=int, default=0)
    q.add_argument("--order", type=_nonneg, default=DEFAULT_ORDER)
    q.set_defaults(func=cmd_quot)

    t = sub.add_parser("theta", parents=[common], help="Theta_n or a form's theta series")
    t.add_argument("--n", type=int)
    t.add_argument("--form")
    t.add_argument("--modulus", type=int)
    t.add_argument("--order", type=_nonneg, default=DEFAULT_ORDER)
    t.set_defaults(func=cmd_theta)

    d = sub.add_parser("decompose", parents=[common], help="decompose into form theta series")
    d.add_argument("--n", type=int)
    d.add_argument("--form")
    d.add_argument("--modulus", type=int)
    d.add_argument("--check-order", type=_nonneg, default=DEFAULT_CHECK_ORDER)
    d.set_defaults(func=cmd_decompose)

    o = sub.add_parser("oracle", parents=[common], help="count Young-diagram tuples")
    o.add_argument("--type", type=parse_type, required=True)
    o.add_argument("--j", type=int, default=0)
    o.add_argument("--m", type=int, required=True)
    o.add_argument("--list", action="store_true")
    o.set_defaults(func=cmd_oracle)

    s = sub.add_parser("surface", parents=[common], help="Hilb series of a singular surface")
    s.add_argument("--chi-resolution", type=int)
    s.add_argument("--chi", type=int)
    s.add_argument("--sing", default="")
    s.add_argument("--order", type=_nonneg, default=DEFAULT_ORDER)
    off = s.add_mutually_exclusive_group()
    off.add_argument("--normalized", dest="normalized", action="store_true", default=True,
                     help="strip the q^{-chi/24} prefactor (default)")
    off.add_argument("--with-offset", dest="normalized", action="store_false",
                     help="keep the q^{-chi/24} prefactor")
    s.set_defaults(func=cmd_surface)

    v = sub.add_parser("verify", parents=[common], help="run verification suites")
    v.add_argument("--suite", choices=SUITES + ("all",), default="all")
    v.add_argument("--order", type=_nonneg)
    v.set_defaults(func=cmd_verify)
    return p


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        args.func(args)
    except UsageError as exc:
        parser.exit(2, f"{parser.prog} {args.command}: error: {exc}\n")
    except argparse.ArgumentTypeError as exc:
        parser.exit(2, f"{parser.prog} {args.command}: error: {exc}\n")
    except (Failure, NotRationalError, AssertionError, ValueError) as exc:
        print(f"{parser.prog} {args.command}: failure: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
