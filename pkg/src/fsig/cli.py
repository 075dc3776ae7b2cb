"""Command-line front end: ``fsig {cyclic,table,eval,verify,group} ...``.

Exit codes: 0 success, 1 verification mismatch, 2 invalid input,
3 oracle cap exceeded, 4 inconsistent group data.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from . import cyclic as ce
from . import group as ge
from .errors import CapExceeded, InconsistentGroupData, InvalidInput
from .numtheory import is_prime, require_prime_coprime
from .qpoly import QuasiPolynomial, to_json

EXIT_OK, EXIT_MISMATCH, EXIT_INVALID, EXIT_CAP, EXIT_INCONSISTENT = 0, 1, 2, 3, 4

# default verification sweep: all weight vectors with n <= 10, d <= 3
SWEEP_MAX_N, SWEEP_MAX_D, SWEEP_PRIMES, SWEEP_E = 10, 3, (7, 11), 1


def _weights(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.replace(" ", "").split(",") if x)
    except ValueError:
        raise argparse.ArgumentTypeError(f"weights must be comma-separated integers, got {text!r}") from None


def _alpha(text: str) -> int | str:
    if text == "all":
        return text
    try:
        return int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"alpha must be an integer or 'all', got {text!r}") from None


def _nonneg(text: str) -> int:
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError("must be non-negative")
    return v


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="fsig", description="Exact F-signature functions and covariant multiplicities of quotient singularities.")
    sub = ap.add_subparsers(dest="command", required=True)

    def singularity_args(sp: argparse.ArgumentParser, required: bool = True) -> None:
        sp.add_argument("--n", type=int, required=required, help="group order of 1/n(t_1, ..., t_d)")
        sp.add_argument("--t", type=_weights, required=required, help="weights, e.g. 1,2,3")

    def fmt_arg(sp: argparse.ArgumentParser) -> None:
        sp.add_argument("--format", choices=("text", "latex", "json"), default="text")

    sp = sub.add_parser("cyclic", help="multiplicity quasi-polynomial of a cyclic quotient singularity")
    singularity_args(sp)
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--alpha", type=_alpha, default=0, help="covariant label, or 'all' (default 0: F-signature)")
    fmt_arg(sp)

    sp = sub.add_parser("table", help="all n multiplicity functions, identical ones grouped")
    singularity_args(sp)
    sp.add_argument("--p", type=int, required=True)
    fmt_arg(sp)

    sp = sub.add_parser("eval", help="exact value at one e (cyclic via --n/--t, or a group via --file)")
    singularity_args(sp, required=False)
    sp.add_argument("--file", help="group spec JSON path or bundled name")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--e", type=_nonneg, required=True)
    sp.add_argument("--alpha", type=int, default=None, help="covariant label / character index (default: trivial)")

    sp = sub.add_parser("verify", help="compare the formula engine with brute-force lattice counts")
    singularity_args(sp, required=False)
    sp.add_argument("--p", type=int)
    sp.add_argument("--e", type=_nonneg, default=1)
    sp.add_argument("--sweep", choices=("default",), help="run the built-in sweep instead of a single case")
    sp.add_argument("--cap", type=int, default=None, help="max lattice points per oracle call (env FSIG_ORACLE_CAP)")

    sp = sub.add_parser("group", help="quasi-polynomial of a general group from conjugacy-class data")
    sp.add_argument("--file", required=True, help=f"group spec JSON path or bundled name ({', '.join(ge.BUILTIN_SPECS)})")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--char", type=int, default=None, help="character row index (default: trivial)")
    sp.add_argument("--e", type=_nonneg, default=None, help="evaluate at this e instead of printing the function")
    fmt_arg(sp)
    return ap


def _check_p(p: int | None) -> int:
    if p is None:
        raise InvalidInput("--p is required")
    if not is_prime(p):
        raise InvalidInput(f"p = {p} is not prime")
    return p


def _singularity(args: argparse.Namespace) -> ce.CyclicSingularity:
    if args.n is None or args.t is None:
        raise InvalidInput("both --n and --t are required")
    return ce.validate(args.n, args.t)


def _grouped(qps: Sequence[QuasiPolynomial]) -> list[tuple[list[int], QuasiPolynomial]]:
    groups: dict[tuple, tuple[list[int], QuasiPolynomial]] = {}
    for qp in qps:
        key = tuple(sorted(qp.coeffs.items()))
        groups.setdefault(key, ([], qp))[0].append(qp.alpha)
    return list(groups.values())


def render_table(qps: Sequence[QuasiPolynomial], fmt: str) -> str:
    if fmt == "json":
        return json.dumps([to_json(qp) for qp in qps], indent=2)
    out = []
    for alphas, qp in _grouped(qps):
        labels = ", ".join(str(a) for a in alphas)
        body = qp.render(fmt)
        if fmt == "latex":
            out.append(f"\\alpha = {labels}: \\quad {body}")
        elif "\n" in body:
            out.append(f"alpha = {labels}:\n" + "\n".join("  " + line for line in body.splitlines()))
        else:
            out.append(f"alpha = {labels}: {body}")
    return "\n".join(out)


def cmd_cyclic(args: argparse.Namespace) -> int:
    sing = _singularity(args)
    p = _check_p(args.p)
    if args.alpha == "all":
        print(render_table(ce.all_multiplicities(sing, p), args.format))
    else:
        print(ce.multiplicity_qpoly(sing, p, args.alpha).render(args.format))
    return EXIT_OK


def cmd_table(args: argparse.Namespace) -> int:
    sing = _singularity(args)
    p = _check_p(args.p)
    print(render_table(ce.all_multiplicities(sing, p), args.format))
    return EXIT_OK


def cmd_eval(args: argparse.Namespace) -> int:
    p = _check_p(args.p)
    if args.file:
        spec = ge.load_spec(args.file)
        print(ge.multiplicity_general(spec, p, args.e, args.alpha))
        return EXIT_OK
    sing = _singularity(args)
    value = ce.multiplicity_qpoly(sing, p, args.alpha or 0).evaluate(args.e)
    if value.denominator != 1 or value < 0:
        raise InconsistentGroupData(f"evaluated to {value}, not a non-negative integer")
    print(value.numerator)
    return EXIT_OK


def _verify_case(sing: ce.CyclicSingularity, p: int, e: int, cap: int | None) -> tuple[int, list[tuple[int, int, int]]]:
    counts = ce.brute_force_counts(sing, p, e, cap=cap)
    rows = []
    good = 0
    for alpha in range(sing.n):
        got = ce.multiplicity_qpoly(sing, p, alpha).evaluate(e)
        rows.append((alpha, got, counts[alpha]))
        good += got == counts[alpha]
    return good, rows


def cmd_verify(args: argparse.Namespace) -> int:
    cap = args.cap if args.cap is not None else ce.default_oracle_cap()
    if args.sweep:
        cases = [
            (sing, p)
            for sing in ce.sweep_singularities(SWEEP_MAX_N, SWEEP_MAX_D)
            for p in SWEEP_PRIMES
            if sing.n % p
        ]
        e = SWEEP_E
        passed = 0
        for sing, p in sorted(cases, key=lambda c: (c[0].n, c[0].d, c[0].t, c[1])):
            good, rows = _verify_case(sing, p, e, cap)
            ok = good == sing.n
            passed += ok
            print(f"{'PASS' if ok else 'FAIL'} {sing} p={p} e={e} ({good}/{sing.n} alpha)")
            for alpha, got, want in rows:
                if got != want:
                    print(f"  alpha={alpha}: engine {got}, oracle {want}")
        print(f"{passed}/{len(cases)} cases PASS")
        return EXIT_OK if passed == len(cases) else EXIT_MISMATCH
    sing = _singularity(args)
    p = _check_p(args.p)
    require_prime_coprime(p, sing.n)
    good, rows = _verify_case(sing, p, args.e, cap)
    for alpha, got, want in rows:
        status = "PASS" if got == want else "FAIL"
        print(f"{status} {sing} p={p} e={args.e} alpha={alpha}: engine {got}, oracle {want}")
    print(f"{good}/{sing.n} PASS")
    return EXIT_OK if good == sing.n else EXIT_MISMATCH


def cmd_group(args: argparse.Namespace) -> int:
    spec = ge.load_spec(args.file)
    p = _check_p(args.p)
    if args.e is not None:
        print(ge.multiplicity_general(spec, p, args.e, args.char))
        return EXIT_OK
    print(ge.fsignature_qpoly_general(spec, p, args.char).render(args.format))
    return EXIT_OK


COMMANDS = {"cyclic": cmd_cyclic, "table": cmd_table, "eval": cmd_eval, "verify": cmd_verify, "group": cmd_group}


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except InvalidInput as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except CapExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    except InconsistentGroupData as exc:
        print(f"error: inconsistent group data: {exc}", file=sys.stderr)
        return EXIT_INCONSISTENT


if __name__ == "__main__":
    sys.exit(main())
