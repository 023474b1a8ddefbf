"""Command line: marks, mahowald, mk and verify.

Exit codes: 0 success, 2 usage or parse error, 3 domain error (the error
class name is printed), 4 a verification suite failed.
"""

import argparse
import json
import os
import re
import sys

from .burnside import BurnsideElement, from_marks, parse_orbit_notation
from .errors import CpnError
from .ktheory import closed_form_lattice, oracle_complex_fixed
from .mahowald import mahowald_invariant
from .repring import GroupSpec, is_prime
from .suites import SUITES, run_suite

EXIT_OK, EXIT_USAGE, EXIT_DOMAIN, EXIT_VERIFY = 0, 2, 3, 4


class UsageError(Exception):
    pass


class DomainError(CpnError):
    """Invalid values that parsed fine but make no sense mathematically."""


_PREFIXED = re.compile(r"^\s*(t|z|marks)\s*:\s*(\[.*\])\s*$", re.S)


def parse_element(text: str, p: int, m: int) -> BurnsideElement:
    """Parse an element of A(C_{p^m}).

    Accepted forms: ``t:[...]``, ``z:[...]``, ``marks:[...]``, a bare integer
    (a multiple of the one-point set), orbit sums such as ``2+[C_4/C_2]``, or
    a JSON object as written by ``--json``.
    """
    text = text.strip()
    if text.startswith("{"):
        try:
            data = json.loads(text)
            x = BurnsideElement.from_json(data)
        except (ValueError, KeyError, TypeError) as err:
            raise UsageError(f"bad element JSON: {err}") from err
        if (x.p, x.m) != (p, m):
            raise UsageError(f"element lives in A(C_{x.p}^{x.m}), expected A(C_{p}^{m})")
        return x
    match = _PREFIXED.match(text)
    if match:
        try:
            coeffs = json.loads(match.group(2))
        except ValueError as err:
            raise UsageError(f"bad coefficient list: {err}") from err
        if not isinstance(coeffs, list) or not all(isinstance(c, (int, str)) for c in coeffs):
            raise UsageError("coefficients must be a list of integers")
        try:
            coeffs = [int(c) for c in coeffs]
        except ValueError as err:
            raise UsageError(str(err)) from err
        if len(coeffs) != m + 1:
            raise UsageError(f"expected {m + 1} coefficients, got {len(coeffs)}")
        basis = match.group(1)
        if basis == "t":
            return BurnsideElement(p, m, tuple(coeffs))
        if basis == "z":
            return BurnsideElement.from_z(p, m, coeffs)
        return from_marks(p, m, coeffs)
    if re.fullmatch(r"[+-]?\d+", text):
        return BurnsideElement.scalar(p, m, int(text))
    try:
        return parse_orbit_notation(p, m, text)
    except ValueError as err:
        raise UsageError(f"cannot parse element {text!r}") from err


def _read_elem(arg: str) -> str:
    if arg == "-":
        return sys.stdin.read()
    if arg.startswith("@"):
        with open(arg[1:]) as fh:
            return fh.read()
    return arg


def _color(text: str, code: str) -> str:
    if os.environ.get("NO_COLOR") or not sys.stdout.isatty():
        return text
    return f"\033[{code}m{text}\033[0m"


def _emit(args, payload: dict, human: str):
    if args.json:
        print(json.dumps(payload, ensure_ascii=False))
    else:
        print(human)


def _group(args) -> None:
    if not is_prime(args.p):
        raise UsageError(f"--p {args.p} is not prime")
    if args.n < 0:
        raise UsageError("--n must be non-negative")


def cmd_marks(args) -> int:
    _group(args)
    x = parse_element(_read_elem(args.elem), args.p, args.n)
    payload = x.to_json("marks")
    payload["element"] = x.to_json("t")
    _emit(args, payload, "[" + ", ".join(str(v) for v in x.marks) + "]")
    return EXIT_OK


def cmd_mahowald(args) -> int:
    _group(args)
    if args.n < 1:
        raise UsageError("--n must be at least 1")
    x = parse_element(_read_elem(args.elem), args.p, args.n - 1)
    result = mahowald_invariant(x)
    payload = result.to_json()
    payload["element"] = x.to_json("t")
    lines = [f"X = {x} in A(C_{args.p ** (args.n - 1)})", f"degree {result.degree}"]
    if result.degree:
        lines.append("coefficients (" + ", ".join(str(c) for c in result.coefficients) + ")")
        j = result.j_part
        if j.family == "j_generator":
            lines.append(f"generator of order {j.modulus} in stem {j.stem}")
        if j.indeterminacy:
            lines.append(f"indeterminacy {j.indeterminacy}")
    lines.append(f"M_(C_{args.p ** args.n})(X) contains {result.display()}")
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK


def cmd_mk(args) -> int:
    _group(args)
    if args.n < 1:
        raise UsageError("--n must be at least 1")
    if args.k < 1:
        raise DomainError(f"degree k = {args.k} must be at least 1")
    group = GroupSpec(args.p, args.n)
    if args.mode == "oracle":
        fl = oracle_complex_fixed(group, args.k)
    elif args.mode == "closed":
        fl = closed_form_lattice(group, args.k)
    elif args.mode == "real":
        fl = closed_form_lattice(group, args.k, real=True)
    else:
        raise DomainError(f"unknown mode {args.mode!r}; use oracle, closed or real")
    rows = "\n".join(" ".join(str(v) for v in row) for row in fl.lattice.basis)
    _emit(args, fl.to_json(), f"M_{args.k} for {group} ({fl.provenance}), rank {fl.lattice.rank}:\n{rows}")
    return EXIT_OK


def cmd_verify(args) -> int:
    results = run_suite(args.suite, max_n=args.max_n, max_k=args.max_k, parallel=args.parallel,
                        samples=args.samples)
    ok = all(r.ok for r in results)
    if args.json:
        print(json.dumps({"ok": ok, "suites": [r.to_json() for r in results]}, ensure_ascii=False))
    else:
        for r in results:
            tag = _color("PASS", "32") if r.ok else _color("FAIL", "31")
            print(f"{tag} {r.name}: {r.checked} checks, {len(r.failures)} failed")
            for f in r.failures:
                print(f"    {f['check']}: {f['detail']}")
    return EXIT_OK if ok else EXIT_VERIFY


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cpnmahowald", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(sp, with_elem=True):
        sp.add_argument("--p", type=int, required=True, help="prime p")
        sp.add_argument("--n", type=int, required=True)
        if with_elem:
            sp.add_argument("--elem", required=True, help="t:[..], z:[..], marks:[..], integer, orbit sum, JSON, @file or -")
        sp.add_argument("--json", action="store_true", help="print one JSON document")

    sp = sub.add_parser("marks", help="marks of an element of A(C_{p^n})")
    common(sp)
    sp.set_defaults(func=cmd_marks)

    sp = sub.add_parser("mahowald", help="C_{p^n}-Mahowald invariant of an element of A(C_{p^(n-1)})")
    common(sp)
    sp.set_defaults(func=cmd_mahowald)

    sp = sub.add_parser("mk", help="basis of the Adams-fixed lattice M_k")
    common(sp, with_elem=False)
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--mode", default="oracle", help="oracle, closed or real")
    sp.set_defaults(func=cmd_mk)

    sp = sub.add_parser("verify", help="run a verification suite")
    sp.add_argument("--suite", required=True, choices=SUITES + ("all",))
    sp.add_argument("--max-n", type=int, default=3)
    sp.add_argument("--max-k", type=int, default=None)
    sp.add_argument("--samples", type=int, default=200, help="random Burnside elements per group")
    sp.add_argument("--parallel", action="store_true")
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_USAGE
    except (CpnError, ValueError) as err:
        print(f"{type(err).__name__}: {err}", file=sys.stderr)
        return EXIT_DOMAIN
    except OSError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
