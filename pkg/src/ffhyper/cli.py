"""Command-line front end.

Every subcommand emits rows (JSON Lines by default, or CSV) and exits with

    0  all checks passed
    1  usage or precondition error
    2  enumeration budget exceeded
    3  a mathematical check failed
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from typing import Callable, Iterable

from . import congruence, counting, katz, weights
from .charsums import char_index, gauss_table
from .errors import BudgetError, PreconditionError, RoundingError, VerificationError
from .ffield import is_prime, make_field
from .padic import R, gamma_reflection, gamma_shift, gauss_multiplication, padic_gamma

EXIT_USAGE, EXIT_BUDGET, EXIT_ASSERT = 1, 2, 3
JOBS_ENV = "FFHYPER_JOBS"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _log(msg: str):
    print(msg, file=sys.stderr)


def parse_int_range(text: str, upper: int | None = None) -> list[int]:
    """"7", "7,13", "7..31" or "all" (1..upper-1)."""
    text = text.strip()
    if text == "all":
        if upper is None:
            raise UsageError("'all' needs a field to range over")
        return list(range(1, upper))
    out: list[int] = []
    for part in text.split(","):
        try:
            if ".." in part:
                a, b = part.split("..")
                out.extend(range(int(a), int(b) + 1))
            else:
                out.append(int(part))
        except ValueError:
            raise UsageError(f"bad integer range {part!r}") from None
    return out


def prime_list(text: str, reason: Callable[[int], str | None]) -> list[int]:
    """Primes named by text that pass the admissibility filter; skips are logged."""
    out = []
    ranged = ".." in text
    for p in parse_int_range(text):
        if ranged and (p < 2 or not is_prime(p)):
            continue
        why = "not prime" if p < 2 or not is_prime(p) else reason(p)
        if why is None:
            out.append(p)
        elif ranged:
            _log(f"skipping p={p}: {why}")
        else:
            raise UsageError(f"p={p} is not admissible: {why}")
    if not out:
        raise UsageError("no admissible primes in range")
    return out


def _parse_fractions(text: str) -> list[Fraction]:
    if not text:
        return []
    try:
        return [Fraction(x) for x in text.split(",")]
    except ValueError:
        raise UsageError(f"bad rational list {text!r}") from None


def _jobs(args) -> int:
    if args.jobs is not None:
        return max(1, args.jobs)
    try:
        return max(1, int(os.environ.get(JOBS_ENV, "1")))
    except ValueError:
        raise UsageError(f"{JOBS_ENV} must be an integer") from None


def _run_tasks(fn, tasks: list, jobs: int) -> list:
    """Apply fn to tasks, in order, optionally across worker processes."""
    if jobs <= 1 or len(tasks) <= 1:
        return [fn(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, tasks))


# ---------------------------------------------------------------------------
# subcommands; each returns (rows, all_ok)


def _count_task(task):
    p, f, d, h, lam, brute, budget = task
    spec = make_field(p, f)
    rep = counting.koblitz_count(counting.DeformationFamily(d, h, lam), spec, brute=brute, budget=budget)
    return rep.row()


def cmd_count(args) -> tuple[list[dict], bool]:
    h = tuple(int(x) for x in args.h.split(","))
    if args.n is not None and args.n != len(h):
        raise UsageError(f"--n={args.n} disagrees with len(--h)={len(h)}")
    counting.DeformationFamily(args.d, h)  # validate early
    primes = prime_list(args.p, lambda p: None if (p**args.f - 1) % args.d == 0 else f"{args.d} does not divide q-1")
    tasks = []
    for p in primes:
        q = p**args.f
        for lam in parse_int_range(args.lam, q):
            tasks.append((p, args.f, args.d, h, lam, not args.no_brute, args.budget))
    rows = _run_tasks(_count_task, tasks, _jobs(args))
    return rows, all(r["match"] for r in rows)


def _verify_task(task):
    family, p, lam, d = task
    return congruence.verify(family, p, lam, d)


def cmd_verify(args) -> tuple[list[dict], bool]:
    primes = prime_list(args.p, lambda p: congruence.admissible(args.family, p, args.d))
    tasks = []
    for p in primes:
        lams = congruence.lambda_range(args.family, p) if args.lam == "all" else parse_int_range(args.lam)
        for lam in lams:
            if lam % p == 0 or (args.family.startswith("legendre") and lam % p == 1):
                _log(f"skipping p={p} lambda={lam}: degenerate parameter")
                continue
            tasks.append((args.family, p, lam, args.d))
    reports = _run_tasks(_verify_task, tasks, _jobs(args))
    for r in reports:
        if not r.smooth and not r.match:
            _log(f"p={r.p} lambda={r.lam}: singular fiber, mismatch reported but not asserted")
    return [r.row() for r in reports], all(r.ok for r in reports)


def cmd_gauss_table(args) -> tuple[list[dict], bool]:
    spec = make_field(args.p, args.f)
    g = gauss_table(spec)
    rows, ok = [], True
    root = math.sqrt(spec.q)
    for a, val in enumerate(g):
        mod = abs(val)
        if a and abs(mod - root) > 1e-9 * root:
            ok = False
        rows.append({"a": a, "s": str(Fraction(a, spec.order)), "re": round(val.real, 12), "im": round(val.imag, 12), "abs": round(mod, 12)})
    return rows, ok


def cmd_katz_h(args) -> tuple[list[dict], bool]:
    spec = make_field(args.p, args.f)
    try:
        alpha = [char_index(spec, x) for x in _parse_fractions(args.alpha)]
        beta = [char_index(spec, x) for x in _parse_fractions(args.beta)]
    except PreconditionError as exc:
        raise UsageError(str(exc)) from None
    ts = range(1, spec.q) if args.t == "all" else parse_int_range(args.t)
    rows, ok = [], True
    tol = 1e-6 * spec.q ** ((len(alpha) + len(beta)) / 2)
    for t in ts:
        direct = katz.hyp_direct(spec, alpha, beta, t)
        fourier = katz.hyp_fourier(spec, alpha, beta, t)
        agree = abs(direct - fourier) <= tol
        ok &= agree
        rows.append({
            "t": t,
            "direct_re": round(direct.real, 9),
            "direct_im": round(direct.imag, 9),
            "fourier_re": round(fourier.real, 9),
            "fourier_im": round(fourier.imag, 9),
            "match": agree,
        })
    return rows, ok


def cmd_landau(args) -> tuple[list[dict], bool]:
    gamma = weights.WeightSystem.parse(args.gamma)
    rows = [
        {"kind": "interval", "lo": str(lo), "hi": str(hi), "L": val, "lhs": None, "rhs": None}
        for lo, hi, val in weights.period_table(gamma)
    ]
    jumps = weights.discontinuities(gamma)
    rows.append({"kind": "discontinuities", "lo": " ".join(map(str, jumps)), "hi": None, "L": None, "lhs": None, "rhs": None})
    ok = True
    if args.vp is not None:
        if args.n is None:
            raise UsageError("--p needs --n for the valuation identity")
        try:
            lhs, rhs = weights.valuation_identity(gamma, args.vp, args.n)
        except VerificationError:
            lhs, rhs, ok = weights.vp(args.vp, weights.u_coeff(gamma, args.n)), None, False
        rows.append({"kind": "valuation", "lo": args.vp, "hi": args.n, "L": None, "lhs": lhs, "rhs": rhs})
    return rows, ok


def cmd_padic_gamma(args) -> tuple[list[dict], bool]:
    try:
        x = Fraction(args.x)
    except ValueError:
        raise UsageError(f"bad argument x={args.x!r}") from None
    p, k = args.p, args.k
    val = padic_gamma(p, k, x)
    checks = {}
    for name, fn in (
        ("shift_ok", lambda: gamma_shift(p, k, x)),
        ("reflection_ok", lambda: gamma_reflection(p, k, x)),
        ("multiplication2_ok", lambda: gauss_multiplication(p, k, 2, x)),
        ("multiplication3_ok", lambda: gauss_multiplication(p, k, 3, x) if p != 3 else None),
    ):
        try:
            fn()
            checks[name] = True
        except VerificationError:
            checks[name] = False
    row = {"p": p, "k": k, "x": str(x), "residue": val.residue, "signed": val.signed(), "R": R(p, x), **checks}
    return [row], all(checks.values())


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="ffhyper", description="Point counts, Gauss sums and hypergeometric congruences over finite fields.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--out", help="write rows here instead of stdout")
    common.add_argument("--jobs", type=int, help=f"worker processes (default ${JOBS_ENV} or 1)")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("count", parents=[common], help="brute-force and Koblitz point counts")
    c.add_argument("--p", required=True, help="prime, list or range a..b")
    c.add_argument("--f", type=int, default=1)
    c.add_argument("--d", type=int, required=True)
    c.add_argument("--n", type=int)
    c.add_argument("--h", required=True, help="comma-separated exponents")
    c.add_argument("--lambda", dest="lam", default="all", help="value, list, range a..b or all")
    c.add_argument("--no-brute", action="store_true")
    c.add_argument("--budget", type=int, default=counting.DEFAULT_BUDGET)
    c.set_defaults(func=cmd_count)

    v = sub.add_parser("verify", parents=[common], help="congruences against brute-force counts")
    v.add_argument("--family", required=True, choices=congruence.FAMILIES)
    v.add_argument("--p", required=True)
    v.add_argument("--lambda", dest="lam", default="all")
    v.add_argument("--d", type=int, default=3, help="degree for the zerodim family")
    v.set_defaults(func=cmd_verify)

    g = sub.add_parser("gauss-table", parents=[common], help="all Gauss sums of F_q")
    g.add_argument("--p", type=int, required=True)
    g.add_argument("--f", type=int, default=1)
    g.set_defaults(func=cmd_gauss_table)

    kh = sub.add_parser("katz-h", parents=[common], help="H(alpha; beta | t) by both routes")
    kh.add_argument("--p", type=int, required=True)
    kh.add_argument("--f", type=int, default=1)
    kh.add_argument("--alpha", default="", help="rationals, e.g. 1/3,2/3")
    kh.add_argument("--beta", default="")
    kh.add_argument("--t", default="all")
    kh.set_defaults(func=cmd_katz_h)

    la = sub.add_parser("landau", parents=[common], help="Landau function table")
    la.add_argument("--gamma", required=True, help='sparse weights, e.g. "3:1,1:-3"')
    la.add_argument("--p", dest="vp", type=int)
    la.add_argument("--n", type=int)
    la.set_defaults(func=cmd_landau)

    pg = sub.add_parser("padic-gamma", parents=[common], help="Morita gamma and its identities")
    pg.add_argument("--p", type=int, required=True)
    pg.add_argument("--k", type=int, default=3)
    pg.add_argument("--x", required=True, help="integer or a/b")
    pg.set_defaults(func=cmd_padic_gamma)
    return parser


def write_rows(rows: Iterable[dict], fmt: str, stream):
    rows = list(rows)
    if fmt == "json":
        for r in rows:
            stream.write(json.dumps(r) + "\n")
        return
    if not rows:
        return
    writer = csv.DictWriter(stream, fieldnames=list(rows[0]), lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        rows, ok = args.func(args)
    except (UsageError, PreconditionError) as exc:
        _log(f"error: {exc}")
        return EXIT_USAGE
    except BudgetError as exc:
        _log(f"budget exceeded: {exc}")
        return EXIT_BUDGET
    except (VerificationError, RoundingError) as exc:
        _log(f"check failed: {exc}")
        return EXIT_ASSERT
    if args.out:
        with open(args.out, "w", newline="") as fh:
            write_rows(rows, args.format, fh)
    else:
        write_rows(rows, args.format, sys.stdout)
    return 0 if ok else EXIT_ASSERT


if __name__ == "__main__":
    sys.exit(main())
