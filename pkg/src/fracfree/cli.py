"""Command-line front end: ``fracfree solve|verify|predict|bench``.

Exit codes: 0 success, 1 usage or parse error, 2 mathematical failure
(singular system, condensation breakdown, ...), 3 internal error such as a
disagreement between algorithms.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
import time
from fractions import Fraction
from typing import Any, Sequence

from .costmodel import ALGORITHM_ORDER, KINDS, CostScenario, cost_report, count_formulas
from .errors import CondensationBreakdown, MathFailure, ParseError, SingularSystem
from .fileformat import parse_system
from .matrix import MAX_ORACLE_ORDER, AugmentedMatrix, corner_minor, random_system, substituted_minor
from .modular import modular_solve
from .rings import IntegerRing, OpCounts, PrimeField, Ring
from .solvers import MinorTable, assemble_solution, canonical_algorithm, run

SCHEMA_VERSION = 1
EXIT_OK, EXIT_USAGE, EXIT_MATH, EXIT_INTERNAL = 0, 1, 2, 3


class UsageError(Exception):
    pass


class Disagreement(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


# -- value rendering -------------------------------------------------------------


def _jsonable(v: Any) -> Any:
    if isinstance(v, bool) or v is None:
        return v
    if isinstance(v, int):
        return v
    if isinstance(v, Fraction):
        return str(v) if v.denominator != 1 else v.numerator
    if isinstance(v, tuple):
        return f"({v[0]})/({v[1]})"
    return str(v)


def _text(v: Any) -> str:
    return str(_jsonable(v))


# -- solve -------------------------------------------------------------------------


def _solve_table(A: AugmentedMatrix, alg: str) -> tuple[MinorTable, OpCounts | None, dict]:
    if alg == "modular":
        if not isinstance(A.ring.base, IntegerRing):
            raise UsageError("--alg modular needs an integer system")
        table, plan = modular_solve(A)
        per_prime = count_formulas("onepass", A.n, A.m)
        k = len(plan.primes)
        counts = OpCounts(per_prime.mul * k, per_prime.div * k, per_prime.addsub * k)
        return table, counts, {"primes": plan.primes, "unlucky": plan.unlucky, "bound": plan.bound}
    table, counts = run(A, alg)
    return table, counts, {}


def solve_report(A: AugmentedMatrix, alg: str) -> dict[str, Any]:
    table, counts, extra = _solve_table(A, alg)
    sol = assemble_solution(table)
    delta, minors = table.values()
    report = {
        "schema_version": SCHEMA_VERSION,
        "algorithm": alg,
        "n": A.n,
        "m": A.m,
        "delta": _jsonable(delta),
        "minors": [[_jsonable(v) for v in row] for row in minors],
        "solution": {
            "num": [_jsonable(v) for v in sol.num],
            "den": _jsonable(sol.den),
            "free": [[_jsonable(v) for v in row] for row in sol.free],
            "values": [_jsonable(v) for v in sol.values()],
            "text": sol.render(),
        },
        "counts": counts.as_dict() if counts is not None else None,
        "permutation": [p + 1 for p in table.perm],
    }
    if extra:
        report["modular"] = extra
    return report


def _print_solve(rep: dict[str, Any]) -> None:
    n = rep["n"]
    print(f"algorithm: {rep['algorithm']}")
    print(f"row order: {' '.join(map(str, rep['permutation']))}")
    print(f"delta^{n} = {rep['delta']}")
    for i, row in enumerate(rep["minors"], start=1):
        for j, v in enumerate(row, start=n + 1):
            print(f"delta^{n}_{i},{j} = {v}")
    print("solution:")
    for line in rep["solution"]["text"]:
        print(f"  {line}")
    c = rep["counts"]
    print(f"counts: mul {c['mul']}, div {c['div']}, addsub {c['addsub']}")
    if "modular" in rep:
        md = rep["modular"]
        print(f"primes: {len(md['primes'])} kept, {len(md['unlucky'])} unlucky")


def _read_system(path: str) -> AugmentedMatrix:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e.strerror}") from None
    return parse_system(text)


def cmd_solve(args) -> int:
    A = _read_system(args.file)
    alg = args.alg if args.alg == "modular" else canonical_algorithm(args.alg)
    rep = solve_report(A, alg)
    if args.json:
        print(json.dumps(rep, sort_keys=True))
    else:
        _print_solve(rep)
    return EXIT_OK


# -- verify -----------------------------------------------------------------------


def oracle_values(A: AugmentedMatrix) -> tuple[Any, list[list[Any]]]:
    n, m = A.n, A.m
    delta = corner_minor(A, n)
    minors = [[substituted_minor(A, n, (i, j)) for j in range(n + 1, m + 1)] for i in range(1, n + 1)]
    return delta, minors


def verify_system(A: AugmentedMatrix) -> tuple[str, dict[str, Any]]:
    """Run every applicable algorithm (and the oracle for n <= 8) on A.

    Returns a one-line summary and the per-algorithm outcomes.  Raises
    Disagreement naming the first differing minor.
    """
    algs = [a for a in ALGORITHM_ORDER if a != "dodgson" or A.m == A.n + 1]
    results: dict[str, Any] = {}
    for alg in algs:
        try:
            results[alg] = run(A, alg)[0].values()
        except (CondensationBreakdown, SingularSystem) as e:
            results[alg] = e
    use_oracle = A.n <= MAX_ORACLE_ORDER
    if use_oracle:
        results["oracle"] = oracle_values(A)

    tables = {k: v for k, v in results.items() if not isinstance(v, Exception)}
    singular = {k for k, v in results.items() if isinstance(v, SingularSystem)}
    broken = {k: v for k, v in results.items() if isinstance(v, CondensationBreakdown)}
    R = A.ring.base

    if singular:
        # agreement means every solver and the oracle see delta^n = 0
        bad = [k for k, (d, _) in tables.items() if not R.is_zero(d)]
        if bad:
            raise Disagreement(f"{', '.join(sorted(singular))} report singular, {bad[0]} has delta^n != 0")
        return "all algorithms report SingularSystem", results

    ref_name = next(iter(tables))
    ref = tables[ref_name]
    for name, (d, mins) in tables.items():
        if d != ref[0]:
            raise Disagreement(f"delta^n: {ref_name} gives {_text(ref[0])}, {name} gives {_text(d)}")
        for i, (r1, r2) in enumerate(zip(ref[1], mins), start=1):
            for j, (v1, v2) in enumerate(zip(r1, r2), start=A.n + 1):
                if v1 != v2:
                    raise Disagreement(
                        f"delta^n_{i},{j}: {ref_name} gives {_text(v1)}, {name} gives {_text(v2)}"
                    )
    n_ok = len([k for k in tables if k != "oracle"])
    tail = " + oracle" if use_oracle else ""
    parts = []
    if broken:
        for k, e in broken.items():
            parts.append(f"{k}: breakdown at ({e.k},{e.i},{e.j})")
        return "; ".join(parts) + "; others agree", results
    if "dodgson" not in algs:
        return f"{n_ok} algorithms{tail} agree (dodgson needs m = n+1)", results
    return f"{n_ok} algorithms{tail} agree", results


def cmd_verify(args) -> int:
    if args.random:
        if args.n is None or args.m is None:
            raise UsageError("--random needs -n and -m")
        if not 1 <= args.n < args.m:
            raise UsageError("need 1 <= n < m")
        ring = PrimeField(args.modulus) if args.modulus else IntegerRing()
        rng = random.Random(args.seed)
        breakdowns = 0
        failures: list[str] = []
        for t in range(args.trials):
            A = random_system(rng, args.n, args.m, -args.bound, args.bound, ring)
            try:
                line, res = verify_system(A)
            except Disagreement as e:
                failures.append(f"trial {t}: {e}")
                continue
            breakdowns += any(isinstance(v, CondensationBreakdown) for v in res.values())
        head = f"random n={args.n} m={args.m} trials={args.trials} seed={args.seed}"
        if failures:
            print(f"{head}: {len(failures)} disagreements")
            for f in failures:
                print(f"  {f}")
            return EXIT_INTERNAL
        print(f"{head}: all agree ({breakdowns} dodgson breakdowns)")
        return EXIT_OK
    if not args.file:
        raise UsageError("verify needs FILE or --random")
    A = _read_system(args.file)
    try:
        line, _ = verify_system(A)
    except Disagreement as e:
        print(f"disagreement: {e}")
        return EXIT_INTERNAL
    print(line)
    return EXIT_OK


# -- predict -----------------------------------------------------------------------


def _scenario(args) -> CostScenario:
    return CostScenario(
        kind=args.ring,
        r=args.r,
        p=args.p,
        l=args.l,
        t_mul=_number(args.t_mul),
        t_div=_number(args.t_div),
        t_add=_number(args.t_add),
        modulus_bits=args.bits,
    )


def _number(text: str) -> int | Fraction:
    try:
        v = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"not a number: {text!r}") from None
    return v.numerator if v.denominator == 1 else v


def cmd_predict(args) -> int:
    n = args.n
    m = args.m if args.m is not None else n + 1
    if not 2 <= n < m:
        raise UsageError("need 2 <= n < m")
    try:
        s = _scenario(args)
    except ValueError as e:
        raise UsageError(str(e)) from None
    rep = cost_report(n, m, s)
    d = rep.as_dict()
    if args.json:
        d["schema_version"] = SCHEMA_VERSION
        print(json.dumps(d, sort_keys=True))
        return EXIT_OK
    print(f"n={n} m={m} ring={s.kind} r={s.r} p={s.p} l={s.l}")
    print(f"{'algorithm':<10}{'mul':>14}{'div':>14}{'addsub':>14}")
    for alg, c in rep.counts.items():
        print(f"{alg:<10}{c.mul:>14}{c.div:>14}{c.addsub:>14}")
    if rep.times:
        print(f"predicted time / {rep.scale_name}:")
        for alg, r in rep.ratios.items():
            exp = rep.expected_ratios.get(alg) if rep.expected_ratios else None
            tail = f"   (leading-order {exp:.4g})" if exp is not None else ""
            print(f"  {alg:<10}{r:.6g}{tail}")
    print(f"moduli needed (mu): {rep.mu}")
    return EXIT_OK


# -- bench -------------------------------------------------------------------------


def cmd_bench(args) -> int:
    ring: Ring = PrimeField(args.modulus) if args.modulus else IntegerRing()
    rng = random.Random(args.seed)
    rows = []
    for n in args.sizes:
        m = n + 1
        systems = [random_system(rng, n, m, -args.bound, args.bound, ring) for _ in range(args.trials)]
        for alg in ALGORITHM_ORDER:
            elapsed = 0.0
            counts = None
            done = 0
            for A in systems:
                t0 = time.perf_counter()
                try:
                    _, c = run(A, alg)
                except CondensationBreakdown:
                    continue
                elapsed += time.perf_counter() - t0
                counts, done = c, done + 1
            expected = count_formulas(alg, n, m) if alg != "dodgson" else None
            rows.append(
                {
                    "n": n,
                    "algorithm": alg,
                    "runs": done,
                    "seconds": round(elapsed / done, 6) if done else None,
                    "counts": counts.as_dict() if counts else None,
                    "formula": expected.as_dict() if expected else None,
                }
            )
    if args.json:
        print(json.dumps(rows, sort_keys=True))
        return EXIT_OK
    print(f"{'n':>3} {'algorithm':<10}{'runs':>5}{'sec/run':>11}{'mul':>8}{'div':>7}{'addsub':>8}  formula")
    for r in rows:
        c = r["counts"] or {"mul": "-", "div": "-", "addsub": "-"}
        sec = f"{r['seconds']:.2e}" if r["seconds"] is not None else "-"
        f = r["formula"]
        ok = "-" if f is None or r["counts"] is None else ("ok" if f == r["counts"] else "MISMATCH")
        print(f"{r['n']:>3} {r['algorithm']:<10}{r['runs']:>5}{sec:>11}{c['mul']:>8}{c['div']:>7}{c['addsub']:>8}  {ok}")
    return EXIT_OK


# -- entry point -------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="fracfree", description="Fraction-free linear system solvers.")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("solve", help="solve a system file")
    p.add_argument("file")
    p.add_argument("--alg", default="onepass",
                   choices=["dodgson", "bareiss", "fb", "onepass", "modular", "forward_backup", "one_pass"])
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("verify", help="cross-check all algorithms against each other and the oracle")
    p.add_argument("file", nargs="?")
    p.add_argument("--random", action="store_true", help="verify seeded random systems instead")
    p.add_argument("-n", type=int)
    p.add_argument("-m", type=int)
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--bound", type=int, default=99, help="entries drawn from [-bound, bound]")
    p.add_argument("--modulus", type=int, help="work over Z/pZ instead of the integers")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("predict", help="operation counts and cost-model predictions")
    p.add_argument("-n", type=int, default=2000)
    p.add_argument("-m", type=int)
    p.add_argument("--ring", choices=KINDS, default="unit")
    p.add_argument("-r", type=int, default=0, help="number of polynomial variables")
    p.add_argument("-p", type=int, default=1, help="degree per variable of the entries")
    p.add_argument("-l", type=int, default=1, help="words per integer coefficient")
    p.add_argument("--t-mul", default="1")
    p.add_argument("--t-div", default="1")
    p.add_argument("--t-add", default="0")
    p.add_argument("--bits", type=int, default=31, help="bits per modulus")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_predict)

    p = sub.add_parser("bench", help="time the solvers on seeded random square systems")
    p.add_argument("--sizes", type=int, nargs="+", default=[2, 4, 8, 16])
    p.add_argument("--trials", type=int, default=5)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--bound", type=int, default=99)
    p.add_argument("--modulus", type=int)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_bench)
    return ap


def main(argv: Sequence[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as e:  # --help or a usage error
        return e.code if isinstance(e.code, int) else EXIT_USAGE
    try:
        return args.func(args)
    except ParseError as e:
        print(f"{type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_USAGE
    except UsageError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except MathFailure as e:
        print(f"{type(e).__name__}: {e}", file=sys.stderr)
        if isinstance(e, SingularSystem):
            print("SingularSystem")
        return EXIT_MATH
    except ValueError as e:  # NotSquare, bad scenario parameters
        print(f"{type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_USAGE
    except Exception as e:  # pragma: no cover - last resort
        print(f"internal error: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
