"""Command-line front end: ``glcarm <subcommand> ...``.

Exit codes: 0 success, 1 a verification mismatch, 2 usage error,
3 input beyond the supported factoring or enumeration scale.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import re
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence, TextIO

from . import __version__
from .arith import Factorization, FactorizationFailure, factorize, is_prime
from .core import MAX_M, CarmichaelVerdict, Status, classify_range, enumerate_carmichael, k_m, korselt_check
from .families import (
    HypothesisViolated,
    Proposition,
    analyze_prime_set,
    family_membership,
    p_number_search,
    verify_invariance,
)
from .matrix import (
    ScaleExceeded,
    construct_witness,
    group_exponent_bruteforce,
    matrix_order,
    oracle_is_carmichael,
)

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE, EXIT_SCALE = 0, 1, 2, 3

_EXPR = re.compile(r"^\d+(\^\d+)?(\*\d+(\^\d+)?)*$")


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class ResultRecord:
    n: int
    factorization: list[list[int]]
    m: int
    carmichael: bool
    trivial: bool
    witness_prime: int | None = None
    failing_k: int | None = None

    @classmethod
    def from_verdict(cls, n: int, f: Factorization, m: int, verdict: CarmichaelVerdict) -> "ResultRecord":
        return cls(
            n=n,
            factorization=[[p, e] for p, e in f],
            m=m,
            carmichael=verdict.carmichael,
            trivial=verdict.trivial,
            witness_prime=verdict.witness_prime,
            failing_k=verdict.failing_k,
        )

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "factorization": self.factorization,
            "m": self.m,
            "carmichael": self.carmichael,
            "trivial": self.trivial,
            "witness_prime": self.witness_prime,
            "failing_k": self.failing_k,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), separators=(",", ":"))

    @classmethod
    def from_json(cls, line: str) -> "ResultRecord":
        d = json.loads(line)
        record = cls(**d)
        if math.prod(p**e for p, e in record.factorization) != record.n:
            raise ValueError(f"factorization does not reconstruct {record.n}")
        return record


def parse_number(text: str) -> int:
    """Plain decimal or a product of powers such as ``2^286*3^36``."""
    text = text.replace(" ", "")
    if not _EXPR.match(text):
        raise UsageError(f"cannot parse number expression {text!r}")
    n = 1
    for term in text.split("*"):
        base, _, exp = term.partition("^")
        n *= int(base) ** int(exp or 1)
    return n


def parse_factors(text: str, n: int) -> Factorization:
    pairs = []
    for term in text.replace(" ", "").split(","):
        if not re.fullmatch(r"\d+(\^\d+)?", term):
            raise UsageError(f"bad factor {term!r}; expected p^e")
        base, _, exp = term.partition("^")
        pairs.append((int(base), int(exp or 1)))
    for p, _ in pairs:
        if not is_prime(p):
            raise UsageError(f"stated factor {p} is not prime")
    f = Factorization.from_pairs(pairs, verify=False)
    if f.n != n:
        raise UsageError(f"stated factors multiply to {f.n}, not {n}")
    return f


def _factorization(n: int, factors: str | None) -> Factorization:
    if n < 2:
        raise UsageError("n must be at least 2")
    return parse_factors(factors, n) if factors else factorize(n)


def _check_m(m: int) -> int:
    if not 2 <= m <= MAX_M:
        raise UsageError(f"--m must lie in [2, {MAX_M}]")
    return m


def _default_format() -> str:
    return "table" if sys.stdout.isatty() else "jsonl"


def _emit(rows: Iterable[dict], fmt: str, out: TextIO, columns: Sequence[str] | None = None) -> None:
    rows = list(rows)
    if fmt == "jsonl":
        for row in rows:
            out.write(json.dumps(row, separators=(",", ":")) + "\n")
        return
    if not rows:
        return
    columns = list(columns or rows[0].keys())

    def cell(column: str, v: object) -> str:
        if column == "factorization":
            return "*".join(f"{p}^{e}" if e > 1 else str(p) for p, e in v)
        if isinstance(v, (list, tuple, dict)):
            return json.dumps(v, separators=(",", ":"))
        return "-" if v is None else str(v)

    body = [[cell(c, r.get(c)) for c in columns] for r in rows]
    widths = [max(len(c), *(len(b[i]) for b in body)) for i, c in enumerate(columns)]
    out.write("  ".join(c.rjust(w) for c, w in zip(columns, widths)).rstrip() + "\n")
    for b in body:
        out.write("  ".join(x.rjust(w) for x, w in zip(b, widths)).rstrip() + "\n")


def cmd_check(args: argparse.Namespace, out: TextIO) -> int:
    n = parse_number(args.n)
    m = _check_m(args.m)
    f = _factorization(n, args.factors)
    verdict = korselt_check(m, n, f)
    row = ResultRecord.from_verdict(n, f, m, verdict).to_dict()
    row["status"] = verdict.status.value
    code = EXIT_OK
    if args.witness and verdict.status is Status.NOT_CARMICHAEL:
        p, k = verdict.witness_prime, verdict.failing_k
        A = construct_witness(m, n, f, p, k)
        order = matrix_order(A, p**k - 1)
        fixes = (A ** k_m(m, n, f).k).is_identity()
        row["witness_matrix"] = A.tolist()
        row["witness_order"] = order
        row["witness_verified"] = order == p**k - 1 and not fixes
        if not row["witness_verified"]:
            code = EXIT_MISMATCH
    _emit([row], args.format, out)
    return code


def _load_cache(path: Path, header: dict) -> list[str] | None:
    if not path.exists():
        return None
    lines = path.read_text().splitlines()
    if not lines or json.loads(lines[0]) != header:
        return None
    return lines[1:]


def cmd_enumerate(args: argparse.Namespace, out: TextIO) -> int:
    m = _check_m(args.m)
    header = {"version": __version__, "N": args.max, "m": m, "nontrivial": args.nontrivial}
    cache = Path(args.cache) if args.cache else None
    lines = _load_cache(cache, header) if cache else None
    if lines is None:
        hits = enumerate_carmichael(m, args.max, args.nontrivial, threads=args.threads)
        lines = [ResultRecord.from_verdict(n, factorize(n), m, v).to_json() for n, v in hits]
        if cache:
            cache.write_text("\n".join([json.dumps(header, separators=(",", ":"))] + lines) + "\n")
    if args.format == "jsonl":
        for line in lines:
            out.write(line + "\n")
    else:
        _emit((json.loads(x) for x in lines), "table", out, ["n", "factorization", "m", "trivial"])
    return EXIT_OK


def cmd_classify(args: argparse.Namespace, out: TextIO) -> int:
    ms = range(_check_m(args.m_from), _check_m(args.m_to) + 1)
    rows = []
    for n, c in classify_range(args.max, ms).items():
        if not c.m_values or (args.nontrivial and c.trivial):
            continue
        rows.append({
            "n": n,
            "factorization": [[p, e] for p, e in c.factorization],
            "m_values": sorted(c.m_values),
            "trivial": c.trivial,
        })
    _emit(rows, args.format, out)
    return EXIT_OK


def cmd_oracle(args: argparse.Namespace, out: TextIO) -> int:
    n = parse_number(args.n)
    m = _check_m(args.m)
    f = _factorization(n, args.factors)
    if f.is_prime:
        raise UsageError(f"{n} is prime")
    report = oracle_is_carmichael(m, n, f, mode=args.mode, samples=args.samples, seed=args.seed)
    criterion = korselt_check(m, n, f).carmichael
    row = report.to_dict()
    row["criterion"] = criterion
    if args.mode == "exhaustive":
        agree = report.carmichael == criterion
    else:
        agree = report.carmichael or not criterion
    row["agree"] = agree
    _emit([row], args.format, out)
    return EXIT_OK if agree else EXIT_MISMATCH


def cmd_exponent(args: argparse.Namespace, out: TextIO) -> int:
    q = parse_number(args.p)
    m = _check_m(args.m)
    f = factorize(q) if q >= 2 else None
    if f is None or not f.is_prime_power:
        raise UsageError(f"{q} is not a prime power")
    p, e = f.pairs[0]
    if args.compare and e != 1:
        raise UsageError("--compare needs a prime modulus")
    value = group_exponent_bruteforce(m, q, early_exit=not args.full)
    row: dict = {"q": q, "m": m, "exponent": value}
    code = EXIT_OK
    if args.compare:
        formula = k_m(m, p, f).k
        row["formula"] = formula
        row["equal"] = formula == value
        code = EXIT_OK if row["equal"] else EXIT_MISMATCH
    _emit([row], args.format, out)
    return code


def _family_domain(prop: Proposition, limit: int, k_max: int, l_max: int) -> Iterable[tuple[int, dict]]:
    if prop in (Proposition.THREE_CARM_23, Proposition.FOUR_CARM_23):
        for k in range(1, k_max + 1):
            for l in range(1, l_max + 1):
                yield 2**k * 3**l, {"k": k, "l": l}
        return
    top = 7 if prop is Proposition.TWO_CARM_7_SMOOTH else 11
    for n in range(4, limit + 1):
        f = factorize(n)
        if f.is_prime_power or f.primes[-1] > top:
            continue
        if top == 11 and f.primes[-1] != 11:
            continue
        yield n, {}


def cmd_families(args: argparse.Namespace, out: TextIO) -> int:
    prop = Proposition(args.prop)
    rows, mismatches, checked = [], [], 0
    for n, extra in _family_domain(prop, args.max, args.k_max, args.l_max):
        fid = family_membership(prop, **extra) if extra else family_membership(prop, n)
        checked += 1
        if args.verify:
            truth = korselt_check(prop.m, n).carmichael
            if truth != (fid is not None):
                mismatches.append({"n": n, **extra, "family": fid and fid.family_index, "criterion": truth})
        elif fid is not None:
            rows.append({"n": n, "factorization": [[p, e] for p, e in factorize(n)], "family": fid.family_index})
    if args.verify:
        _emit([{"prop": prop.value, "checked": checked, "disagreements": mismatches}], "jsonl", out)
        return EXIT_MISMATCH if mismatches else EXIT_OK
    _emit(rows, args.format, out)
    return EXIT_OK


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise UsageError(f"expected comma-separated integers, got {text!r}") from None


def cmd_pnumbers(args: argparse.Namespace, out: TextIO) -> int:
    m = _check_m(args.m)
    primes = _int_list(args.primes)
    bounds = _int_list(args.bounds)
    if len(primes) != len(bounds) or not primes:
        raise UsageError("--primes and --bounds need the same nonzero length")
    if len(set(primes)) != len(primes) or not all(is_prime(p) for p in primes):
        raise UsageError("--primes must list distinct primes")
    if min(bounds) < 1:
        raise UsageError("bounds must be at least 1")
    box = dict(zip(primes, bounds))
    hits = p_number_search(m, primes, box)
    rows = [ResultRecord.from_verdict(f.n, f, m, korselt_check(m, f.n, f)).to_dict() for f in hits]
    _emit(rows, args.format, out)
    if not args.verify_invariance:
        return EXIT_OK
    analysis = analyze_prime_set(m, primes)
    report = verify_invariance(m, primes, box)
    summary = {
        "invariance": {
            "P": list(report.P),
            "m": m,
            "d_prime": analysis.d_prime,
            "d_dprime": analysis.d_dprime,
            "lambda": analysis.lambda_dd,
            "v": {str(p): v for p, v in report.v.items()},
            "checked": report.checked,
            "violations": [[[p, e] for p, e in f] + [q] for f, q in report.violations],
        }
    }
    out.write(json.dumps(summary, separators=(",", ":")) + "\n")
    return EXIT_OK if report.ok else EXIT_MISMATCH


def _threads_default() -> int:
    try:
        return max(1, int(os.environ.get("GLCARM_THREADS", "1")))
    except ValueError:
        return 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="glcarm", description="m-Carmichael numbers for GL(m).")
    parser.add_argument("--version", action="version", version=__version__)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("jsonl", "table"), default=None)
    common.add_argument("--threads", type=int, default=_threads_default())
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", parents=[common], help="verdict for one n")
    p.add_argument("n")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--factors")
    p.add_argument("--witness", action="store_true")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("enumerate", parents=[common], help="all m-Carmichael n <= N")
    p.add_argument("--max", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--nontrivial", action="store_true")
    p.add_argument("--cache")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("classify", parents=[common], help="per-n sets of m")
    p.add_argument("--max", type=int, required=True)
    p.add_argument("--m-from", type=int, default=2)
    p.add_argument("--m-to", type=int, default=10)
    p.add_argument("--nontrivial", action="store_true")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("oracle", parents=[common], help="matrix-group ground truth")
    p.add_argument("n")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--mode", choices=("exhaustive", "sampled"), default="exhaustive")
    p.add_argument("--samples", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--factors")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("exponent", parents=[common], help="brute-force exponent of GL(m, Z/qZ)")
    p.add_argument("--p", required=True, help="prime power modulus q")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--compare", action="store_true")
    p.add_argument("--full", action="store_true", help="visit every element, no early exit")
    p.set_defaults(func=cmd_exponent)

    p = sub.add_parser("families", parents=[common], help="closed-form family tables")
    p.add_argument("--prop", choices=[x.value for x in Proposition], required=True)
    p.add_argument("--verify", action="store_true")
    p.add_argument("--max", type=int, default=10**5)
    p.add_argument("--k-max", type=int, default=24)
    p.add_argument("--l-max", type=int, default=12)
    p.set_defaults(func=cmd_families)

    p = sub.add_parser("pnumbers", parents=[common], help="P-number search")
    p.add_argument("--primes", required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--bounds", required=True)
    p.add_argument("--verify-invariance", action="store_true")
    p.set_defaults(func=cmd_pnumbers)
    return parser


def main(argv: Sequence[str] | None = None, out: TextIO | None = None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.format is None:
        args.format = _default_format()
    try:
        return args.func(args, out)
    except (UsageError, HypothesisViolated) as exc:
        print(f"glcarm: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (FactorizationFailure, ScaleExceeded) as exc:
        print(f"glcarm: scale: {exc}", file=sys.stderr)
        return EXIT_SCALE


if __name__ == "__main__":
    sys.exit(main())
