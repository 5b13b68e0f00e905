"""Command-line front end: each subcommand runs a verification suite and
streams one report per check as JSON lines, TSV or plain text.

Exit status is 0 when every check passes, 1 on any failure, 2 on usage errors.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
import time
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Any, Callable, Iterable

from .arith import divisors, is_prime, primes_up_to
from .report import jsonable

DEFAULT_STICKELBERGER_FIELDS = ((3, 1), (3, 2), (3, 3), (5, 1), (5, 2), (7, 1), (7, 2), (11, 1), (13, 1))
DEFAULT_SERIES_PAIRS = ((5, 3), (7, 3), (5, 7), (11, 3))
EULER_SOLUTIONS = [(-3, 2, 2, 3), (3, 2, 2, 3)]


@dataclass
class RunConfig:
    subcommand: str
    fmt: str = "json"
    jobs: int = 1
    seed: int = 0
    timing: bool = True
    plot_dir: str | None = None
    bounds: dict = field(default_factory=dict)


@dataclass
class Report:
    suite: str
    params: dict
    passed: bool
    witness: Any = None
    ms: float | None = None

    def to_json(self) -> dict:
        return {"suite": self.suite, "params": jsonable(self.params), "pass": bool(self.passed),
                "witness": jsonable(self.witness), "ms": self.ms}


# -- workers (top level so they pickle) ---------------------------------------


def _timed(fn: Callable[..., list[Report]], kwargs: dict) -> list[Report]:
    t0 = time.perf_counter()
    try:
        reports = fn(**kwargs)
    except Exception as exc:  # a crash is a failed check with its reproducer
        reports = [Report(fn.__name__.lstrip("_").replace("_", "-"), kwargs, False,
                          {"error": f"{type(exc).__name__}: {exc}"})]
    ms = round((time.perf_counter() - t0) * 1000, 3)
    for r in reports:
        r.ms = ms
    return reports


def _run_task(task: tuple[Callable, dict]) -> list[Report]:
    fn, kwargs = task
    return _timed(fn, kwargs)


def _gauss_check(p: int, f: int) -> list[Report]:
    from .finitefield import build_field
    from .gauss import field_identity_suite

    field_ = build_field(p, f)
    res = field_identity_suite(field_)
    return [Report("gauss-check", {"p": p, "f": f}, res["pass"],
                   {"q": res["q"], "counts": res["counts"], "failures": res["failures"],
                    "field": field_.descriptor()})]


def _stickelberger(p: int, f: int) -> list[Report]:
    from .padic import stickelberger_congruence_check, stickelberger_relation_check

    q = p**f
    reps = [stickelberger_congruence_check(p, f, a) for a in range(q - 1)]
    vals = [[a, r.lhs["v_gauss"], r.rhs["s"]] for a, r in enumerate(reps)]
    out = [Report("stickelberger-congruence", {"p": p, "f": f}, all(reps),
                  {"valuations": vals, "failed_a": [a for a, r in enumerate(reps) if not r]})]
    for m in divisors(q - 1):
        if m > 1:
            rel = stickelberger_relation_check(p, f, m)
            out.append(Report("stickelberger-relation", {"p": p, "f": f, "m": m}, rel.passed,
                              {"r_t": rel.lhs, "expected": rel.rhs, **rel.witness}))
    return out


def _h_minus(p: int) -> list[Report]:
    from .classnum import KNOWN_H_MINUS, h_minus

    h = h_minus(p)
    known = KNOWN_H_MINUS.get(p)
    return [Report("h-minus", {"p": p}, known is None or h == known, {"h_minus": h, "reference": known})]


def _lattice(p: int) -> list[Report]:
    from .cyclotomic import kummer_sum_identity
    from .groupring import lattice_facts_check

    rep = lattice_facts_check(p)
    out = [Report("stickelberger-lattice", {"p": p}, rep.passed, {**rep.lhs, **rep.witness})]
    val = kummer_sum_identity(p)
    target = Fraction(1 - p * p, 12)
    out.append(Report("kummer-sum", {"p": p}, val == target, {"value": val, "target": target}))
    return out


def _generation(m: int) -> list[Report]:
    from .groupring import stickelberger_generation_check

    rep = stickelberger_generation_check(m)
    return [Report("stickelberger-generation", {"m": m}, rep.passed, {"rank": len(rep.lhs)})]


def _pell(D: int, k_max: int) -> list[Report]:
    from .diophantine import pell_fundamental, stoermer_scan

    sol = pell_fundamental(D)
    ks = stoermer_scan(D, k_max)
    ok = sol.x * sol.x - D * sol.y * sol.y == 1 and set(ks) <= {1}
    return [Report("pell", {"D": D, "k_max": k_max}, ok, {"x": sol.x, "y": sol.y, "stoermer": ks})]


def _catalan(x_max: int, e_max: int, raw: bool) -> list[Report]:
    from .diophantine import brute_catalan

    sols = brute_catalan(x_max, e_max, prime_exponents=not raw)
    expected = EULER_SOLUTIONS if x_max >= 3 and e_max >= 3 else []
    return [Report("catalan-search", {"x_max": x_max, "e_max": e_max, "raw": raw}, sols == expected,
                   {"solutions": [list(s) for s in sols]})]


def _fuzz(kind: str, seed: int, count: int) -> list[Report]:
    from .diophantine import cassels_decomposition_check, petit_lemme_check

    rng = random.Random(f"{kind}:{seed}")
    small_primes = primes_up_to(50)
    done, failed = 0, []
    while done < count:
        x = rng.randint(-10**6, 10**6)
        y = rng.randint(-10**6, 10**6)
        if x == 0 or y == 0 or x == y or gcd(x, y) != 1:
            continue
        if kind == "petit-lemme":
            n = rng.randint(1, 30)
            sign = rng.choice((1, -1))
            if sign == 1 and n % 2 == 0:
                n += 1
            if x + sign * y == 0:
                continue
            rep = petit_lemme_check(x, y, n, sign)
        else:
            rep = cassels_decomposition_check(x, y, rng.choice(small_primes))
        done += 1
        if not rep.passed:
            failed.append(rep.parameters)
    return [Report(f"fuzz-{kind}", {"seed": seed, "count": count}, not failed, {"failures": failed[:20]})]


def _eliminate_row(p: int, bound: int) -> list[Report]:
    from .diophantine import eliminate_pair

    out = []
    for q in primes_up_to(bound):
        if q > 2 and q != p:
            v = eliminate_pair(p, q)
            out.append(Report("eliminate", {"p": p, "q": q}, True, {"verdict": v.verdict, **v.witness}))
    return out


def _series(p: int, q: int, K: int, coeffs: list[int]) -> list[Report]:
    from .groupring import GroupRingElt, mihailescu_series

    theta = GroupRingElt(p, coeffs)
    _, rep = mihailescu_series(p, q, theta, K)
    return [Report("series", {"p": p, "q": q, "K": K, "theta": coeffs}, rep.passed, rep.witness)]


# -- task planning ------------------------------------------------------------


def _prime_powers(q_max: int, odd_only: bool = False) -> list[tuple[int, int]]:
    out = []
    for p in primes_up_to(q_max):
        if odd_only and p == 2:
            continue
        f = 1
        while p**f <= q_max:
            if p**f >= 3:
                out.append((p, f))
            f += 1
    return sorted(out, key=lambda t: (t[0] ** t[1], t[0]))


def plan(cfg: RunConfig) -> list[tuple[Callable, dict]]:
    b = cfg.bounds
    sub = cfg.subcommand
    if sub == "gauss-check":
        return [(_gauss_check, {"p": p, "f": f}) for p, f in _prime_powers(b["q_max"])]
    if sub == "stickelberger":
        fields = DEFAULT_STICKELBERGER_FIELDS if b["q_max"] is None else _prime_powers(b["q_max"], True)
        return [(_stickelberger, {"p": p, "f": f}) for p, f in fields]
    if sub == "h-minus":
        return [(_h_minus, {"p": p}) for p in primes_up_to(b["p_max"]) if p > 2]
    if sub == "group-ring":
        tasks = [(_lattice, {"p": p}) for p in primes_up_to(b["p_max"]) if p > 2]
        tasks += [(_generation, {"m": m}) for m in range(3, b["m_max"] + 1)]
        return tasks
    if sub == "pell":
        ds = [b["d"]] if b["d"] is not None else range(2, b["d_max"] + 1)
        return [(_pell, {"D": D, "k_max": b["k_max"]}) for D in ds if int(D**0.5 + 0.5) ** 2 != D]
    if sub == "catalan-search":
        tasks = [(_catalan, {"x_max": b["x_max"], "e_max": b["e_max"], "raw": b["raw"]})]
        if b["fuzz"]:
            tasks += [(_fuzz, {"kind": k, "seed": cfg.seed, "count": b["fuzz"]})
                      for k in ("petit-lemme", "cassels")]
        return tasks
    if sub == "eliminate":
        return [(_eliminate_row, {"p": p, "bound": b["max"]}) for p in primes_up_to(b["max"]) if p > 2]
    if sub == "series":
        pairs = [(b["p"], b["q"])] if b["p"] is not None else DEFAULT_SERIES_PAIRS
        tasks = []
        for p, q in pairs:
            rng = random.Random(f"series:{cfg.seed}:{p}:{q}")
            coeffs = [rng.randint(0, q) for _ in range(p - 1)]
            tasks.append((_series, {"p": p, "q": q, "K": b["K"], "coeffs": coeffs}))
        return tasks
    raise ValueError(f"unknown subcommand {sub}")


def execute(cfg: RunConfig) -> Iterable[Report]:
    """Run planned tasks, yielding reports in canonical (planning) order."""
    tasks = plan(cfg)
    if cfg.jobs > 1 and len(tasks) > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
            for batch in pool.map(_run_task, tasks):
                yield from batch
    else:
        for task in tasks:
            yield from _run_task(task)


# -- output -------------------------------------------------------------------


def _short(obj: Any, width: int = 100) -> str:
    text = json.dumps(jsonable(obj), separators=(",", ":"))
    return text if len(text) <= width else text[: width - 3] + "..."


class Sink:
    def __init__(self, fmt: str, stream=sys.stdout):
        self.fmt = fmt
        self.stream = stream
        self.started = False

    def emit(self, rep: Report) -> None:
        w = self.stream.write
        if self.fmt == "json":
            w(json.dumps(rep.to_json(), separators=(",", ":")) + "\n")
        elif self.fmt == "tsv":
            if not self.started:
                w("suite\tpass\tms\tparams\twitness\n")
            d = rep.to_json()
            ms = "" if d["ms"] is None else str(d["ms"])
            w(f"{d['suite']}\t{'PASS' if d['pass'] else 'FAIL'}\t{ms}\t"
              f"{json.dumps(d['params'], separators=(',', ':'))}\t"
              f"{json.dumps(d['witness'], separators=(',', ':'))}\n")
        else:
            params = " ".join(f"{k}={v}" for k, v in rep.params.items())
            ms = "" if rep.ms is None else f"  [{rep.ms} ms]"
            w(f"{'PASS' if rep.passed else 'FAIL'}  {rep.suite}  {params}  {_short(rep.witness)}{ms}\n")
        self.started = True


def _plot(cfg: RunConfig, reports: list[Report]) -> list[str]:
    from . import plotting

    paths = []
    sub = cfg.subcommand
    if sub == "h-minus":
        rows = [(r.params["p"], r.witness["h_minus"]) for r in reports if r.witness and "h_minus" in r.witness]
        if rows:
            paths.append(plotting.plot_h_minus(rows, cfg.plot_dir))
    elif sub == "stickelberger":
        pts = [(r.params["p"], r.params["f"], a, v) for r in reports
               if r.suite == "stickelberger-congruence" and r.witness and "valuations" in r.witness
               for a, v, _ in r.witness["valuations"]]
        if pts:
            paths.append(plotting.plot_valuations(pts, cfg.plot_dir))
    elif sub == "eliminate":
        verdicts = [r.witness["verdict"] for r in reports if r.witness and "verdict" in r.witness]
        if verdicts:
            paths.append(plotting.plot_verdicts(verdicts, cfg.plot_dir))
    return paths


# -- argument parsing ---------------------------------------------------------


def _nonneg(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text}")
    if v < 0:
        raise argparse.ArgumentTypeError(f"bound must be non-negative: {v}")
    return v


def _positive(text: str) -> int:
    v = _nonneg(text)
    if v == 0:
        raise argparse.ArgumentTypeError("value must be positive")
    return v


def _default_jobs() -> int:
    env = os.environ.get("CATALAN_JOBS", "1")
    try:
        return max(1, int(env))
    except ValueError:
        return 1


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "tsv", "human"), default="json")
    common.add_argument("--jobs", type=_positive, default=None,
                        help="worker processes (default: $CATALAN_JOBS or 1)")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized suites")
    common.add_argument("--no-timing", action="store_true", help="omit timings for byte-identical output")
    common.add_argument("--plot-dir", default=None, help="also write PNG figures to this directory")

    parser = argparse.ArgumentParser(prog="catalan", description="Exact verification suites around x^p - y^q = 1.")
    subs = parser.add_subparsers(dest="subcommand", required=True)

    s = subs.add_parser("gauss-check", parents=[common], help="Gauss/Jacobi sum identities over F_q")
    s.add_argument("--q-max", type=_nonneg, default=32)

    s = subs.add_parser("stickelberger", parents=[common], help="Gauss sum valuations at primes above p")
    s.add_argument("--q-max", type=_nonneg, default=None,
                   help="all odd p^f up to this bound (default: a fixed set of nine fields)")

    s = subs.add_parser("h-minus", parents=[common], help="relative class numbers h_p^-")
    s.add_argument("--p-max", type=_nonneg, default=47)

    s = subs.add_parser("group-ring", parents=[common], help="Stickelberger lattice and ideal checks")
    s.add_argument("--p-max", type=_nonneg, default=101)
    s.add_argument("--m-max", type=_nonneg, default=30)

    s = subs.add_parser("pell", parents=[common], help="Pell fundamental solutions and Stoermer scan")
    s.add_argument("--d", type=_positive, default=None)
    s.add_argument("--d-max", type=_nonneg, default=100)
    s.add_argument("--k-max", type=_positive, default=8)

    s = subs.add_parser("catalan-search", parents=[common], help="brute-force search for x^m - y^n = 1")
    s.add_argument("--x-max", type=_nonneg, default=1000)
    s.add_argument("--e-max", type=_nonneg, default=10)
    s.add_argument("--raw", action="store_true", help="allow composite exponents")
    s.add_argument("--fuzz", type=_nonneg, default=0, help="also run seeded identity fuzzing with this many cases")

    s = subs.add_parser("eliminate", parents=[common], help="exclude every odd prime exponent pair")
    s.add_argument("--max", type=_nonneg, default=100)
    s.add_argument("--summary", action="store_true", help="emit verdict counts only")

    s = subs.add_parser("series", parents=[common], help="truncated power series integrality checks")
    s.add_argument("--p", type=_positive, default=None)
    s.add_argument("--q", type=_positive, default=None)
    s.add_argument("--K", type=_positive, default=8)
    return parser


def config_from_args(args: argparse.Namespace, parser: argparse.ArgumentParser) -> RunConfig:
    skip = {"subcommand", "format", "jobs", "seed", "no_timing", "plot_dir", "summary"}
    bounds = {k: v for k, v in vars(args).items() if k not in skip}
    if args.subcommand == "series":
        if (args.p is None) != (args.q is None):
            parser.error("--p and --q go together")
        if args.p is not None:
            if not (is_prime(args.p) and is_prime(args.q)) or args.p == args.q or 2 in (args.p, args.q):
                parser.error("--p and --q must be distinct odd primes")
    if args.subcommand == "pell" and args.d is not None and int(args.d**0.5 + 0.5) ** 2 == args.d:
        parser.error(f"--d {args.d} is a perfect square")
    return RunConfig(args.subcommand, args.format, args.jobs or _default_jobs(), args.seed,
                     not args.no_timing, args.plot_dir, bounds)


def run(cfg: RunConfig, stream=sys.stdout, summary: bool = False) -> int:
    sink = Sink(cfg.fmt, stream)
    collected: list[Report] = []
    counts: dict[str, int] = {}
    all_ok = True
    keep = cfg.plot_dir is not None
    for rep in execute(cfg):
        if not cfg.timing:
            rep.ms = None
        all_ok = all_ok and bool(rep.passed)
        if summary:
            key = rep.witness.get("verdict", "?") if isinstance(rep.witness, dict) else "?"
            counts[key] = counts.get(key, 0) + 1
            if not rep.passed:
                sink.emit(rep)
        else:
            sink.emit(rep)
        if keep:
            collected.append(rep)
    if summary:
        sink.emit(Report(f"{cfg.subcommand}-summary", dict(cfg.bounds), all_ok,
                         {"pairs": sum(counts.values()), "verdicts": dict(sorted(counts.items()))}))
    if keep:
        for path in _plot(cfg, collected):
            print(f"wrote {path}", file=sys.stderr)
    return 0 if all_ok else 1


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    cfg = config_from_args(args, parser)
    try:
        return run(cfg, summary=getattr(args, "summary", False))
    except BrokenPipeError:
        # reader went away (e.g. piped into head); silence the flush at exit
        os.dup2(os.open(os.devnull, os.O_WRONLY), sys.stdout.fileno())
        return 1


if __name__ == "__main__":
    sys.exit(main())
