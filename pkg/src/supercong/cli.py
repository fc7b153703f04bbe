"""Command-line driver: ``supercong verify | watson | classical | cyclotomic``.

Exit codes: 0 when every verdict holds, 1 when one fails, 2 on a bad
configuration or a certificate error (the method, not the claim, failed).
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
import time
from typing import Sequence

from . import __version__
from .checker import CertificateError, GRID_FAMILIES, run_grid
from .classical import CLAIMS as CLASSICAL_CLAIMS
from .classical import run_classical
from .qhyper.families import MUTATIONS
from .qhyper.watson import SingularSpecialization, watson_check_random, watson_check_symbolic
from .upoly import cyclotomic

SUM_MUTATIONS = MUTATIONS + ("inflate-modulus",)
_LIST_FLAGS = ("--n", "--d", "--r", "--p", "--N", "--claim")


class ConfigError(ValueError):
    pass


def parse_int_list(text: str) -> list[int]:
    """'2..5,8' -> [2, 3, 4, 5, 8]; ranges are inclusive."""
    out: list[int] = []
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        try:
            if ".." in part:
                lo, hi = part.split("..", 1)
                lo, hi = int(lo), int(hi)
                if hi < lo:
                    raise ConfigError(f"empty range {part!r}")
                out.extend(range(lo, hi + 1))
            else:
                out.append(int(part))
        except ValueError as exc:
            if isinstance(exc, ConfigError):
                raise
            raise ConfigError(f"not an integer list: {text!r}") from None
    if not out:
        raise ConfigError(f"empty list {text!r}")
    return out


def parse_names(text: str) -> list[str]:
    return [t.strip() for t in text.split(",") if t.strip()]


def _glue_negative_values(argv: Sequence[str]) -> list[str]:
    """Turn '--r -1,1' into '--r=-1,1' so argparse does not read -1,1 as a flag."""
    out, i = [], 0
    argv = list(argv)
    while i < len(argv):
        tok = argv[i]
        if tok in _LIST_FLAGS and i + 1 < len(argv) and argv[i + 1].startswith("-") and argv[i + 1][1:2].isdigit():
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
            continue
        out.append(tok)
        i += 1
    return out


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="supercong", description="Exact checks of truncated q-series congruences.")
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--json", metavar="PATH", help="write the JSON report here")
        p.add_argument("--stable", action="store_true", help="zero wall times so reports are byte-stable")
        p.add_argument("--quiet", action="store_true", help="print only the summary line")

    v = sub.add_parser("verify", help="run a family grid")
    v.add_argument("--family", required=True, help=", ".join(GRID_FAMILIES))
    v.add_argument("--n", required=True, help="n values, e.g. 2..12")
    v.add_argument("--d", default="3,4,5", help="d values (default 3,4,5)")
    v.add_argument("--r", default="1,-1", help="r values for r-indexed families (default 1,-1)")
    v.add_argument("--mutate", choices=SUM_MUTATIONS, help="negative control")
    v.add_argument("--route", choices=("residue", "full"), default="residue")
    v.add_argument("--strict", action="store_true", help="shared denominator factors are errors")
    v.add_argument("--jobs", type=int, default=None, help="worker processes (default: all cores)")
    v.add_argument("--seed", type=int, default=0, help="recorded in the report")
    common(v)

    w = sub.add_parser("watson", help="check the terminating Watson transformation")
    w.add_argument("--N", required=True, help="N values")
    w.add_argument("--mode", choices=("symbolic", "random"), default="symbolic")
    w.add_argument("--trials", type=int, default=200)
    w.add_argument("--seed", type=int, default=0)
    w.add_argument("--mutate", choices=("drop-prefactor",))
    common(w)

    c = sub.add_parser("classical", help="q = 1 supercongruences at small primes")
    c.add_argument("--claim", required=True, help=", ".join(CLASSICAL_CLAIMS))
    c.add_argument("--p", required=True, help="primes")
    common(c)

    y = sub.add_parser("cyclotomic", help="print Phi_n")
    y.add_argument("n", type=int)
    return ap


# ---------------------------------------------------------------------------
# records


def _watson_record(res, ms: float, stable: bool) -> dict:
    extra = {"mode": res.mode}
    if res.mode == "random":
        extra.update(
            trials=res.trials,
            resamples=res.resamples,
            seed=res.seed,
            degree_bound=res.degree_bound,
            sample_size=res.sample_size,
        )
        if res.holds and res.degree_bound:
            extra["log10_failure_bound"] = round(res.trials * math.log10(res.degree_bound / res.sample_size), 3)
    if res.mutation:
        extra["mutation"] = res.mutation
    return {
        "id": res.claim_id,
        "family": "watson",
        "n": res.N,
        "d": None,
        "r": None,
        "m_upper": res.N,
        "modulus": "exact",
        "holds": res.holds,
        "failing_factor": None if res.holds else "NONZERO",
        "num_terms": 2 * (res.N + 1),
        "max_q_degree": 0,
        "ms": 0 if stable else round(ms, 3),
        "extra": extra,
    }


def _classical_record(res, ms: float, stable: bool) -> dict:
    extra = {"lhs": str(res.lhs), "rhs": str(res.rhs), "valuation": res.valuation}
    extra.update(res.extra)
    return {
        "id": res.id,
        "family": f"classical/{res.claim}",
        "n": res.p,
        "d": None,
        "r": None,
        "m_upper": None,
        "modulus": f"p^{res.required}",
        "holds": res.holds,
        "failing_factor": None if res.holds else f"v_p={res.valuation}",
        "num_terms": None,
        "max_q_degree": None,
        "ms": 0 if stable else round(ms, 3),
        "extra": extra,
    }


def _emit(args, config: dict, claims: list[dict]) -> int:
    claims = sorted(claims, key=lambda c: c["id"])
    if args.json:
        report = {"version": __version__, "config": config, "claims": claims}
        with open(args.json, "w") as fh:
            json.dump(report, fh, indent=2, sort_keys=False)
            fh.write("\n")
    bad = [c for c in claims if not c["holds"]]
    if not getattr(args, "quiet", False):
        for c in claims:
            tail = "" if c["holds"] else f"  failing={c['failing_factor']}"
            print(f"{'PASS' if c['holds'] else 'FAIL'}  {c['id']}{tail}")
    print(f"{len(claims) - len(bad)}/{len(claims)} claims hold")
    return 1 if bad else 0


# ---------------------------------------------------------------------------
# commands


def cmd_verify(args) -> int:
    if args.family not in GRID_FAMILIES:
        raise ConfigError(f"unknown family {args.family!r}; choose from {', '.join(GRID_FAMILIES)}")
    n_values = parse_int_list(args.n)
    d_values = parse_int_list(args.d)
    r_values = parse_int_list(args.r)
    if args.mutate and args.family in ("lemma2.1", "proof2.6", "proof2.7"):
        raise ConfigError(f"--mutate is not defined for {args.family}")
    if args.mutate == "inflate-modulus" and args.family == "lemma2.2":
        raise ConfigError("inflate-modulus applies to the theorem moduli only")
    jobs = args.jobs if args.jobs else (os.cpu_count() or 1)
    verdicts = run_grid(
        args.family, n_values, d_values, r_values, args.mutate, args.route, args.strict, jobs
    )
    if not verdicts:
        raise ConfigError("no admissible (n, d, r) instances (gcd(n, d) = 1, d >= 3, congruence conditions)")
    config = {
        "command": "verify",
        "family": args.family,
        "n": n_values,
        "d": d_values,
        "r": r_values,
        "mutate": args.mutate,
        "route": args.route,
        "strict": args.strict,
        "jobs": jobs,
        "seed": args.seed,
    }
    return _emit(args, config, [v.as_dict(args.stable) for v in verdicts])


def cmd_watson(args) -> int:
    Ns = parse_int_list(args.N)
    if any(N < 0 for N in Ns):
        raise ConfigError("N must be non-negative")
    if args.trials < 1:
        raise ConfigError("--trials must be positive")
    records = []
    for N in Ns:
        t0 = time.perf_counter()
        if args.mode == "symbolic":
            res = watson_check_symbolic(N, args.mutate)
        else:
            res = watson_check_random(N, args.trials, args.seed, args.mutate)
        records.append(_watson_record(res, (time.perf_counter() - t0) * 1e3, args.stable))
    config = {
        "command": "watson",
        "N": Ns,
        "mode": args.mode,
        "trials": args.trials if args.mode == "random" else None,
        "mutate": args.mutate,
        "seed": args.seed,
    }
    return _emit(args, config, records)


def cmd_classical(args) -> int:
    names = parse_names(args.claim)
    unknown = [c for c in names if c not in CLASSICAL_CLAIMS]
    if unknown:
        raise ConfigError(f"unknown classical claim(s) {unknown}; choose from {', '.join(CLASSICAL_CLAIMS)}")
    primes = parse_int_list(args.p)
    records = []
    for name in names:
        for p in primes:
            t0 = time.perf_counter()
            (res,) = run_classical([name], [p])
            records.append(_classical_record(res, (time.perf_counter() - t0) * 1e3, args.stable))
    config = {"command": "classical", "claims": names, "p": primes, "seed": None}
    return _emit(args, config, records)


def cmd_cyclotomic(args) -> int:
    if args.n < 1:
        raise ConfigError("n must be >= 1")
    print(cyclotomic(args.n))
    return 0


COMMANDS = {"verify": cmd_verify, "watson": cmd_watson, "classical": cmd_classical, "cyclotomic": cmd_cyclotomic}


def main(argv: Sequence[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    parser = build_parser()
    try:
        args = parser.parse_args(_glue_negative_values(argv))
    except SystemExit as exc:  # argparse reports usage errors with status 2
        return int(exc.code or 0)
    try:
        return COMMANDS[args.command](args)
    except (ConfigError, CertificateError, SingularSpecialization, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
