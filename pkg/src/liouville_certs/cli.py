"""Command-line front end: reproducible, file-based runs of every
workflow with JSON/CSV outputs.

Exit codes: 0 success / all checks pass, 1 verification failure,
2 usage error, 3 inconclusive at a refinement or search cap.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass, field

from gmpy2 import mpq, mpz

from . import certify as cert
from . import oracle as orc
from .exact_core import (
    Enclosure,
    Inconclusive,
    IntPolynomial,
    RealAlgebraic,
    floor_log10,
    isolate_real_roots,
)
from .liouville import DEFAULT_K_MAX, DigitLiouville, eq2_check, truncation

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_INCONCLUSIVE = 3


@dataclass
class RunConfig:
    k_max: int = DEFAULT_K_MAX
    refinement_cap: int = 8
    candidate_cap: int = orc.DEFAULT_CANDIDATE_CAP
    output_dir: str = "out"
    emit: set = field(default_factory=lambda: {"json", "csv"})
    jobs: int = 1
    allow_large_k: bool = False

    def validate(self) -> None:
        if self.k_max < 1 or self.refinement_cap < 1 or self.candidate_cap < 1:
            raise UsageError("all caps must be positive")
        if self.jobs < 1:
            raise UsageError("--jobs must be >= 1")
        bad = self.emit - {"json", "csv"}
        if bad:
            raise UsageError(f"unknown emit formats: {sorted(bad)}")
        os.makedirs(self.output_dir, exist_ok=True)
        probe = os.path.join(self.output_dir, ".write-check")
        try:
            with open(probe, "w") as fh:
                fh.write("ok")
            os.remove(probe)
        except OSError as e:
            raise UsageError(f"output dir not writable: {e}") from e


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# serialization (all rationals as "num/den" strings, never decimals)


def q2s(x) -> str:
    x = mpq(x)
    return f"{x.numerator}/{x.denominator}"


def enc2j(e: Enclosure) -> list:
    return [q2s(e.lo), q2s(e.hi)]


def alg2j(a: RealAlgebraic) -> dict:
    return {
        "minpoly": [str(c) for c in a.minpoly.coeffs],
        "root_interval": enc2j(a.isolating),
    }


def _write(cfg: RunConfig, stem: str, json_doc=None, csv_rows=None) -> list:
    paths = []
    if "json" in cfg.emit and json_doc is not None:
        path = os.path.join(cfg.output_dir, f"{stem}.json")
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            json.dump(json_doc, fh, indent=2, sort_keys=True)
            fh.write("\n")
        paths.append(path)
    if "csv" in cfg.emit and csv_rows is not None:
        path = os.path.join(cfg.output_dir, f"{stem}.csv")
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            for row in csv_rows:
                fh.write(",".join(str(c) for c in row) + "\n")
        paths.append(path)
    return paths


# ---------------------------------------------------------------------------
# alpha parsing


def parse_alpha(args) -> RealAlgebraic:
    if args.alpha in cert.ALPHA_PRESETS:
        return cert.alpha_preset(args.alpha)
    spec = args.minpoly
    if spec is None and args.alpha is not None and "," in args.alpha:
        spec = args.alpha  # coefficient list given directly
    if spec is None:
        if args.alpha is not None:
            raise UsageError(
                f"unknown preset {args.alpha!r}; use one of "
                f"{sorted(cert.ALPHA_PRESETS)} or --minpoly"
            )
        raise UsageError("need --alpha PRESET or --minpoly COEFFS")
    try:
        coeffs = [mpz(c.strip()) for c in spec.split(",")]
    except ValueError as e:
        raise UsageError(f"bad --minpoly: {e}") from e
    poly = IntPolynomial.from_coeffs(coeffs)
    if poly.is_zero or poly.degree < 1:
        raise UsageError("--minpoly must have degree >= 1")
    roots = isolate_real_roots(poly)
    idx = args.root_index
    if not 0 <= idx < len(roots):
        raise UsageError(
            f"--root-index {idx} out of range: {len(roots)} real root(s)"
        )
    return RealAlgebraic.make(poly, roots[idx])


def parse_digits(spec: str) -> DigitLiouville:
    if spec in ("ones", "alt12"):
        return DigitLiouville.preset(spec)
    return DigitLiouville.from_file(spec)


# ---------------------------------------------------------------------------
# commands


def _check_depth(cfg: RunConfig, k_max: int) -> None:
    if k_max < 1:
        raise UsageError("--k-max must be >= 1")
    if k_max > DEFAULT_K_MAX and not cfg.allow_large_k:
        raise UsageError(
            f"--k-max {k_max} exceeds the default limit {DEFAULT_K_MAX}; "
            "pass --allow-large-k to override"
        )


def cmd_truncations(cfg: RunConfig, args) -> int:
    _check_depth(cfg, args.k_max)
    rows = [("k", "h_alpha_exp10", "tail_lo_exp10", "eq2")]
    recs = []
    all_pass = True
    for k in range(1, args.k_max + 1):
        rec = truncation(k, DEFAULT_K_MAX, cfg.allow_large_k)
        gap, rhs, ok = eq2_check(k, DEFAULT_K_MAX, cfg.allow_large_k)
        all_pass = all_pass and ok
        rows.append((k, floor_log10(rec.h_alpha), floor_log10(gap.lo),
                     "pass" if ok else "fail"))
        recs.append({
            "k": k,
            "p": str(rec.p),
            "q": str(rec.q),
            "h_alpha": str(rec.h_alpha),
            "tail": enc2j(rec.tail),
            "eq2_rhs": q2s(rhs),
            "eq2": "pass" if ok else "fail",
        })
    doc = {"records": recs, "all_pass": all_pass}
    paths = _write(cfg, "truncations", doc, rows)
    print(f"truncations k=1..{args.k_max}: "
          f"{'all pass' if all_pass else 'FAILURES'} -> {', '.join(paths)}")
    return EXIT_OK if all_pass else EXIT_FAIL


def _record_json(r) -> dict:
    return {
        "k": r.k,
        "kind": r.op_kind,
        "gamma": alg2j(r.gamma),
        "h_gamma": str(r.h_gamma),
        "h_alpha_k": str(r.h_alpha_k),
        "gap": enc2j(r.gap),
        "c": enc2j(r.c),
        "eq3_rhs": enc2j(r.eq3_rhs),
        "eq3": r.eq3,
        "eq4_rhs": enc2j(r.eq4_rhs),
        "eq4_literal": r.eq4_literal,
        "eq4_corrected": r.eq4_corrected,
        "eq5": r.eq5,
        "eq9": dict(sorted(r.eq9.items())),
        "omega": q2s(r.omega),
        "omega_err": q2s(r.omega_err),
    }


def cmd_certify(cfg: RunConfig, args) -> int:
    alpha = parse_alpha(args)
    _check_depth(cfg, args.k_max)
    records = cert.certify_chain(
        alpha, args.kind, args.k_max, n=args.n,
        k_limit=cfg.k_max, allow_large=cfg.allow_large_k, jobs=cfg.jobs,
    )
    rows = [("k", "H_gamma_k", "gap_lo_exp10", "eq3", "eq4_literal",
             "eq4_corrected", "eq5", "eq9_literal", "eq9_grouped",
             "eq9_derived", "omega_k")]
    gate = []  # the verdicts that drive the exit code
    for r in records:
        e9 = {v: r.eq9.get(v, "outside_regime") for v in cert.EQ9_VARIANTS}
        rows.append((r.k, r.h_gamma, r.gap_lo_exp10, r.eq3, r.eq4_literal,
                     r.eq4_corrected, r.eq5, e9["literal"], e9["grouped"],
                     e9["derived"], float(r.omega)))
        gate += [r.eq3, r.eq4_corrected, r.eq5]
        # the ninth inequality is asymptotic: it legitimately fails at the
        # first in-regime indices, so it only gates on request
        if args.gate_eq9:
            gate.append(e9["derived"])
        if args.strict_literal:
            gate += [r.eq4_literal, e9["literal"]]
    gate = [g for g in gate if g != cert.OUTSIDE_REGIME]
    verdict = ("inconclusive" if cert.INCONCLUSIVE in gate
               else "fail" if cert.FAIL in gate else "pass")
    doc = {
        "alpha": alg2j(alpha),
        "kind": args.kind,
        "records": [_record_json(r) for r in records],
        "verdicts": {
            "overall": verdict,
            "strict_literal": bool(args.strict_literal),
        },
    }
    paths = _write(cfg, "certify", doc, rows)
    print(f"certify {args.kind} k<={args.k_max}: {verdict} -> {', '.join(paths)}")
    if verdict == "inconclusive":
        return EXIT_INCONCLUSIVE
    return EXIT_OK if verdict == "pass" else EXIT_FAIL


def cmd_oracle(cfg: RunConfig, args) -> int:
    alpha = parse_alpha(args)
    exceptions = orc.exception_scan(
        alpha, args.kind, args.n, args.h_max, jobs=cfg.jobs
    )
    rows = [("gamma_minpoly", "root_index", "height", "distance_lo",
             "distance_hi", "margin")]
    recs = []
    for e in exceptions:
        coeffs = " ".join(str(c) for c in e.gamma.minpoly.coeffs)
        rows.append((coeffs, e.gamma.root_index(), e.gamma.height,
                     q2s(e.distance.lo), q2s(e.distance.hi), q2s(e.margin)))
        recs.append({
            "gamma": alg2j(e.gamma),
            "distance": enc2j(e.distance),
            "margin": q2s(e.margin),
        })
    doc = {
        "alpha": alg2j(alpha),
        "kind": args.kind,
        "n": args.n,
        "height_max": args.h_max,
        "exceptions": recs,
        "exception_count": len(recs),
    }
    paths = _write(cfg, "oracle", doc, rows)
    print(f"oracle sweep n={args.n} H<={args.h_max}: "
          f"{len(recs)} exception(s) -> {', '.join(paths)}")
    return EXIT_OK


def _parse_target(cfg: RunConfig, args) -> orc.TargetSource:
    if args.target == "L":
        return orc.liouville_target()
    if args.target in cert.ALPHA_PRESETS:
        return orc.algebraic_target(cert.alpha_preset(args.target), args.target)
    raise UsageError(
        f"unknown target {args.target!r}; use 'L' or a preset name"
    )


def cmd_scan(cfg: RunConfig, args) -> int:
    target = _parse_target(cfg, args)
    try:
        ladder = [int(t) for t in args.ladder.split(",") if t.strip()]
    except ValueError as e:
        raise UsageError(f"bad --ladder: {e}") from e
    estimates = orc.exponent_scan(target, args.n, ladder)
    rows = [("height_ceiling", "witness_minpoly", "witness_height",
             "distance_lo_exp10", "w_est", "w_err")]
    recs = []
    for est in estimates:
        coeffs = " ".join(str(c) for c in est.witness.minpoly.coeffs)
        rows.append((est.height_ceiling, coeffs, est.witness.height,
                     floor_log10(est.distance.lo),
                     float(est.lower_estimate), float(est.err)))
        recs.append({
            "height_ceiling": est.height_ceiling,
            "witness": alg2j(est.witness),
            "distance": enc2j(est.distance),
            "lower_estimate": q2s(est.lower_estimate),
            "err": q2s(est.err),
        })
    doc = {"target": target.name, "n": args.n, "estimates": recs}
    paths = _write(cfg, "scan", doc, rows)
    print(f"scan {target.name} n={args.n}: {len(recs)} estimate(s) "
          f"-> {', '.join(paths)}")
    return EXIT_OK


def cmd_probe(cfg: RunConfig, args) -> int:
    rows_out = cert.schmidt_probe(args.d, args.h_max, mpq(args.epsilon))
    rows = [("alpha", "beta", "distance_lo", "distance_hi", "h",
             "score_lo", "score_hi")]
    for r in rows_out:
        rows.append((r.alpha_key, r.beta_key, q2s(r.distance.lo),
                     q2s(r.distance.hi), r.h, q2s(r.score.lo),
                     q2s(r.score.hi)))
    best = rows_out[0] if rows_out else None
    doc = {
        "d": args.d,
        "h_max": args.h_max,
        "epsilon": q2s(mpq(args.epsilon)),
        "pairs": len(rows_out),
        "min_pair": None if best is None else {
            "alpha": best.alpha_key,
            "beta": best.beta_key,
            "score": enc2j(best.score),
        },
    }
    paths = _write(cfg, "probe", doc, rows)
    print(f"probe d={args.d} H<={args.h_max}: {len(rows_out)} pair(s) "
          f"-> {', '.join(paths)}")
    return EXIT_OK


def cmd_decompose(cfg: RunConfig, args) -> int:
    digits = parse_digits(args.digits)
    report = cert.corollary_decompose(digits, args.m, k_max=args.k_max)
    rows = [("k", "h_gamma_plus", "h_gamma_minus", "gap_lo_exp10")]
    recs = []
    for r in report.records:
        rows.append((r.k, r.gamma_plus.height, r.gamma_minus.height,
                     floor_log10(r.gap.lo)))
        recs.append({
            "k": r.k,
            "gamma_plus": alg2j(r.gamma_plus),
            "gamma_minus": alg2j(r.gamma_minus),
            "gap": enc2j(r.gap),
        })
    doc = {
        "m": report.m,
        "base": report.base,
        "digits": report.digits_name,
        "weight": q2s(report.weight),
        "part_plus": alg2j(report.part_plus),
        "part_minus": alg2j(report.part_minus),
        "records": recs,
        "recombination_ok": report.recombination_ok,
    }
    paths = _write(cfg, "decompose", doc, rows)
    ok = report.recombination_ok
    print(f"decompose m={args.m}: "
          f"{'recombines' if ok else 'RECOMBINATION FAILED'} -> {', '.join(paths)}")
    return EXIT_OK if ok else EXIT_FAIL


# ---------------------------------------------------------------------------
# argument plumbing


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--k-max", type=int, default=DEFAULT_K_MAX,
                        help="truncation depth limit (default 8)")
    common.add_argument("--refine-cap", type=int, default=8,
                        help="enclosure refinement iteration cap")
    common.add_argument("--out", default="out", help="output directory")
    common.add_argument("--emit", default="json,csv",
                        help="comma list from {json,csv}")
    common.add_argument("--jobs", type=int, default=1,
                        help="worker processes for parallel sections")
    common.add_argument("--allow-large-k", action="store_true",
                        help="permit k beyond the configured limit")

    p = argparse.ArgumentParser(
        prog="liouville-certs",
        description="Exact-arithmetic certificates for approximation "
                    "sequences to products and sums with the factorial-gap "
                    "decimal constant",
    )
    sub = p.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("truncations", parents=[common],
                        help="truncation table and gap checks")
    sp.set_defaults(fn=cmd_truncations)

    def add_alpha(sp):
        sp.add_argument("--alpha", help="preset: " + ", ".join(sorted(cert.ALPHA_PRESETS)))
        sp.add_argument("--minpoly", help="ascending comma-separated coefficients")
        sp.add_argument("--root-index", type=int, default=0,
                        help="index into the ascending real-root list")

    sp = sub.add_parser("certify", parents=[common],
                        help="inequality-chain certificates")
    add_alpha(sp)
    sp.add_argument("--kind", choices=("product", "sum"), required=True)
    sp.add_argument("--n", type=int, default=1,
                    help="approximant degree for the separation constant")
    sp.add_argument("--strict-literal", action="store_true",
                    help="let literal-variant failures affect the exit code")
    sp.add_argument("--gate-eq9", action="store_true",
                    help="let the derived ninth-inequality variant affect the exit code")
    sp.set_defaults(fn=cmd_certify)

    sp = sub.add_parser("oracle", parents=[common],
                        help="final-bound exception sweep")
    add_alpha(sp)
    sp.add_argument("--kind", choices=("product", "sum"), required=True)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--h-max", type=int, required=True)
    sp.set_defaults(fn=cmd_oracle)

    sp = sub.add_parser("scan", parents=[common],
                        help="empirical approximation-exponent ladder")
    sp.add_argument("--target", default="L",
                    help="'L' or an alpha preset name")
    sp.add_argument("--n", type=int, default=1)
    sp.add_argument("--ladder", required=True,
                    help="comma list of increasing height ceilings")
    sp.set_defaults(fn=cmd_scan)

    sp = sub.add_parser("probe", parents=[common],
                        help="pairwise separation statistic on a real quadratic field")
    sp.add_argument("--d", type=int, required=True)
    sp.add_argument("--h-max", type=int, required=True)
    sp.add_argument("--epsilon", default="0")
    sp.set_defaults(fn=cmd_probe)

    sp = sub.add_parser("decompose", parents=[common],
                        help="two-summand decomposition report")
    sp.add_argument("--digits", required=True,
                    help="preset name (ones, alt12) or digit file path")
    sp.add_argument("--m", type=int, required=True)
    sp.set_defaults(fn=cmd_decompose)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code not in (0,) else 0
    cfg = RunConfig(
        k_max=args.k_max,
        refinement_cap=args.refine_cap,
        output_dir=args.out,
        emit={t.strip() for t in args.emit.split(",") if t.strip()},
        jobs=args.jobs,
        allow_large_k=args.allow_large_k,
    )
    try:
        cfg.validate()
        return args.fn(cfg, args)
    except UsageError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except Inconclusive as e:
        print(f"inconclusive: {e}", file=sys.stderr)
        return EXIT_INCONCLUSIVE


if __name__ == "__main__":
    sys.exit(main())
