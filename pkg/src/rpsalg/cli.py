"""Command-line interface: ``rpsalg <command> [options]``.

Exit status is 0 when the result confirms (or there is nothing to refute),
1 when a polynomial is refuted as an identity or a verification claim fails,
and 2 for usage errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import classify as cl
from .algebra import algebra_by_name
from .errors import CapExceeded, RPSAlgebraError, TheoremViolation
from .field import parse_field
from .kernel import BACKEND
from .pi import DEFAULT_PI_CAP, find_multilinear_pis, is_pi, random_pi_check
from .poly import COUNT_KINDS, count_formula, enumerate_multilinear_monomials, evaluate, parse

EXIT_OK, EXIT_REFUTED, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _common(sp: argparse.ArgumentParser, poly=False, algebra=True):
    sp.add_argument("--field", default="Q", help="Q, Fp:<p>, Q(w) or Fp2:<p> (default Q)")
    if algebra:
        sp.add_argument("--algebra", default="M", help="M, M0, Mtilde or file:<path> (default M)")
    if poly:
        sp.add_argument("--poly", required=True, help="polynomial text or path to a polynomial file")
        sp.add_argument("--arity", type=int, default=None, help="number of variables (default: highest index)")
        sp.add_argument("--assoc", choices=["left"], default=None, help="read unbracketed products left to right")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--cap", type=int, default=DEFAULT_PI_CAP, help="largest sweep or system size")
    sp.add_argument("--json", action="store_true", help="machine-readable output")
    sp.add_argument("--threads", type=int, default=1, help="worker cap for sweeps")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="rpsalg", description="Images and identities of the rock-paper-scissors algebra")
    sub = ap.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("eval", help="evaluate a polynomial at given elements")
    _common(sp, poly=True)
    sp.add_argument("--args", required=True, help="comma-separated elements, e.g. 'P+R-2*S,S'")

    sp = sub.add_parser("classify", help="classify the image of a multilinear polynomial")
    _common(sp, poly=True)

    sp = sub.add_parser("pi-check", help="decide whether a multilinear polynomial is an identity")
    _common(sp, poly=True)
    sp.add_argument("--exhaustive", action="store_true", help="allow sweeps larger than --cap")
    sp.add_argument("--random", type=int, default=0, metavar="N", help="only check N seeded random basis tuples")

    sp = sub.add_parser("pi-find", help="all multilinear identities of a given degree")
    _common(sp)
    sp.add_argument("--degree", type=int, required=True)

    sp = sub.add_parser("count-monomials", help="number of multilinear monomials of a degree")
    sp.add_argument("--degree", type=int, required=True)
    sp.add_argument("--kind", default="nonassoc_comm", choices=COUNT_KINDS)
    sp.add_argument("--enumerate", action="store_true", help="also list them (nonassoc_comm only)")
    sp.add_argument("--json", action="store_true")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--cap", type=int, default=DEFAULT_PI_CAP)

    sp = sub.add_parser("dim-estimate", help="generic Jacobian rank of the evaluation map")
    _common(sp, poly=True)
    sp.add_argument("--samples", type=int, default=20)

    sp = sub.add_parser("paper-verify", help="re-run every checkable claim")
    sp.add_argument("--quick", action="store_true", help="skip the full 4^12 sweep (random pre-check only)")
    sp.add_argument("--only", default=None, help="comma-separated claim ids")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--json", action="store_true")
    sp.add_argument("--threads", type=int, default=1)
    return ap


def _read_poly_text(arg: str) -> str:
    if os.path.isfile(arg):
        with open(arg, encoding="utf-8") as fh:
            return fh.read()
    return arg


def _config(ns) -> dict:
    cfg = {"command": ns.command}
    for key in ("field", "algebra", "seed", "cap"):
        if hasattr(ns, key):
            cfg[key] = getattr(ns, key)
    return cfg


def _config_line(cfg: dict) -> str:
    return "# " + " ".join(f"{k}={v}" for k, v in cfg.items() if k != "command")


def _emit(ns, cfg, payload: dict, text_lines: list[str], out):
    if ns.json:
        print(json.dumps({"config": cfg, **payload}, sort_keys=True, ensure_ascii=False, indent=2), file=out)
    else:
        print(_config_line(cfg), file=out)
        for line in text_lines:
            print(line, file=out)


def _setup(ns):
    F = parse_field(ns.field)
    A = algebra_by_name(ns.algebra, F) if hasattr(ns, "algebra") else None
    p = None
    if hasattr(ns, "poly"):
        p = parse(_read_poly_text(ns.poly), ns.arity, F, ns.assoc)
    return F, A, p


def cmd_eval(ns, out):
    F, A, p = _setup(ns)
    args = [A.parse(a) for a in ns.args.split(",")]
    if len(args) != p.arity:
        raise UsageError(f"{p.arity} arguments expected, got {len(args)}")
    v = evaluate(p, args)
    _emit(ns, _config(ns), {"polynomial": str(p), "args": [str(a) for a in args], "value": str(v)}, [str(v)], out)
    return EXIT_OK


def cmd_classify(ns, out):
    F, A, p = _setup(ns)
    try:
        r = cl.classify_image(p, A, ns.cap)
    except TheoremViolation as exc:
        payload = {"violation": str(exc), "witnesses": [w.to_json() for w in exc.witnesses]}
        _emit(ns, _config(ns), payload, [f"theorem violation: {exc}"], out)
        return EXIT_REFUTED
    data = r.to_json(p, A)
    lines = [f"class: {r.theorem_label if r.theorem_label is not None else r.tag}",
             f"span dimension: {r.dimension}",
             f"coefficient sum: {r.coefficient_sum}"]
    if r.basis:
        lines.append("basis: " + ", ".join(str(b) for b in r.basis))
    for w in r.witnesses:
        lines.append(f"witness: {w.to_json()}")
    lines.extend(f"note: {n}" for n in r.notes)
    _emit(ns, _config(ns), data, lines, out)
    return EXIT_OK


def cmd_pi_check(ns, out):
    F, A, p = _setup(ns)
    if ns.random:
        r = random_pi_check(p, A, ns.random, ns.seed)
    else:
        r = is_pi(p, A, ns.cap, ns.exhaustive, max(1, ns.threads))
    data = r.to_json()
    if r.is_pi:
        kind = "sampled" if r.sampled else "all"
        lines = [f"identity: vanishes on {kind} {r.tuples_checked} basis tuples"]
        if r.integer_certified:
            lines.append("integer-certified: holds over every field")
    else:
        ce = data["counterexample"]
        lines = [f"not an identity: p({', '.join(ce['tuple'])}) = {ce['value']}"]
        if r.exceptional_primes:
            lines.append("vanishes only modulo " + ", ".join(map(str, r.exceptional_primes)))
    _emit(ns, _config(ns), data, lines, out)
    return EXIT_OK if r.is_pi else EXIT_REFUTED


def cmd_pi_find(ns, out):
    F = parse_field(ns.field)
    A = algebra_by_name(ns.algebra, F)
    nb = find_multilinear_pis(ns.degree, A, ns.cap)
    polys = [str(q) for q in nb.polynomials()]
    data = {"degree": nb.degree, "monomials": len(nb.monomials), "rank": nb.rank,
            "system_shape": list(nb.shape), "dimension": nb.dimension, "basis": polys}
    lines = [f"degree {nb.degree}: {len(nb.monomials)} monomials, rank {nb.rank}, {nb.dimension} independent identities"]
    lines += polys
    _emit(ns, _config(ns), data, lines, out)
    return EXIT_OK


def cmd_count(ns, out):
    n = count_formula(ns.degree, ns.kind)
    data = {"degree": ns.degree, "kind": ns.kind, "count": n}
    lines = [str(n)]
    if ns.enumerate:
        if ns.kind != "nonassoc_comm":
            raise UsageError("--enumerate lists commutative non-associative monomials only")
        monos = [str(t) for t in enumerate_multilinear_monomials(ns.degree, cap=ns.degree)]
        data["monomials"] = monos
        lines += monos
    _emit(ns, {"command": ns.command, "seed": ns.seed, "cap": ns.cap}, data, lines, out)
    return EXIT_OK


def cmd_dim(ns, out):
    F, A, p = _setup(ns)
    rank = cl.estimate_dimension(p, A, ns.samples, ns.seed)
    data = {"polynomial": str(p), "jacobian_rank": rank, "algebra_dim": A.dim, "samples": ns.samples}
    _emit(ns, _config(ns), data, [f"jacobian rank {rank} of {A.dim}"], out)
    return EXIT_OK


def cmd_verify(ns, out):
    from .verify import paper_verify

    only = set(ns.only.split(",")) if ns.only else None
    rep = paper_verify(full_sweep=not ns.quick, workers=max(1, ns.threads), seed=ns.seed, only=only)
    cfg = {"command": ns.command, "field": "per claim", "algebra": "per claim", "seed": ns.seed,
           "cap": "full" if not ns.quick else "precheck", "kernel": BACKEND}
    _emit(ns, cfg, rep.to_json(), rep.lines(), out)
    return EXIT_OK if rep.overall == "pass" else EXIT_REFUTED


COMMANDS = {
    "eval": cmd_eval,
    "classify": cmd_classify,
    "pi-check": cmd_pi_check,
    "pi-find": cmd_pi_find,
    "count-monomials": cmd_count,
    "dim-estimate": cmd_dim,
    "paper-verify": cmd_verify,
}


def main(argv=None, out=None) -> int:
    out = out if out is not None else sys.stdout
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_OK
    try:
        return COMMANDS[ns.command](ns, out)
    except (UsageError, CapExceeded, RPSAlgebraError, ValueError, OSError) as exc:
        print(f"rpsalg {ns.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
