"""Command-line entry point: ``k3lattice <group> <verb> [options]``.

Every invocation prints one JSON report on stdout:
{"command", "exit_status", "input_digest", "result" | "error", "status", "warnings"}.
Exit codes: 0 success, 1 domain error, 2 malformed input.
"""

from __future__ import annotations

import argparse
import sys
from typing import Any, Sequence

from . import jsonio
from .cusps import scan_cusps
from .discriminant import discriminant_form, two_elementary_fingerprint
from .isometry import (eigenlattice_decomposition, hermitian_module, hermitian_signature,
                       order_feasible_for_k3, signature_condition_check)
from .jsonio import InputError, as_int
from .lattice import LatticeError, Signature, Sublattice, determinant, signature
from .monodromy import (TYPE_I, kulikov_counts, kulikov_type, monodromy_exp_log,
                        monodromy_lattice_J, picard_lefschetz_N)
from .roots import enumerate_norm_vectors
from .semifan import (INCONSISTENT, check_invariance_ball, check_invariance_fan,
                      compatibility_along)
from .zeta import SUPPORTED


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise InputError(message)


def _sig(s: Signature) -> list[int]:
    return [s.positive, s.negative]


def _sub(S: Sublattice) -> dict:
    return {"rank": S.rank, "basis": S.rows()}


# ---------------------------------------------------------------- verbs

def _lattice_source(args, cat, inputs):
    if args.input:
        payload = jsonio.read_json_file(args.input)
        inputs["lattice"] = payload
        return cat.resolve(payload)
    if args.name:
        spec = {"name": args.name, "params": list(args.params or [])}
        inputs["lattice"] = spec
        return cat.resolve(spec)
    raise InputError("give a lattice with --name or --input")


def cmd_lattice_info(args, cat, inputs, warnings):
    L = _lattice_source(args, cat, inputs)
    sig = signature(L)
    det = determinant(L)
    out = {"rank": L.rank, "signature": _sig(sig), "det": det, "even": L.is_even,
           "unimodular": abs(det) == 1}
    if sig.zero:
        out["nullity"] = sig.zero
    if args.discriminant:
        if det == 0:
            raise LatticeError("discriminant form of a degenerate lattice")
        D = discriminant_form(L)
        out["discriminant"] = {
            "orders": list(D.orders),
            "generators": [list(g) for g in D.generators],
            "q": list(D.q),
            "b": [list(r) for r in D.b],
        }
        try:
            out["two_elementary"] = list(two_elementary_fingerprint(L).as_tuple())
        except LatticeError:
            out["two_elementary"] = None
    return out


def cmd_lattice_roots(args, cat, inputs, warnings):
    L = _lattice_source(args, cat, inputs)
    vecs = enumerate_norm_vectors(L, args.norm, workers=args.workers)
    out: dict[str, Any] = {"count": len(vecs)}
    if args.norm != -2:
        out["norm"] = args.norm
    if args.limit is not None:
        if args.limit < 0:
            raise InputError("--limit must be nonnegative")
        out["vectors"] = vecs[:args.limit]
        if args.limit < len(vecs):
            warnings.append({"code": "truncated_listing", "listed": args.limit,
                             "count": len(vecs)})
    return out


def _load(args, key, inputs):
    if not args.input:
        raise InputError("--input FILE is required")
    payload = jsonio.read_json_file(args.input)
    inputs[key] = payload
    return payload


def cmd_isometry_analyze(args, cat, inputs, warnings):
    rho = jsonio.parse_isometry(_load(args, "isometry", inputs), cat)
    out: dict[str, Any] = {"order": rho.order}
    if rho.order < 2:
        out["identity"] = True
        return out
    out["k3_feasible_order"] = order_feasible_for_k3(rho.order)
    dec = eigenlattice_decomposition(rho)
    rep = signature_condition_check(dec)
    out["fixed"] = _sub(dec.fixed)
    out["transcendental"] = dict(_sub(dec.transcendental),
                                 signature=_sig(rep.transcendental_signature))
    out["picard"] = dict(_sub(dec.picard), signature=_sig(rep.picard_signature))
    out["signature_check"] = {"transcendental_ok": rep.transcendental_ok,
                              "picard_ok": rep.picard_ok, "passed": rep.passed}
    if rho.order in SUPPORTED and dec.transcendental.rank:
        H = hermitian_module(dec)
        hs = hermitian_signature(H)
        out["hermitian"] = {
            "rank_over_ring": H.rank_over_ring,
            "basis": [{"a": list(a), "b": list(b)} for a, b in H.basis],
            "gram": [[list(x) for x in row] for row in H.hermitian_gram],
            "signature": _sig(hs),
            "trace_scale": H.trace_scale,
        }
    else:
        out["hermitian"] = None
    return out


def cmd_cusps_scan(args, cat, inputs, warnings):
    rho = jsonio.parse_isometry(_load(args, "isometry", inputs), cat)
    if args.bound < 1:
        raise InputError("--bound must be positive")
    rep = scan_cusps(rho, args.bound)
    cusps = [{
        "J": c.J.rows(),
        "rho_invariant": c.rho_invariant,
        "restricted_order": c.restricted_order,
        "admissible": c.admissible,
        "j_invariant_class": c.j_invariant_class,
    } for c in rep.cusps]
    warnings.append({"code": "bounded_scan", "bound": args.bound, "message": rep.warning})
    return {"bound": args.bound, "cusps": cusps, "admissible_count": len(rep.admissible),
            "vectors_examined": rep.vectors_examined}


def cmd_monodromy_classify(args, cat, inputs, warnings):
    data = jsonio.parse_kulikov(_load(args, "monodromy", inputs), cat)
    t = kulikov_type(data)
    N = picard_lefschetz_N(data)
    T, _ = monodromy_exp_log(N, data.ambient.gram)
    out: dict[str, Any] = {"type": t, "lambda_norm": data.lambda_norm,
                           "lambda_imprimitivity": data.lambda_imprimitivity,
                           "N": N, "T": T}
    if t == TYPE_I:
        out["counts"] = None
        out["J"] = None
    else:
        out["counts"] = kulikov_counts(data)
        out["J"] = monodromy_lattice_J(data).rows()
    return out


def _invariance(rep) -> dict:
    def enc(v):
        return {"kind": v.kind, "J": v.J, "generator": v.generator, "detail": v.detail}
    return {"invariant": rep.invariant, "complete": rep.complete,
            "violations": [enc(v) for v in rep.violations],
            "missing": [enc(v) for v in rep.missing]}


def cmd_semifan_check(args, cat, inputs, warnings):
    job = jsonio.parse_semifan(_load(args, "semifan", inputs), cat)
    if job.kind == "ball":
        rep = check_invariance_ball(job.semifan, job.group)
        return {"kind": "ball",
                "entries": [{"J": e.J.rows(), "F_rank": e.F_rank, "F": e.F_rows()}
                            for e in job.semifan.entries],
                "invariance": _invariance(rep)}
    rep = check_invariance_fan(job.semifan, job.group)
    comps = []
    for Jp in job.along:
        res = compatibility_along(job.semifan, Jp, job.bound, job.mode)
        comps.append({
            "Jprime": Jp.rows(),
            "compatible": res.compatible,
            "induced": INCONSISTENT if isinstance(res.induced, str) else res.induced.rows(),
            "induced_rank": res.induced_rank,
            "per_J": [{"J": J.rows(), "descent": P.rows()} for J, P in res.per_J],
        })
    if job.along:
        warnings.append({"code": "bounded_subcusps", "bound": job.bound,
                         "message": "only rank-1 J spanned by a*u + b*w with |a|, |b| <= bound "
                                    "inside each J' were compared"})
    return {"kind": "fan", "fans": len(job.semifan.fans), "mode": job.mode,
            "invariance": _invariance(rep), "compatibility": comps}


def cmd_orders_feasible(args, cat, inputs, warnings):
    n = as_int(args.n, "n")
    inputs["n"] = n
    return {"feasible": order_feasible_for_k3(n)}


# ---------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=["json"], default="json")
    common.add_argument("--catalog", default=None,
                        help=f"user catalog file (default: ${jsonio.CATALOG_ENV})")

    p = _Parser(prog="k3lattice", description="Exact lattice toolkit for K3 isometry data.")
    groups = p.add_subparsers(dest="group", required=True, parser_class=_Parser)

    def leaf(group_parsers, name, func, help_):
        q = group_parsers.add_parser(name, parents=[common], help=help_)
        q.set_defaults(func=func)
        return q

    def lattice_args(q):
        q.add_argument("--name")
        q.add_argument("--params", type=int, nargs="*")
        q.add_argument("--input")

    g = groups.add_parser("lattice").add_subparsers(dest="verb", required=True, parser_class=_Parser)
    q = leaf(g, "info", cmd_lattice_info, "rank, signature, determinant, parity")
    lattice_args(q)
    q.add_argument("--discriminant", action="store_true")
    q = leaf(g, "roots", cmd_lattice_roots, "count vectors of a given norm")
    lattice_args(q)
    q.add_argument("--norm", type=int, default=-2)
    q.add_argument("--limit", type=int, default=None)
    q.add_argument("--workers", type=int, default=1)

    g = groups.add_parser("isometry").add_subparsers(dest="verb", required=True, parser_class=_Parser)
    leaf(g, "analyze", cmd_isometry_analyze, "order and eigenlattices").add_argument("--input")

    g = groups.add_parser("cusps").add_subparsers(dest="verb", required=True, parser_class=_Parser)
    q = leaf(g, "scan", cmd_cusps_scan, "bounded cusp scan")
    q.add_argument("--input")
    q.add_argument("--bound", type=int, default=2)

    g = groups.add_parser("monodromy").add_subparsers(dest="verb", required=True, parser_class=_Parser)
    leaf(g, "classify", cmd_monodromy_classify, "Kulikov type").add_argument("--input")

    g = groups.add_parser("semifan").add_subparsers(dest="verb", required=True, parser_class=_Parser)
    leaf(g, "check", cmd_semifan_check, "semifan validators").add_argument("--input")

    g = groups.add_parser("orders").add_subparsers(dest="verb", required=True, parser_class=_Parser)
    leaf(g, "feasible", cmd_orders_feasible, "order admissible on a K3").add_argument("n")
    return p


# Options that change neither the question nor the answer stay out of the digest.
_NOT_DIGESTED = {"func", "format", "catalog", "workers", "input", "group", "verb", "name", "params",
                 "n"}


def run(argv: Sequence[str]) -> tuple[dict, int]:
    argv = list(argv)
    command = " ".join(a for a in argv[:2] if not a.startswith("-"))
    inputs: dict[str, Any] = {}
    warnings: list = []
    try:
        args = build_parser().parse_args(argv)
        command = f"{args.group} {args.verb}"
        cat = jsonio.load_catalog(args.catalog)
        result = args.func(args, cat, inputs, warnings)
        options = {k: v for k, v in sorted(vars(args).items()) if k not in _NOT_DIGESTED}
        report = {
            "command": command,
            "input_digest": jsonio.digest({"command": command, "options": options,
                                           "inputs": inputs, "catalog": cat.user}),
            "result": result,
            "status": "ok",
            "warnings": warnings,
            "exit_status": 0,
        }
        return report, 0
    except InputError as exc:
        return _error(command, "input", exc, 2), 2
    except (LatticeError, ValueError, ArithmeticError) as exc:
        return _error(command, "domain", exc, 1), 1
    except Exception as exc:  # never a traceback on stdout
        return _error(command, "internal", exc, 1), 1


def _error(command: str, kind: str, exc: Exception, code: int) -> dict:
    return {"command": command, "error": {"kind": kind, "type": type(exc).__name__,
                                          "message": str(exc)},
            "status": "error", "warnings": [], "exit_status": code}


def main(argv: Sequence[str] | None = None) -> int:
    report, code = run(sys.argv[1:] if argv is None else argv)
    sys.stdout.write(jsonio.canonical(report) + "\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
