"""Command-line interface.

    koszulkit weyl --type A2 --p 5 w0-table
    koszulkit braid --type G2 verify-relations --radius 4
    koszulkit dg cohomology --in m.json --window 0:4,-8:0
    koszulkit algebra is-koszul --in a.json --nmax 6
    koszulkit selftest

Output is JSON with sorted keys.  Exit status: 0 success, 1 a verification
failed, 2 bad usage or unreadable input.
"""
from __future__ import annotations

import argparse
import json
import random
import sys
from pathlib import Path

from . import acceptance, golden
from . import affine as aff
from . import algebra as alg
from . import braid, dg
from . import koszul as kz
from .examples import BUNDLED, bundled
from .linalg import Field
from .roots import build


class UsageError(Exception):
    pass


class VerificationFailed(Exception):
    def __init__(self, payload):
        super().__init__("verification failed")
        self.payload = payload


def _weights(s: str) -> tuple:
    try:
        return tuple(int(x) for x in s.split(","))
    except ValueError:
        raise UsageError(f"weight {s!r} must be comma-separated integers") from None


def _read_json(path):
    if path is None:
        raise UsageError("--in is required")
    try:
        text = sys.stdin.read() if path == "-" else Path(path).read_text()
        return json.loads(text)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read {path}: {exc}") from None


# ---------------------------------------------------------------------------
# weyl


def cmd_weyl(args):
    rs = build(args.type)
    if args.action == "root-system":
        return rs.to_json()
    p = args.p if args.p is not None else rs.coxeter_number + 1
    if args.action == "w0-table":
        return {"type": rs.cartan_type, "p": p, "rows": aff.w0_table(rs, p)}
    if args.action == "tau0":
        t0 = aff.tau0(rs)
        return {
            "type": rs.cartan_type,
            "tau0": t0.to_json(),
            "length": t0.length,
            "length_by_roots": aff.tau0_length_by_roots(rs),
        }
    if args.action == "translate":
        mu = _weights(args.mu) if args.mu else tuple(-x for x in rs.rho)
        rows = []
        for k, w in enumerate(aff.enumerate_W0(rs)):
            r = aff.translate_simple(w, mu, p)
            rows.append({"index": k, "result": None if r is None else list(r)})
        return {"type": rs.cartan_type, "p": p, "mu0": list(mu), "rows": rows}
    if args.action == "walls":
        mu = _weights(args.mu) if args.mu else (0,) * rs.rank
        walls = sorted(aff.singular_walls(rs, mu, p))
        return {
            "type": rs.cartan_type,
            "p": p,
            "mu": list(mu),
            "walls": [{"root": list(rs.positive_roots[i].coeffs), "n": n} for i, n in walls],
            "W0_mu_size": len(aff.W0_mu(rs, mu, p)) if aff.in_closure_C0(rs, mu, p) else None,
        }
    raise UsageError(f"unknown weyl action {args.action}")


# ---------------------------------------------------------------------------
# braid


def cmd_braid(args):
    rs = build(args.type)
    radius = args.radius if args.radius is not None else 4
    if args.action == "verify-relations":
        rep = braid.relation_report(rs, radius, args.normalization)
        out = {"type": rs.cartan_type, "radius": radius, "normalization": args.normalization, "relations": rep}
        if any(r["failures"] for r in rep):
            raise VerificationFailed(out)
        return out
    if args.action == "conjugation":
        out = braid.certify_conjugation(rs, radius)
        if out["failures"]:
            raise VerificationFailed(out)
        return out
    raise UsageError(f"unknown braid action {args.action}")


# ---------------------------------------------------------------------------
# dg


def _window(args):
    if args.window is None:
        return None
    try:
        return dg.Window.parse(args.window)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def cmd_dg(args):
    if args.action == "koszul-complex":
        return dg.to_json(dg.koszul_complex(args.dimv))
    if args.action == "random":
        rng = random.Random(args.seed)
        return dg.to_json(dg.random_module(args.kind, args.dimv, rng))
    m = dg.from_json(_read_json(args.inp))
    w = _window(args)
    if args.action == "validate":
        rep = dg.validate(m)
        if not rep["valid"]:
            raise VerificationFailed(rep)
        return rep
    if args.action == "cohomology":
        table = dg.cohomology(m, trusted_only=True)
        if w is not None:
            table = {k: v for k, v in table.items() if w.contains(*k)}
        return dg.table_to_json(table)
    if args.action == "apply-A":
        if m.kind != "S":
            raise UsageError("apply-A needs a module over S")
        return dg.to_json(dg.functor_A(m))
    if args.action == "apply-B":
        if m.kind != "T":
            raise UsageError("apply-B needs a module over T")
        if w is None:
            raise UsageError("apply-B needs --window")
        return dg.to_json(dg.functor_B(m, w))
    raise UsageError(f"unknown dg action {args.action}")


# ---------------------------------------------------------------------------
# algebra


def _load_algebra(args):
    F = Field.parse(args.field) if args.field else None
    if args.name:
        return bundled(args.name, F) if F else bundled(args.name)
    return alg.from_json(_read_json(args.inp))


def cmd_algebra(args):
    if args.action == "list":
        return {"bundled": sorted(BUNDLED)}
    A = _load_algebra(args)
    n = args.nmax if args.nmax is not None else 6
    if args.action == "export":
        return alg.to_json(A)
    rep = alg.validate_algebra(A)
    if not rep["valid"]:
        raise VerificationFailed(rep)
    if args.action == "validate":
        return rep
    data = kz.AlgebraData(A)
    if args.action == "radical":
        return {"radical": [{str(k): A.field.to_json(x) for k, x in sorted(v.items())} for v in data.rad]}
    if args.action == "is-koszul":
        return kz.is_koszul(data, n).to_json()
    if args.action == "ext-table":
        out = {}
        for i in range(data.n_simples):
            tab = kz.ext_bigraded_dims(data, i, None, n)
            out[str(i)] = {f"({a},{j},{m})": v for (a, j, m), v in sorted(tab.items())}
        return {"ext": out, "vanishing": kz.ext_vanishing_check(data, n)}
    if args.action == "ext-dual":
        E = kz.ext_algebra(data, n)
        return alg.to_json(E.algebra)
    if args.action == "check-criterion":
        try:
            res = kz.endomorphism_ring_B(data, n)
        except kz.HypothesisError as exc:
            raise VerificationFailed({"refused": str(exc)}) from None
        layers = {}
        pure = True
        for cov in data.covers:
            rows = []
            for L in kz.radical_layers(data, cov.P):
                ok = kz.layer_is_shifted_simples(data, L, L.index)
                pure &= ok
                rows.append({"layer": L.index, "degrees": {str(d): k for d, k in L.graded_dims.items()}, "pure": ok})
            layers[str(cov.index)] = rows
        out = {"checks": res.checks, "B": alg.to_json(res.B), "radical_layers": layers}
        c = res.checks
        if not (pure and c["nonnegatively_graded"] and c["B0_semisimple"] and c["koszul"].startswith("koszul_up_to") and c["hom_dims_match"]):
            raise VerificationFailed(out)
        return out
    raise UsageError(f"unknown algebra action {args.action}")


# ---------------------------------------------------------------------------
# selftest


def cmd_selftest(args):
    numbers = None
    if args.only:
        try:
            numbers = [int(x) for x in args.only.split(",")]
        except ValueError:
            raise UsageError("--only takes comma-separated criterion numbers") from None
    outcomes = acceptance.run_all(args.seed, numbers)
    for o in outcomes:
        print(o.line(), file=sys.stderr)
    gold = golden.check(Path(args.golden_dir) if args.golden_dir else golden.GOLDEN_DIR)
    report = {
        "seed": args.seed,
        "criteria": [o.to_json() for o in outcomes],
        "golden": gold,
    }
    report["passed"] = all(o.passed for o in outcomes) and not any(gold.values())
    if not report["passed"]:
        raise VerificationFailed(report)
    return report


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="koszulkit", description=__doc__.split("\n\n")[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help="write JSON here instead of stdout")
    common.add_argument("--seed", type=int, default=0)
    sub = ap.add_subparsers(dest="command", required=True)

    w = sub.add_parser("weyl", parents=[common], help="affine Weyl group combinatorics")
    w.add_argument("action", choices=["w0-table", "tau0", "translate", "walls", "root-system"])
    w.add_argument("--type", required=True)
    w.add_argument("--p", type=int)
    w.add_argument("--mu", help="weight as comma-separated integers")

    b = sub.add_parser("braid", parents=[common], help="braid relations in the truncated representation")
    b.add_argument("action", choices=["verify-relations", "conjugation"])
    b.add_argument("--type", required=True)
    b.add_argument("--radius", type=int)
    b.add_argument("--normalization", choices=["v", "q"], default="v")

    d = sub.add_parser("dg", parents=[common], help="dg-modules and the duality functors")
    d.add_argument("action", choices=["apply-A", "apply-B", "cohomology", "validate", "koszul-complex", "random"])
    d.add_argument("--in", dest="inp")
    d.add_argument("--window")
    d.add_argument("--dimv", type=int, default=2)
    d.add_argument("--kind", choices=["S", "T"], default="S")

    a = sub.add_parser("algebra", parents=[common], help="graded algebras and Koszulity")
    a.add_argument("action", choices=["is-koszul", "ext-dual", "ext-table", "check-criterion", "radical", "validate", "export", "list"])
    src = a.add_mutually_exclusive_group()
    src.add_argument("--in", dest="inp")
    src.add_argument("--name", help="bundled example name")
    a.add_argument("--field", help="QQ or GF(p), for bundled examples")
    a.add_argument("--nmax", type=int)

    s = sub.add_parser("selftest", parents=[common], help="run the acceptance suite and golden tables")
    s.add_argument("--only", help="comma-separated criterion numbers")
    s.add_argument("--golden-dir")
    return ap


def run(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    handlers = {"weyl": cmd_weyl, "braid": cmd_braid, "dg": cmd_dg, "algebra": cmd_algebra, "selftest": cmd_selftest}
    code = 0
    try:
        payload = handlers[args.command](args)
    except VerificationFailed as exc:
        payload, code = exc.payload, 1
    except (UsageError, ValueError, KeyError) as exc:
        print(f"koszulkit: error: {exc}", file=sys.stderr)
        return 2
    text = json.dumps(payload, sort_keys=True, default=str) + "\n"
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
