"""Command-line driver.

Every command reads JSON inputs, runs one operation, and writes a JSON report
(stdout or --out).  Reports embed the full configuration, so identical
configurations produce byte-identical reports.  Exit codes: 0 for a completed
run (including negative verdicts that are answers), 1 for verification
failures (bound violations, failed witnesses, disagreeing equivalence sides),
2 for parse errors and unverified hypotheses.
"""

from __future__ import annotations

import argparse
import random
import sys

from . import __version__
from .algebra import AlgebraError, QuiverAlgebra, idealized_extension_check, is_monomial
from .endo import (
    HypothesisError,
    coker_module,
    end_algebra,
    gldim_endo_test,
    omega2_hom_witness,
)
from .igusa_todorov import (
    CutoffExceeded,
    _sample_add_map,
    auslander_generator,
    bound_audit,
    idealized_findim_bound,
    omega2_finite_type_probe,
    opposite_pipeline,
    psi_detailed,
)
from .io import ParseError, dump_report, load_algebra, load_embedding, load_module
from .krull_schmidt import DecompositionError, IsoInconclusive, decompose, enumerate_indecomposables
from .linalg import LinAlgError
from .modules import ModuleError, fingerprint, hom_space
from .resolutions import gldim, proj_dim, syzygy
from .io import sc_module_doc


class CliError(SystemExit):
    pass


def _sc_of(alg):
    return alg.to_sc() if isinstance(alg, QuiverAlgebra) else alg


def _base_report(args, command: str) -> dict:
    cfg = {
        "command": command,
        "seed": args.seed,
        "cutoff": args.cutoff,
        "samples": getattr(args, "samples", None),
        "dim_cap": getattr(args, "dim_cap", None),
        "budget": getattr(args, "budget", None),
        "inputs": {k: getattr(args, k) for k in ("algebra", "module", "v", "m", "embedding", "v_r") if hasattr(args, k)},
    }
    return {"tool": {"name": "findim", "version": __version__}, "config": cfg}


def _emit(args, report: dict, status: int) -> int:
    text = dump_report(report)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return status


def cmd_build(args) -> int:
    alg = load_algebra(args.algebra)
    report = _base_report(args, "build")
    if isinstance(alg, QuiverAlgebra):
        sc = alg.to_sc()
        report["result"] = {
            "dim": alg.dim,
            "dims_per_degree": [len(b) for b in alg.degree_basis],
            "monomial": is_monomial(alg),
            "idempotents": len(sc.idempotents),
            "radical_dim": int(sc.radical_basis().shape[1]),
        }
    else:
        report["result"] = {
            "dim": alg.dim,
            "radical_dim": int(alg.radical_basis().shape[1]),
        }
    return _emit(args, report, 0)


def cmd_hom(args) -> int:
    alg = load_algebra(args.algebra)
    x = load_module(args.module, alg)
    y = load_module(args.v, alg)
    basis = hom_space(x, y)
    report = _base_report(args, "hom")
    report["result"] = {
        "dim": len(basis),
        "basis": [f.matrix.to_lists() for f in basis],
    }
    return _emit(args, report, 0)


def cmd_decompose(args) -> int:
    alg = load_algebra(args.algebra)
    x = load_module(args.module, alg)
    rep = decompose(x, seed=args.seed)
    report = _base_report(args, "decompose")
    report["result"] = {
        "classes": [
            {
                "dim": c.rep.dim,
                "multiplicity": c.multiplicity,
                "fingerprint": repr(fingerprint(c.rep)),
                "certificate": {
                    "end_dim": c.certificate.end_dim,
                    "radical_dim": c.certificate.radical_dim,
                    "quotient_dim": c.certificate.quotient_dim,
                    "witness_minpoly": c.certificate.witness_minpoly,
                },
            }
            for c in rep.classes
        ]
    }
    return _emit(args, report, 0)


def cmd_pd(args) -> int:
    alg = load_algebra(args.algebra)
    x = load_module(args.module, alg)
    res = proj_dim(x, cutoff=args.cutoff, seed=args.seed)
    report = _base_report(args, "pd")
    report["result"] = res.to_jsonable()
    return _emit(args, report, 0)


def cmd_syzygy(args) -> int:
    alg = load_algebra(args.algebra)
    x = load_module(args.module, alg)
    w = syzygy(x, args.index, seed=args.seed)
    report = _base_report(args, "syzygy")
    report["config"]["index"] = args.index
    report["result"] = sc_module_doc(w)
    return _emit(args, report, 0)


def cmd_gldim(args) -> int:
    alg = load_algebra(args.algebra)
    res = gldim(_sc_of(alg), cutoff=args.cutoff, seed=args.seed)
    report = _base_report(args, "gldim")
    report["result"] = res.to_jsonable()
    return _emit(args, report, 0)


def cmd_enumerate(args) -> int:
    alg = load_algebra(args.algebra)
    res = enumerate_indecomposables(alg, args.dim_cap, budget=args.budget, seed=args.seed)
    report = _base_report(args, "enumerate")
    report["result"] = {
        "count": len(res.registry),
        "complete": res.complete,
        "candidates_scanned": res.candidates_scanned,
    } | res.registry.export()
    return _emit(args, report, 0)


def cmd_auslander(args) -> int:
    alg = load_algebra(args.algebra)
    res = enumerate_indecomposables(alg, args.dim_cap, budget=args.budget, seed=args.seed)
    gen = auslander_generator(_sc_of(alg), res.registry, seed=args.seed)
    report = _base_report(args, "auslander")
    report["result"] = {
        "complete": res.complete,
        "classes": len(res.registry),
        "generator": sc_module_doc(gen),
    }
    return _emit(args, report, 0)


def cmd_endo(args) -> int:
    alg = load_algebra(args.algebra)
    m = load_module(args.module, alg)
    pkg = end_algebra(m, seed=args.seed)
    report = _base_report(args, "endo")
    report["result"] = {
        "dim": pkg.e.dim,
        "radical_dim": int(pkg.e.radical_basis().shape[1]),
        "summand_classes": [
            {"dim": c.rep.dim, "multiplicity": c.multiplicity} for c in pkg.decomp.classes
        ],
        "gldim": gldim(pkg.e, cutoff=args.cutoff, seed=args.seed).to_jsonable(),
    }
    return _emit(args, report, 0)


def cmd_psi(args) -> int:
    alg = load_algebra(args.algebra)
    m = load_module(args.module, alg)
    det = psi_detailed(m, cutoff=args.cutoff, seed=args.seed)
    report = _base_report(args, "psi")
    report["result"] = {
        "phi": det.phi,
        "psi": det.psi,
        "censored": det.censored,
        "summand_pds": det.summand_pds,
    }
    return _emit(args, report, 0)


def cmd_lemma21(args) -> int:
    alg = load_algebra(args.algebra)
    v = load_module(args.v, alg)
    res = enumerate_indecomposables(alg, args.dim_cap, budget=args.budget, seed=args.seed)
    if not res.complete:
        raise HypothesisError("registry not closure-complete; raise --dim-cap")
    indecs = [e.module for e in res.registry]
    rep = gldim_endo_test(v, indecs, args.n, cutoff=args.cutoff, seed=args.seed)
    report = _base_report(args, "lemma21")
    report["config"]["n"] = args.n
    report["result"] = {
        "n": rep.n,
        "gldim_end_v": rep.gldim_endv.to_jsonable(),
        "side_gldim": rep.side_gldim,
        "side_coresolution": rep.side_coresolution,
        "per_member": rep.per_member,
        "agree": rep.agree,
    }
    return _emit(args, report, 0 if rep.agree else 1)


def cmd_lemma23(args) -> int:
    alg = load_algebra(args.algebra)
    m = load_module(args.m, alg)
    pkg = end_algebra(m, seed=args.seed)
    rows = []
    failures = 0
    for i in range(args.samples):
        rng = random.Random(f"w:{args.seed}:{i}")
        g = _sample_add_map(pkg, rng)
        x = coker_module(pkg, g)
        w = omega2_hom_witness(pkg, x, seed=args.seed)
        rows.append({"sample": i, "dim": x.dim, "verdict": w.verdict})
        failures += not w.verdict
    report = _base_report(args, "lemma23")
    report["result"] = {"samples": rows, "failures": failures}
    return _emit(args, report, 0 if failures == 0 else 1)


def cmd_bound(args) -> int:
    alg = load_algebra(args.algebra)
    sc = _sc_of(alg)
    v = load_module(args.v, alg)
    m = load_module(args.m, alg)
    rep = bound_audit(sc, v, m, samples=args.samples, seed=args.seed, cutoff=args.cutoff)
    report = _base_report(args, "bound")
    report["result"] = rep.to_jsonable()
    return _emit(args, report, 0 if not rep.violations else 1)


def cmd_op_bound(args) -> int:
    alg = load_algebra(args.algebra)
    sc = _sc_of(alg)
    v = load_module(args.v, alg)
    m = load_module(args.m, alg)
    rep = opposite_pipeline(sc, v, m, samples=args.samples, seed=args.seed, cutoff=args.cutoff)
    report = _base_report(args, "op-bound")
    report["result"] = rep.to_jsonable()
    ok = not rep.report.violations and rep.end_op_iso_ok
    return _emit(args, report, 0 if ok else 1)


def cmd_idealized(args) -> int:
    emb = load_embedding(args.embedding)
    check = idealized_extension_check(emb)
    report = _base_report(args, "idealized")
    result = {"holds": check.holds}
    if check.witness is not None:
        r, x, prod = check.witness
        result["witness"] = {
            "left_factor": r.tolist(),
            "radical_element": x.tolist(),
            "product": prod.tolist(),
        }
    report["result"] = result
    return _emit(args, report, 0)


def cmd_probe(args) -> int:
    alg = load_algebra(args.algebra)
    sc = _sc_of(alg)
    registry = None
    if args.dim_cap:
        registry = enumerate_indecomposables(alg, args.dim_cap, budget=args.budget, seed=args.seed).registry
    res = omega2_finite_type_probe(
        sc, registry=registry, samples=args.samples, cutoff=args.cutoff, seed=args.seed
    )
    report = _base_report(args, "probe")
    report["result"] = {
        "classes": [{"dim": c.dim, "fingerprint": repr(fingerprint(c))} for c in res.classes],
        "all_projective": res.all_projective,
        "stabilized": res.stabilized,
    }
    return _emit(args, report, 0)


def cmd_prop27(args) -> int:
    emb = load_embedding(args.embedding)
    m = load_module(args.m, emb.subalgebra())
    v_r = load_module(args.v_r, emb.ambient)
    registry = None
    if args.dim_cap:
        registry = enumerate_indecomposables(emb.ambient, args.dim_cap, budget=args.budget, seed=args.seed).registry
    rep = idealized_findim_bound(
        emb, m, v_r, samples=args.samples, seed=args.seed, cutoff=args.cutoff, r_registry=registry
    )
    report = _base_report(args, "prop27")
    report["result"] = rep.to_jsonable()
    return _emit(args, report, 0 if not rep.report.violations else 1)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="findim",
        description="Homological invariants of finite-dimensional algebras over prime fields.",
    )
    ap.add_argument("--version", action="version", version=f"findim {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, module=False, v=False, m=False, samples=False, dim_cap=False, n=False):
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--cutoff", type=int, default=20)
        p.add_argument("--out", default=None)
        if module:
            p.add_argument("--module", required=True)
        if v:
            p.add_argument("--v", required=True, help="module file for V")
        if m:
            p.add_argument("--m", required=True, help="module file for M")
        if samples:
            p.add_argument("--samples", type=int, default=100)
        if dim_cap:
            p.add_argument("--dim-cap", dest="dim_cap", type=int, default=4)
            p.add_argument("--budget", type=int, default=2**22)
        if n:
            p.add_argument("--n", type=int, default=0)

    p = sub.add_parser("build", help="build an algebra and report its basis data")
    p.add_argument("algebra")
    common(p)
    p.set_defaults(fn=cmd_build)

    p = sub.add_parser("hom", help="basis of the hom space between two modules")
    p.add_argument("algebra")
    common(p, module=True, v=True)
    p.set_defaults(fn=cmd_hom)

    p = sub.add_parser("decompose", help="certified indecomposable decomposition")
    p.add_argument("algebra")
    common(p, module=True)
    p.set_defaults(fn=cmd_decompose)

    p = sub.add_parser("pd", help="projective dimension with cutoff")
    p.add_argument("algebra")
    common(p, module=True)
    p.set_defaults(fn=cmd_pd)

    p = sub.add_parser("syzygy", help="i-th syzygy module")
    p.add_argument("algebra")
    p.add_argument("--index", type=int, default=1)
    common(p, module=True)
    p.set_defaults(fn=cmd_syzygy)

    p = sub.add_parser("gldim", help="global dimension")
    p.add_argument("algebra")
    common(p)
    p.set_defaults(fn=cmd_gldim)

    p = sub.add_parser("enumerate", help="enumerate indecomposables up to a dimension cap")
    p.add_argument("algebra")
    common(p, dim_cap=True)
    p.set_defaults(fn=cmd_enumerate)

    p = sub.add_parser("auslander", help="direct sum of one module per indecomposable class")
    p.add_argument("algebra")
    common(p, dim_cap=True)
    p.set_defaults(fn=cmd_auslander)

    p = sub.add_parser("endo", help="endomorphism algebra of a module")
    p.add_argument("algebra")
    common(p, module=True)
    p.set_defaults(fn=cmd_endo)

    p = sub.add_parser("psi", help="rank-stabilization invariants of a module")
    p.add_argument("algebra")
    common(p, module=True)
    p.set_defaults(fn=cmd_psi)

    p = sub.add_parser("lemma21", help="coresolution vs gldim(End V) equivalence")
    p.add_argument("algebra")
    common(p, v=True, dim_cap=True, n=True)
    p.set_defaults(fn=cmd_lemma21)

    p = sub.add_parser("lemma23", help="second-syzygy hom-transport witnesses on samples")
    p.add_argument("algebra")
    common(p, m=True, samples=True)
    p.set_defaults(fn=cmd_lemma23)

    p = sub.add_parser("bound", help="finitistic-dimension bound and audit for End(M)")
    p.add_argument("algebra")
    common(p, v=True, m=True, samples=True)
    p.set_defaults(fn=cmd_bound)

    p = sub.add_parser("op-bound", help="the bound audit over the opposite algebra")
    p.add_argument("algebra")
    common(p, v=True, m=True, samples=True)
    p.set_defaults(fn=cmd_op_bound)

    p = sub.add_parser("idealized", help="is rad(A) a left ideal of the ambient algebra?")
    p.add_argument("embedding")
    common(p)
    p.set_defaults(fn=cmd_idealized)

    p = sub.add_parser("probe", help="indecomposable classes in second syzygies")
    p.add_argument("algebra")
    common(p, samples=True, dim_cap=True)
    p.set_defaults(fn=cmd_probe)

    p = sub.add_parser("prop27", help="findim bound over an idealized extension")
    p.add_argument("embedding")
    common(p, m=True, samples=True, dim_cap=True)
    p.add_argument("--v-r", dest="v_r", required=True, help="module file for V over the ambient algebra")
    p.set_defaults(fn=cmd_prop27)

    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.fn(args)
    except (ParseError, AlgebraError, ModuleError, LinAlgError, HypothesisError,
            DecompositionError, IsoInconclusive, CutoffExceeded, ValueError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
