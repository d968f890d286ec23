"""Manifest-driven command line front end.

Each subcommand runs one invariant pipeline; `all` runs every pipeline that
applies to the manifest's manifold.  Reports are written as JSON (sections,
tolerances, warnings) with timings kept in a separate block so repeated runs
with the same seed produce identical reports modulo timing fields.

Exit codes:
  0  success
  2  manifest parse/schema error or bad arguments
  3  unsupported family / foliation model for the requested pipeline
  4  regularity or finiteness failure (the construction does not apply)
  5  tautness failure under --strict
"""

from __future__ import annotations

import argparse
import sys
import time
from pathlib import Path

import numpy as np

from . import chern_simons as cs
from . import cyclic as cyc
from . import foliation_gv as fg
from . import leafwise as lw
from .cache import Cache, content_key
from .exprs import ExprError, compile_expr
from .manifest import Manifest, ManifestError, load_manifest
from .presentations import ParameterError, builtin_presentation, homology_h1
from .reports import InvariantReport
from .su2reps import RegularityError, SolverConfig, casson_count, enumerate_reps
from .twisted_torsion import (
    ModuliNotFiniteError,
    UnsupportedFamilyError,
    build_twisted_complex,
    cw_structure,
    torsion_sum,
)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_UNSUPPORTED = 3
EXIT_REGULARITY = 4
EXIT_TAUTNESS = 5

SUBCOMMANDS = ("reps", "torsion", "casson", "cs-check", "gv", "leafwise", "cyclic", "all")


def _solver_config(m: Manifest, seed_override=None) -> SolverConfig:
    kw = dict(m.solver)
    if seed_override is not None:
        kw["seed"] = seed_override
    return SolverConfig(**kw)


def _presentation(m: Manifest):
    return builtin_presentation(m.family, *m.params)


def _moduli(m: Manifest, cfg: SolverConfig):
    return enumerate_reps(_presentation(m), cfg)


def run_reps(m: Manifest, report: InvariantReport, args, cache: Cache):
    cfg = _solver_config(m, args.seed)
    moduli = _moduli(m, cfg)
    sec = report.section("reps")
    sec.values["class_count"] = len(moduli.classes)
    sec.values["irreducible_count"] = sum(r.irreducible for r in moduli.classes)
    sec.values["trace_coordinates"] = [
        [round(float(t), 10) for t in r.trace_coords] for r in moduli.classes
    ]
    sec.values["residuals"] = [float(r.residual) for r in moduli.classes]
    sec.tolerances["relator_residual"] = cfg.tolerance
    sec.tolerances["dedup"] = cfg.dedup_tolerance
    sec.metadata["family"] = m.family
    sec.metadata["params"] = list(m.params)
    sec.warnings.extend(moduli.warnings)
    return moduli


def run_torsion(m: Manifest, report: InvariantReport, args, cache: Cache):
    cfg = _solver_config(m, args.seed)
    sec = report.section("torsion")
    key_inputs = {
        "pipeline": "torsion",
        "family": m.family,
        "params": list(m.params),
        "solver": sorted(m.solver.items()),
        "seed": cfg.seed,
    }
    payload = cache.get(key_inputs)
    if payload is None:
        pres = _presentation(m)
        cw = cw_structure(m.family, *m.params)
        result = torsion_sum(pres, cw, cfg)
        payload = {
            "total": result.total,
            "irreducible_subtotal": result.irreducible_subtotal,
            "per_class": [
                {
                    "trace_coordinates": [round(float(t), 10) for t in tc],
                    "log_t": res.log_t,
                    "t": res.t,
                    "acyclic": res.acyclic,
                    "metric_dependent": res.metric_dependent,
                }
                for tc, res, _irr in result.per_class
            ],
            "notes": list(result.notes),
        }
        cache.put(key_inputs, payload)
    sec.values.update(
        total=payload["total"],
        irreducible_subtotal=payload["irreducible_subtotal"],
        per_class=payload["per_class"],
    )
    sec.tolerances["zero_eigenvalue_threshold"] = 1e-10
    sec.metadata["family"] = m.family
    sec.warnings.extend(payload["notes"])


def run_casson(m: Manifest, report: InvariantReport, args, cache: Cache):
    cfg = _solver_config(m, args.seed)
    pres = _presentation(m)
    if homology_h1(pres).betti_1 != 0 or homology_h1(pres).torsion_coefficients:
        raise RegularityError(
            f"{m.family}{tuple(m.params)}: not an integral homology sphere; "
            "the counting construction does not apply"
        )
    moduli = _moduli(m, cfg)
    cw = cw_structure(m.family, *m.params)
    regularity = [
        build_twisted_complex(cw, r).betti_numbers()[1]
        for r in moduli.classes
        if r.irreducible
    ]
    count = casson_count(moduli, regularity)
    sec = report.section("casson")
    sec.values["unsigned_count"] = count
    sec.values["twisted_h1_dims"] = regularity
    sec.metadata["convention"] = "unsigned: each irreducible class weighted +1"
    sec.tolerances["relator_residual"] = cfg.tolerance


def run_cs_check(m: Manifest, report: InvariantReport, args, cache: Cache):
    block = dict(m.chern_simons)
    n = block.get("grid", 4)
    scale = block.get("scale", 0.1)
    level = block.get("level", 1.0)
    step = block.get("step", 1e-4)
    seed = args.seed if args.seed is not None else block.get("seed", 0)
    conn = cs.LatticeConnection.random(n, scale=scale, seed=seed)
    rep = cs.stationarity_check(conn, step=step, level=level)
    flat = cs.LatticeConnection.zero(n)
    flat_grad = float(np.linalg.norm(cs.action_gradient(flat, level)))
    sec = report.section("chern_simons")
    sec.values.update(
        action=cs.cs_action(conn, level),
        grad_norm=rep.grad_norm,
        fd_grad_norm=rep.fd_grad_norm,
        curvature_norm=rep.curvature_norm,
        fd_agreement=rep.agreement,
        flat_connection_grad_norm=flat_grad,
    )
    sec.tolerances["fd_agreement"] = 1e-5
    sec.tolerances["fd_step"] = step
    sec.metadata.update(grid=n, scale=scale, level=level, seed=seed)


def _foliation_spec(entry):
    n = entry.get("grid", 32)
    fns = [compile_expr(s) for s in entry["omega"]]
    omega = fg.form_from_functions(1, n, *fns)
    trans = entry.get("transversal")
    return fg.FoliationSpec(
        omega=omega,
        transversal=tuple(tuple(p) for p in trans) if trans else None,
        label=entry.get("label", ""),
    )


def run_gv(m: Manifest, report: InvariantReport, args, cache: Cache):
    sec = report.section("godbillon_vey")
    if not m.foliations:
        sec.values["total"] = 0.0
        sec.warnings.append("no foliations declared in the manifest")
        return
    if args.workers > 1:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=args.workers) as pool:
            specs = list(pool.map(_foliation_spec, m.foliations))
            residuals = list(pool.map(lambda s: fg.integrability_residual(s.omega), specs))
    else:
        specs = [_foliation_spec(e) for e in m.foliations]
        residuals = [fg.integrability_residual(s.omega) for s in specs]
    gv = fg.gv_invariant(specs, strict=args.strict)
    sec.values["total"] = gv.total
    sec.values["per_foliation"] = [
        {"label": lab, "gv": val, "taut": taut, "theta_residual": res}
        for lab, val, taut, res in gv.per_foliation
    ]
    sec.values["integrability_residuals"] = residuals
    sec.tolerances["integrability"] = 1e-6
    sec.metadata["grids"] = [e.get("grid", 32) for e in m.foliations]
    sec.warnings.extend(gv.warnings)


def run_leafwise(m: Manifest, report: InvariantReport, args, cache: Cache):
    block = dict(m.leafwise)
    trunc = block.get("truncation", 4)
    n_z = block.get("n_z", 8)
    weights = tuple(block.get("weights", (1.0, 1.0, 1.0)))
    key_inputs = {"pipeline": "leafwise", "truncation": trunc, "n_z": n_z, "weights": list(weights)}
    payload = cache.get(key_inputs)
    if payload is None:
        res = lw.leafwise_torsion(trunc, n_z, weights)
        spectra = [lw.tangential_laplacian(k, trunc, weights) for k in range(3)]
        payload = {
            "log_t": res.log_t,
            "t": res.t,
            "euler_like": res.euler_like,
            "betti": list(res.betti),
            "metric_dependent": res.metric_dependent,
            "kernel_dims": [s.kernel_dim for s in spectra],
            "log_dets": list(res.per_degree_log_dets),
        }
        cache.put(key_inputs, payload)
    count = max(1, len(m.foliations))
    fsum = lw.foliation_torsion_sum(
        [lw.LeafwiseModel(truncation=trunc, n_z=n_z, weights=weights, label=f"class-{i}")
         for i in range(count)]
    )
    degen = lw.tangential_cs3_degeneracy()
    sec = report.section("leafwise")
    sec.values.update(payload)
    sec.values["foliation_torsion_sum"] = fsum.total
    sec.values["tangential_cs3_dim"] = degen.lambda3_dim
    sec.tolerances["log_t_zero"] = 1e-10
    sec.metadata.update(truncation=trunc, n_z=n_z, weights=list(weights))
    if payload["metric_dependent"]:
        sec.warnings.append("degree weights are not metric-like; torsion is metric-dependent")
    sec.warnings.append(degen.note)


def run_cyclic(m: Manifest, report: InvariantReport, args, cache: Cache):
    block = dict(m.cyclic)
    bound = block.get("degree_bound", 8)
    windings = block.get("windings", list(range(-3, 4)))
    tau = cyc.fundamental_cocycle(bound)
    pairings = {str(nw): cyc.k_pairing(cyc.mode(nw), tau) for nw in windings}
    rng = np.random.default_rng(args.seed if args.seed is not None else 0)
    b = cyc.hochschild_b(tau)
    probe_deg = max(1, bound // 3)
    b_worst = max(
        abs(b(*(cyc.random_trig(probe_deg, rng) for _ in range(3)))) for _ in range(50)
    )
    lam_defect = float(np.max(np.abs(cyc.cyclic_lambda(tau).kernel - tau.kernel)))
    g = max(1, len(m.foliations))
    tfcc = cyc.tfcc_sum(g, bound)
    sec = report.section("cyclic")
    sec.values.update(
        winding_pairings=pairings,
        hochschild_b_worst=float(b_worst),
        cyclic_lambda_defect=lam_defect,
        tfcc_coefficient=tfcc.coefficient,
        tfcc_foliation_count=tfcc.foliation_count,
    )
    sec.tolerances.update(winding=1e-12, cocycle=1e-10)
    sec.metadata.update(degree_bound=bound, probes=50)


PIPELINES = {
    "reps": run_reps,
    "torsion": run_torsion,
    "casson": run_casson,
    "cs-check": run_cs_check,
    "gv": run_gv,
    "leafwise": run_leafwise,
    "cyclic": run_cyclic,
}


def _run_all(m: Manifest, report: InvariantReport, args, cache: Cache):
    for name, fn in PIPELINES.items():
        t0 = time.perf_counter()
        try:
            fn(m, report, args, cache)
        except (ModuliNotFiniteError, UnsupportedFamilyError, RegularityError) as exc:
            report.section(name.replace("-", "_")).warnings.append(
                f"skipped: {exc}"
            )
        report.timings[name] = time.perf_counter() - t0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="taut3",
        description="3-manifold invariants from a JSON manifest",
        epilog="Exit codes:" + __doc__.split("Exit codes:")[1],
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name in SUBCOMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--manifest", required=True, help="path to the JSON manifest")
        p.add_argument("--out", default=None, help="report output path (overrides manifest)")
        p.add_argument("--workers", type=int, default=1, help="worker pool size")
        p.add_argument("--no-cache", action="store_true", help="disable the spectra cache")
        p.add_argument("--strict", action="store_true", help="tautness failures become errors")
        p.add_argument("--seed", type=int, default=None, help="override every seeded stage")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        m = load_manifest(args.manifest)
    except ManifestError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE

    cache = Cache(enabled=not args.no_cache)
    report = InvariantReport(manifest_digest=content_key(m.raw))
    try:
        if args.command == "all":
            _run_all(m, report, args, cache)
        else:
            t0 = time.perf_counter()
            PIPELINES[args.command](m, report, args, cache)
            report.timings[args.command] = time.perf_counter() - t0
    except (ManifestError, ParameterError, ExprError, ValueError) as exc:
        if isinstance(exc, (UnsupportedFamilyError, lw.UnsupportedFoliationError)):
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_UNSUPPORTED
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ModuliNotFiniteError, RegularityError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_REGULARITY
    except fg.TautnessError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_TAUTNESS

    for note in cache.warnings:
        print(f"cache: {note}", file=sys.stderr)

    out_path = args.out or m.output
    if out_path:
        Path(out_path).write_text(report.to_json())
    print(report.to_text())
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
