"""Command-line front end.

Every subcommand is a thin adapter around one library call: it loads a
problem file, runs the analysis, and prints a JSON result document on stdout
carrying the input file hash and a full parameter echo.  Analysis failures
print a structured error document on stderr and exit 1; usage errors exit 2.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys

import numpy as np

from . import __version__
from .bounds import bauer_fike_bound, bound_comparator, dist_mult_bound, dist_mult_bound_adj, elsner_bound
from .condition import cond_eigvector_free, cond_multiple, cond_simple, cond_via_companion, min_gap_bound
from .core import MatrixPolynomial, WeightSet, spectral_norm, singular_values
from .errors import HypothesisViolationError, PolycondError
from .io import ProblemFile, load_problem, serialize_problem
from .linearization import linearization_residual
from .perturb import defect_perturbation, is_admissible, perturbation_rng, random_perturbation
from .pseudospectra import boundedness_check, contours, grid_eval, sublevel_component_count
from .spectra import (default_cluster_tol, eig_vectors, eigenvalues, nearest_eigenvalue,
                      spectrum, validate_jordan_triple, eigenproblem_cond)

RESIDUAL_TOL = 1e-8


def _json_safe(obj):
    if isinstance(obj, complex):
        return [obj.real, obj.imag]
    if isinstance(obj, (np.complexfloating,)):
        return [float(obj.real), float(obj.imag)]
    if isinstance(obj, (np.floating, np.integer)):
        return obj.item()
    if isinstance(obj, np.bool_):
        return bool(obj)
    if isinstance(obj, np.ndarray):
        return [_json_safe(v) for v in obj.tolist()]
    if isinstance(obj, dict):
        return {k: _json_safe(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_json_safe(v) for v in obj]
    return obj


def _report_out(report) -> dict:
    return {
        "value": report.value,
        "ingredients": _json_safe(report.ingredients),
        "applicable": report.applicable,
    }


def _target_eig(values) -> complex:
    if len(values) == 1:
        return complex(values[0], 0.0)
    return complex(values[0], values[1])


class _Context:
    """Problem file plus the effective weights for this invocation."""

    def __init__(self, args):
        self.path = args.file
        with open(self.path, "rb") as fh:
            data = fh.read()
        self.sha256 = hashlib.sha256(data).hexdigest()
        self.problem: ProblemFile = load_problem(self.path)
        self.poly: MatrixPolynomial = self.problem.poly
        if getattr(args, "weights", None):
            self.weights = WeightSet([float(v) for v in args.weights.split(",")])
            self.weights.require_match(self.poly)
            self.weights_overridden = True
        else:
            self.weights = self.problem.weights
            self.weights_overridden = False

    def header(self, command: str, params: dict) -> dict:
        return {
            "tool": "polycond",
            "version": __version__,
            "command": command,
            "input": {"path": self.path, "sha256": self.sha256},
            "parameters": _json_safe(dict(
                params,
                weights=list(self.weights.weights),
                weights_overridden=self.weights_overridden,
                weights_derived=self.problem.weights_derived,
            )),
        }


def _snap(ctx: _Context, args):
    """Resolve the --eig argument to a computed eigenvalue and its index."""
    target = _target_eig(args.eig)
    sp = spectrum(ctx.poly)
    idx = nearest_eigenvalue(sp.eigenvalues, target, tol=getattr(args, "tol", None))
    return complex(sp.eigenvalues[idx]), idx, sp


def cmd_eig(ctx: _Context, args) -> dict:
    tol = args.cluster_tol
    sp = spectrum(ctx.poly, cluster_tol=tol)
    return {
        "eigenvalues": _json_safe(sp.eigenvalues),
        "cluster_tol": tol if tol is not None else default_cluster_tol(sp.eigenvalues),
        "clusters": [
            {"center": _json_safe(complex(c.center)), "indices": list(c.indices),
             "size": c.size} for c in sp.clusters
        ],
    }


def cmd_cond(ctx: _Context, args) -> dict:
    lam, idx, sp = _snap(ctx, args)
    x, y = eig_vectors(ctx.poly, lam, tol=args.tol, values=sp.eigenvalues)
    k5 = cond_simple(ctx.poly, ctx.weights, lam, x, y)
    k8 = cond_via_companion(ctx.poly, ctx.weights, lam, x, y)
    kfree = cond_eigvector_free(ctx.poly, ctx.weights, idx, sp)
    out = {
        "eigenvalue": _json_safe(lam),
        "index": idx,
        "value": k5,
        "routes": {"eigenvector": k5, "companion": k8, "eigenvector_free": kfree},
    }
    if ctx.poly.n * ctx.poly.m > 1:
        out["min_gap_bound"] = min_gap_bound(ctx.poly, ctx.weights, idx, sp)
    return out


def cmd_multi_cond(ctx: _Context, args) -> dict:
    data = ctx.problem.multiple
    if data is None:
        raise HypothesisViolationError(
            "the problem file carries no multiple-eigenvalue data "
            "(a \"multiple\" block with eigenvalue and eigenvector matrices)")
    value = cond_multiple(ctx.poly, ctx.weights, data.eigenvalue,
                          data.right_vectors, data.left_vectors)
    return {
        "eigenvalue": _json_safe(complex(data.eigenvalue)),
        "kappa": int(data.right_vectors.shape[1]),
        "value": value,
    }


def cmd_dist(ctx: _Context, args) -> dict:
    lam, idx, sp = _snap(ctx, args)
    x, y = eig_vectors(ctx.poly, lam, tol=args.tol, values=sp.eigenvalues)
    direct = dist_mult_bound(ctx.poly, ctx.weights, lam, x, y)
    adj = dist_mult_bound_adj(ctx.poly, ctx.weights, idx, sp, x, y)
    return {
        "eigenvalue": _json_safe(lam),
        "value": direct.value,
        "bound": _report_out(direct),
        "bound_adjugate_route": _report_out(adj),
    }


def cmd_bounds(ctx: _Context, args) -> dict:
    mu = complex(args.mu[0], args.mu[1])
    eps = args.eps
    if args.bound == "elsner":
        rep = elsner_bound(ctx.poly, ctx.weights, eps, mu)
        return {"mu": _json_safe(mu), "eps": eps, "value": rep.value,
                "bound": _report_out(rep)}
    triple = ctx.problem.triple
    if triple is None:
        raise HypothesisViolationError(
            "this bound needs a Jordan triple; the problem file has none")
    if args.bound == "bauer-fike":
        rep = bauer_fike_bound(ctx.poly, ctx.weights, eps, mu, triple)
        return {"mu": _json_safe(mu), "eps": eps, "value": rep.value,
                "bound": _report_out(rep)}
    cmp_ = bound_comparator(ctx.poly, ctx.weights, eps, mu, triple)
    return {
        "mu": _json_safe(mu),
        "eps": eps,
        "omega": cmp_.omega,
        "elsner_tighter": cmp_.elsner_tighter,
        "elsner": _report_out(cmp_.elsner),
        "bauer_fike": _report_out(cmp_.bauer_fike),
    }


def _write_grid_csv(path: str, grid) -> None:
    re = [float(v) for v in grid.re_axis]
    im = [float(v) for v in grid.im_axis]
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("re,im,value\n")
        for iy in range(grid.ny):
            for ix in range(grid.nx):
                fh.write(f"{re[ix]!r},{im[iy]!r},{float(grid.values[iy, ix])!r}\n")


def _write_contour_csv(path: str, cs) -> None:
    counters = {}
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("component,seg,re1,im1,re2,im2\n")
        for (z1, z2), lab in zip(cs.segments, cs.labels):
            seg = counters.get(lab, 0)
            counters[lab] = seg + 1
            fh.write(f"{lab},{seg},{float(z1.real)!r},{float(z1.imag)!r},"
                     f"{float(z2.real)!r},{float(z2.imag)!r}\n")


def cmd_pseudo(ctx: _Context, args) -> dict:
    if len(args.resolution) == 1:
        resolution = (args.resolution[0], args.resolution[0])
    else:
        resolution = tuple(args.resolution)
    grid = grid_eval(ctx.poly, ctx.weights, tuple(args.box), resolution,
                     threads=args.threads)
    out = {
        "eps": args.eps,
        "box": list(args.box),
        "resolution": [grid.nx, grid.ny],
        "grid_min": float(grid.values.min()),
        "grid_max": float(grid.values.max()),
        "bounded": boundedness_check(ctx.poly, ctx.weights, args.eps),
        "poly_hash": grid.poly_hash,
    }
    cs = contours(grid, args.eps)
    out["components"] = cs.n_components
    out["segments"] = len(cs.segments)
    out["sublevel_components"] = sublevel_component_count(grid, args.eps)
    if cs.diagnostic:
        out["diagnostic"] = cs.diagnostic
    if args.grid_out:
        _write_grid_csv(args.grid_out, grid)
        out["grid_csv"] = args.grid_out
    if args.contour_out:
        _write_contour_csv(args.contour_out, cs)
        out["contour_csv"] = args.contour_out
    return out


def _write_problem(path: str, poly: MatrixPolynomial, source: ProblemFile) -> None:
    out = ProblemFile(poly=poly, weights=source.weights,
                      weights_derived=source.weights_derived)
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(serialize_problem(out))


def cmd_perturb(ctx: _Context, args) -> dict:
    if args.kind == "defect":
        lam, idx, sp = _snap(ctx, args)
        x, y = eig_vectors(ctx.poly, lam, tol=args.tol, values=sp.eigenvalues)
        q = defect_perturbation(ctx.poly, ctx.weights, lam, x, y)
        bound = dist_mult_bound(ctx.poly, ctx.weights, lam, x, y)
        out = {
            "eigenvalue": _json_safe(lam),
            "eps_used": q.eps_used,
            "bound": bound.value,
            "certificates": list(q.certificates),
            "delta_norms": list(q.delta_norms),
        }
    else:
        q = random_perturbation(ctx.poly, args.eps, ctx.weights,
                                seed=args.seed, stream=args.stream)
        rep = is_admissible(ctx.poly, q, args.eps, ctx.weights)
        out = {
            "eps": args.eps,
            "seed": args.seed,
            "stream": args.stream,
            "delta_norms": list(q.delta_norms),
            "admissible": rep.admissible,
            "tight": list(rep.tight),
        }
    if args.out:
        _write_problem(args.out, q.materialize(), ctx.problem)
        out["problem_out"] = args.out
    return out


def _sample_points(poly: MatrixPolynomial, count: int, seed: int) -> np.ndarray:
    rng = perturbation_rng(seed, stream=0)
    scale = 1.0 + float(np.max(np.abs(eigenvalues(poly))))
    return scale * (rng.standard_normal(count) + 1j * rng.standard_normal(count))


def cmd_verify(ctx: _Context, args) -> dict:
    if args.check == "linearization":
        pts = _sample_points(ctx.poly, args.points, args.seed)
        lead = ctx.poly.coeffs[-1]
        s = singular_values(lead)
        c_lead = float(s[0] / s[-1])
        worst = worst_thresh = 0.0
        ok = True
        for z in pts:
            r = linearization_residual(ctx.poly, complex(z))
            thresh = RESIDUAL_TOL * (1.0 + spectral_norm(ctx.poly.eval(complex(z)))) * c_lead
            ok = ok and (r <= thresh)
            if r > worst:
                worst, worst_thresh = r, thresh
        return {"points": args.points, "seed": args.seed,
                "max_residual": worst, "threshold_at_max": worst_thresh, "pass": ok}
    triple = ctx.problem.triple
    if triple is None:
        raise HypothesisViolationError(
            "verify triple needs a Jordan triple in the problem file")
    pts = _sample_points(ctx.poly, args.samples, args.seed)
    residual = validate_jordan_triple(ctx.poly, triple, samples=[complex(z) for z in pts])
    return {"samples": args.samples, "seed": args.seed,
            "max_relative_residual": residual,
            "triple_cond": eigenproblem_cond(triple),
            "pass": residual <= RESIDUAL_TOL}


def _add_common(p: argparse.ArgumentParser, eig: bool = False) -> None:
    p.add_argument("file", help="problem file (JSON)")
    p.add_argument("--weights", default=None,
                   help="override weights: comma-separated w_0,...,w_m")
    if eig:
        p.add_argument("--eig", nargs="+", type=float, required=True,
                       metavar=("RE", "IM"),
                       help="target eigenvalue (snapped to the nearest computed one)")
        p.add_argument("--tol", type=float, default=None,
                       help="snapping tolerance (default 1e-3 * max(1, |target|))")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="polycond",
        description="Eigenvalue condition numbers, pseudospectra, and "
                    "perturbation bounds for matrix polynomials.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eig", help="eigenvalues and clusters")
    _add_common(p)
    p.add_argument("--cluster-tol", type=float, default=None)

    p = sub.add_parser("cond", help="condition number of a simple eigenvalue")
    _add_common(p, eig=True)

    p = sub.add_parser("multi-cond", help="condition number of a multiple eigenvalue")
    _add_common(p)

    p = sub.add_parser("dist", help="distance-to-multiplicity bound")
    _add_common(p, eig=True)

    p = sub.add_parser("bounds", help="perturbed-eigenvalue location bounds")
    bsub = p.add_subparsers(dest="bound", required=True)
    for name in ("elsner", "bauer-fike", "compare"):
        bp = bsub.add_parser(name)
        _add_common(bp)
        bp.add_argument("--eps", type=float, required=True)
        bp.add_argument("--mu", nargs=2, type=float, required=True,
                        metavar=("RE", "IM"))

    p = sub.add_parser("pseudo", help="pseudospectrum grid and contours")
    _add_common(p)
    p.add_argument("--eps", type=float, required=True)
    p.add_argument("--box", nargs=4, type=float, required=True,
                   metavar=("RE_MIN", "RE_MAX", "IM_MIN", "IM_MAX"))
    p.add_argument("--resolution", nargs="+", type=int, default=[201],
                   metavar=("NX", "NY"))
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--grid-out", default=None, help="write grid CSV here")
    p.add_argument("--contour-out", default=None, help="write contour CSV here")

    p = sub.add_parser("perturb", help="admissible perturbations")
    psub = p.add_subparsers(dest="kind", required=True)
    dp = psub.add_parser("defect")
    _add_common(dp, eig=True)
    dp.add_argument("--out", default=None, help="write the perturbed problem here")
    rp = psub.add_parser("random")
    _add_common(rp)
    rp.add_argument("--eps", type=float, required=True)
    rp.add_argument("--seed", type=int, default=0)
    rp.add_argument("--stream", type=int, default=0)
    rp.add_argument("--out", default=None, help="write the perturbed problem here")

    p = sub.add_parser("verify", help="internal identity checks")
    vsub = p.add_subparsers(dest="check", required=True)
    vl = vsub.add_parser("linearization")
    _add_common(vl)
    vl.add_argument("--points", type=int, default=20)
    vl.add_argument("--seed", type=int, default=0)
    vt = vsub.add_parser("triple")
    _add_common(vt)
    vt.add_argument("--samples", type=int, default=20)
    vt.add_argument("--seed", type=int, default=0)

    return ap


_DISPATCH = {
    "eig": cmd_eig,
    "cond": cmd_cond,
    "multi-cond": cmd_multi_cond,
    "dist": cmd_dist,
    "bounds": cmd_bounds,
    "pseudo": cmd_pseudo,
    "perturb": cmd_perturb,
    "verify": cmd_verify,
}


def _param_echo(args) -> dict:
    skip = {"command", "file", "weights"}
    return {k: v for k, v in vars(args).items() if k not in skip}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        ctx = _Context(args)
        result = _DISPATCH[args.command](ctx, args)
        doc = ctx.header(args.command, _param_echo(args))
        doc["result"] = _json_safe(result)
        print(json.dumps(doc, indent=2))
        return 0
    except (PolycondError, OSError, ValueError) as exc:
        err = {"error": {"type": type(exc).__name__, "message": str(exc)}}
        print(json.dumps(err, indent=2), file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
