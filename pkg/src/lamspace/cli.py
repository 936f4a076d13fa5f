"""Command-line front end.

Every command prints a JSON report (sorted keys) holding the command, its
echoed inputs, the seed and the results.  ``--format csv`` prints the
tabular part instead, and ``--out DIR`` also writes the report and PNG
figures into DIR.

Exit codes: 0 success, 1 verification failure, 2 usage, parse or
validation error.  Sampling uses numpy's PCG64 generator seeded by --seed.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys

import numpy as np

from . import flat, qd, sampling, spectra, suites, wick
from . import ads as adsmod
from .errors import LamspaceError, ValidationError
from .specfile import load_lamination

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

TARGETS = {"hyperbolic": "hyperbolic", "desitter": "deSitter", "antidesitter": "antiDeSitter",
           "projective": "projective"}
QD_KINDS = {k.lower(): k for k in qd.KINDS}


class UsageError(Exception):
    pass


def _plain(x):
    """Recursively turn numpy and complex values into JSON-ready objects."""
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    if isinstance(x, np.ndarray):
        return _plain(x.tolist())
    if isinstance(x, (complex, np.complexfloating)):
        return {"re": float(x.real), "im": float(x.imag)}
    if isinstance(x, np.bool_):
        return bool(x)
    if isinstance(x, np.integer):
        return int(x)
    if isinstance(x, (float, np.floating)):
        x = float(x)
        return x if np.isfinite(x) else str(x)
    return x


def _floats(text, n=None, name="value"):
    try:
        vals = [float(v) for v in text.split(",")]
    except ValueError:
        raise UsageError(f"{name}: expected comma-separated numbers, got {text!r}") from None
    if n is not None and len(vals) != n:
        raise UsageError(f"{name}: expected {n} numbers, got {len(vals)}")
    return vals


def _complex(text, name):
    p, q = _floats(text, 2, name)
    return complex(p, q)


def _domain(args, required=True):
    if getattr(args, "spec", None) is None:
        if required:
            raise UsageError(f"{args.verb} needs a lamination spec file")
        return None
    if not os.path.isfile(args.spec):
        raise UsageError(f"no such file: {args.spec}")
    return load_lamination(args.spec)


# ---------------------------------------------------------------------------
# verbs; each returns (results, rows, figures, exit code)
# rows is a list of dicts for CSV output, figures a list of (name, callable)


def cmd_validate(args):
    dom = _domain(args)
    res = {"valid": True, "leaves": len(dom.lam.leaves), "support_boundary": len(dom.lam.boundary),
           "strata": len(dom.strata), "bands": len(dom.bands), "basepoint": dom.x0}
    return res, [res], [], EXIT_OK


def cmd_frame(args):
    dom = _domain(args)
    p = np.array(_floats(args.point, 3, "--point"))
    f = flat.ct_frame(dom, p)
    res = f.as_dict()
    return res, [res], [], EXIT_OK


def cmd_develop(args):
    dom = _domain(args)
    target = TARGETS[args.target]
    rng = sampling.rng_from_seed(args.seed)
    T_range = (1.0, 1.0) if target == "projective" else sampling.T_RANGES[target]
    rows, gauss, strata = [], [], []
    for smp in sampling.sample_points(dom, rng, args.samples, T_range):
        f = flat.ct_frame(dom, smp.p)
        row = {"p": smp.p, "T": f.T}
        if target == "projective":
            row["image"] = wick.projective(dom, smp.p, f)
        else:
            img = wick.model_map(target)(dom, smp.p, f)
            row["image"] = img
            if target == "antiDeSitter":
                row["det"] = float(np.linalg.det(img))
        rows.append(row)
        gauss.append(f.N)
        strata.append(smp.index if smp.kind == "face" else -1)
    res = {"target": target, "points": rows}
    figs = [("gauss_image.png", lambda path: _plots().level_surface(gauss, strata, path, dom, "Gauss images"))]
    return res, rows, figs, EXIT_OK


def cmd_sample_surface(args):
    dom = _domain(args)
    if not args.time > 0:
        raise UsageError("--time must be positive")
    rng = sampling.rng_from_seed(args.seed)
    rows = []
    for smp in sampling.sample_points(dom, rng, args.samples, (args.time, args.time)):
        rows.append({"p": smp.p, "N": smp.N, "r": smp.r, "stratum": smp.kind, "index": smp.index})
    res = {"time": args.time, "points": rows}
    figs = [("level_surface.png",
             lambda path: _plots().level_surface([r["N"] for r in rows],
                                                 [r["index"] if r["stratum"] == "face" else -1 for r in rows],
                                                 path, dom, f"T = {args.time:g}"))]
    return res, rows, figs, EXIT_OK


def cmd_verify(args):
    names = list(suites.SUITES) if args.suite == "all" else [args.suite]
    dom = _domain(args, required=False)
    if dom is None:
        missing = [n for n in names if n in suites.NEEDS_DOMAIN]
        if args.suite != "all" and missing:
            raise UsageError(f"suite {args.suite!r} needs a lamination spec")
        names = [n for n in names if n not in suites.NEEDS_DOMAIN]
    kinds = wick.KINDS if args.kind == "all" else (TARGETS[args.kind],)
    reports = []
    for name in names:
        reports.append(suites.run(name, args.seed, dom, args.samples, kinds).as_dict())
    ok = all(r["passed"] for r in reports)
    rows = [dict(suite=r["suite"], **c) for r in reports for c in r["checks"]]
    res = {"passed": ok, "suites": reports}
    figs = [(f"checks_{r['suite']}.png", (lambda rr: lambda path: _plots().checks(rr, path))(r)) for r in reports]
    for r in reports:
        if r["suite"] == "approximation":
            series = {k.split()[0]: v for k, v in r["info"].items() if k.endswith("errors")}
            figs.append(("convergence.png", (lambda n, s: lambda path: _plots().convergence(n, s, path))(r["info"]["n"], series)))
    if dom is not None and "earthquakes" in names:
        smp = adsmod.boundary_samples(dom)
        figs.append(("boundary_curve.png", lambda path: _plots().boundary_curve(smp, path)))
    return res, rows, figs, EXIT_OK if ok else EXIT_FAIL


def _gamma(text):
    a, b, c, d = _floats(text, 4, "--gamma")
    A = np.array([[a, b], [c, d]])
    det = np.linalg.det(A)
    if det <= 0:
        raise UsageError("--gamma must have positive determinant")
    return A / np.sqrt(det)


def cmd_spectra(args):
    dom = _domain(args)
    rows = []
    for text in args.gamma:
        A = _gamma(text)
        hol = flat.flat_holonomy(dom, A)
        row = {"gamma": A, "ell": spectra.translation_length(A),
               "margulis": spectra.margulis(A, hol.translation)}
        h1 = adsmod.hyperbolic_holonomy(dom, A)
        ds = spectra.ds_spectrum(h1)
        row["deSitter"] = ds.as_dict()
        row["antiDeSitter"] = spectra.ads_spectrum(adsmod.ads_holonomy(dom, A)).as_dict()
        dl, dm = spectra.spectral_derivative(dom.lam, dom.x0, A, "deSitter")
        row["derivative"] = {"ell": dl, "em": dm}
        rows.append(row)
    return {"elements": rows}, rows, [], EXIT_OK


def cmd_volume(args):
    try:
        A = spectra.area(args.kappa, args.b, args.chi, args.lamlength)
        V = spectra.volume(args.kappa, args.b, args.chi, args.lamlength)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    res = {"A": A, "V": V}
    bmax = min(args.b, np.pi / 2) if args.kappa == -1 else args.b
    figs = [("volume.png", lambda path: _plots().volume_curve(args.kappa, args.chi, args.lamlength, max(bmax, 1e-3), path))]
    return res, [res], figs, EXIT_OK


def cmd_qd(args):
    res = {}
    if args.kerr is not None:
        rp, rm = _floats(args.kerr, 2, "--kerr")
        params = qd.KerrParams(rp, rm)
        r, phi, v = _floats(args.point, 3, "--point")
        res["kerr"] = {"M": params.M, "J": params.J, "tau": qd.kerr_tau(params, r),
                       "chart": qd.kerr_chart(params, r, phi, v),
                       "residual": qd.kerr_residual(params, r, phi, v)}
    if args.lattice:
        vs = [_complex(t, "--lattice") for t in args.lattice]
        if len(vs) > 2:
            raise UsageError("--lattice takes one or two translations")
        res["lattice"] = qd.lattice_check(vs[0], vs[1] if len(vs) > 1 else None, args.rotation)
    if args.kerr is None:
        kind = QD_KINDS[args.kind]
        p = np.array(_floats(args.point, 3, "--point"))
        X = qd.develop(kind, p)
        out = {"kind": kind, "image": X, "pullback_residual": qd.pullback_residual(kind, p)}
        if args.v is not None:
            v = _complex(args.v, "--v")
            hol = qd.holonomy(kind, v)
            out["holonomy"] = hol.data
            out["equivariance"] = qd.point_distance(kind, qd.develop(kind, qd.sigma(v, p)), hol(X))
        if args.rotation:
            hol = qd.holonomy(kind, rotation=True)
            out["rotation_equivariance"] = qd.point_distance(kind, qd.develop(kind, qd.r_pi(p)), hol(X))
        res["develop"] = out
    return res, [res], [], EXIT_OK


def cmd_tree(args):
    dom = _domain(args)
    t = flat.singularity_tree(dom)
    edges = [{"from": a, "to": b, "leaf": i, "length": w} for a, b, i, w in t.edges]
    res = {"vertices": t.vertices, "edges": edges}
    rows = [{"vertex": k, "r": v} for k, v in enumerate(t.vertices)]
    figs = [("tree.png", lambda path: _plots().tree(t.vertices, t.edges, path))]
    return res, rows, figs, EXIT_OK


def _plots():
    from . import plots
    return plots


COMMANDS = {
    "validate": cmd_validate, "frame": cmd_frame, "develop": cmd_develop,
    "sample-surface": cmd_sample_surface, "verify": cmd_verify, "spectra": cmd_spectra,
    "volume": cmd_volume, "qd": cmd_qd, "tree": cmd_tree,
}


# ---------------------------------------------------------------------------
# parser and output


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="lamspace", description=__doc__.split("\n")[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--out", help="directory for the report and figures")
    common.add_argument("--seed", type=int, default=0)
    sub = ap.add_subparsers(dest="verb", required=True)

    def verb(name, spec="required", **kw):
        p = sub.add_parser(name, parents=[common], **kw)
        if spec == "required":
            p.add_argument("spec", help="lamination spec (JSON)")
        elif spec == "optional":
            p.add_argument("spec", nargs="?", help="lamination spec (JSON)")
        return p

    verb("validate", help="check a lamination spec")
    p = verb("frame", help="cosmological time, Gauss map and retraction of a point")
    p.add_argument("--point", required=True, help="Minkowski coordinates x0,x1,x2 (time first)")
    p = verb("develop", help="images of sampled points under a rescaled model map")
    p.add_argument("--target", required=True, choices=sorted(TARGETS))
    p.add_argument("--samples", type=int, default=50)
    p = verb("sample-surface", help="samples of a cosmological-time level surface")
    p.add_argument("--time", type=float, default=1.0)
    p.add_argument("--samples", type=int, default=200)
    p = verb("verify", spec="optional", help="run verification suites")
    p.add_argument("--suite", default="all", choices=["all"] + sorted(suites.SUITES))
    p.add_argument("--kind", default="all", choices=["all", "hyperbolic", "desitter", "antidesitter"])
    p.add_argument("--samples", type=int, default=None)
    p = verb("spectra", help="length spectra and Margulis invariants of group elements")
    p.add_argument("--gamma", action="append", required=True, help="SL(2,R) entries a,b,c,d")
    p = verb("volume", spec=None, help="area and volume of level surfaces")
    p.add_argument("--kappa", type=int, required=True, choices=(-1, 0, 1))
    p.add_argument("--b", type=float, required=True)
    p.add_argument("--chi", type=float, required=True)
    p.add_argument("--lamlength", type=float, required=True)
    p = verb("qd", spec=None, help="spacetimes from a quadratic differential")
    p.add_argument("--kind", default="flat", choices=sorted(QD_KINDS))
    p.add_argument("--point", default="0,0,0.5", help="u,y,tau (or r,phi,v with --kerr)")
    p.add_argument("--v", help="translation p,q")
    p.add_argument("--rotation", action="store_true")
    p.add_argument("--lattice", nargs="+", help="one or two translations p,q")
    p.add_argument("--kerr", help="horizon radii r_plus,r_minus")
    verb("tree", help="initial singularity")
    return ap


def _csv(rows) -> str:
    buf = io.StringIO()
    flat_rows = [{k: json.dumps(_plain(v), sort_keys=True) if isinstance(_plain(v), (list, dict)) else _plain(v)
                  for k, v in r.items()} for r in rows]
    keys = sorted({k for r in flat_rows for k in r})
    w = csv.DictWriter(buf, fieldnames=keys, lineterminator="\n")
    w.writeheader()
    w.writerows(flat_rows)
    return buf.getvalue()


def _inputs(args):
    return {k: v for k, v in sorted(vars(args).items()) if k not in ("format", "out", "seed")}


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        results, rows, figs, code = COMMANDS[args.verb](args)
    except (UsageError, LamspaceError, ValueError, OSError) as exc:
        if isinstance(exc, ValidationError):
            print(f"lamspace {args.verb}: validation failed", file=sys.stderr)
            for f in exc.failures:
                print(f"  - {f}", file=sys.stderr)
        else:
            print(f"lamspace {args.verb}: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    report = _plain({"command": args.verb, "inputs": _inputs(args), "seed": args.seed, "results": results})
    text = json.dumps(report, sort_keys=True, indent=2) + "\n"
    out = _csv(rows) if args.format == "csv" else text
    sys.stdout.write(out)
    if args.out:
        os.makedirs(args.out, exist_ok=True)
        with open(os.path.join(args.out, "report.json"), "w", encoding="utf-8") as fh:
            fh.write(text)
        if rows:
            with open(os.path.join(args.out, "report.csv"), "w", encoding="utf-8") as fh:
                fh.write(_csv(rows))
        for name, draw in figs:
            draw(os.path.join(args.out, name))
    return code


if __name__ == "__main__":
    sys.exit(main())
