"""Command-line interface.

Machine-first output: JSON or CSV on stdout (or --out), human summary on
stderr.  Exit codes: 0 all checks passed, 1 some check failed, 2 usage
or parse error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction

from .catalog import catalog_export, catalog_get, catalog_list
from .checks import DEFAULT_SEED, run_acceptance, verify_entry
from .duality import condition_eval, natural_dual_solve, CONDITIONS
from .maps import ParamTriple, PiecewiseMap, map_from_json, named_map
from .numlab import birkhoff_histogram, l1_compare, ulam_stationary, NonIntegrableDensity
from .polys import parse_q, qstr
from .transport import SeriesDensity

USAGE_ERROR = 2


def _fail_usage(msg: str):
    print(f"error: {msg}", file=sys.stderr)
    raise SystemExit(USAGE_ERROR)


def _emit(text: str, out_path: str | None):
    if out_path:
        with open(out_path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _resolve_map(spec: str):
    """Map-spec: catalog name (with optional -ROLE suffix) or a JSON file path."""
    if spec.endswith(".json"):
        try:
            with open(spec) as fh:
                return map_from_json(json.load(fh)), spec
        except (OSError, ValueError, KeyError) as exc:
            _fail_usage(f"bad map definition {spec!r}: {exc}")
    names = set(catalog_list())
    if spec in names:
        objs = catalog_get(spec).build()
        for key in ("map", "T", "Z"):
            if key in objs:
                return objs[key], spec
        _fail_usage(f"catalog entry {spec!r} holds no map")
    if "-" in spec:
        base, role = spec.rsplit("-", 1)
        if base in names:
            objs = catalog_get(base).build()
            if role in objs:
                return objs[role], spec
            _fail_usage(f"entry {base!r} has no component {role!r}; "
                        f"has {sorted(k for k in objs if isinstance(k, str))}")
    try:
        parts = spec.split(":")
        return named_map(parts[0], *parts[1:]), spec
    except (KeyError, ValueError, IndexError):
        _fail_usage(f"unknown map spec {spec!r}")


def _entry_density(spec: str):
    """The exact density associated with a map-spec, when the catalog has one."""
    base, role = spec, None
    if spec not in set(catalog_list()) and "-" in spec:
        base, role = spec.rsplit("-", 1)
    try:
        ent = catalog_get(base)
    except KeyError:
        return None
    source = dict(ent.expected)
    if ent.kind == "series":
        source.update({k: v for k, v in ent.build().items() if k in ("h", "g", "density")})
    if role == "U":
        return source.get("h")
    if role == "Z":
        return source.get("g")
    return source.get("density") or source.get("g") or source.get("h")


def cmd_verify(args) -> int:
    if args.target == "all":
        report = run_acceptance(seed=args.seed)
        records = []
        status = 0
        for cid in sorted(report):
            title, recs, secs = report[cid]
            crit_pass = all(r.passed for r in recs)
            status |= 0 if crit_pass else 1
            print(f"criterion {cid:2d} ({title}): "
                  f"{'PASS' if crit_pass else 'FAIL'}  [{secs:.1f}s]", file=sys.stderr)
            records.extend(recs)
    else:
        try:
            records = verify_entry(args.target, seed=args.seed)
        except KeyError as exc:
            _fail_usage(str(exc))
        status = 0 if all(r.passed for r in records) else 1
    for r in sorted(records, key=lambda r: r.name):
        print(r.line(), file=sys.stderr)
    payload = [{"name": r.name, "verdict": "pass" if r.passed else "fail",
                "detail": r.detail} for r in sorted(records, key=lambda r: r.name)]
    _emit(json.dumps(payload, indent=2) + "\n", args.out)
    return status


def cmd_conditions(args) -> int:
    try:
        t = ParamTriple(parse_q(args.lam), parse_q(args.mu), parse_q(args.nu))
    except (ValueError, ZeroDivisionError) as exc:
        _fail_usage(f"bad rational: {exc}")
    from .maps import flip_family, FAMILY_FLIPS
    out = {"triple": [qstr(v) for v in t],
           "conditions": {cid: qstr(condition_eval(cid, t)) for cid in CONDITIONS}}
    duals = {}
    for fam in FAMILY_FLIPS:
        try:
            m = flip_family(fam, t)
            psi = natural_dual_solve(m)
        except ValueError as exc:
            duals[fam] = {"error": str(exc)}
            continue
        if psi is None:
            duals[fam] = None
            continue
        rec = {"A": qstr(Fraction(psi.A)), "B": qstr(Fraction(psi.B)),
               "D": qstr(Fraction(psi.D)), "degenerate": psi.degenerate,
               "endpoints": [repr(e) for e in sorted(psi.endpoints(), key=repr)]}
        if not psi.degenerate and not any(e.is_infinite for e in psi.endpoints()):
            from .duality import density_from_dual, dual_interval, kuzmin_check_exact
            try:
                h = density_from_dual(dual_interval(psi))
                rec["density"] = repr(h)
                rec["kuzmin_exact"] = ("pass" if kuzmin_check_exact(m, h) else "fail")
            except ValueError as exc:
                rec["density"] = f"inadmissible: {exc}"
        duals[fam] = rec
    out["natural_duals"] = duals
    _emit(json.dumps(out, indent=2) + "\n", args.out)
    return 0


def _density_values(dens, xs):
    vals = []
    for x in xs:
        if isinstance(dens, SeriesDensity):
            v, b = dens.eval_certified(float(x), 4000)
            vals.append((v, b))
        else:
            vals.append((float(dens.eval_q(x)), 0.0))
    return vals


def cmd_density(args) -> int:
    m, spec = _resolve_map(args.mapspec)
    dens = _entry_density(args.mapspec)
    if dens is None:
        if isinstance(m, PiecewiseMap):
            psi = natural_dual_solve(m)
            if psi is None:
                _fail_usage(f"{args.mapspec!r}: no natural dual and no cataloged density")
            from .duality import density_from_dual, dual_interval
            dens = density_from_dual(dual_interval(psi))
        else:
            _fail_usage(f"{args.mapspec!r}: no cataloged density for a countable map")
    xs = [Fraction(i, args.grid + 1) for i in range(1, args.grid + 1)]
    residuals = _kuzmin_residuals(m, dens, xs)
    rows = [("x", "density", "certified_bound", "kuzmin_residual")]
    for x, (v, b), r in zip(xs, _density_values(dens, xs), residuals):
        rows.append((qstr(x), repr(v), repr(b), r))
    buf = io.StringIO()
    csv.writer(buf).writerows(rows)
    _emit(buf.getvalue(), args.out)
    print(f"{spec}: density table over {args.grid} interior grid points",
          file=sys.stderr)
    return 0


def _kuzmin_residuals(m, dens, xs):
    """Per-point transfer residuals: exact for rational densities, certified
    for series; blank when the map has no usable branch model."""
    from .duality import transfer_apply
    from .transport import kuzmin_check_series
    try:
        if isinstance(dens, SeriesDensity):
            rep = kuzmin_check_series(m, dens, xs, tol=1e-8, J=3000, K=3000)
            return [repr(r) for r in rep.residuals]
        if isinstance(m, PiecewiseMap):
            diff = transfer_apply(m, dens) - dens
            return [repr(float(diff.eval_q(x))) for x in xs]
    except (ValueError, TypeError):
        pass
    return ["" for _ in xs]


def cmd_simulate(args) -> int:
    m, spec = _resolve_map(args.mapspec)
    if args.method == "ulam":
        trunc = args.truncation if not isinstance(m, PiecewiseMap) else None
        e = ulam_stationary(m, args.cells, truncation=trunc)
    else:
        bits = max(64, int(args.precision * 3.33) + 8)
        e = birkhoff_histogram(m, Fraction(args.seed_point), args.iters, args.cells,
                               precision_bits=bits)
    dens = _entry_density(args.mapspec)
    comparison = None
    ref = ["" for _ in range(e.n_cells)]
    if dens is not None:
        try:
            comparison = l1_compare(e, dens)
            from .numlab import _cell_masses
            ref = [repr(v) for v in _cell_masses(dens, e.n_cells)]
        except NonIntegrableDensity as exc:
            comparison = f"refused: {exc}"
    rows = [("cell_left", "cell_right", "weight", "exact_reference")]
    for i in range(e.n_cells):
        rows.append((repr(e.edges[i]), repr(e.edges[i + 1]),
                     repr(float(e.weights[i])), ref[i]))
    buf = io.StringIO()
    csv.writer(buf).writerows(rows)
    _emit(buf.getvalue(), args.out)
    summary = {"map": spec, "method": args.method, "n_cells": e.n_cells, **e.meta}
    if comparison is not None:
        summary["l1_vs_exact"] = comparison
    print(json.dumps(summary, default=str), file=sys.stderr)
    return 0


def cmd_catalog(args) -> int:
    if args.action != "export":
        _fail_usage("catalog supports only: export")
    _emit(json.dumps(catalog_export(), indent=2, sort_keys=True) + "\n", args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=DEFAULT_SEED)
    common.add_argument("--out", type=str, default=None,
                        help="write stdout payload here")
    common.add_argument("--json", action="store_true", default=True,
                        help="machine-readable stdout (always on)")

    p = argparse.ArgumentParser(prog="pflmaps",
                                description="exact invariant measures of piecewise "
                                            "fractional linear maps")
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", parents=[common],
                       help="run a catalog entry's checks, or 'all'")
    v.add_argument("target")
    v.set_defaults(fn=cmd_verify)

    c = sub.add_parser("conditions", parents=[common],
                       help="condition residues and duals at a triple")
    c.add_argument("lam")
    c.add_argument("mu")
    c.add_argument("nu")
    c.set_defaults(fn=cmd_conditions)

    d = sub.add_parser("density", parents=[common],
                       help="tabulate an exact density as CSV")
    d.add_argument("mapspec")
    d.add_argument("--grid", type=int, default=99)
    d.set_defaults(fn=cmd_density)

    s = sub.add_parser("simulate", parents=[common],
                       help="Ulam or orbit histogram as CSV")
    s.add_argument("mapspec")
    s.add_argument("--method", choices=("ulam", "orbit"), default="ulam")
    s.add_argument("--cells", type=int, default=400)
    s.add_argument("--iters", type=int, default=10 ** 5)
    s.add_argument("--truncation", type=int, default=200)
    s.add_argument("--seed-point", type=str, default="61/113")
    s.add_argument("--precision", type=int, default=50,
                   help="decimal digits for orbit arithmetic")
    s.set_defaults(fn=cmd_simulate)

    g = sub.add_parser("catalog", parents=[common], help="catalog export --json")
    g.add_argument("action")
    g.set_defaults(fn=cmd_catalog)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits with 2 on usage errors already
        raise SystemExit(USAGE_ERROR if exc.code not in (0,) else 0)
    return args.fn(args)


if __name__ == "__main__":
    raise SystemExit(main())
