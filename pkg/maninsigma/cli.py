# maninsigma/cli.py
"""
Command-line surface.

Sub-commands: validate, bivector, scan, model, action, eom, converge,
make-fields, catalog {list, show}.

Exit status: 0 ok, 1 evaluation error, 2 validation failure, 3 input error.
The report body goes to stdout (text, or JSON with --json); diagnostics go to stderr.
"""

import argparse
import math
import sys

import numpy as np
import pandas as pd

from . import catalog, config, db
from .errors import InputError, ManinSigmaError
from .lie_core import validate_triple
from .poisson import (
    CONVENTIONS,
    FRAMES,
    bivector_at,
    fit_linearization_sign,
    linearize,
)
from .report import EXIT_INPUT, RunReport, matrix_frame
from .runner import METRICS, ScanRunner
from .sigma_model import (
    WorldsheetGrid,
    action_S2,
    action_coefficients,
    dump_field_file,
    eom_coefficients,
    eom_residuals,
    fields_to_dict,
    load_field_file,
    manufactured_convergence,
    manufactured_semi_abelian,
    random_fields,
    zero_fields,
)
from .source import TripleSource
from .utils import parse_int, parse_point, stable_digest, warn

ORIGIN_TOL = 1e-12
ANTISYMMETRY_TOL = 1e-10
JACOBI_TOL = 1e-6
LINEARIZATION_TOL = 1e-6
ADJOINT_TOL = 1e-9
MULTIPLICATIVITY_TOL = 1e-9
RATIO_BAND = (3.5, 4.5)  # error ratio per grid halving
RATE_BAND = (math.log2(RATIO_BAND[0]), math.log2(RATIO_BAND[1]))


def _source(args):
    ref = args.catalog if args.catalog is not None else args.triple
    return TripleSource(ref, beta=args.beta)


def _point(args, triple):
    if args.at is None:
        raise InputError("--at X1,...,Xn is required")
    return parse_point(args.at, triple.dim)


# ---------------------
# Commands
# ---------------------
def cmd_validate(args, report):
    src = _source(args)
    report.inputs_digest = src.digest()
    report.values["triple"] = src.label
    report.values["dim"] = src.triple.dim
    for r in validate_triple(src.triple):
        where = "" if r.worst_index is None else "(" + ",".join(str(i) for i in r.worst_index) + ")"
        report.require(r.name, r.passed, r.max_residual, r.tolerance, f"worst={where}" if where else "")


def cmd_bivector(args, report):
    src = _source(args)
    triple = src.triple
    x = _point(args, triple)
    report.inputs_digest = src.digest(point=x, frame=args.frame, paper_form=args.paper_form)
    ev = bivector_at(triple, x, args.frame)
    report.values.update({"triple": src.label, "point": x.tolist(), "frame": args.frame, "matrix": ev.matrix.tolist()})
    report.add_table(f"P^ij ({args.frame} frame)", matrix_frame(ev.matrix))

    if args.paper_form:
        entry = src.entry
        if entry is None or entry.reference is None:
            raise InputError("--paper-form needs a catalog entry with a published form")
        published = np.asarray(entry.reference(x), dtype=float)
        numeric = ev.matrix if args.frame == "invariant" else bivector_at(triple, x).matrix
        delta = float(np.abs(published - numeric).max())
        report.values["published_max_delta"] = delta
        report.values["compare_tol"] = config.COMPARE_TOL
        report.add_table("published P^ij (invariant frame)", matrix_frame(published))
        report.discrepancies += catalog.compare_reference(entry, [x], config.COMPARE_TOL)
        if report.discrepancies:
            report.warnings.append(
                f"{len(report.discrepancies)} entries differ from the published form by more than {config.COMPARE_TOL:g}"
            )
        for note in entry.notes:
            report.warnings.append(f"{entry.name}: {note}")


def cmd_scan(args, report):
    src = _source(args)
    triple = src.triple
    report.inputs_digest = src.digest(samples=args.samples, radius=args.radius, seed=args.seed)
    runner = ScanRunner(triple, samples=args.samples, radius=args.radius, seed=args.seed,
                        max_resample=args.max_resample)
    results = runner.run()
    summary = runner.summary()
    report.values.update({"triple": src.label, "samples": args.samples, "radius": args.radius, "seed": args.seed})

    report.require("chart coverage", summary["failed"] == 0, summary["failed"], 0,
                   f"{summary['failed']} of {summary['samples']} samples failed")
    report.check("antisymmetry of P", summary["max_antisymmetry"], ANTISYMMETRY_TOL)
    report.check("jacobi (coordinate frame)", summary["max_jacobi"], JACOBI_TOL)
    report.check("multiplicativity", summary["max_multiplicativity"], MULTIPLICATIVITY_TOL)
    report.check("block triangularity", summary["max_triangularity"], ADJOINT_TOL)
    report.check("pairing preservation", summary["max_pairing"], ADJOINT_TOL)
    report.check("Ad(g) Ad(g^-1) = 1", summary["max_inverse_product"], ADJOINT_TOL)
    report.check("blocks from Ad(g) vs Ad(g^-1)", summary["max_block_agreement"], ADJOINT_TOL)

    origin = float(np.abs(bivector_at(triple, np.zeros(triple.dim)).matrix).max())
    report.check("P(0) = 0", origin, ORIGIN_TOL)
    sign, err = fit_linearization_sign(linearize(triple), triple.f, LINEARIZATION_TOL)
    report.require("linearization dP(0) = sigma f", sign is not None, err, LINEARIZATION_TOL,
                   f"sigma={sign}" if sign is not None else "no sign fits")
    report.values["sigma"] = sign

    report.add_table("scan maxima", pd.DataFrame({"max": [summary[f"max_{k}"] for k in METRICS]}, index=list(METRICS)))

    entry = src.entry
    if entry is not None and entry.reference is not None:
        points = [np.array(r["point"]) for r in results if r["status"] == "ok"]
        report.discrepancies += catalog.compare_reference(entry, points, config.COMPARE_TOL)
        if report.discrepancies:
            report.warnings.append(
                f"{len(report.discrepancies)} discrepancy records against the published form of {entry.name}"
            )


def cmd_model(args, report):
    src = _source(args)
    triple = src.triple
    x = _point(args, triple)
    report.inputs_digest = src.digest(point=x, frame=args.frame, convention=args.convention)
    report.values.update({"triple": src.label, "point": x.tolist(), "frame": args.frame,
                          "convention": args.convention})
    report.add_table(f"P^ij ({args.frame} frame)", matrix_frame(bivector_at(triple, x, args.frame).matrix))

    coeffs = action_coefficients(triple, x, args.frame)
    report.add_table("action density: coefficient of A_i^A_j", pd.DataFrame(
        {"coefficient": list(coeffs.values())}, index=[f"A_{i}^A_{j}" for i, j in coeffs]))

    c = eom_coefficients(triple, x, args.convention, args.frame)
    n = triple.dim
    rows = {f"dA_{k + 1}": [c[k, i, j] for i in range(n) for j in range(i + 1, n)] for k in range(n)}
    cols = [f"A_{i + 1}^A_{j + 1}" for i in range(n) for j in range(i + 1, n)]
    report.add_table("dA_k equation: coefficient of A_i^A_j", pd.DataFrame(rows, index=cols).T)


def _fields(args, triple):
    grid, fields = load_field_file(args.fields)
    fields.check(triple, grid)
    return grid, fields


def cmd_action(args, report):
    src = _source(args)
    grid, fields = _fields(args, src.triple)
    report.inputs_digest = src.digest(fields=fields_to_dict(grid, fields), frame=args.frame)
    report.values.update({"triple": src.label, "grid": [grid.n1, grid.n2, grid.h1, grid.h2], "frame": args.frame})
    report.values["S2"] = action_S2(src.triple, grid, fields, args.frame)


def cmd_eom(args, report):
    src = _source(args)
    grid, fields = _fields(args, src.triple)
    report.inputs_digest = src.digest(fields=fields_to_dict(grid, fields), frame=args.frame,
                                      convention=args.convention)
    res = eom_residuals(src.triple, grid, fields, args.convention, args.frame)
    report.values.update({"triple": src.label, "grid": [grid.n1, grid.n2, grid.h1, grid.h2],
                          "frame": args.frame, "convention": args.convention})
    report.add_table("residuals", pd.DataFrame(
        {"max": [res.max_r1, res.max_r2], "rms": [res.rms_r1, res.rms_r2]},
        index=["dX + P A", "dA + 1/2 dP A^A"]))
    report.values["max_residual"] = res.max_norm
    if args.tol is not None:
        report.check("max residual", res.max_norm, args.tol)


def cmd_converge(args, report):
    sizes = [parse_int(v, "--sizes entry") for v in parse_point(args.sizes)]
    if len(sizes) < 2 or any(s < 3 for s in sizes):
        raise InputError(f"--sizes needs at least two grid sizes >= 3, got {args.sizes}")
    triple = catalog.get("semi_abelian4").triple
    report.inputs_digest = stable_digest({"sizes": sizes, "extent": args.extent, "convention": args.convention})
    rows = manufactured_convergence(triple, sizes, args.extent, args.convention)
    report.add_table("manufactured solution (semi_abelian4)", pd.DataFrame(rows).set_index("n"))
    last = rows[-1]
    report.values["observed_order"] = last["rate"]
    report.values["error_ratio"] = last["ratio"]
    in_band = RATE_BAND[0] <= last["rate"] <= RATE_BAND[1]
    report.require("second-order convergence", in_band, last["rate"], RATE_BAND[1],
                   f"error ratio per halving of h on the two finest grids must lie in "
                   f"[{RATIO_BAND[0]:g}, {RATIO_BAND[1]:g}]")


def cmd_make_fields(args, report):
    grid = WorldsheetGrid(args.n1, args.n2, args.h1, args.h2)
    if args.kind == "manufactured":
        fields = manufactured_semi_abelian(grid)
    elif args.kind == "random":
        fields = random_fields(grid, args.dim, args.seed, args.radius)
    else:
        fields = zero_fields(grid, args.dim)
    doc = dump_field_file(args.out, grid, fields)
    report.inputs_digest = stable_digest(doc)
    report.values.update({"kind": args.kind, "out": str(args.out), "dim": fields.dim,
                          "grid": [grid.n1, grid.n2, grid.h1, grid.h2]})


def cmd_catalog(args, report):
    report.inputs_digest = stable_digest({"catalog": args.action, "name": args.name, "beta": args.beta})
    if args.action == "list":
        rows = []
        for name in catalog.names():
            entry = catalog.get(name)
            rows.append({"name": name, "n": entry.triple.dim, "triple": entry.title})
        report.add_table("catalog", pd.DataFrame(rows).set_index("name"))
        return
    if args.name is None:
        raise InputError("catalog show needs an entry name")
    entry = catalog.get(args.name, beta=args.beta)
    report.values.update({"name": entry.name, "title": entry.title, "dim": entry.triple.dim})
    if entry.params:
        report.values["params"] = dict(entry.params)
    report.add_table("brackets of the double", pd.DataFrame({"bracket": catalog.bracket_lines(entry.triple)}))
    for note in entry.notes:
        report.warnings.append(note)


# ---------------------
# Parser
# ---------------------
def _common(p, point=False, fields=False):
    p.add_argument("triple", nargs="?", help="triple JSON file (or a catalog name)")
    p.add_argument("--catalog", help="catalog entry name or triple file")
    p.add_argument("--beta", type=float, help="typeA4 parameter (beta != 0)")
    p.add_argument("--frame", choices=FRAMES, default="invariant")
    if point:
        p.add_argument("--at", help="group point X1,...,Xn")
    if fields:
        p.add_argument("--fields", required=True, help="field configuration JSON")


def build_parser():
    parser = argparse.ArgumentParser(prog="run_sigma", description="Poisson-Lie sigma models from Manin triples")
    parser.add_argument("--json", action="store_true", help="print the report as JSON")
    parser.add_argument("--db", default=None, help="archive the report in this sqlite file")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check the structure constants and the double")
    _common(p)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("bivector", help="P^ij at a group point")
    _common(p, point=True)
    p.add_argument("--paper-form", action="store_true", help="compare with the published closed form")
    p.set_defaults(func=cmd_bivector)

    p = sub.add_parser("scan", help="seeded property scan of P")
    _common(p)
    p.add_argument("--samples", type=int, default=config.DEFAULT_SAMPLES)
    p.add_argument("--radius", type=float, default=config.DEFAULT_RADIUS)
    p.add_argument("--seed", type=int, default=config.DEFAULT_SEED)
    p.add_argument("--max-resample", type=int, default=config.MAX_RESAMPLE)
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("model", help="P, action and EOM coefficients at a point")
    _common(p, point=True)
    p.add_argument("--convention", choices=CONVENTIONS, default="at-point")
    p.set_defaults(func=cmd_model)

    p = sub.add_parser("action", help="discrete action S_2 of a field configuration")
    _common(p, fields=True)
    p.set_defaults(func=cmd_action)

    p = sub.add_parser("eom", help="equation-of-motion residuals of a field configuration")
    _common(p, fields=True)
    p.add_argument("--convention", choices=CONVENTIONS, default="at-point")
    p.add_argument("--tol", type=float, default=None, help="fail (exit 2) when the max residual exceeds this")
    p.set_defaults(func=cmd_eom)

    p = sub.add_parser("converge", help="manufactured-solution convergence study")
    p.add_argument("--sizes", default="16,32,64")
    p.add_argument("--extent", type=float, default=0.5)
    p.add_argument("--convention", choices=CONVENTIONS, default="at-point")
    p.set_defaults(func=cmd_converge)

    p = sub.add_parser("make-fields", help="write a field configuration file")
    p.add_argument("--kind", choices=("manufactured", "random", "zero"), required=True)
    p.add_argument("--n1", type=int, default=16)
    p.add_argument("--n2", type=int, default=16)
    p.add_argument("--h1", type=float, default=0.5 / 16)
    p.add_argument("--h2", type=float, default=0.5 / 16)
    p.add_argument("--dim", type=int, default=2)
    p.add_argument("--seed", type=int, default=config.DEFAULT_SEED)
    p.add_argument("--radius", type=float, default=config.DEFAULT_RADIUS)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_make_fields)

    p = sub.add_parser("catalog", help="list or show catalog entries")
    p.add_argument("action", choices=("list", "show"))
    p.add_argument("name", nargs="?")
    p.add_argument("--beta", type=float)
    p.set_defaults(func=cmd_catalog)
    return parser


def run(args):
    report = RunReport(command=args.command)
    try:
        args.func(args, report)
    except ManinSigmaError as e:
        report.fail(e)
    return report


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 0 if e.code in (0, None) else EXIT_INPUT

    report = run(args)
    sys.stdout.write(report.to_json() if args.json else report.render_text())

    db_path = args.db or config.DB_PATH
    if db_path:
        try:
            db.persist_report(report, db_path)
        except Exception as e:
            warn("DB", f"could not archive report in {db_path}: {e}")
    return report.exit_status
