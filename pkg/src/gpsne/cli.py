"""Command-line front end.

Commands::

    gpsne scales      --mass M [--units si|planck|natural]
    gpsne box         --mass M [--width L ...] --nmax N [--reference CSV] [--plot SVG]
    gpsne gamma-scan  --l-over-lambda LO:HI:N [--plot SVG]
    gpsne sne         --mass M [--units ...|solver] --relativistic on|off [--dump-psi CSV]
    gpsne diosi-scan  --mass-range LO:HI:N [--spacing log|linear] [--plot SVG] [--with-solver]

Every command takes ``--format csv|json`` and ``--output PATH`` (default:
stdout). Exit codes: 0 success, 2 usage or input error, 3 numerical
non-convergence (including the scale-collapse and beyond-Planck-mass
diagnostics of ``sne``).
"""

from __future__ import annotations

import argparse
import sys
from typing import List, Optional

import numpy as np

from . import __version__
from .box_model import compare_reference, spectrum
from .errors import GpsneError
from .gp_gamma import gamma_localization
from .scale_analysis import mass_scan
from .serialize import ReferenceCsvError, dumps_csv, dumps_json, dumps_wavefunction, envelope, parse_reference_csv
from .sne_solver import ScfConfig, solve_gp, solve_nr
from .svgplot import Figure
from .unit_scales import PhysicalConstants, compton_reduced, scales_for_mass, to_planck

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_NONCONVERGED = 3

UNIT_TAGS = {
    "si": {"mass": "kg", "length": "m", "energy": "J"},
    "planck": {"mass": "planck_mass", "length": "planck_length", "energy": "planck_energy"},
    "natural": {"mass": "planck_mass", "length": "planck_length", "energy": "planck_energy"},
    "solver": {"mass": "particle_mass", "length": "diosi_length", "energy": "G^2 m^5/hbar^2"},
}

BOX_COLUMNS = ["width", "n", "E_nr", "E_gp", "E_expansion", "gamma", "E_gp_over_mc2"]
BOX_REF_COLUMNS = ["energy_ref", "abs_dev", "rel_dev", "matched", "above_2mc2"]
SCALES_COLUMNS = ["mass", "l_P", "lambda_C", "l_D", "l_D_rel"]
SCAN_COLUMNS = ["mass", "l_P", "lambda_C", "l_D", "l_D_rel", "l_star_numeric"]
SNE_COLUMNS = [
    "eigenvalue", "total_energy", "kinetic", "potential", "gamma", "kinetic_schrodinger",
    "r_mean", "r_peak", "r_rms", "scf_iterations", "gamma_iterations", "converged", "reason",
]


class UsageError(Exception):
    pass


def _constants(units: str) -> PhysicalConstants:
    if units == "si":
        return PhysicalConstants.si()
    if units in ("planck", "natural"):
        return PhysicalConstants.planck()
    if units == "solver":
        return PhysicalConstants.solver()
    raise UsageError(f"unknown unit system {units!r}")


def _range(text: str, name: str):
    try:
        lo, hi, n = text.split(":")
        lo, hi, n = float(lo), float(hi), int(n)
    except ValueError:
        raise UsageError(f"{name} must look like LO:HI:N, got {text!r}") from None
    if not (0 < lo < hi and n >= 2):
        raise UsageError(f"{name} needs 0 < LO < HI and N >= 2, got {text!r}")
    return lo, hi, n


def _emit(args, command, parameters, units, payload_key, payload, columns, warnings):
    if args.format == "json":
        text = dumps_json(envelope(command, parameters, args.units, units, payload_key, payload, warnings))
    else:
        rows = payload if isinstance(payload, list) else [payload]
        text = dumps_csv(columns, rows)
    if args.output in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(args.output, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    for w in warnings:
        print(f"warning: {w}", file=sys.stderr)


def _units_for(columns, kinds, tags):
    return {col: (tags[kind] if kind in tags else kind) for col, kind in zip(columns, kinds)}


# -- commands ---------------------------------------------------------------

def cmd_scales(args) -> int:
    if args.units == "solver":
        raise UsageError("solver units are only valid for the sne command")
    consts = _constants(args.units)
    s = scales_for_mass(args.mass, consts)
    row = {"mass": s.mass, "l_P": s.planck_length, "lambda_C": s.compton_reduced, "l_D": s.diosi, "l_D_rel": s.diosi_rel}
    warnings = []
    if s.diosi_rel is None:
        warnings.append("mass above the Planck mass: l_D_rel is undefined")
    units = _units_for(SCALES_COLUMNS, ["mass"] + ["length"] * 4, UNIT_TAGS[args.units])
    _emit(args, "scales", {"mass": args.mass}, units, "result", row, SCALES_COLUMNS, warnings)
    return EXIT_OK


def cmd_box(args) -> int:
    if args.units == "solver":
        raise UsageError("solver units are only valid for the sne command")
    if args.nmax < 1:
        raise UsageError("--nmax must be >= 1")
    consts = _constants(args.units)
    lam = compton_reduced(args.mass, consts)
    widths = args.width or [k * lam for k in (1.0, 2.0, 5.0, 10.0)]
    rest = args.mass * consts.c ** 2

    table = None
    if args.reference:
        try:
            with open(args.reference, encoding="utf-8") as fh:
                table = parse_reference_csv(fh.read())
        except ReferenceCsvError as exc:
            raise UsageError(f"{args.reference}: {exc}") from None
        except OSError as exc:
            raise UsageError(str(exc)) from None

    levels = []
    for width in widths:
        levels.extend(spectrum(args.mass, width, args.nmax, consts))
    rows = [
        {
            "width": lev.width, "n": lev.level, "E_nr": lev.energy_nr, "E_gp": lev.energy_gp,
            "E_expansion": lev.energy_expansion, "gamma": lev.gamma, "E_gp_over_mc2": lev.energy_gp / rest,
        }
        for lev in levels
    ]
    columns = list(BOX_COLUMNS)
    kinds = ["length", "1", "energy", "energy", "energy", "1", "1"]
    warnings = []
    if table is not None:
        report = compare_reference(levels, table, rest_energy=rest)
        for row, cmp in zip(rows, report.rows):
            row.update(
                energy_ref=cmp.energy_ref, abs_dev=cmp.abs_dev, rel_dev=cmp.rel_dev,
                matched=cmp.matched, above_2mc2=cmp.above_threshold,
            )
        columns += BOX_REF_COLUMNS
        kinds += ["energy", "energy", "1", "flag", "flag"]
        warnings += report.warnings

    if args.plot:
        fig = Figure(title="Particle in a box", xlabel="n", ylabel=f"E [{UNIT_TAGS[args.units]['energy']}]", ylog=True)
        for width in widths:
            sel = [r for r in rows if r["width"] == width]
            n = [r["n"] for r in sel]
            fig.add(n, [r["E_nr"] for r in sel], f"NR L={width:.3g}", line=False, markers=True, hollow=True)
            fig.add(n, [r["E_gp"] for r in sel], f"GP L={width:.3g}", markers=True)
            if table is not None:
                fig.add(n, [r["energy_ref"] for r in sel], f"ref L={width:.3g}", dashed=True, markers=True, hollow=True)
        fig.add([1, args.nmax], [2 * rest, 2 * rest], "2mc^2", dashed=True)
        fig.save(args.plot)

    params = {"mass": args.mass, "widths": list(widths), "nmax": args.nmax, "reference": args.reference}
    units = _units_for(columns, kinds, UNIT_TAGS[args.units])
    _emit(args, "box", params, units, "rows", rows, columns, warnings)
    return EXIT_OK


def cmd_gamma_scan(args) -> int:
    lo, hi, n = _range(args.l_over_lambda, "--l-over-lambda")
    ratios = np.geomspace(lo, hi, n)
    rows = [{"l_over_lambda_c": float(x), "gamma": gamma_localization(float(x), 1.0)} for x in ratios]
    if args.plot:
        fig = Figure(title="Localization gamma", xlabel="l / lambda_C", ylabel="gamma", xlog=True)
        fig.add([r["l_over_lambda_c"] for r in rows], [r["gamma"] for r in rows], "gamma")
        fig.save(args.plot)
    columns = ["l_over_lambda_c", "gamma"]
    _emit(args, "gamma-scan", {"l_over_lambda": args.l_over_lambda}, {c: "1" for c in columns},
          "rows", rows, columns, [])
    return EXIT_OK


def _config(args) -> ScfConfig:
    kwargs = {}
    if args.rmax is not None:
        kwargs["r_max"] = args.rmax
    if args.npoints is not None:
        kwargs["n_points"] = args.npoints
    if args.mixing is not None:
        kwargs["mixing"] = args.mixing
    if args.tol is not None:
        kwargs["tol_energy"] = args.tol
    return ScfConfig(**kwargs)


def cmd_sne(args) -> int:
    consts = _constants(args.units)
    config = _config(args)
    warnings = []
    if args.relativistic == "on":
        if args.units == "solver":
            warnings.append("solver units carry no speed of light; the relativistic solve reduces to the Newtonian one")
        sol = solve_gp(args.mass, consts, config)
    else:
        sol = solve_nr(args.mass, consts, config)
    warnings += sol.warnings
    reason = sol.diagnostic
    if reason:
        warnings.append(f"solver diagnostic: {reason}")
    result = {
        "eigenvalue": sol.eigenvalue, "total_energy": sol.total_energy, "kinetic": sol.kinetic,
        "potential": sol.potential, "gamma": sol.gamma, "kinetic_schrodinger": sol.kinetic_schrodinger,
        "r_mean": sol.r_mean, "r_peak": sol.r_peak, "r_rms": sol.r_rms,
        "scf_iterations": sol.scf_iterations, "gamma_iterations": sol.gamma_iterations,
        "converged": sol.converged, "reason": reason,
    }
    if args.dump_psi:
        with open(args.dump_psi, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(dumps_wavefunction(sol.wavefunction.grid.nodes, sol.wavefunction.values))
    kinds = ["energy"] * 4 + ["1", "energy"] + ["length"] * 3 + ["count", "count", "flag", "text"]
    params = {
        "mass": args.mass, "relativistic": args.relativistic, "rmax": config.r_max,
        "npoints": config.n_points, "mixing": config.mixing, "tol": config.tol_energy,
    }
    _emit(args, "sne", params, _units_for(SNE_COLUMNS, kinds, UNIT_TAGS[args.units]),
          "result", result, SNE_COLUMNS, warnings)
    return EXIT_OK if sol.converged and reason is None else EXIT_NONCONVERGED


def cmd_diosi_scan(args) -> int:
    if args.units == "solver":
        raise UsageError("solver units are only valid for the sne command")
    lo, hi, n = _range(args.mass_range, "--mass-range")
    consts = _constants(args.units)
    scan = mass_scan(lo, hi, n, args.spacing, consts)
    rows = [
        {"mass": r.mass, "l_P": r.l_P, "lambda_C": r.lambda_C, "l_D": r.l_D,
         "l_D_rel": r.l_D_rel, "l_star_numeric": r.l_star_numeric}
        for r in scan
    ]
    columns = list(SCAN_COLUMNS)
    kinds = ["mass"] + ["length"] * 5
    warnings = []
    undefined = sum(r["l_D_rel"] is None for r in rows)
    if undefined:
        warnings.append(f"l_D_rel undefined for {undefined} row(s) above the Planck mass")

    if args.with_solver:
        warnings.append("--with-solver: r_mean_solver comes from the full self-consistent solve (slow path)")
        for row in rows:
            sol = solve_gp(row["mass"], consts)
            row["r_mean_solver"] = sol.r_mean if sol.diagnostic is None else None
            row["solver_reason"] = sol.diagnostic
        columns += ["r_mean_solver", "solver_reason"]
        kinds += ["length", "text"]

    if args.plot:
        fig = Figure(title="Length scales", xlabel="m / m_P", ylabel="length / l_P", xlog=True, ylog=True)
        m = [to_planck(r["mass"], "mass", consts) for r in rows]

        def col(name):
            return [None if r.get(name) is None else to_planck(r[name], "length", consts) for r in rows]

        fig.add(m, col("l_D"), "l_D")
        fig.add(m, col("lambda_C"), "lambda_C")
        fig.add(m, col("l_P"), "l_P", dashed=True)
        fig.add(m, col("l_D_rel"), "l_D_rel", markers=True)
        if args.with_solver:
            fig.add(m, col("r_mean_solver"), "solver r_mean", line=False, markers=True, hollow=True)
        fig.save(args.plot)

    params = {"mass_range": args.mass_range, "spacing": args.spacing, "with_solver": args.with_solver}
    _emit(args, "diosi-scan", params, _units_for(columns, kinds, UNIT_TAGS[args.units]),
          "rows", rows, columns, warnings)
    return EXIT_OK


# -- parser -----------------------------------------------------------------

def _common(p, units=True, solver=False):
    if units:
        choices = ["si", "planck", "natural"] + (["solver"] if solver else [])
        p.add_argument("--units", choices=choices, default="planck",
                       help="unit system (natural is an alias of planck: hbar = c = G = 1)")
    else:
        p.set_defaults(units="dimensionless")
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.add_argument("--output", default=None, help="output path (default: stdout)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gpsne",
        description="Grave de Peralta relativistic corrections: particle in a box and the Schrodinger-Newton ground state.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("scales", help="length scales of one mass",
                       description=f"CSV columns: {','.join(SCALES_COLUMNS)}")
    p.add_argument("--mass", type=float, required=True)
    _common(p)
    p.set_defaults(func=cmd_scales)

    p = sub.add_parser("box", help="box spectrum (Schrodinger, GP, expansion)",
                       description=f"CSV columns: {','.join(BOX_COLUMNS)} "
                                   f"[+ {','.join(BOX_REF_COLUMNS)} with --reference]. "
                                   "Without --width the widths 1, 2, 5, 10 reduced Compton wavelengths are used.")
    p.add_argument("--mass", type=float, required=True)
    p.add_argument("--width", type=float, action="append", help="well width; repeat for several")
    p.add_argument("--nmax", type=int, required=True)
    p.add_argument("--reference", help="reference CSV with header width,level,energy_ref,source")
    p.add_argument("--plot", help="write an SVG of E versus n")
    _common(p)
    p.set_defaults(func=cmd_box)

    p = sub.add_parser("gamma-scan", help="gamma versus localization size",
                       description="CSV columns: l_over_lambda_c,gamma (log-spaced)")
    p.add_argument("--l-over-lambda", required=True, metavar="LO:HI:N")
    p.add_argument("--plot", help="write an SVG with logarithmic abscissa")
    _common(p, units=False)
    p.set_defaults(func=cmd_gamma_scan)

    p = sub.add_parser("sne", help="Schrodinger-Newton ground state",
                       description=f"CSV columns: {','.join(SNE_COLUMNS)}. --rmax is in Diosi lengths.")
    p.add_argument("--mass", type=float, required=True)
    p.add_argument("--relativistic", choices=["on", "off"], default="off")
    p.add_argument("--rmax", type=float, help="grid extent in Diosi lengths (default 40)")
    p.add_argument("--npoints", type=int, help="interior grid points (default 4000)")
    p.add_argument("--mixing", type=float, help="linear potential mixing (default 0.5)")
    p.add_argument("--tol", type=float, help="relative eigenvalue tolerance (default 1e-10)")
    p.add_argument("--dump-psi", help="write r,u of the ground state to this CSV")
    _common(p, solver=True)
    p.set_defaults(func=cmd_sne)

    p = sub.add_parser("diosi-scan", help="length scales over a mass range",
                       description=f"CSV columns: {','.join(SCAN_COLUMNS)} [+ r_mean_solver,solver_reason]")
    p.add_argument("--mass-range", required=True, metavar="LO:HI:N")
    p.add_argument("--spacing", choices=["log", "linear"], default="log")
    p.add_argument("--plot", help="write a log-log SVG in Planck units")
    p.add_argument("--with-solver", action="store_true", help="append the self-consistent r_mean (slow)")
    _common(p)
    p.set_defaults(func=cmd_diosi_scan)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, ValueError) as exc:
        print(f"gpsne {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except GpsneError as exc:
        print(f"gpsne {args.command}: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NONCONVERGED


if __name__ == "__main__":
    sys.exit(main())
