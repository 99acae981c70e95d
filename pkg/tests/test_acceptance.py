"""Acceptance criteria, one check per criterion at its stated tolerance.

Each check returns ``(passed, detail)``. Under pytest the results are also
collected and printed as one PASS/FAIL line per criterion in the terminal
summary; ``python tests/test_acceptance.py`` prints the same lines directly.
"""

import math
import subprocess
import sys
import tempfile
import time
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from gpsne.box_model import BoxSpec, energy_expansion, energy_gp, energy_nr  # noqa: E402
from gpsne.radial_numerics import RadialGrid, RadialPotential, lowest_eigenpair, radius_diagnostics  # noqa: E402
from gpsne.scale_analysis import Model, minimize_estimate  # noqa: E402
from gpsne.sne_solver import ScfConfig, solve_gp, solve_nr  # noqa: E402
from gpsne.unit_scales import PLANCK, PhysicalConstants, diosi_length, diosi_length_rel  # noqa: E402

# pinned before the solver was built; see tests/oracles.py
E0_ORACLE = -0.16276920784

RESULTS = {}


def _record(number, title):
    def wrap(fn):
        def run():
            t0 = time.perf_counter()
            passed, detail = fn()
            RESULTS[number] = (title, bool(passed), f"{detail} [{time.perf_counter() - t0:.2f} s]")
            return passed, detail
        run.number = number
        return run
    return wrap


@_record(1, "box closed form")
def check_box_closed_form():
    got = energy_gp(BoxSpec(1.0, math.pi, 1), PLANCK)
    err = abs(got - 1.0 / (1.0 + math.sqrt(2.0)))
    return err <= 1e-12, f"E_gp={got:.15f}, |err|={err:.1e}"


@_record(2, "expansion residual is fourth order")
def check_expansion_order():
    resid = []
    for x in (0.1, 0.05, 0.025):
        spec = BoxSpec(1.0, math.pi / x, 1)
        resid.append(abs(energy_gp(spec, PLANCK) - energy_expansion(spec, PLANCK)) / energy_nr(spec, PLANCK))
    factors = [a / b for a, b in zip(resid, resid[1:])]
    return all(12.0 <= f <= 20.0 for f in factors), "halving factors " + ", ".join(f"{f:.3f}" for f in factors)


@_record(3, "ultra-relativistic limit")
def check_ultra_relativistic():
    width = 1e-6  # lambda_C = 1
    ratio = energy_gp(BoxSpec(1.0, width, 1), PLANCK) * width / math.pi
    return 1.0 - 1e-5 <= ratio <= 1.0, f"E L/(n pi hbar c) = {ratio:.12f}"


@_record(4, "relativistic length-scale identities")
def check_length_scales():
    t0 = time.perf_counter()
    worst_forms = worst_min = 0.0
    for m in np.geomspace(0.01, 0.999, 200):
        m = float(m)
        a = diosi_length_rel(m, PLANCK, via="mass")
        b = diosi_length_rel(m, PLANCK, via="compton")
        l_star = minimize_estimate(Model.REL, m, PLANCK).length
        worst_forms = max(worst_forms, abs(a - b) / a)
        worst_min = max(worst_min, abs(l_star - a) / a, abs(l_star - b) / b)
    elapsed = time.perf_counter() - t0
    at_mp = diosi_length_rel(1.0, PLANCK)
    above = [diosi_length_rel(m, PLANCK) for m in (1.001, 1.5, 10.0)]
    boundary = minimize_estimate(Model.REL, 1.0, PLANCK).length
    ok = (worst_forms <= 1e-12 and worst_min <= 1e-6 and at_mp == 0.0
          and all(v is None for v in above) and boundary is None and elapsed < 1.0)
    return ok, (f"forms {worst_forms:.1e}, minimizer {worst_min:.1e}, l_rel(m_P)={at_mp}, "
                f"above m_P undefined={all(v is None for v in above)}, scan {elapsed:.2f} s")


@_record(5, "Newtonian minimizer is the Diosi length")
def check_nr_minimizer():
    t0 = time.perf_counter()
    worst = max(
        abs(minimize_estimate(Model.NR, float(m), PLANCK).length / diosi_length(float(m), PLANCK) - 1.0)
        for m in np.geomspace(1e-3, 1e3, 20)
    )
    elapsed = time.perf_counter() - t0
    return worst <= 1e-10 and elapsed < 1.0, f"worst rel err {worst:.1e}, {elapsed:.2f} s"


def _hydrogen(n_points, r_max=50.0):
    grid = RadialGrid(r_max, n_points)
    return lowest_eigenpair(RadialPotential(-1.0 / grid.nodes, grid), 0.5)


@_record(6, "radial engine oracles")
def check_radial_engine():
    pair = _hydrogen(4000)
    e_err = abs(pair.energy + 0.5) / 0.5
    r_err = abs(radius_diagnostics(pair.wavefunction).r_mean - 1.5) / 1.5
    # N + 1 doubles, so h halves exactly
    errs = [abs(_hydrogen(n).energy + 0.5) for n in (1999, 3999, 7999)]
    ratios = [a / b for a, b in zip(errs, errs[1:])]
    ok = e_err <= 1e-4 and r_err <= 1e-4 and all(3.5 <= q <= 4.5 for q in ratios)
    return ok, f"E rel {e_err:.1e}, r_mean rel {r_err:.1e}, Richardson " + ", ".join(f"{q:.3f}" for q in ratios)


@_record(7, "SNE ground state")
def check_sne_ground_state():
    t0 = time.perf_counter()
    solver = PhysicalConstants.solver()
    sol = solve_nr(1.0, solver, ScfConfig())
    refined = solve_nr(1.0, solver, ScfConfig(n_points=8000))
    elapsed = time.perf_counter() - t0
    e_err = abs(sol.eigenvalue - E0_ORACLE) / abs(E0_ORACLE)
    virial = abs(refined.potential / (-4.0 * refined.kinetic) - 1.0)
    closure = max(abs(s.kinetic + s.potential - s.eigenvalue) / abs(s.eigenvalue) for s in (sol, refined))
    ok = sol.converged and refined.converged and e_err <= 5e-3 and virial <= 2e-3 and closure <= 1e-8 and elapsed < 60
    return ok, (f"E={sol.eigenvalue:.8f} (rel {e_err:.1e} vs {E0_ORACLE}), "
                f"virial dev {virial:.1e}, |T+W-E|/|E| {closure:.1e}")


@_record(8, "mass scaling")
def check_mass_scaling():
    a = solve_nr(0.3, PLANCK)
    b = solve_nr(0.6, PLANCK)
    r_ratio = a.r_mean / b.r_mean
    e_ratio = b.eigenvalue / a.eigenvalue
    ok = a.converged and b.converged and abs(r_ratio / 8 - 1) <= 0.02 and abs(e_ratio / 32 - 1) <= 0.02
    return ok, f"r_mean ratio {r_ratio:.6f}, eigenvalue ratio {e_ratio:.6f}"


@_record(9, "GP limits")
def check_gp_limits():
    cfg = ScfConfig()
    nr_small, gp_small = solve_nr(1e-3, PLANCK, cfg), solve_gp(1e-3, PLANCK, cfg)
    d_e = abs(gp_small.eigenvalue - nr_small.eigenvalue) / abs(nr_small.eigenvalue)
    nr_half, gp_half = solve_nr(0.5, PLANCK, cfg), solve_gp(0.5, PLANCK, cfg)
    # both the gamma the state was solved with and the closed fixed-point value
    excess = max(gp_small.gamma, gp_small.gamma_report.gamma_final) - 1.0
    ok = (gp_small.converged and gp_half.converged and d_e <= cfg.tol_energy
          and excess < 1e-6 and gp_half.r_mean < nr_half.r_mean)
    return ok, (f"m=1e-3: dE/E {d_e:.1e}, gamma-1 {excess:.1e}; "
                f"m=0.5: r_mean gp/nr {gp_half.r_mean / nr_half.r_mean:.6f}")


def _cli(*argv):
    return subprocess.run([sys.executable, "-m", "gpsne", *argv], capture_output=True, check=False)


@_record(10, "CLI determinism")
def check_cli_determinism():
    scan = ("diosi-scan", "--mass-range", "0.01:3:40")
    runs = [_cli(*scan) for _ in range(2)]
    runs_json = [_cli(*scan, "--format", "json") for _ in range(2)]
    identical = runs[0].stdout == runs[1].stdout and runs_json[0].stdout == runs_json[1].stdout
    codes = {r.returncode for r in runs + runs_json}

    box = ("box", "--mass", "1", "--width", "0.5", "--width", "3.14159265358979", "--nmax", "5")
    first = _cli(*box).stdout.decode().splitlines()
    header = first[0].split(",")
    i_w, i_n, i_e = header.index("width"), header.index("n"), header.index("E_gp")
    with tempfile.TemporaryDirectory() as tmp:
        ref = Path(tmp) / "self.csv"
        lines = ["width,level,energy_ref,source"]
        lines += [f"{f[i_w]},{f[i_n]},{f[i_e]},self" for f in (line.split(",") for line in first[1:])]
        ref.write_text("\n".join(lines) + "\n")
        out = _cli(*box, "--reference", str(ref))
    rows = out.stdout.decode().splitlines()
    cols = rows[0].split(",")
    devs = [float(r.split(",")[cols.index(c)]) for r in rows[1:] for c in ("abs_dev", "rel_dev")]
    ok = identical and codes == {0} and out.returncode == 0 and len(devs) == 20 and all(d == 0.0 for d in devs)
    return ok, f"byte-identical={identical}, self-reference max deviation {max(devs) if devs else float('nan'):.1e}"


CHECKS = [
    check_box_closed_form, check_expansion_order, check_ultra_relativistic, check_length_scales,
    check_nr_minimizer, check_radial_engine, check_sne_ground_state, check_mass_scaling,
    check_gp_limits, check_cli_determinism,
]


@pytest.mark.parametrize("check", CHECKS, ids=[f"criterion_{c.number:02d}" for c in CHECKS])
def test_criterion(check):
    passed, detail = check()
    assert passed, detail


def format_line(number):
    title, passed, detail = RESULTS[number]
    return f"criterion {number:2d} {'PASS' if passed else 'FAIL'}  {title}: {detail}"


if __name__ == "__main__":
    failed = 0
    for check in CHECKS:
        passed, _ = check()
        failed += not passed
        print(format_line(check.number), flush=True)
    sys.exit(1 if failed else 0)
