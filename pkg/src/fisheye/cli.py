"""Command-line front end: figure-data CSVs, validation oracles, loss estimate.

    fisheye validate   [--quick]
    fisheye ddi-sweep  --radii 4.93,8.11,11.3,14.48 --b 0.1 --offset 1.0
    fisheye dynamics   --R0 3.34 --alpha 5e-4 --rho 0.27 [--simulate]
    fisheye fidelity   --mode vs-loss|vs-detuning|vs-radius [--simulate]
    fisheye plasmon    index-sweep | estimate

Output is CSV only (header line, 12 significant digits, LF endings), plus an
optional generated matplotlib script (--plot-script).  A plain-text config
file (key = value, '#' comments) supplies defaults; explicit flags override
it.  Exit codes: 0 success, 1 validation failure, 2 bad arguments,
3 numerical non-convergence.
"""

from __future__ import annotations

import argparse
import math
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

import numpy as np

from . import greens, lens, plasmon, qed, schrodinger, specfun
from .errors import DomainError, FisheyeError, NonConvergenceError

#: Lens radii (R0/lambda0) of the four published interaction-range curves.
RANGE_SWEEP_RADII = (4.93, 8.11, 11.3, 14.48)
#: Lens radii of the published fidelity curves (Re nu = 10.5, 20.5, 50.5, 90.5).
FIDELITY_RADII = (1.749, 3.34, 8.11, 14.48)


def _fmt(value) -> str:
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return f"{float(value):.12g}"


def _write_csv(out: str | None, header: list[str], rows: list[tuple]) -> None:
    text = "\n".join([",".join(header)] + [",".join(_fmt(v) for v in row) for row in rows]) + "\n"
    if out is None:
        sys.stdout.write(text)
    else:
        Path(out).write_text(text, encoding="utf-8", newline="\n")


def _write_plot_script(path: str, csv_out: str | None, xcol: str, ycols: list[str], title: str) -> None:
    """Companion matplotlib script as plain text; reads the emitted CSV."""
    csv_name = csv_out if csv_out is not None else "data.csv"
    lines = [
        "#!/usr/bin/env python3",
        f'"""Plot {title} from {csv_name} (generated alongside the CSV)."""',
        "import csv",
        "import matplotlib.pyplot as plt",
        "",
        f"rows = list(csv.DictReader(open({csv_name!r})))",
        f"x = [float(r[{xcol!r}]) for r in rows]",
    ]
    for col in ycols:
        lines.append(f"plt.plot(x, [float(r[{col!r}]) for r in rows], label={col!r})")
    lines += [
        f"plt.xlabel({xcol!r})",
        "plt.legend()",
        f"plt.title({title!r})",
        "plt.show()",
    ]
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8", newline="\n")


def _parse_config(path: str) -> dict[str, str]:
    config: dict[str, str] = {}
    for raw in Path(path).read_text(encoding="utf-8").splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise DomainError(f"config line without '=': {raw!r}")
        key, value = line.split("=", 1)
        config[key.strip().replace("-", "_")] = value.strip()
    return config


def _resolve(args: argparse.Namespace, name: str, default, cast=float):
    """Flag > config file > default."""
    flag = getattr(args, name, None)
    if flag is not None:
        return flag
    if args.config_values and name in args.config_values:
        raw = args.config_values[name]
        if cast is bool:
            return raw.lower() in ("1", "true", "yes", "on")
        return cast(raw)
    return default


def _pmap(fn, items, workers: int):
    if workers <= 1:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


def _float_list(text: str) -> list[float]:
    return [float(tok) for tok in text.split(",") if tok.strip()]


# ---------------------------------------------------------------- validate

def _check(name: str, ok: bool, detail: str, results: list) -> None:
    results.append((name, ok, detail))


def cmd_validate(args: argparse.Namespace) -> int:
    quick = bool(_resolve(args, "quick", False, bool))
    results: list[tuple[str, bool, str]] = []
    rng = np.random.default_rng(20260808)

    # integer-degree reduction of the complex-degree evaluator
    worst = 0.0
    for l in range(0, 9):
        for x in np.linspace(-0.98, 1.0, 17 if quick else 50):
            worst = max(worst, abs(specfun.legendre_nu(l, float(x)) - specfun.legendre_poly(l, float(x))))
    _check("legendre integer-degree reduction", worst < 1e-10, f"max dev {worst:.2e}", results)

    # expansion oracle vs direct evaluator
    val = specfun.legendre_nu(20.5, 0.3)
    est, _ = specfun.accelerate(specfun.legendre_nu_expansion(20.5, 0.3, 400))
    dev = abs(val - est) / abs(val)
    _check("degree-expansion oracle agreement", dev < 1e-6, f"rel dev {dev:.2e}", results)

    # addition-theorem sum rule
    worst = 0.0
    for l in (3, 11, 30):
        t1, p1, t2, p2 = rng.uniform(0.1, 3.0, 2)[0], rng.uniform(0, 6.28), rng.uniform(0.1, 3.0), rng.uniform(0, 6.28)
        lhs = sum(
            np.conj(specfun.spherical_harmonic(l, m, t1, p1)) * specfun.spherical_harmonic(l, m, t2, p2)
            for m in range(-l, l + 1)
        )
        c12 = math.cos(t1) * math.cos(t2) + math.sin(t1) * math.sin(t2) * math.cos(p1 - p2)
        rhs = (2 * l + 1) / (4 * math.pi) * specfun.legendre_poly(l, c12)
        worst = max(worst, abs(lhs - rhs))
    _check("addition-theorem sum rule", worst < 1e-10, f"max dev {worst:.2e}", results)

    # mode orthonormality identity matrix
    cfg = lens.LensConfig(radius=2.0)
    l_cap = 5 if quick else 8
    modes = [lens.ModeIndex(l, m) for l in range(1, l_cap + 1) for m in lens.allowed_m(l)]
    worst = 0.0
    for i, ma in enumerate(modes):
        for mb in modes[i:]:
            want = 1.0 if ma == mb else 0.0
            got = lens.orthonormality_check(cfg, ma, mb, quadrature_n=64)
            worst = max(worst, abs(got - want))
    _check("mode orthonormality identity", worst < 1e-6, f"max dev {worst:.2e}", results)

    # closed form vs eigenmode sum, real frequency midway between resonances
    worst = 0.0
    radii = (1.749, 3.34) if quick else (1.749, 3.34, 8.11)
    pairs = 4 if quick else 8
    for r0 in radii:
        cfg = lens.LensConfig(radius=r0)
        for _ in range(pairs):
            p1 = lens.DiskPoint(rng.uniform(0.1, 0.9), rng.uniform(0, 2 * math.pi))
            p2 = lens.DiskPoint(rng.uniform(0.1, 0.9), rng.uniform(0, 2 * math.pi))
            if abs(greens.xi(p1.alpha, p2.alpha) + 1.0) < 0.05:
                continue
            g = greens.greens_zz(cfg, p1, p2, lens.OMEGA0).value
            gm = greens.greens_modesum(cfg, p1, p2, lens.OMEGA0, tol=1e-9).value
            worst = max(worst, abs(g - gm) / abs(g))
    _check("closed form vs mode sum", worst < 1e-6, f"max rel dev {worst:.2e}", results)

    # reciprocity
    cfg = lens.LensConfig(radius=3.34)
    worst = 0.0
    for _ in range(3 if quick else 8):
        p1 = lens.DiskPoint(rng.uniform(0.1, 0.9), rng.uniform(0, 2 * math.pi))
        p2 = lens.DiskPoint(rng.uniform(0.1, 0.9), rng.uniform(0, 2 * math.pi))
        if abs(greens.xi(p1.alpha, p2.alpha) + 1.0) < 0.02:
            continue
        a = greens.greens_zz(cfg, p1, p2, lens.OMEGA0).value
        b = greens.greens_zz(cfg, p2, p1, lens.OMEGA0).value
        worst = max(worst, abs(a - b) / abs(a))
    _check("reciprocity", worst < 1e-10, f"max rel dev {worst:.2e}", results)

    # mirror boundary
    cfg = lens.LensConfig(radius=2.0)
    worst = 0.0
    for l in range(1, 11 if quick else 41, 3):
        for m in lens.allowed_m(l)[:2]:
            val = abs(lens.mode_function(cfg, lens.ModeIndex(l, m), lens.DiskPoint(1.0, 0.7)))
            worst = max(worst, val)
    _check("mirror boundary", worst < 1e-12, f"max |f| {worst:.2e}", results)

    # lossy closed-form rates vs spectral sum
    cfg = lens.LensConfig(radius=3.34, alpha=5e-4)
    atoms = qed.AtomPairConfig.antipodal(0.27)
    exact = qed.coupling_rates(cfg, atoms)
    oracle = qed.rates_modesum_oracle(cfg, atoms)
    dev = max(
        abs(exact.delta_omega - oracle.delta_omega) / abs(exact.delta_omega),
        abs(exact.gamma_coop - oracle.gamma_coop) / max(abs(exact.gamma_coop), 1e-12),
    )
    _check("lossy rates vs spectral sum", dev < 1e-3, f"max rel dev {dev:.2e}", results)

    # lossless unitarity of the block simulation
    cfg = lens.LensConfig(radius=3.34)
    blocks = schrodinger.build_blocks(cfg, lens.stereo_theta(0.27))
    rates = qed.coupling_rates(cfg, atoms)
    t_end = 3 * math.pi / (abs(rates.delta_omega) * schrodinger.DEFAULT_GAMMA0)
    sim = schrodinger.evolve(blocks, 0.0, np.linspace(0, t_end, 300 if quick else 1000))
    dev = float(np.max(np.abs(sim.state_norm - 1.0)))
    _check("lossless norm conservation", dev < 1e-10, f"max dev {dev:.2e}", results)

    width = max(len(name) for name, _, _ in results)
    all_ok = True
    for name, ok, detail in results:
        all_ok &= ok
        print(f"{name:<{width}}  {'PASS' if ok else 'FAIL'}  {detail}")
    print(f"validate: {'all checks passed' if all_ok else 'FAILURES detected'}")
    return 0 if all_ok else 1


# --------------------------------------------------------------- ddi-sweep

def cmd_ddi_sweep(args: argparse.Namespace) -> int:
    radii = _resolve(args, "radii", list(RANGE_SWEEP_RADII), _float_list)
    b = _resolve(args, "b", 0.1)
    offset = _resolve(args, "offset", 1.0)
    samples = int(_resolve(args, "samples", 1201, int))
    workers = int(_resolve(args, "workers", 1, int))

    rows: list[tuple] = []
    for r0 in radii:
        if offset <= 0 or offset >= 2 * r0:
            raise DomainError(f"offset {offset} puts the fixed atom outside the disk")
        cfg = lens.LensConfig(radius=r0, b=b)
        x1 = -(r0 - offset)
        p1 = lens.DiskPoint(abs(x1) / r0, math.pi if x1 < 0 else 0.0)
        xs = np.linspace(-r0 * 0.999, r0 * 0.999, samples)

        def one(x2: float, cfg=cfg, p1=p1, x1=x1, r0=r0):
            if abs(x2 - x1) < 1e-9:
                return None
            p2 = lens.DiskPoint(abs(x2) / r0, math.pi if x2 < 0 else 0.0)
            g = greens.greens_zz(cfg, p1, p2, lens.OMEGA0).value
            dw = 3.0 * math.pi / lens.OMEGA0 * g.real
            return (r0, x2, dw)

        rows.extend(r for r in _pmap(one, [float(x) for x in xs], workers) if r is not None)
    rows.sort(key=lambda r: (r[0], r[1]))
    _write_csv(args.out, ["R0_over_lambda", "x_over_lambda", "ddi_over_Gamma0"], rows)
    if args.plot_script:
        _write_plot_script(args.plot_script, args.out, "x_over_lambda", ["ddi_over_Gamma0"], "dipole-dipole interaction sweep")
    return 0


# ---------------------------------------------------------------- dynamics

def cmd_dynamics(args: argparse.Namespace) -> int:
    nu_center = _resolve(args, "nu_center", None)
    r0 = _resolve(args, "R0", 3.34)
    if nu_center is not None:
        r0 = lens.radius_for_order(nu_center)
    alpha = _resolve(args, "alpha", 5e-4)
    rho = _resolve(args, "rho", 0.27)
    b = _resolve(args, "b", 0.1)
    samples = int(_resolve(args, "samples", 2000, int))
    simulate = bool(_resolve(args, "simulate", False, bool))
    l_max = _resolve(args, "l_max", None, int)

    cfg = lens.LensConfig(radius=r0, b=b, alpha=alpha)
    atoms = qed.AtomPairConfig.antipodal(rho)
    rates = qed.coupling_rates(cfg, atoms)
    t0 = 0.25 * math.pi / abs(rates.delta_omega)
    t_grid = np.linspace(0.0, 3.0 * math.pi / abs(rates.delta_omega), samples)
    traj = qed.trajectory(rates, t_grid)
    marker_idx = int(np.argmin(np.abs(t_grid - t0)))

    header = ["t_Gamma0", "pop1", "pop2", "bell_fidelity", "t0_marker"]
    columns = [t_grid, traj.pop1, traj.pop2, traj.bell_fidelity]
    if simulate:
        g0 = schrodinger.DEFAULT_GAMMA0
        l_range = range(1, l_max + 1) if l_max else None
        blocks = schrodinger.build_blocks(cfg, lens.stereo_theta(rho), l_range=l_range, kappa=cfg.kappa, gamma0=g0)
        sim = schrodinger.evolve(blocks, cfg.kappa, t_grid / g0, gamma0=g0)
        header += ["sim_pop1", "sim_pop2", "sim_bell_fidelity"]
        columns += [np.abs(sim.amp_a) ** 2, np.abs(sim.amp_b) ** 2, sim.bell_fidelity]
    rows = []
    for i in range(samples):
        row = [columns[0][i]] + [c[i] for c in columns[1:4]] + [1 if i == marker_idx else 0]
        row += [c[i] for c in columns[4:]]
        rows.append(tuple(row))
    _write_csv(args.out, header, rows)
    if args.plot_script:
        _write_plot_script(args.plot_script, args.out, "t_Gamma0", ["pop1", "pop2", "bell_fidelity"], "two-atom exchange dynamics")
    return 0


# ---------------------------------------------------------------- fidelity

def cmd_fidelity(args: argparse.Namespace) -> int:
    mode = args.mode
    rho = _resolve(args, "rho", 0.27)
    b = _resolve(args, "b", 0.1)
    simulate = bool(_resolve(args, "simulate", False, bool))
    samples = int(_resolve(args, "samples", 25, int))
    radii = _resolve(args, "radii", list(FIDELITY_RADII), _float_list)
    workers = int(_resolve(args, "workers", 1, int))
    l_max = _resolve(args, "l_max", None, int)
    atoms = qed.AtomPairConfig.antipodal(rho)

    def error_at(r0: float, alpha: float) -> tuple[float, float | None]:
        cfg = lens.LensConfig(radius=r0, b=b, alpha=alpha)
        f_ana = qed.entanglement_fidelity(qed.coupling_rates(cfg, atoms))
        if not simulate:
            return 1.0 - f_ana, None
        l_range = range(1, l_max + 1) if l_max else None
        cmp = schrodinger.compare_to_analytics(cfg, atoms, alpha, l_range=l_range)
        return 1.0 - f_ana, 1.0 - cmp.F_numeric

    rows: list[tuple] = []
    if mode == "vs-loss":
        alphas = np.logspace(
            math.log10(_resolve(args, "alpha_min", 1e-4)),
            math.log10(_resolve(args, "alpha_max", 1e-2)),
            samples,
        )
        tasks = [(r0, float(a)) for r0 in radii for a in alphas]
        vals = _pmap(lambda t: error_at(*t), tasks, workers)
        for (r0, a), (ea, en) in zip(tasks, vals):
            rows.append((r0, a, ea) if en is None else (r0, a, ea, en))
        header = ["R0_over_lambda", "alpha", "one_minus_F_analytic"]
    elif mode == "vs-detuning":
        alpha = _resolve(args, "alpha", 5e-4)
        span = _resolve(args, "dnu_span", 0.45)
        dnus = np.linspace(-span, span, samples if samples % 2 else samples + 1)
        tasks = []
        for r0 in radii:
            nu_center = round(lens.order_parameter(lens.LensConfig(radius=r0), lens.OMEGA0).real * 2) / 2
            tasks.extend((r0, nu_center, float(d)) for d in dnus)
        vals = _pmap(lambda t: error_at(lens.radius_for_order(t[1] + t[2]), alpha), tasks, workers)
        for (r0, _, d), (ea, en) in zip(tasks, vals):
            rows.append((r0, d, ea) if en is None else (r0, d, ea, en))
        header = ["R0_over_lambda", "delta_nu", "one_minus_F_analytic"]
    elif mode == "vs-radius":
        alpha = _resolve(args, "alpha", 5e-4)
        nu_lo = _resolve(args, "nu_min", 10.5)
        nu_hi = _resolve(args, "nu_max", 90.5)
        nus = np.arange(nu_lo, nu_hi + 0.5, 1.0)
        for nu in nus:
            r0 = lens.radius_for_order(float(nu))
            ea, _ = error_at(r0, alpha)
            rows.append((r0, ea, qed.fidelity_approx(r0, alpha)))
        header = ["R0_over_lambda", "one_minus_F_analytic", "F_approx"]
    else:  # pragma: no cover - argparse restricts choices
        raise DomainError(f"unknown fidelity mode {mode}")

    if simulate and mode in ("vs-loss", "vs-detuning"):
        header.append("one_minus_F_numeric")
    rows.sort(key=lambda r: (r[0], r[1]))
    _write_csv(args.out, header, rows)
    if args.plot_script:
        xcol = header[0] if mode == "vs-radius" else header[1]
        _write_plot_script(args.plot_script, args.out, xcol, ["one_minus_F_analytic"], f"entangling error {mode}")
    return 0


# ----------------------------------------------------------------- plasmon

def cmd_plasmon(args: argparse.Namespace) -> int:
    stack = plasmon.PlasmonStack(
        eps_metal=complex(_resolve(args, "eps_metal", -25.23 + 0.589j, complex)),
        eps_dielectric=_resolve(args, "eps_dielectric", 3.6),
        lambda0_nm=_resolve(args, "lambda0_nm", 737.0),
    )
    if args.plasmon_cmd == "index-sweep":
        d_max = _resolve(args, "d_max", 200.0)
        step = _resolve(args, "step", 0.5)
        sweep = plasmon.sweep_effective_index(d_max, stack, step)
        rows = [(s.height_nm, s.n, s.chi) for s in sweep]
        _write_csv(args.out, ["d_nm", "n_eff", "chi"], rows)
        if args.plot_script:
            _write_plot_script(args.plot_script, args.out, "d_nm", ["n_eff", "chi"], "plasmon effective index vs dielectric height")
        return 0
    # estimate
    r0 = _resolve(args, "R0", 1.749)
    eta = _resolve(args, "eta", 3.0)
    r2 = _resolve(args, "r2", 0.95)
    n_samples = int(_resolve(args, "samples", 1000, int))
    recomputed = bool(_resolve(args, "recomputed_mirror_loss", False, bool))
    cfg = lens.LensConfig(radius=r0)
    report = plasmon.end_to_end_estimate(cfg, stack, reflectivity_sq=r2, eta=eta, n_radial_samples=n_samples)
    headline = report.fidelity_computed if recomputed else report.fidelity_nominal
    lines = [
        f"alpha_abs                = {report.alpha_abs:.6g}",
        f"alpha_mirror (formula)   = {report.alpha_mirror_formula:.6g}",
        f"alpha_mirror (reference) = {report.alpha_mirror_reference:.6g}",
        f"alpha_total (computed)   = {report.alpha_total_computed:.6g}",
        f"alpha_total (nominal)    = {plasmon.NOMINAL_TOTAL_LOSS:.6g}",
        f"F (computed budget)      = {report.fidelity_computed:.6g}",
        f"F (nominal budget)       = {report.fidelity_nominal:.6g}",
        f"F (headline)             = {headline:.6g}",
    ]
    text = "\n".join(lines) + "\n"
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8", newline="\n")
    else:
        sys.stdout.write(text)
    return 0


# ------------------------------------------------------------------ parser

def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", help="plain-text config file (key = value, '#' comments)")
    p.add_argument("--out", help="output CSV/text path (default: stdout)")
    p.add_argument("--plot-script", help="also write a matplotlib script to this path")
    p.add_argument("--quick", action="store_const", const=True, help="reduced grids")
    p.add_argument("--samples", type=int, help="sample count for sweeps/grids")
    p.add_argument("--l-max", type=int, dest="l_max", help="mode-sum / simulator truncation")
    p.add_argument("--workers", type=int, help="worker threads for sweep points")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fisheye",
        description="Gradient-index cavity quantum optics: figure data, validation, loss estimates.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="run the cross-validation oracle suite")
    _add_common(p)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("ddi-sweep", help="dipole-dipole interaction along the diameter")
    _add_common(p)
    p.add_argument("--radii", type=_float_list, help="comma list of R0/lambda0")
    p.add_argument("--b", type=float, help="disk thickness in lambda0")
    p.add_argument("--offset", type=float, help="fixed-atom distance from the mirror (lambda0)")
    p.set_defaults(func=cmd_ddi_sweep)

    p = sub.add_parser("dynamics", help="two-atom exchange dynamics time series")
    _add_common(p)
    p.add_argument("--R0", type=float, dest="R0", help="lens radius in lambda0")
    p.add_argument("--nu-center", type=float, dest="nu_center", help="derive R0 from this Re nu")
    p.add_argument("--alpha", type=float, help="loss ratio kappa/omega0")
    p.add_argument("--rho", type=float, help="antipodal atom radius fraction")
    p.add_argument("--b", type=float, help="disk thickness in lambda0")
    p.add_argument("--simulate", action="store_const", const=True, help="add spectral-simulation columns")
    p.set_defaults(func=cmd_dynamics)

    p = sub.add_parser("fidelity", help="entangling-error sweeps")
    _add_common(p)
    p.add_argument("--mode", required=True, choices=["vs-loss", "vs-detuning", "vs-radius"])
    p.add_argument("--radii", type=_float_list, help="comma list of R0/lambda0")
    p.add_argument("--rho", type=float, help="antipodal atom radius fraction")
    p.add_argument("--b", type=float, help="disk thickness in lambda0")
    p.add_argument("--alpha", type=float, help="loss ratio (vs-detuning / vs-radius)")
    p.add_argument("--alpha-min", type=float, dest="alpha_min")
    p.add_argument("--alpha-max", type=float, dest="alpha_max")
    p.add_argument("--dnu-span", type=float, dest="dnu_span", help="detuning half-range in nu")
    p.add_argument("--nu-min", type=float, dest="nu_min", help="first half-integer Re nu (vs-radius)")
    p.add_argument("--nu-max", type=float, dest="nu_max", help="last half-integer Re nu (vs-radius)")
    p.add_argument("--simulate", action="store_const", const=True, help="add spectral-simulation column")
    p.set_defaults(func=cmd_fidelity)

    p = sub.add_parser("plasmon", help="surface-plasmon realization")
    _add_common(p)
    p.add_argument("plasmon_cmd", choices=["index-sweep", "estimate"])
    p.add_argument("--d-max", type=float, dest="d_max", help="sweep ceiling in nm")
    p.add_argument("--step", type=float, help="sweep step in nm")
    p.add_argument(
        "--eps-metal",
        type=complex,
        dest="eps_metal",
        help="metal permittivity; pass as --eps-metal=-25.23+0.589j (leading minus)",
    )
    p.add_argument("--eps-dielectric", type=float, dest="eps_dielectric")
    p.add_argument("--lambda0-nm", type=float, dest="lambda0_nm")
    p.add_argument("--R0", type=float, dest="R0", help="lens radius in lambda0")
    p.add_argument("--eta", type=float, help="Purcell ratio gamma/gamma0")
    p.add_argument("--r2", type=float, help="mirror reflectivity r^2")
    p.add_argument(
        "--recomputed-mirror-loss",
        action="store_const",
        const=True,
        dest="recomputed_mirror_loss",
        help="headline fidelity from the computed loss budget instead of the nominal one",
    )
    p.set_defaults(func=cmd_plasmon)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        args.config_values = _parse_config(args.config) if args.config else {}
        return args.func(args)
    except NonConvergenceError as exc:
        print(f"fisheye: numerical non-convergence: {exc}", file=sys.stderr)
        return 3
    except DomainError as exc:
        print(f"fisheye: bad arguments: {exc}", file=sys.stderr)
        return 2
    except FisheyeError as exc:
        print(f"fisheye: {exc}", file=sys.stderr)
        return 1
    except FileNotFoundError as exc:
        print(f"fisheye: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
