"""The eleven acceptance criteria, each at its stated tolerance.

Every test records one PASS/FAIL line (shown in the pytest terminal summary);
``python3 tests/test_acceptance.py`` prints the same lines without pytest.
"""
import math
import sys
import time

import numpy as np

from photonic_engine.atoms import (
    AtomPairState,
    PureFamilyParams,
    bell_states,
    build_pure_family,
    concurrence,
    pure_concurrence,
    pure_family_ket,
)
from photonic_engine.cavity import (
    CavityState,
    evolve,
    fock_dim_for,
    lindblad_rhs,
    steady_state_moments,
)
from photonic_engine.engine import efficiency_closed_form, run_cycle
from photonic_engine.reservoir import InteractionParams, operating_regime, reservoir_coefficients
from photonic_engine.sweep import config_from_dict, get_preset, order_residuals, random_density_matrix, run_sweep

try:
    from conftest import ACCEPTANCE_LINES
except ImportError:  # run as a script from elsewhere
    ACCEPTANCE_LINES = {}

TITLES = {
    1: "steady-state oracle (evolve vs moments)",
    2: "superoperator order slope",
    3: "concurrence oracle",
    4: "Bell passivity",
    5: "efficiency identity",
    6: "argmax_b eta at concurrence zero",
    7: "phase interference",
    8: "positivity / trace suite",
    9: "threshold flagging",
    10: "N_pair^2 drive scaling",
    11: "determinism across thread counts",
}


def report(k: int, ok: bool, detail: str):
    line = f"[{'PASS' if ok else 'FAIL'}] AC{k:>2} {TITLES[k]}: {detail}"
    ACCEPTANCE_LINES[k] = line
    print(line)
    assert ok, line


def ref_params(**kw):
    base = dict(g_hz=334e3, kappa_hz=74e3, g_tau=0.03, n_pair=2.0)
    base.update(kw)
    return InteractionParams.from_hz(base["g_hz"], base["kappa_hz"], base["g_tau"], n_pair=base["n_pair"],
                                     delta=base.get("delta", 0.0))


def family(a, b, c, phi=0.0):
    return build_pure_family(PureFamilyParams(a, b, c, phi))


def test_ac01_steady_state_oracle():
    t0 = time.perf_counter()
    params = InteractionParams.from_hz(334e3, 740e3, 0.01, n_pair=1.0)
    coeffs = reservoir_coefficients(family(1, 1, 1), params)
    n_ss, _ = steady_state_moments(coeffs)
    dim = fock_dim_for(coeffs)
    traj = evolve(CavityState.vacuum(dim), coeffs, 20.0 / coeffs.gamma)
    runtime = time.perf_counter() - t0
    rel = abs(traj.n_mean[-1] - n_ss) / n_ss
    tail = float(traj.tail_mass.max())
    ok = n_ss <= 8 and rel < 0.02 and tail < 1e-6 and runtime < 60
    report(1, ok, f"n_ss={n_ss:.6f}, n(20/gamma)={traj.n_mean[-1]:.6f}, rel={rel:.2e}, dim={dim}, "
                  f"tail={tail:.2e}, {runtime:.2f}s")


def test_ac02_superoperator_order():
    t0 = time.perf_counter()
    g_taus = [0.04, 0.02, 0.01, 0.005]
    res, slope = order_residuals(g_taus, dim=8, samples=8, delta_tau=0.5, seed=7)
    runtime = time.perf_counter() - t0
    ok = 2.7 <= slope <= 3.3 and runtime < 30
    report(2, ok, f"slope={slope:.4f}, residuals={', '.join(f'{r:.2e}' for r in res)}, {runtime:.2f}s")


def test_ac03_concurrence_oracle():
    rng = np.random.default_rng(3)
    worst = 0.0
    for _ in range(1000):
        a, b, c = rng.uniform(0, 6, 3)
        phi = rng.uniform(0, 4 * np.pi)
        p = PureFamilyParams(a, b, c, phi)
        worst = max(worst, abs(concurrence(build_pure_family(p)) - pure_concurrence(pure_family_ket(p))))
    bell = max(abs(concurrence(s) - 1.0) for s in bell_states().values())
    prod = 0.0
    for _ in range(200):
        prod = max(prod, concurrence(AtomPairState.product(random_density_matrix(2, rng),
                                                           random_density_matrix(2, rng))))
    ok = worst < 1e-9 and bell < 1e-9 and prod < 1e-9
    report(3, ok, f"pure-family max err={worst:.2e}, Bell max |C-1|={bell:.2e}, product max C={prod:.2e}")


def test_ac04_bell_passivity():
    details, ok = [], True
    for name, state in bell_states().items():
        for delta in (0.0, -2 * np.pi * 0.3e6):
            params = ref_params(delta=delta)
            coeffs = reservoir_coefficients(state, params)
            n_ss, _ = steady_state_moments(coeffs)
            eta = efficiency_closed_form(coeffs)
            for mode in ("entry", "pointwise"):
                res, _ = run_cycle(state, params, -2 * np.pi * 1e6, 21, mode=mode)
                ok &= coeffs.alpha == 0 and n_ss == coeffs.n_th and eta == 0 and res.w_net == 0 and res.eta == 0
        details.append(f"{name}: n_th={coeffs.n_th:.4f}")
    report(4, ok, "alpha=0, n_ss=n_th, eta=0, W_net=0 for " + ", ".join(details))


def test_ac05_efficiency_identity():
    rng = np.random.default_rng(5)
    worst, used = 0.0, 0
    while used < 10_000:
        a, b, c = rng.uniform(0, 6, 3)
        state = family(a, b, c, rng.uniform(0, 2 * np.pi))
        params = InteractionParams.from_hz(rng.uniform(50e3, 1e6), rng.uniform(10e3, 1e6), rng.uniform(0.001, 0.2),
                                           n_pair=rng.uniform(0.2, 5.0), delta=-2 * np.pi * rng.uniform(0, 1e6))
        coeffs = reservoir_coefficients(state, params, strict=False)
        if not coeffs.below_threshold:
            continue
        n_ss, _ = steady_state_moments(coeffs)
        if n_ss == 0:
            continue
        used += 1
        worst = max(worst, abs(efficiency_closed_form(coeffs) - (1.0 - coeffs.n_th / n_ss)))
    report(5, worst < 1e-12, f"max |eta_cf - (1 - n_th/n_ss)| = {worst:.2e} over {used} draws")


def test_ac06_argmax_at_concurrence_zero():
    params = ref_params()
    bs = np.round(np.arange(0, 601) * 0.01, 10)
    eta = np.array([efficiency_closed_form(reservoir_coefficients(family(1, b, 1), params)) for b in bs])
    b_star = bs[int(np.argmax(eta))]
    c_at = concurrence(family(1, b_star, 1))
    report(6, abs(b_star - 1.0) <= 0.02,
           f"argmax b={b_star:.2f} (eta={eta.max():.6f}, C={c_at:.3f}); eta(b=1)={eta[100]:.6f}; "
           f"target |b-1|<=0.02")


def test_ac07_phase_interference():
    params = ref_params()
    phis = np.linspace(0, 4 * np.pi, 801)
    ok, parts = True, []
    for b in (0.25, 2.0):
        eta = np.array([efficiency_closed_form(reservoir_coefficients(family(1, b, 1, p), params)) for p in phis])
        period = float(np.max(np.abs(eta[:401] - eta[400:])))
        e0 = eta[0]
        e_pi = efficiency_closed_form(reservoir_coefficients(family(1, b, 1, np.pi), params))
        max_ok = bool(np.all(eta <= e0 + 1e-12))
        ok &= period < 1e-9 and max_ok and e_pi < 0.05 * e0
        parts.append(f"b={b}: period err={period:.1e}, eta(0)={e0:.6f}, max at 0={max_ok}, eta(pi)={e_pi:.2e}")
    report(7, ok, "; ".join(parts))


def test_ac08_positivity_trace():
    params = InteractionParams.from_hz(334e3, 740e3, 0.01, n_pair=1.0)
    runs = []
    cases = [
        (family(1, 1, 1), None, False),
        (family(1, 0, 1), None, False),
        (family(1, 5, 1, 0.7), None, True),
        (family(0.3, 1, 2, 2.0), 1.5, True),
    ]
    for state, n_start, heff in cases:
        coeffs = reservoir_coefficients(state, params)
        dim = fock_dim_for(coeffs)
        init = CavityState.vacuum(dim) if n_start is None else CavityState.thermal(max(dim, 40), n_start)
        traj = evolve(init, coeffs, 10.0 / coeffs.gamma, include_heff=heff)
        runs.append((float(traj.trace_err.max()), float(traj.min_eig.min())))
    tr_worst = max(r[0] for r in runs)
    eig_worst = min(r[1] for r in runs)

    # trace-freeness in units where g = 1 (time in 1/g); SI rates are quoted relative
    rng = np.random.default_rng(8)
    rhs_worst = rel_si = 0.0
    for _ in range(200):
        st = AtomPairState(random_density_matrix(4, rng))
        nat = InteractionParams(g=1.0, tau=rng.uniform(0.005, 0.2), kappa=rng.uniform(0, 0.5),
                                delta=rng.uniform(-20, 0), n_pair=rng.uniform(0.2, 4))
        si = InteractionParams(g=2 * np.pi * 334e3, tau=nat.tau / (2 * np.pi * 334e3),
                               kappa=nat.kappa * 2 * np.pi * 334e3, delta=nat.delta * 2 * np.pi * 334e3,
                               n_pair=nat.n_pair)
        rho = random_density_matrix(int(rng.integers(2, 30)), rng)
        for heff in (False, True):
            c = reservoir_coefficients(st, nat, strict=False)
            rhs_worst = max(rhs_worst, abs(np.trace(lindblad_rhs(rho, c, include_heff=heff))))
            c_si = reservoir_coefficients(st, si, strict=False)
            rel_si = max(rel_si, abs(np.trace(lindblad_rhs(rho, c_si, include_heff=heff))) / c_si.rate_scale())
    ok = tr_worst < 1e-8 and eig_worst > -1e-8 and rhs_worst < 1e-10
    report(8, ok, f"max |Tr-1|={tr_worst:.1e}, min eig={eig_worst:.1e} over {len(runs)} trajectories; "
                  f"max |Tr L rho|={rhs_worst:.1e} (g=1 units), SI relative {rel_si:.1e}")


def test_ac09_threshold():
    state = family(1, 0, 0)
    params = ref_params(n_pair=40.0)
    coeffs = reservoir_coefficients(state, params, strict=False)
    gain = params.g ** 2 * params.tau * params.n_pair * coeffs.envelope.R.real
    margin, ok_regime = operating_regime(coeffs, params)
    cfg = config_from_dict({
        "physics": {"n_pair": [1.0, 40.0]},
        "state": {"a": 1.0, "b": 0.0, "c": 0.0},
        "outputs": {"quantities": ["n_ss", "n_th", "eta", "w_net", "t_r", "t_eff"]},
    })
    res = run_sweep(cfg)
    q = slice(len(res.header) - 7, len(res.header) - 1)
    below, above = res.rows
    row_ok = (all(math.isnan(v) for v in above[q]) and above[-1] == "1"
              and not any(math.isnan(v) for v in below[q]) and below[-1] == "0")
    ok = gain > params.kappa / 2 and not ok_regime and row_ok
    report(9, ok, f"g^2 tau N ReR={gain:.3e} > kappa/2={params.kappa / 2:.3e}, regime ok={ok_regime}, "
                  f"margin={margin:.3e}, flagged rows={res.flagged}/2")


def test_ac10_npair_scaling():
    worst = 0.0
    for amps in ((1, 1, 1), (1, 5, 1), (2, 0.5, 2)):
        drive = []
        for n in (1.0, 2.0):
            coeffs = reservoir_coefficients(family(*amps), ref_params(n_pair=n))
            n_ss, _ = steady_state_moments(coeffs)
            drive.append(n_ss - coeffs.n_th)
        worst = max(worst, abs(drive[1] / drive[0] - 4.0) / 4.0)
    report(10, worst < 1e-10, f"max relative deviation of drive ratio from 4: {worst:.2e}")


def test_ac11_determinism(tmp_path):
    cfg = config_from_dict(get_preset("fig3")["config"], name="fig3")
    p1, p8 = tmp_path / "t1.csv", tmp_path / "t8.csv"
    run_sweep(cfg, p1, threads=1)
    run_sweep(cfg, p8, threads=8)
    b1, b8 = p1.read_bytes(), p8.read_bytes()
    report(11, b1 == b8 and len(b1) > 0, f"{len(b1)} bytes, identical={b1 == b8}")


if __name__ == "__main__":
    import tempfile
    from pathlib import Path

    failed = 0
    for name, fn in sorted((n, f) for n, f in globals().items() if n.startswith("test_ac")):
        try:
            if "tmp_path" in fn.__code__.co_varnames[:fn.__code__.co_argcount]:
                with tempfile.TemporaryDirectory() as d:
                    fn(Path(d))
            else:
                fn()
        except AssertionError:
            failed += 1
    sys.exit(1 if failed else 0)
