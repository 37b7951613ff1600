//! Acceptance suite: one pass/fail line per criterion.

use std::f64::consts::{LN_2, PI};
use std::process::Command;
use std::time::Instant;

use ergokit::charging::{self, ChargingConfig};
use ergokit::fock::{self, FockOracleConfig};
use ergokit::gaussian::{self, GaussianState, IsoFamilyGaussian};
use ergokit::gaussian_dynamics::{self, TwoModeConfig};
use ergokit::linalg::{self, C64};
use ergokit::multicell::{self, XState};
use ergokit::numeric::{linspace, zero_crossing_period};
use ergokit::open_system::{self, BathSpec};
use ergokit::scenario::Scenario;
use ergokit::states::{self, HamiltonianSpec};
use ergokit::tls::{self, IsoFamilyTls, TlsState};
use ergokit::tls_dynamics::{self, TwoTlsConfig};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn require(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn e(err: ergokit::Error) -> String {
    err.to_string()
}

fn tls_split_oracle() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut worst: f64 = 0.0;
    for _ in 0..1000 {
        let p: f64 = rng.gen();
        let c_max = 2.0 * (p * (1.0 - p)).sqrt();
        let omega = 0.1 + 2.0 * rng.gen::<f64>();
        let s = TlsState::new(p, c_max * rng.gen::<f64>(), 4.0 * PI * rng.gen::<f64>(), omega).map_err(e)?;
        let split = s.ergotropy();
        let sum = split.component("incoherent").unwrap() + split.component("coherent").unwrap();
        let brute = states::ergotropy(&s.to_density(), &HamiltonianSpec::qubit(omega)).map_err(e)?;
        worst = worst.max((sum - brute).abs());
    }
    let secs = start.elapsed().as_secs_f64();
    require(worst <= 1e-10, format!("max error {worst:.3e}"))?;
    require(secs < 1.0, format!("runtime {secs:.2}s"))?;
    Ok(format!("1000 states, max |split - brute force| = {worst:.2e}, {secs:.3}s"))
}

fn gaussian_split_oracle() -> Outcome {
    let start = Instant::now();
    let cfg = FockOracleConfig::new(80).map_err(e)?.with_tolerance(1e-6);
    let (mut worst_rel, mut worst_abs, mut max_cut): (f64, f64, usize) = (0.0, 0.0, 0);
    for mu in linspace(0.0, 2.0, 5) {
        for xi in linspace(0.0, 1.0, 5) {
            for n in [0.0, 0.5, 1.0] {
                let s = GaussianState::new(C64::from_polar(mu, 0.7), xi, 0.4, n, 1.0).map_err(e)?;
                let rho = fock::fock_gaussian_adaptive(s.mu, s.xi(), n, &cfg).map_err(e)?;
                max_cut = max_cut.max(rho.dim());
                let brute = states::ergotropy(&rho, &HamiltonianSpec::harmonic(1.0, rho.dim())).map_err(e)?;
                let closed = s.ergotropy().total;
                if closed > 0.0 {
                    worst_rel = worst_rel.max(((brute - closed) / closed).abs());
                } else {
                    worst_abs = worst_abs.max(brute.abs());
                }
            }
        }
    }
    let secs = start.elapsed().as_secs_f64();
    require(worst_rel <= 1e-4, format!("max relative error {worst_rel:.3e}"))?;
    require(worst_abs <= 1e-10, format!("zero-charge points deviate by {worst_abs:.3e}"))?;
    require(secs < 30.0, format!("runtime {secs:.1}s"))?;
    Ok(format!("75 points, max rel. error {worst_rel:.2e} (cutoff 80..{max_cut}), {secs:.1}s"))
}

fn family_invariance() -> Outcome {
    let mut worst: f64 = 0.0;
    for pb in linspace(0.51, 1.0, 50) {
        let fam = IsoFamilyTls::new(pb, 1.3).map_err(e)?;
        for p in linspace(fam.pure_population(), pb, 101) {
            for theta in [0.0, 1.0, 3.0] {
                let r = tls::family_member(&fam, p, theta).map_err(e)?.ergotropy().total;
                worst = worst.max((r - 1.3 * (2.0 * pb - 1.0)).abs());
            }
        }
    }
    for mu_sq in [0.5, 1.0, 5.0, 10.0] {
        let fam = IsoFamilyGaussian::new(mu_sq, 0.7).map_err(e)?;
        for n in [0.0, 0.5, 1.0, 2.0] {
            for xi in linspace(0.0, fam.boundary_xi(n), 101) {
                let s = gaussian::family_member(&fam, xi, PI, n, 0.3).map_err(e)?;
                worst = worst.max((s.ergotropy().total - 0.7 * mu_sq).abs());
            }
        }
    }
    require(worst <= 1e-12, format!("max charge deviation {worst:.3e}"))?;
    let fam = IsoFamilyGaussian::new(5.0, 1.0).map_err(e)?;
    let (b, q) = (fam.boundary_xi(0.5), fam.equal_split_xi(0.5));
    require((b - 1.24).abs() < 0.005, format!("boundary |xi| = {b:.4}"))?;
    require((q - 0.96).abs() < 0.005, format!("equal split |xi| = {q:.4}"))?;
    Ok(format!("charge deviation {worst:.2e}; boundary {b:.4} (1.24), equal split {q:.4} (0.96)"))
}

fn channel_suite() -> Outcome {
    let fam = IsoFamilyTls::new(0.7, 1.0).map_err(e)?;
    let h = HamiltonianSpec::qubit(1.0);
    let (mut defect, mut td, mut dr): (f64, f64, f64) = (0.0, 0.0, 0.0);
    for p_in in linspace(fam.pure_population(), 0.7, 5) {
        let input = tls::family_member(&fam, p_in, 0.9).map_err(e)?;
        for p_out in linspace(fam.pure_population(), 0.7, 9) {
            for th in [0.0, 2.5] {
                let k = tls::gadc_kraus(&fam, p_out, th).map_err(e)?;
                defect = defect.max(k.completeness_defect());
                let out = k.apply(&input.to_density()).map_err(e)?;
                let swap = tls::swap_realization(&input, &tls::family_member(&fam, p_out, th).map_err(e)?).map_err(e)?;
                td = td.max(out.trace_distance(&swap.to_density()).map_err(e)?);
                dr = dr.max((states::ergotropy(&out, &h).map_err(e)? - fam.charge()).abs());
            }
        }
    }
    require(defect <= 1e-12 && td <= 1e-12 && dr <= 1e-12, format!("defect {defect:.2e}, td {td:.2e}, dR {dr:.2e}"))?;

    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut overshoot: f64 = 0.0;
    for _ in 0..50 {
        let fam = IsoFamilyTls::new(0.55 + 0.44 * rng.gen::<f64>(), 1.0).map_err(e)?;
        let p_out = fam.pure_population() + (fam.p_bar - fam.pure_population()) * rng.gen::<f64>();
        let (m, _) = tls::general_measurement_qmax(&fam, p_out, 2.0 * PI * rng.gen::<f64>()).map_err(e)?;
        overshoot = overshoot.max(linalg::lambda_max(&(m.adjoint() * &m)).map_err(e)? - 1.0);
    }
    require(overshoot <= 1e-12, format!("M^dag M exceeds identity by {overshoot:.2e}"))?;
    let q = tls::q_max(&fam, fam.p_bar).map_err(e)?;
    require((q - 1.0).abs() <= 1e-12, format!("q_max(p_bar) = {q}"))?;
    let (m, _) = tls::rank_one_measurement(&fam, fam.pure_population(), 0.4).map_err(e)?;
    let (_, prob) = tls::apply_measurement(&m, &fam.reference().to_density()).map_err(e)?;
    require((prob - fam.p_bar).abs() <= 1e-12, format!("rank-one success {prob}"))?;

    let gfam = IsoFamilyGaussian::new(2.0, 1.0).map_err(e)?;
    let cfg = FockOracleConfig::new(60).map_err(e)?;
    let mut sel: f64 = 0.0;
    for n in [0.0, 0.5, 1.0] {
        let s = gaussian::family_member(&gfam, 0.4, PI, n, 0.0).map_err(e)?;
        let m = gaussian::selective_measurement(&s, &gfam, 0.0);
        let rho = fock::fock_gaussian_adaptive(s.mu, s.xi(), n, &cfg).map_err(e)?;
        let phi = fock::fock_gaussian(s.mu, s.xi(), 0.0, &FockOracleConfig::new(rho.dim()).map_err(e)?).map_err(e)?;
        let fock_prob = linalg::trace(&(rho.matrix() * phi.matrix())).re;
        sel = sel.max((fock_prob - 1.0 / (n + 1.0)).abs()).max((m.success_probability - 1.0 / (n + 1.0)).abs());
    }
    require(sel <= 1e-6, format!("selective success off by {sel:.2e}"))?;
    Ok(format!("Kraus defect {defect:.1e}, channel-SWAP td {td:.1e}, dR {dr:.1e}; 50 measurements bounded; rank-one = p_bar; selective = 1/(N+1) (Fock {sel:.1e})"))
}

fn tls_dynamics_suite() -> Outcome {
    let mut worst_p: f64 = 0.0;
    let (mut drift_b, mut drift_tot): (f64, f64) = (0.0, 0.0);
    let h_ab = HamiltonianSpec::two_qubit(1.0);
    for pb in [0.6, 0.8, 0.95] {
        let cfg = TwoTlsConfig::new(pb, 1.0, 1.0, 0.3, 0.7).map_err(e)?;
        let r0_tot = states::ergotropy(&cfg.initial_joint(), &h_ab).map_err(e)?;
        for t in linspace(0.0, 2.0 * PI, 201) {
            let (b, _) = tls_dynamics::evolve(&cfg, t);
            worst_p = worst_p.max((b.matrix()[(1, 1)].re - tls_dynamics::battery_population(&cfg, t)).abs());
            drift_b = drift_b.max((states::ergotropy(&b, &HamiltonianSpec::qubit(1.0)).map_err(e)? - cfg.family.charge()).abs());
            let joint = tls_dynamics::joint_state(&cfg, t);
            drift_tot = drift_tot.max((states::ergotropy(&joint, &h_ab).map_err(e)? - r0_tot).abs());
        }
    }
    require(worst_p <= 1e-10, format!("p_B error {worst_p:.2e}"))?;
    require(drift_b <= 1e-10 && drift_tot <= 1e-10, format!("battery drift {drift_b:.2e}, total drift {drift_tot:.2e}"))?;
    let cfg = TwoTlsConfig::new(0.8, 1.0, 1.0, 0.0, 0.0).map_err(e)?;
    let times = linspace(0.0, 4.0 * cfg.period(), 400);
    let step = times[1] - times[0];
    let ts = tls_dynamics::trajectory_metrics(&cfg, &times).map_err(e)?;
    let mut periods = Vec::new();
    for col in ["R_A", "R_B_coh"] {
        let t = zero_crossing_period(&times, &ts.column(col).unwrap()).ok_or(format!("{col}: no oscillation"))?;
        require((t - PI).abs() <= step, format!("{col} period {t:.5} vs pi/eta, step {step:.4}"))?;
        periods.push(t);
    }
    Ok(format!("p_B error {worst_p:.1e}, drifts {drift_b:.1e}/{drift_tot:.1e}, periods {:.5}/{:.5} (pi, step {step:.4})", periods[0], periods[1]))
}

fn gaussian_dynamics_suite() -> Outcome {
    let cfg = TwoModeConfig::figure_default();
    let mut prop: f64 = 0.0;
    let mut surface: f64 = 0.0;
    for t in linspace(0.0, 2.0 * PI, 101) {
        prop = prop.max(gaussian_dynamics::propagate(&cfg, t).max_abs_diff(&gaussian_dynamics::propagate_expm(&cfg, t)));
        let m = gaussian_dynamics::propagate_expm(&cfg, t);
        for s in [m.battery(1.0).map_err(e)?, m.auxiliary(1.0).map_err(e)?] {
            surface = surface.max((s.ergotropy().total - 5.0).abs());
        }
    }
    require(prop <= 1e-10, format!("propagation error {prop:.2e}"))?;
    require(surface <= 1e-10, format!("off-surface by {surface:.2e}"))?;
    let times = linspace(0.0, cfg.period(), 201);
    let step = times[1] - times[0];
    let ts = gaussian_dynamics::mode_trajectory(&cfg, &times).map_err(e)?;
    let t_eq = gaussian_dynamics::equal_split_time(&ts).ok_or("no equal-split instant")?;
    require((t_eq - PI / 4.0).abs() <= step, format!("equal split at {t_eq:.5}, step {step:.4}"))?;
    Ok(format!("propagation {prop:.1e}, surface {surface:.1e}, equal split at eta t = {t_eq:.5} (pi/4 = {:.5}, step {step:.4})", PI / 4.0))
}

fn x_state_suite() -> Outcome {
    let h = HamiltonianSpec::two_qubit(1.0);
    let mut worst: f64 = 0.0;
    for q in linspace(0.0, 1.0, 101) {
        let rho = XState::new(q, 1.0).map_err(e)?.to_density();
        let r = states::ergotropy(&rho, &h).map_err(e)?;
        let inc = states::incoherent_ergotropy(&rho, &h).map_err(e)?;
        let (r_lib, inc_lib) = multicell::x_ergotropy(q, 1.0).map_err(e)?;
        worst = worst
            .max((r - (1.0 - 2.0 * q).abs()).abs())
            .max((inc - ((q - 2.0) * (q - 0.5)).abs()).abs())
            .max((r - r_lib).abs())
            .max((inc - inc_lib).abs());
        let mapped = multicell::iso_map(q, 1.0).map_err(e)?;
        let partner = XState::new(1.0 - q, 1.0).map_err(e)?.to_density();
        worst = worst.max(linalg::max_abs_diff(mapped.matrix(), partner.matrix()));
        worst = worst.max((rho.expectation(&h.matrix()).map_err(e)? - 1.0).abs());
        worst = worst.max((states::von_neumann_entropy(&rho) - states::von_neumann_entropy(&partner)).abs());
    }
    require(worst <= 1e-12, format!("max deviation {worst:.2e}"))?;
    let c1 = multicell::wootters_concurrence(&XState::new(1.0, 1.0).map_err(e)?.to_density()).map_err(e)?;
    let c0 = multicell::wootters_concurrence(&XState::new(0.0, 1.0).map_err(e)?.to_density()).map_err(e)?;
    require((c1 - 1.0).abs() <= 1e-12 && c0.abs() <= 1e-12, format!("concurrence(1) = {c1}, concurrence(0) = {c0}"))?;
    Ok(format!("101 points, max deviation {worst:.1e}; C(1) = {c1:.12}, C(0) = {c0:.1e}"))
}

fn open_system_suite() -> Outcome {
    let start = Instant::now();
    let bath = BathSpec::fermionic(1.0, 0.2).map_err(e)?;
    let fam = IsoFamilyTls::new(0.8, 1.0).map_err(e)?;
    let mut worst: f64 = 0.0;
    for p in linspace(0.6, 0.8, 5) {
        let s0 = tls::family_member(&fam, p, 1.1).map_err(e)?;
        for t in [0.3, 1.0, 3.0, 8.0] {
            let a = open_system::tls_decay(&s0, &bath, t).map_err(e)?.to_density();
            let b = open_system::tls_decay_rk4(&s0, &bath, t).map_err(e)?.to_density();
            worst = worst.max(linalg::max_abs_diff(a.matrix(), b.matrix()));
        }
    }
    let gbath = BathSpec::new(1.0, 0.3).map_err(e)?;
    let gfam = IsoFamilyGaussian::new(5.0, 1.0).map_err(e)?;
    for xi in linspace(0.0, gfam.boundary_xi(0.5), 4) {
        let s0 = gaussian::family_member(&gfam, xi, PI, 0.5, 0.2).map_err(e)?;
        for t in [0.3, 1.0, 3.0, 8.0] {
            let closed = open_system::gaussian_decay(&s0, &gbath, t).map_err(e)?.to_moments();
            for other in [
                open_system::gaussian_moment_flow(&s0.to_moments(), 1.0, &gbath, t),
                open_system::gaussian_moment_rk4(&s0.to_moments(), 1.0, &gbath, t),
            ] {
                worst = worst.max((closed.d[0] - other.d[0]).norm()).max(linalg::max_abs_diff(&closed.theta, &other.theta));
            }
        }
    }
    require(worst <= 1e-8, format!("closed form vs integrators {worst:.2e}"))?;
    let tau = open_system::tls_tau_half_inc(0.8, &bath).map_err(e)?;
    require((tau - LN_2).abs() <= 1e-12, format!("tau_half = {tau}"))?;
    let tls_hl: Vec<f64> = linspace(0.6, 0.8, 11)
        .into_iter()
        .map(|p| open_system::tls_half_life(&tls::family_member(&fam, p, 0.0)?, &bath))
        .collect::<ergokit::Result<_>>()
        .map_err(e)?;
    require(tls_hl.windows(2).all(|w| w[0] > w[1]), format!("TLS half-lives not ordered: {tls_hl:?}"))?;
    let g_hl: Vec<f64> = linspace(0.0, gfam.boundary_xi(0.5), 6)
        .into_iter()
        .map(|xi| open_system::gaussian_half_life(&gaussian::family_member(&gfam, xi, PI, 0.5, 0.0)?, &gbath))
        .collect::<ergokit::Result<_>>()
        .map_err(e)?;
    require(g_hl.windows(2).all(|w| w[0] > w[1]), format!("Gaussian half-lives not ordered: {g_hl:?}"))?;
    let secs = start.elapsed().as_secs_f64();
    require(secs < 60.0, format!("runtime {secs:.1}s"))?;
    Ok(format!(
        "integrators {worst:.1e}; tau_half = ln 2 ({:.1e}); TLS T_half {:.4}..{:.4} rising as p falls; Gaussian T_half {:.4}..{:.4} falling with |xi|; {secs:.2}s",
        (tau - LN_2).abs(),
        tls_hl[10],
        tls_hl[0],
        g_hl[0],
        g_hl[5]
    ))
}

fn charging_suite() -> Outcome {
    let a = charging::solve_alpha_t();
    require((0.735 * PI..=0.745 * PI).contains(&a), format!("alpha_T = {} pi", a / PI))?;
    let cfg = ChargingConfig::new(1.0, 1.0, 0.0, 1.0).map_err(e)?;
    let golden = charging::optimal_duration_numeric(&cfg) * cfg.epsilon;
    require((golden - a).abs() <= 1e-6, format!("golden section {golden} vs root {a}"))?;
    let mut worst: f64 = 0.0;
    for s0 in linspace(0.05, 1.0, 20) {
        let ci = charging::cone_intersection(s0).map_err(e)?;
        let fam = ci.family(1.0).map_err(e)?;
        let member = tls::family_member(&fam, ci.p, 0.0).map_err(e)?;
        let end = charging::state_at(&ChargingConfig::new(1.0, s0, 0.0, 1.0).map_err(e)?, a).map_err(e)?;
        let brute = states::ergotropy(&end.to_density(), &HamiltonianSpec::qubit(1.0)).map_err(e)?;
        worst = worst.max((member.ergotropy().total - fam.charge()).abs()).max((brute - fam.charge()).abs());
    }
    require(worst <= 1e-12, format!("cone charge deviation {worst:.2e}"))?;
    Ok(format!("alpha_T = {:.6} pi, golden section diff {:.1e}, cone charge deviation {worst:.1e}", a / PI, (golden - a).abs()))
}

fn determinism() -> Outcome {
    let bin = env!("CARGO_BIN_EXE_ergokit");
    let dir = tempfile::tempdir().map_err(|x| x.to_string())?;
    let mut checked = Vec::new();
    for s in Scenario::ALL {
        let mut outputs = Vec::new();
        for run in 0..2 {
            let path = dir.path().join(format!("{}-{run}.out", s.name()));
            let status = Command::new(bin)
                .args([s.name(), "--grid", "21", "-o"])
                .arg(&path)
                .env_remove("ERGOKIT_JOBS")
                .status()
                .map_err(|x| x.to_string())?;
            require(status.success(), format!("{} exited with {status}", s.name()))?;
            outputs.push(std::fs::read(&path).map_err(|x| x.to_string())?);
        }
        require(outputs[0] == outputs[1], format!("{} outputs differ", s.name()))?;
        checked.push(s.name());
    }
    Ok(format!("byte-identical reruns for {}", checked.join(", ")))
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("TLS ergotropy split vs brute force", tls_split_oracle),
        ("Gaussian ergotropy split vs Fock oracle", gaussian_split_oracle),
        ("family invariance", family_invariance),
        ("channel suite", channel_suite),
        ("TLS dynamics", tls_dynamics_suite),
        ("Gaussian dynamics", gaussian_dynamics_suite),
        ("X-state", x_state_suite),
        ("open system", open_system_suite),
        ("charging", charging_suite),
        ("determinism", determinism),
    ];
    let mut failed = 0;
    for (k, (name, f)) in criteria.iter().enumerate() {
        match f() {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail}", k + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {why}", k + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
