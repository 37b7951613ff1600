//! Named scenarios that turn parameter maps into datasets.
//!
//! Every scenario has figure defaults, so an empty parameter map reproduces
//! the corresponding figure data. Unknown keys are rejected.

use std::collections::BTreeSet;
use std::f64::consts::PI;
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};

use crate::charging::{self, ChargingConfig};
use crate::error::{Error, Result};
use crate::gaussian::{self, IsoFamilyGaussian};
use crate::gaussian_dynamics::{self, TwoModeConfig};
use crate::multicell;
use crate::numeric::linspace;
use crate::open_system::{self, BathSpec};
use crate::series::{write_atomic, Dataset, Format, TimeSeries};
use crate::states;
use crate::tls::{self, IsoFamilyTls};
use crate::tls_dynamics::{self, TwoTlsConfig};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Scenario {
    TlsFamily,
    TlsChannel,
    TlsDynamics,
    XState,
    GaussianFamily,
    GaussianDynamics,
    Decay,
    Charging,
}

impl Scenario {
    pub const ALL: [Scenario; 8] = [
        Scenario::TlsFamily,
        Scenario::TlsChannel,
        Scenario::TlsDynamics,
        Scenario::XState,
        Scenario::GaussianFamily,
        Scenario::GaussianDynamics,
        Scenario::Decay,
        Scenario::Charging,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Scenario::TlsFamily => "tls-family",
            Scenario::TlsChannel => "tls-channel",
            Scenario::TlsDynamics => "tls-dynamics",
            Scenario::XState => "x-state",
            Scenario::GaussianFamily => "gaussian-family",
            Scenario::GaussianDynamics => "gaussian-dynamics",
            Scenario::Decay => "decay",
            Scenario::Charging => "charging",
        }
    }

    /// Charging reports a handful of scalars, so it defaults to JSON.
    pub fn default_format(self) -> Format {
        match self {
            Scenario::Charging => Format::Json,
            _ => Format::Csv,
        }
    }
}

impl fmt::Display for Scenario {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Scenario {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Scenario::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::Config(format!("unknown scenario '{s}'")))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    pub scenario: Scenario,
    #[serde(default)]
    pub parameters: Map<String, Value>,
    #[serde(default)]
    pub output: Option<PathBuf>,
    #[serde(default)]
    pub format: Option<Format>,
}

impl ScenarioConfig {
    pub fn new(scenario: Scenario) -> Self {
        Self { scenario, parameters: Map::new(), output: None, format: None }
    }

    pub fn with(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.parameters.insert(key.to_string(), value.into());
        self
    }

    pub fn from_json(text: &str) -> Result<Self> {
        if text.trim().is_empty() {
            return Err(Error::Config("empty configuration".into()));
        }
        serde_json::from_str(text).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    pub fn format(&self) -> Format {
        self.format.unwrap_or_else(|| self.scenario.default_format())
    }
}

/// Typed access to a parameter map that records which keys were read.
struct Params<'a> {
    map: &'a Map<String, Value>,
    used: BTreeSet<&'static str>,
    resolved: Map<String, Value>,
}

impl<'a> Params<'a> {
    fn new(map: &'a Map<String, Value>) -> Self {
        Self { map, used: BTreeSet::new(), resolved: Map::new() }
    }

    fn raw(&mut self, key: &'static str) -> Option<&'a Value> {
        self.used.insert(key);
        self.map.get(key)
    }

    fn f64(&mut self, key: &'static str, default: f64) -> Result<f64> {
        let v = match self.raw(key) {
            None => default,
            Some(v) => v.as_f64().filter(|x| x.is_finite()).ok_or_else(|| bad(key, "a finite number"))?,
        };
        self.resolved.insert(key.into(), json!(v));
        Ok(v)
    }

    fn usize(&mut self, key: &'static str, default: usize, min: usize) -> Result<usize> {
        let v = match self.raw(key) {
            None => default,
            Some(v) => v.as_u64().map(|x| x as usize).ok_or_else(|| bad(key, "a nonnegative integer"))?,
        };
        if v < min {
            return Err(bad(key, &format!("at least {min}")));
        }
        self.resolved.insert(key.into(), json!(v));
        Ok(v)
    }

    fn list(&mut self, key: &'static str, default: &[f64]) -> Result<Vec<f64>> {
        let v = match self.raw(key) {
            None => default.to_vec(),
            Some(Value::Array(xs)) => xs
                .iter()
                .map(|x| x.as_f64().filter(|x| x.is_finite()).ok_or_else(|| bad(key, "a list of numbers")))
                .collect::<Result<_>>()?,
            Some(v) => vec![v.as_f64().filter(|x| x.is_finite()).ok_or_else(|| bad(key, "a number or list of numbers"))?],
        };
        if v.is_empty() {
            return Err(bad(key, "nonempty"));
        }
        self.resolved.insert(key.into(), json!(v));
        Ok(v)
    }

    fn choice(&mut self, key: &'static str, default: &'static str, allowed: &[&'static str]) -> Result<&'static str> {
        let v = match self.raw(key) {
            None => default,
            Some(v) => {
                let s = v.as_str().ok_or_else(|| bad(key, "a string"))?;
                *allowed.iter().find(|a| **a == s).ok_or_else(|| bad(key, &format!("one of {}", allowed.join(", "))))?
            }
        };
        self.resolved.insert(key.into(), json!(v));
        Ok(v)
    }

    /// Rejects keys that were never read and returns the resolved map.
    fn finish(self) -> Result<Map<String, Value>> {
        if let Some(k) = self.map.keys().find(|k| !self.used.contains(k.as_str())) {
            return Err(Error::Config(format!("unknown parameter '{k}'")));
        }
        Ok(self.resolved)
    }
}

fn bad(key: &str, what: &str) -> Error {
    Error::Config(format!("parameter '{key}' must be {what}"))
}

fn t_grid(t_max: f64, n: usize) -> Result<Vec<f64>> {
    if !(t_max > 0.0) {
        return Err(Error::Config(format!("time horizon must be positive, got {t_max}")));
    }
    Ok(linspace(0.0, t_max, n))
}

/// Runs a scenario and returns its dataset. Nothing is written.
pub fn run(cfg: &ScenarioConfig) -> Result<Dataset> {
    let mut p = Params::new(&cfg.parameters);
    let (series, summary, notes) = match cfg.scenario {
        Scenario::TlsFamily => tls_family(&mut p)?,
        Scenario::TlsChannel => tls_channel(&mut p)?,
        Scenario::TlsDynamics => tls_dynamics_scenario(&mut p)?,
        Scenario::XState => x_state(&mut p)?,
        Scenario::GaussianFamily => gaussian_family(&mut p)?,
        Scenario::GaussianDynamics => gaussian_dynamics_scenario(&mut p)?,
        Scenario::Decay => decay(&mut p)?,
        Scenario::Charging => charging_scenario(&mut p)?,
    };
    let mut ds = Dataset::new(cfg.scenario.name(), p.finish()?, series);
    for (k, v) in summary {
        ds = ds.with_summary(&k, v);
    }
    for n in notes {
        ds = ds.with_note(n);
    }
    Ok(ds)
}

/// Runs a scenario, renders it and writes it atomically to `cfg.output`
/// when set. Returns the rendered text.
pub fn execute(cfg: &ScenarioConfig) -> Result<String> {
    let text = cfg.format().render(&run(cfg)?);
    if let Some(path) = &cfg.output {
        write_atomic(path, &text)?;
    }
    Ok(text)
}

type Output = (TimeSeries, Map<String, Value>, Vec<&'static str>);

fn tls_family(p: &mut Params) -> Result<Output> {
    let fam = IsoFamilyTls::new(p.f64("p_bar", 0.8)?, p.f64("omega", 1.0)?)?;
    let n = p.usize("grid", 101, 2)?;
    let pure = fam.pure_population();
    let mut ts = TimeSeries::new(&["p", "C", "R", "R_inc", "R_coh", "E", "S", "ratio", "Q_from_pure"]);
    for x in linspace(pure, fam.p_bar, n) {
        let s = tls::family_member(&fam, x, 0.0)?;
        let r = s.ergotropy();
        ts.push(vec![
            x,
            s.coherence,
            r.total,
            r.component("incoherent").unwrap_or(0.0),
            r.component("coherent").unwrap_or(0.0),
            tls::internal_energy(&s),
            tls::entropy_on_family(&fam, x)?,
            tls::charge_energy_ratio(&fam, x)?,
            tls::heat(pure, x, fam.omega),
        ])?;
    }
    let mut summary = Map::new();
    summary.insert("charge".into(), json!(fam.charge()));
    summary.insert("pure_population".into(), json!(pure));
    Ok((ts, summary, vec![]))
}

fn tls_channel(p: &mut Params) -> Result<Output> {
    let fam = IsoFamilyTls::new(p.f64("p_bar", 0.7)?, p.f64("omega", 1.0)?)?;
    let p_in = p.f64("p_in", fam.pure_population())?;
    let theta_in = p.f64("theta_in", 0.0)?;
    let theta_out = p.f64("theta_out", 0.0)?;
    let n = p.usize("grid", 51, 2)?;
    let input = tls::family_member(&fam, p_in, theta_in)?;
    let mut ts = TimeSeries::new(&["p_out", "R_out", "kraus_defect", "swap_distance", "Q", "q_max", "success_rank_one"]);
    for x in linspace(fam.pure_population(), fam.p_bar, n) {
        let target = tls::family_member(&fam, x, theta_out)?;
        let kraus = tls::gadc_kraus(&fam, x, theta_out)?;
        let out = kraus.apply(&input.to_density())?;
        let swapped = tls::swap_realization(&input, &target)?;
        let r_out = states::ergotropy(&out, &states::HamiltonianSpec::qubit(fam.omega))?;
        let rank_one = if (x - fam.pure_population()).abs() < 1e-12 {
            tls::rank_one_measurement(&fam, x, theta_out)?.1
        } else {
            f64::NAN
        };
        ts.push(vec![
            x,
            r_out,
            kraus.completeness_defect(),
            out.trace_distance(&swapped.to_density())?,
            tls::heat(p_in, x, fam.omega),
            tls::q_max(&fam, x)?,
            rank_one,
        ])?;
    }
    let mut summary = Map::new();
    summary.insert("charge".into(), json!(fam.charge()));
    summary.insert("rank_one_success".into(), json!(tls::rank_one_measurement(&fam, fam.pure_population(), theta_out)?.1));
    Ok((ts, summary, vec!["success_rank_one is defined only for the pure target"]))
}

fn tls_dynamics_scenario(p: &mut Params) -> Result<Output> {
    let cfg = TwoTlsConfig::new(
        p.f64("p_bar", 0.8)?,
        p.f64("omega", 1.0)?,
        p.f64("eta", 1.0)?,
        p.f64("theta_b", 0.0)?,
        p.f64("phi_a", 0.0)?,
    )?;
    let periods = p.f64("periods", 2.0)?;
    let times = t_grid(periods * cfg.period(), p.usize("grid", 200, 2)?)?;
    let ts = tls_dynamics::trajectory_metrics(&cfg, &times)?;
    let mut summary = Map::new();
    summary.insert("period".into(), json!(cfg.period()));
    Ok((ts, summary, vec!["R_total is computed against H_A + H_B"]))
}

fn x_state(p: &mut Params) -> Result<Output> {
    let omega = p.f64("omega", 1.0)?;
    let n = p.usize("grid", 101, 2)?;
    let mut ts = TimeSeries::new(&["q", "R", "R_inc", "R_coh", "concurrence", "R_1", "R_2", "p_1", "p_2", "S"]);
    for q in linspace(0.0, 1.0, n) {
        let (r, inc) = multicell::x_ergotropy(q, omega)?;
        let loc = multicell::local_report(q, omega)?;
        let s = multicell::XState::new(q, omega)?;
        ts.push(vec![
            q,
            r,
            inc,
            r - inc,
            multicell::concurrence(q)?,
            loc.r_1,
            loc.r_2,
            loc.p_1,
            loc.p_2,
            states::von_neumann_entropy(&s.to_density()),
        ])?;
    }
    let mut summary = Map::new();
    summary.insert("sudden_death_q".into(), json!(multicell::sudden_death_point()?));
    Ok((ts, summary, vec![]))
}

fn gaussian_family(p: &mut Params) -> Result<Output> {
    let fam = IsoFamilyGaussian::new(p.f64("mu_bar_sq", 5.0)?, p.f64("omega", 1.0)?)?;
    let n_th = p.f64("n_thermal", 0.5)?;
    let phi = p.f64("phi", PI)?;
    let n = p.usize("grid", 101, 2)?;
    if !(n_th >= 0.0) {
        return Err(Error::Config("parameter 'n_thermal' must be nonnegative".into()));
    }
    let mut ts = TimeSeries::new(&["xi", "mu_sq", "R", "R_d", "R_s", "E", "ratio", "S2"]);
    for xi in linspace(0.0, fam.boundary_xi(n_th), n) {
        let s = gaussian::family_member(&fam, xi, phi, n_th, 0.0)?;
        let r = s.ergotropy();
        let e = gaussian::internal_energy(&s);
        ts.push(vec![
            xi,
            s.mu.norm_sqr(),
            r.total,
            r.component("displacement").unwrap_or(0.0),
            r.component("squeezing").unwrap_or(0.0),
            e,
            r.total / e,
            gaussian::renyi2(&s),
        ])?;
    }
    let mut summary = Map::new();
    summary.insert("charge".into(), json!(fam.charge()));
    summary.insert("boundary_xi".into(), json!(fam.boundary_xi(n_th)));
    summary.insert("equal_split_xi".into(), json!(fam.equal_split_xi(n_th)));
    Ok((ts, summary, vec!["E excludes the vacuum energy"]))
}

fn gaussian_dynamics_scenario(p: &mut Params) -> Result<Output> {
    let d = TwoModeConfig::figure_default();
    let cfg = TwoModeConfig::new(
        p.f64("mu_bar_sq", d.family.mu_bar_sq)?,
        p.f64("omega", d.omega)?,
        p.f64("eta", d.eta)?,
        p.f64("xi", d.xi_mag)?,
        p.f64("phi", d.phi)?,
        p.f64("n_b0", d.n_b0)?,
        p.f64("n_a0", d.n_a0)?,
        p.f64("theta_b", d.theta_b)?,
    )?;
    let times = t_grid(p.f64("t_max", cfg.period())?, p.usize("grid", 201, 2)?)?;
    let ts = gaussian_dynamics::mode_trajectory(&cfg, &times)?;
    let mut summary = Map::new();
    summary.insert("period".into(), json!(cfg.period()));
    if let Some(t) = gaussian_dynamics::equal_split_time(&ts) {
        summary.insert("equal_split_time".into(), json!(t));
    }
    Ok((ts, summary, vec![]))
}

fn decay(p: &mut Params) -> Result<Output> {
    let kind = p.choice("type", "tls", &["tls", "gaussian"])?;
    let table = p.choice("table", "trajectories", &["trajectories", "half-lives"])?;
    let gamma = p.f64("gamma", 1.0)?;
    let omega = p.f64("omega", 1.0)?;
    let n_times = p.usize("grid", 200, 2)?;
    let t_max = p.f64("t_max", 5.0 / gamma)?;
    let times = t_grid(t_max, n_times)?;
    let sweep = match kind {
        "tls" => {
            let bath = BathSpec::fermionic(gamma, p.f64("n_bar", 0.2)?)?;
            let p_bars = p.list("p_bar", &[0.8])?;
            open_system::tls_decay_sweep(&p_bars, p.usize("points", 11, 2)?, omega, &bath, &times)?
        }
        _ => {
            let bath = BathSpec::new(gamma, p.f64("n_bar", 0.3)?)?;
            let fam = IsoFamilyGaussian::new(p.f64("mu_bar_sq", 5.0)?, omega)?;
            let occ = p.list("n_thermal", &[0.5])?;
            open_system::gaussian_decay_sweep(&fam, &occ, p.usize("points", 6, 2)?, p.f64("phi", PI)?, &bath, &times)?
        }
    };
    let mut summary = Map::new();
    summary.insert("half_lives".into(), json!(sweep.half_lives.column("T_half")));
    let series = if table == "half-lives" { sweep.half_lives } else { sweep.trajectories };
    Ok((series, summary, vec![]))
}

fn charging_scenario(p: &mut Params) -> Result<Output> {
    let cfg = ChargingConfig::new(p.f64("epsilon", 1.0)?, p.f64("s0", 1.0)?, p.f64("phi0", 0.0)?, p.f64("omega", 1.0)?)?;
    let n = p.usize("grid", 101, 2)?;
    let t_opt = cfg.optimal_duration();
    let ts = charging::driven_trajectory(&cfg, &linspace(0.0, t_opt, n))?;
    let alpha = charging::solve_alpha_t();
    let mut summary = Map::new();
    summary.insert("alpha_T".into(), json!(alpha));
    summary.insert("alpha_T_over_pi".into(), json!(alpha / PI));
    summary.insert("T_opt".into(), json!(t_opt));
    summary.insert("P_max".into(), json!(charging::avg_power(&cfg, t_opt)?));
    if cfg.s0 > 0.0 {
        let ci = charging::cone_intersection(cfg.s0)?;
        summary.insert("p_bar".into(), json!(ci.p_bar));
        summary.insert("p".into(), json!(ci.p));
        summary.insert("s_bar".into(), json!(ci.s_bar));
    }
    Ok((ts, summary, vec![]))
}
