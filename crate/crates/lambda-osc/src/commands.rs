//! Subcommand implementations. Each produces a [`Rendered`] value that the
//! caller writes in the requested format.

use std::fmt;
use std::io::{self, Write};

use lambda_osc_core::classical::{energy, integrate, measure_period, ClassicalState, OrbitParams};
use lambda_osc_core::factorization::{build_state, chain_b, remainder};
use lambda_osc_core::hermite::{generating_coeffs, proportionality, rodrigues, series_solution};
use lambda_osc_core::params::max_bound_exact;
use lambda_osc_core::spectrum::{energies, ladder_energies_exact, level_energy, level_energy_exact, spacing};
use lambda_osc_core::sturm_liouville::{refine_with, DEFAULT_GRID_CAP};
use lambda_osc_core::wavefunction::{norm_and_overlap, WaveFunction};
use lambda_osc_core::{classify, rat, LamExpr, LambdaPoly, Rational, Ring};
use serde::Serialize;

use crate::cli::*;
use crate::output::{write_json, Cell, Table};
use crate::scalar::LambdaValue;
use crate::verify::{self, Check, Settings};

pub const GRID_CAP_ENV: &str = "LAMBDA_OSC_GRID_CAP";
pub const DEFAULT_SL_TOL: f64 = 1e-7;

#[derive(Debug)]
pub enum AppError {
    Core(lambda_osc_core::Error),
    Io(io::Error),
    Usage(String),
}

impl fmt::Display for AppError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AppError::Core(e) => write!(f, "{e}"),
            AppError::Io(e) => write!(f, "i/o error: {e}"),
            AppError::Usage(s) => f.write_str(s),
        }
    }
}

impl std::error::Error for AppError {}

impl From<lambda_osc_core::Error> for AppError {
    fn from(e: lambda_osc_core::Error) -> Self {
        AppError::Core(e)
    }
}

impl From<io::Error> for AppError {
    fn from(e: io::Error) -> Self {
        AppError::Io(e)
    }
}

pub type AppResult<T> = Result<T, AppError>;

#[derive(Clone, Debug, Serialize)]
pub struct PolyRecord {
    pub n: usize,
    pub normalization: &'static str,
    pub lambda: String,
    pub coeffs: Vec<String>,
}

#[derive(Clone, Debug)]
pub enum Rendered {
    Table(Table),
    Polys(Vec<PolyRecord>),
    Checks(Vec<Check>),
}

impl Rendered {
    /// False when any check in a report failed.
    pub fn passed(&self) -> bool {
        match self {
            Rendered::Checks(c) => c.iter().all(|c| c.pass),
            _ => true,
        }
    }

    fn default_format(&self) -> Format {
        match self {
            Rendered::Table(_) => Format::Csv,
            Rendered::Polys(_) => Format::Text,
            Rendered::Checks(_) => Format::Json,
        }
    }

    pub fn write<W: Write>(&self, format: Option<Format>, mut out: W) -> io::Result<()> {
        let format = format.unwrap_or_else(|| self.default_format());
        match (self, format) {
            (Rendered::Table(t), Format::Csv) => t.write_csv(out),
            (Rendered::Table(t), Format::Json) => t.write_json(out),
            (Rendered::Table(t), Format::Text) => out.write_all(t.to_text().as_bytes()),
            (Rendered::Polys(p), Format::Json) => write_json(out, p),
            (Rendered::Polys(p), Format::Text) => {
                for r in p {
                    writeln!(out, "n = {} [{}, lambda = {}]", r.n, r.normalization, r.lambda)?;
                    writeln!(out, "  {}", poly_text(&r.coeffs))?;
                }
                Ok(())
            }
            (Rendered::Polys(p), Format::Csv) => poly_table(p).write_csv(out),
            (Rendered::Checks(c), Format::Json) => write_json(out, c),
            (Rendered::Checks(c), Format::Csv) => check_table(c).write_csv(out),
            (Rendered::Checks(c), Format::Text) => out.write_all(check_table(c).to_text().as_bytes()),
        }
    }
}

fn poly_text(coeffs: &[String]) -> String {
    let mut terms = Vec::new();
    for (k, c) in coeffs.iter().enumerate().rev() {
        if c == "0" {
            continue;
        }
        let c = if c.contains(' ') { format!("({c})") } else { c.clone() };
        terms.push(match k {
            0 => c,
            1 => format!("{c}*y"),
            _ => format!("{c}*y^{k}"),
        });
    }
    let mut out = String::new();
    for (i, t) in terms.iter().enumerate() {
        match (i, t.strip_prefix('-')) {
            (0, _) => out.push_str(t),
            (_, Some(rest)) => out.push_str(&format!(" - {rest}")),
            (_, None) => out.push_str(&format!(" + {t}")),
        }
    }
    if out.is_empty() {
        "0".into()
    } else {
        out
    }
}

fn poly_table(p: &[PolyRecord]) -> Table {
    let mut t = Table::new(&["n", "normalization", "lambda", "power", "coeff"]);
    for r in p {
        for (k, c) in r.coeffs.iter().enumerate() {
            t.push(vec![r.n.into(), r.normalization.into(), r.lambda.as_str().into(), k.into(), c.as_str().into()]);
        }
    }
    t
}

fn check_table(c: &[Check]) -> Table {
    let mut t = Table::new(&["check", "parameters", "metric", "threshold", "pass"]);
    for c in c {
        t.push(vec![
            c.check.as_str().into(),
            c.parameters_text().into(),
            c.metric.into(),
            c.threshold.into(),
            c.pass.into(),
        ]);
    }
    t
}

pub fn run(cli: &Cli) -> AppResult<Rendered> {
    let g = &cli.global;
    match &cli.command {
        Command::Spectrum(a) => spectrum(g, a),
        Command::Potential(a) => potential(g, a),
        Command::Polys(a) => polys(g, a),
        Command::Wavefn(a) => wavefn(g, a),
        Command::Gram(a) => gram(g, a),
        Command::Sl(a) => sl(g, a),
        Command::Ladder(a) => ladder(g, a),
        Command::Classical(a) => classical(g, a),
        Command::Verify(a) => Ok(Rendered::Checks(verify::run(&verify::selected_groups(a), &verify_settings(g, a)?))),
    }
}

fn lambdas_or(g: &GlobalArgs, default: &[&str]) -> Vec<LambdaValue> {
    if g.lambda.is_empty() {
        default.iter().map(|s| s.parse().expect("valid default")).collect()
    } else {
        g.lambda.clone()
    }
}

pub fn grid_cap(explicit: Option<usize>) -> AppResult<usize> {
    if let Some(c) = explicit {
        return Ok(c);
    }
    match std::env::var(GRID_CAP_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| AppError::Usage(format!("{GRID_CAP_ENV} must be a positive integer, got `{v}`"))),
        Err(_) => Ok(DEFAULT_GRID_CAP),
    }
}

fn verify_settings(g: &GlobalArgs, a: &VerifyArgs) -> AppResult<Settings> {
    Ok(Settings {
        lambdas: g.lambda.clone(),
        poly_nmax: a.poly_nmax.unwrap_or(6),
        generic: a.generic,
        sl_tol: g.tol.unwrap_or(DEFAULT_SL_TOL),
        grid_cap: grid_cap(None)?,
    })
}

fn spectrum(g: &GlobalArgs, a: &SpectrumArgs) -> AppResult<Rendered> {
    if a.figure3 || a.figure4 {
        return Ok(Rendered::Table(figure_curves(a)?));
    }
    let mut t = Table::new(&["lambda", "m", "e_m", "spacing", "bound"]);
    for l in lambdas_or(g, &["0.8", "0.4", "0.3"]) {
        let d = classify(l.value())?;
        let mmax = a.mmax.unwrap_or_else(|| d.max_bound().unwrap_or(5));
        for lev in energies(l.value(), mmax)?.levels() {
            t.push(vec![
                l.value().into(),
                lev.m.into(),
                lev.energy.into(),
                spacing(l.value(), lev.m).into(),
                lev.bound.into(),
            ]);
        }
    }
    Ok(Rendered::Table(t))
}

/// Continuous `e(m)` curves with the discrete levels marked.
fn figure_curves(a: &SpectrumArgs) -> AppResult<Table> {
    let mut t = Table::new(&["series", "lambda", "m", "e_m", "bound"]);
    let samples = a.samples.max(2);
    let curve = |t: &mut Table, name: &str, l: f64, top: f64| {
        for i in 0..samples {
            let m = top * i as f64 / (samples - 1) as f64;
            t.push(vec![name.into(), l.into(), m.into(), level_energy(l, m).into(), Cell::Empty]);
        }
    };
    if a.figure3 {
        for l in [0.30, 0.15] {
            curve(&mut t, "curve", l, 1.0 / l);
            for lev in energies(l, classify(l)?.max_bound().unwrap_or(0))?.levels() {
                t.push(vec!["level".into(), l.into(), (lev.m as f64).into(), lev.energy.into(), lev.bound.into()]);
            }
        }
    } else {
        let top = 1.0 / 0.3;
        curve(&mut t, "curve", 0.30, top);
        curve(&mut t, "curve", -0.30, top);
        curve(&mut t, "linear", 0.0, top);
    }
    Ok(t)
}

fn potential(g: &GlobalArgs, a: &PotentialArgs) -> AppResult<Rendered> {
    let mut t = Table::new(&["lambda", "x", "V", "asymptote"]);
    let n = a.samples.max(2);
    for l in lambdas_or(g, &["-2", "-1", "1", "2"]) {
        let lv = l.value();
        let d = classify(lv)?;
        let asym = (lv > 0.0).then(|| a.alpha * a.alpha / (2.0 * lv));
        for i in 0..n {
            // open domain for λ < 0: cell midpoints stay off the walls
            let x = match d.half_width() {
                Some(w) => w * (-1.0 + (2 * i + 1) as f64 / n as f64),
                None => a.xmax * (-1.0 + 2.0 * i as f64 / (n - 1) as f64),
            };
            let v = 0.5 * a.alpha * a.alpha * x * x / (1.0 + lv * x * x);
            t.push(vec![lv.into(), x.into(), v.into(), asym.into()]);
        }
    }
    Ok(Rendered::Table(t))
}

fn records<C: Ring + fmt::Display>(fam: &[LambdaPoly<C>], lambda: &str) -> Vec<PolyRecord> {
    fam.iter()
        .map(|p| PolyRecord {
            n: p.n(),
            normalization: p.normalization().as_str(),
            lambda: lambda.into(),
            coeffs: (0..=p.degree().unwrap_or(0)).map(|k| p.poly().coeff(k).to_string()).collect(),
        })
        .collect()
}

fn polys(g: &GlobalArgs, a: &PolysArgs) -> AppResult<Rendered> {
    if a.ratios {
        let mut t = Table::new(&["lambda", "n", "ratio"]);
        for l in lambdas_or(g, &["1/5", "-1/5", "1/3"]) {
            let fam = generating_coeffs(a.nmax, l.exact());
            for (n, h) in fam.iter().enumerate() {
                let r = rodrigues(n, l.exact())?;
                let ratio = proportionality(r.poly(), h.poly()).map(|c| c.to_string());
                t.push(vec![l.exact().to_string().into(), n.into(), ratio.into()]);
            }
        }
        return Ok(Rendered::Table(t));
    }
    let generic = a.generic || (g.lambda.is_empty() && a.normalization != NormalizationArg::Rodrigues);
    if generic {
        let l = LamExpr::var();
        let fam: Vec<LambdaPoly<LamExpr>> = match a.normalization {
            NormalizationArg::Generating => generating_coeffs(a.nmax, &l),
            NormalizationArg::Series => (0..=a.nmax).map(|n| series_solution(n, &l)).collect(),
            NormalizationArg::Rodrigues => {
                return Err(AppError::Usage("rodrigues normalization needs a fixed --lambda".into()))
            }
        };
        return Ok(Rendered::Polys(records(&fam, "generic")));
    }
    let mut out = Vec::new();
    for l in lambdas_or(g, &["1/5", "-1/5", "1/3"]) {
        let lam = l.exact();
        let fam: Vec<LambdaPoly<Rational>> = match a.normalization {
            NormalizationArg::Generating => generating_coeffs(a.nmax, lam),
            NormalizationArg::Series => (0..=a.nmax).map(|n| series_solution(n, lam)).collect(),
            NormalizationArg::Rodrigues => (0..=a.nmax).map(|n| rodrigues(n, lam)).collect::<Result<_, _>>()?,
        };
        out.extend(records(&fam, &lam.to_string()));
    }
    Ok(Rendered::Polys(out))
}

fn y_grid(lambda: f64, ymax: f64, n: usize) -> AppResult<Vec<f64>> {
    let n = n.max(2);
    Ok(match classify(lambda)?.half_width() {
        Some(w) => (0..n).map(|i| w * (-1.0 + (2 * i + 1) as f64 / n as f64)).collect(),
        None => (0..n).map(|i| ymax * (-1.0 + 2.0 * i as f64 / (n - 1) as f64)).collect(),
    })
}

fn default_levels(lambda: f64, cap: u64) -> AppResult<Vec<u64>> {
    let top = classify(lambda)?.max_bound().map_or(cap, |n| n.min(cap));
    Ok((0..=top).collect())
}

fn wavefn(g: &GlobalArgs, a: &WavefnArgs) -> AppResult<Rendered> {
    let mut t = Table::new(&["lambda", "m", "y", "psi"]);
    for l in lambdas_or(g, &["0.3"]) {
        let lv = l.value();
        let ms = if a.m.is_empty() { default_levels(lv, 4)? } else { a.m.clone() };
        let ys = y_grid(lv, a.ymax, a.samples)?;
        for m in ms {
            let w = WaveFunction::new(m, lv)?;
            for &y in &ys {
                let v = if a.normalized { w.evaluate_normalized(y)? } else { w.evaluate(y)? };
                t.push(vec![lv.into(), m.into(), y.into(), v.into()]);
            }
        }
    }
    Ok(Rendered::Table(t))
}

fn gram(g: &GlobalArgs, a: &GramArgs) -> AppResult<Rendered> {
    let mut t = Table::new(&["lambda", "m", "n", "overlap"]);
    for l in lambdas_or(g, &["-0.3", "-0.1", "0.1", "0.3"]) {
        let lv = l.value();
        let ws: Vec<WaveFunction> = default_levels(lv, a.mmax)?
            .into_iter()
            .map(|m| WaveFunction::new(m, lv))
            .collect::<Result<_, _>>()?;
        for (i, wi) in ws.iter().enumerate() {
            for wj in &ws[i..] {
                let o = norm_and_overlap(wi, wj)? / (wi.norm()? * wj.norm()?);
                t.push(vec![lv.into(), wi.m().into(), wj.m().into(), o.into()]);
            }
        }
    }
    Ok(Rendered::Table(t))
}

fn sl(g: &GlobalArgs, a: &SlArgs) -> AppResult<Rendered> {
    let cap = grid_cap(a.grid_cap)?;
    let tol = g.tol.unwrap_or(DEFAULT_SL_TOL);
    let mut t = Table::new(&["lambda", "grid", "m", "eigenvalue", "extrapolated", "error_estimate", "exact", "abs_error"]);
    for l in lambdas_or(g, &["-0.3", "-0.1", "0", "0.15", "0.3"]) {
        let lv = l.value();
        let d = classify(lv)?;
        let k = a.levels.unwrap_or_else(|| d.bound_count().map_or(8, |n| n.min(8)) as usize);
        let r = refine_with(lv, k, tol, cap, a.half_width)?;
        for lev in &r.levels {
            for m in 0..k {
                let exact = level_energy(lv, m as f64);
                t.push(vec![
                    lv.into(),
                    lev.grid.into(),
                    m.into(),
                    lev.eigenvalues[m].into(),
                    lev.extrapolated[m].into(),
                    lev.error.into(),
                    exact.into(),
                    (lev.extrapolated[m] - exact).abs().into(),
                ]);
            }
        }
    }
    Ok(Rendered::Table(t))
}

fn ladder(g: &GlobalArgs, a: &LadderArgs) -> AppResult<Rendered> {
    let mut t = Table::new(&["lambda", "n", "b_n", "remainder", "energy_ladder", "energy_closed_form", "energy_match", "state_matches"]);
    for l in lambdas_or(g, &["3/10"]) {
        let lam = l.exact();
        if lam.is_zero() {
            return Err(AppError::Core(lambda_osc_core::Error::ZeroLambda));
        }
        let top = a.nmax.unwrap_or_else(|| max_bound_exact(lam).map_or(8, |n| n.min(8)));
        let e = ladder_energies_exact(lam, top);
        let fam = generating_coeffs(top as usize, lam);
        for n in 0..=top {
            let closed = level_energy_exact(lam, n) - rat(1, 2);
            let b = chain_b(n, lam);
            let state = match build_state(n, lam) {
                Ok(s) => Cell::Bool(proportionality(fam[n as usize].poly(), s.poly()).is_some()),
                Err(_) => Cell::Empty,
            };
            t.push(vec![
                lam.to_string().into(),
                n.into(),
                b.to_string().into(),
                remainder(&b, lam).to_string().into(),
                e[n as usize].to_string().into(),
                closed.to_string().into(),
                (e[n as usize] == closed).into(),
                state,
            ]);
        }
    }
    Ok(Rendered::Table(t))
}

fn classical(g: &GlobalArgs, a: &ClassicalArgs) -> AppResult<Rendered> {
    let ls = lambdas_or(g, &["-0.5", "-0.1", "0.1", "0.5"]);
    let amps = if a.amplitude.is_empty() { vec![0.5, 1.0] } else { a.amplitude.clone() };
    if a.trajectory {
        let (l, amp) = (ls[0].value(), amps[0]);
        let s0 = ClassicalState { x: amp, v: 0.0, t: 0.0 };
        let tr = integrate(s0, a.alpha, l, a.duration, a.step)?;
        let mut t = Table::new(&["t", "x", "v", "E"]);
        for s in tr.iter().step_by(a.stride.max(1)) {
            t.push(vec![s.t.into(), s.x.into(), s.v.into(), energy(s, a.alpha, l).into()]);
        }
        return Ok(Rendered::Table(t));
    }
    let mut t = Table::new(&["lambda", "amplitude", "alpha", "period", "period_exact", "rel_error", "energy_drift"]);
    for l in &ls {
        let lv = l.value();
        for &amp in &amps {
            let exact = OrbitParams::new(amp, a.alpha, lv, 0.0)?.period();
            let s0 = ClassicalState { x: amp, v: 0.0, t: 0.0 };
            let m = measure_period(s0, a.alpha, lv, a.step, a.periods)?;
            t.push(vec![
                lv.into(),
                amp.into(),
                a.alpha.into(),
                m.period.into(),
                exact.into(),
                ((m.period - exact).abs() / exact).into(),
                m.energy_drift.into(),
            ]);
        }
    }
    Ok(Rendered::Table(t))
}

