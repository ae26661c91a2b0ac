//! The cross-validation suite behind `lambda-osc verify`.

use lambda_osc_core::classical::{measure_period, ClassicalState, OrbitParams};
use lambda_osc_core::factorization::{
    build_state, commutator, commutator_by_composition, factorization_check, shape_invariance_check, LadderOperator,
};
use lambda_osc_core::hermite::{
    derivative_relation_check, generating_coeffs, ode_residual, proportionality, rodrigues, series_solution,
    three_term_next,
};
use lambda_osc_core::params::max_bound_exact;
use lambda_osc_core::spectrum::{bound_count, energies, ladder_energies_exact, level_energy, level_energy_exact};
use lambda_osc_core::sturm_liouville::{convergence_order, refine};
use lambda_osc_core::wavefunction::{envelope, norm_and_overlap, WaveFunction};
use lambda_osc_core::{classify, rat, Field, LadderFunction, LamExpr, PhysicalParams, Poly, Rational, Ring};
use serde::Serialize;
use serde_json::{Map, Value};

use crate::cli::VerifyArgs;
use crate::scalar::LambdaValue;

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub check: String,
    pub parameters: Map<String, Value>,
    pub metric: f64,
    pub threshold: f64,
    pub pass: bool,
}

impl Check {
    /// Passes when `metric ≤ threshold` (NaN fails).
    pub fn at_most(check: &str, parameters: Map<String, Value>, metric: f64, threshold: f64) -> Self {
        Check {
            check: check.into(),
            parameters,
            metric,
            threshold,
            pass: metric <= threshold,
        }
    }

    /// An exact check: metric 0 on success, 1 on failure.
    pub fn exact(check: &str, parameters: Map<String, Value>, ok: bool) -> Self {
        Check {
            check: check.into(),
            parameters,
            metric: if ok { 0.0 } else { 1.0 },
            threshold: 0.0,
            pass: ok,
        }
    }

    pub fn parameters_text(&self) -> String {
        self.parameters
            .iter()
            .map(|(k, v)| match v {
                Value::String(s) => format!("{k}={s}"),
                other => format!("{k}={other}"),
            })
            .collect::<Vec<_>>()
            .join(";")
    }
}

macro_rules! params {
    ($($k:literal => $v:expr),* $(,)?) => {{
        #[allow(unused_mut)]
        let mut m = Map::new();
        $( m.insert($k.to_string(), Value::from($v)); )*
        m
    }};
}

#[derive(Clone, Debug)]
pub struct Settings {
    pub lambdas: Vec<LambdaValue>,
    pub poly_nmax: usize,
    pub generic: bool,
    pub sl_tol: f64,
    pub grid_cap: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Group {
    Polys,
    Spectrum,
    Sl,
    Gram,
    Ladder,
    Commutator,
    Residual,
    Classical,
    Continuity,
}

impl Group {
    pub const ALL: [Group; 9] = [
        Group::Polys,
        Group::Spectrum,
        Group::Sl,
        Group::Gram,
        Group::Ladder,
        Group::Commutator,
        Group::Residual,
        Group::Classical,
        Group::Continuity,
    ];
}

pub fn selected_groups(a: &VerifyArgs) -> Vec<Group> {
    let flags = [
        (a.polys || a.generic || a.poly_nmax.is_some(), Group::Polys),
        (a.spectrum, Group::Spectrum),
        (a.sl, Group::Sl),
        (a.gram, Group::Gram),
        (a.ladder, Group::Ladder),
        (a.commutator, Group::Commutator),
        (a.residual, Group::Residual),
        (a.classical, Group::Classical),
        (a.continuity, Group::Continuity),
    ];
    let chosen: Vec<Group> = flags.iter().filter(|f| f.0).map(|f| f.1).collect();
    if chosen.is_empty() {
        Group::ALL.to_vec()
    } else {
        chosen
    }
}

pub fn run(groups: &[Group], s: &Settings) -> Vec<Check> {
    let mut out = Vec::new();
    for g in groups {
        match g {
            Group::Polys => polys(s, &mut out),
            Group::Spectrum => spectrum(s, &mut out),
            Group::Sl => sl(s, &mut out),
            Group::Gram => gram(s, &mut out),
            Group::Ladder => ladder(s, &mut out),
            Group::Commutator => commutators(s, &mut out),
            Group::Residual => residuals(s, &mut out),
            Group::Classical => classical(s, &mut out),
            Group::Continuity => continuity(&mut out),
        }
    }
    out
}

fn floats_or(s: &Settings, default: &[f64]) -> Vec<f64> {
    if s.lambdas.is_empty() {
        default.to_vec()
    } else {
        s.lambdas.iter().map(LambdaValue::value).collect()
    }
}

fn exacts_or(s: &Settings, default: &[(i64, i64)]) -> Vec<Rational> {
    if s.lambdas.is_empty() {
        default.iter().map(|&(p, q)| rat(p, q)).collect()
    } else {
        s.lambdas.iter().map(|l| l.exact().clone()).collect()
    }
}

/// Whether `Λ·j = 2` for some `j < 2n`; at such Λ the Rodrigues and series
/// routes can lose degree.
fn degenerate(lambda: &Rational, n: usize) -> bool {
    (1..2 * n.max(1)).any(|j| lambda.clone() * Rational::from_i64(j as i64) == rat(2, 1))
}

fn polys(s: &Settings, out: &mut Vec<Check>) {
    let nmax = s.poly_nmax;
    if s.generic {
        let l = LamExpr::var();
        let fam = generating_coeffs(nmax, &l);
        for (n, h) in fam.iter().enumerate() {
            let p = params!("lambda" => "generic", "n" => n);
            out.push(Check::exact("poly_ode", p.clone(), ode_residual(h.poly(), n, &l).is_zero()));
            let series = series_solution(n, &l);
            out.push(Check::exact(
                "poly_series_vs_generating",
                p.clone(),
                proportionality(h.poly(), series.poly()).is_some(),
            ));
            if n >= 1 && n < nmax {
                let next = three_term_next(&fam[n], &fam[n - 1], n, &l).map(|x| x.poly() == fam[n + 1].poly());
                out.push(Check::exact("poly_three_term", p.clone(), next.unwrap_or(false)));
            }
            if n + 2 <= nmax {
                out.push(Check::exact(
                    "poly_derivative_relation",
                    p,
                    derivative_relation_check(&fam, n, &l).unwrap_or(false),
                ));
            }
        }
        return;
    }
    for l in exacts_or(s, &[(1, 5), (-1, 5), (1, 3)]) {
        let fam = generating_coeffs(nmax, &l);
        for (n, h) in fam.iter().enumerate() {
            let p = params!("lambda" => l.to_string(), "n" => n);
            out.push(Check::exact("poly_ode", p.clone(), ode_residual(h.poly(), n, &l).is_zero()));
            if degenerate(&l, n) {
                continue;
            }
            let rod = rodrigues(n, &l).map(|r| proportionality(h.poly(), r.poly()).is_some());
            out.push(Check::exact("poly_rodrigues_vs_generating", p.clone(), rod.unwrap_or(false)));
            let series = series_solution(n, &l);
            out.push(Check::exact(
                "poly_series_vs_generating",
                p.clone(),
                proportionality(h.poly(), series.poly()).is_some(),
            ));
            if n >= 1 && n < nmax {
                let next = three_term_next(&fam[n], &fam[n - 1], n, &l).map(|x| x.poly() == fam[n + 1].poly());
                out.push(Check::exact("poly_three_term", p, next.unwrap_or(false)));
            }
        }
    }
}

fn spectrum(_s: &Settings, out: &mut Vec<Check>) {
    let table: [(f64, &[f64]); 3] = [(0.8, &[0.5, 1.1]), (0.4, &[0.5, 1.3, 1.7]), (0.3, &[0.5, 1.35, 1.9, 2.15])];
    for (l, want) in table {
        let got: Vec<f64> = match energies(l, 12) {
            Ok(t) => t.bound_levels().map(|e| e.energy).collect(),
            Err(_) => Vec::new(),
        };
        let err = if got.len() == want.len() {
            got.iter().zip(want).fold(0.0_f64, |m, (a, b)| m.max((a - b).abs()))
        } else {
            f64::INFINITY
        };
        out.push(Check::at_most("spectrum_values", params!("lambda" => l), err, 1e-12));
    }
    let counts = [(1.0, 1), (2.5, 1), (0.5, 2), (0.75, 2), (1.0 / 3.0, 3), (0.45, 3), (0.25, 4), (0.3, 4), (0.15, 7)];
    for (l, n) in counts {
        out.push(Check::exact("bound_count", params!("lambda" => l, "expected" => n), bound_count(l) == Ok(n)));
    }
}

fn env_levels(lambda: f64) -> usize {
    match classify(lambda).ok().and_then(|d| d.bound_count()) {
        Some(n) => n.min(8) as usize,
        None if lambda == 0.0 => 7,
        None => 8,
    }
}

fn sl(s: &Settings, out: &mut Vec<Check>) {
    for l in floats_or(s, &[-0.3, -0.1, 0.0, 0.15, 0.3]) {
        let k = env_levels(l);
        match refine(l, k, s.sl_tol, s.grid_cap) {
            Ok(r) => {
                let err = r
                    .eigenvalues
                    .iter()
                    .enumerate()
                    .fold(0.0_f64, |m, (i, e)| m.max((e - level_energy(l, i as f64)).abs()));
                out.push(Check::at_most("sl_eigenvalues", params!("lambda" => l, "levels" => k), err, 1e-6));
            }
            Err(e) => out.push(failed("sl_eigenvalues", params!("lambda" => l, "levels" => k, "error" => e.to_string()))),
        }
        match convergence_order(l, 1, 256) {
            Ok(o) => {
                let dev = (o[0] - 2.0).abs();
                out.push(Check::at_most("sl_convergence_order", params!("lambda" => l, "order" => o[0]), dev, 0.2));
            }
            Err(e) => out.push(failed("sl_convergence_order", params!("lambda" => l, "error" => e.to_string()))),
        }
    }
}

fn failed(check: &str, parameters: Map<String, Value>) -> Check {
    Check {
        check: check.into(),
        parameters,
        metric: f64::NAN,
        threshold: 0.0,
        pass: false,
    }
}

/// Largest normalized off-diagonal overlap for `m, n ≤ min(mmax, N_Λ)`.
pub fn gram_defect(lambda: f64, mmax: u64) -> lambda_osc_core::Result<f64> {
    let top = classify(lambda)?.max_bound().map_or(mmax, |n| n.min(mmax));
    let ws: Vec<WaveFunction> = (0..=top).map(|m| WaveFunction::new(m, lambda)).collect::<Result<_, _>>()?;
    let mut worst = 0.0_f64;
    for i in 0..ws.len() {
        for j in i + 1..ws.len() {
            let o = norm_and_overlap(&ws[i], &ws[j])? / (ws[i].norm()? * ws[j].norm()?);
            worst = worst.max(o.abs());
        }
    }
    Ok(worst)
}

fn gram(s: &Settings, out: &mut Vec<Check>) {
    for l in floats_or(s, &[-0.3, -0.1, 0.1, 0.3]) {
        let p = params!("lambda" => l, "mmax" => 8);
        match gram_defect(l, 8) {
            Ok(d) => out.push(Check::at_most("gram_off_diagonal", p, d, 1e-8)),
            Err(e) => {
                let mut p = p;
                p.insert("error".into(), e.to_string().into());
                out.push(failed("gram_off_diagonal", p));
            }
        }
    }
}

/// Ten functions `z^s Q` used for operator identities.
pub fn battery(lambda: &Rational) -> Vec<LadderFunction<Rational>> {
    let specs: [((i64, i64), &[i64]); 10] = [
        ((0, 1), &[1]),
        ((1, 2), &[0, 1]),
        ((-1, 3), &[1, 0, -2]),
        ((2, 1), &[3, 1]),
        ((-5, 2), &[0, 0, 0, 1]),
        ((1, 7), &[-1, 4, 0, 2]),
        ((-3, 4), &[2, 0, 5, 0, -1]),
        ((3, 5), &[0, -6, 1]),
        ((-2, 1), &[7, 0, 0, 0, 0, 3]),
        ((5, 3), &[1, 1, 1, 1, 1, 1]),
    ];
    specs
        .iter()
        .map(|&((p, q), c)| LadderFunction::new(lambda.clone(), rat(p, q), Poly::from_ints(c)))
        .collect()
}

fn ladder(s: &Settings, out: &mut Vec<Check>) {
    for l in exacts_or(s, &[(1, 9), (-3, 10), (3, 10)]) {
        if l.is_zero() {
            continue;
        }
        let top = max_bound_exact(&l).map_or(8, |n| n.min(8));
        let fam = generating_coeffs(top as usize, &l);
        for n in 0..=top {
            let p = params!("lambda" => l.to_string(), "n" => n);
            let ok = build_state(n, &l)
                .map(|st| proportionality(fam[n as usize].poly(), st.poly()).is_some())
                .unwrap_or(false);
            out.push(Check::exact("ladder_state_proportional", p, ok));
        }
        let ground = LadderFunction::power(l.clone(), -(Rational::one() / (rat(2, 1) * l.clone())));
        let annihilated = LadderOperator::annihilation(Rational::one()).apply(&ground).is_zero();
        out.push(Check::exact("ladder_annihilates_ground", params!("lambda" => l.to_string()), annihilated));
        let e = ladder_energies_exact(&l, top);
        let energies_ok = (0..=top).all(|n| e[n as usize] == level_energy_exact(&l, n) - rat(1, 2));
        out.push(Check::exact("ladder_energies", params!("lambda" => l.to_string(), "nmax" => top), energies_ok));
        let fs = battery(&l);
        let bs: Vec<Rational> = (0..4).map(|k| Rational::one() - Rational::from_i64(k) * l.clone()).collect();
        let ok = fs.iter().all(|f| {
            bs.iter().all(|b| {
                factorization_check(b, f).unwrap_or(false) && shape_invariance_check(b, f).unwrap_or(false)
            })
        });
        out.push(Check::exact("shape_invariance_battery", params!("lambda" => l.to_string(), "functions" => fs.len()), ok));
    }
}

/// Test function for composition: a generic `z^s Q` in `f64`.
fn commutator_probe(big_lambda: f64) -> LadderFunction<f64> {
    LadderFunction::new(big_lambda, -0.7, Poly::new(vec![1.3, 0.4, 0.9, -0.2]))
}

pub fn commutator_defect(lambda: f64) -> lambda_osc_core::Result<f64> {
    let p = PhysicalParams::new(1.0, 1.0, 1.0, lambda)?;
    let g = commutator_probe(p.adim_lambda());
    let bound = classify(lambda)?.half_width();
    let mut worst = 0.0_f64;
    for i in 0..20 {
        let t = -0.95 + 1.9 * i as f64 / 19.0;
        let x = bound.map_or(3.0 * t, |a| a * t);
        let want = commutator(x, &p);
        let got = commutator_by_composition(x, &p, &g);
        worst = worst.max((want - got).abs() / want.abs().max(1e-300));
    }
    Ok(worst)
}

fn commutators(s: &Settings, out: &mut Vec<Check>) {
    for l in floats_or(s, &[-0.5, 0.5]) {
        let p = params!("lambda" => l, "points" => 20);
        match commutator_defect(l) {
            Ok(d) => out.push(Check::at_most("commutator_composition", p, d, 1e-10)),
            Err(e) => out.push(failed("commutator_composition", params!("lambda" => l, "error" => e.to_string()))),
        }
    }
    let p = PhysicalParams::new(1.3, 0.7, 0.9, 1e-12).expect("valid parameters");
    let worst = [0.0, 0.5, 2.0]
        .iter()
        .fold(0.0_f64, |m, &x| m.max((commutator(x, &p) - p.energy_unit()).abs() / p.energy_unit()));
    out.push(Check::at_most("commutator_small_lambda", params!("lambda" => 1e-12), worst, 1e-10));
}

/// Largest relative Schrödinger residual of Ψ_m over 50 points.
pub fn residual_defect(lambda: f64, m: u64) -> lambda_osc_core::Result<f64> {
    let w = WaveFunction::new(m, lambda)?;
    let a = classify(lambda)?.half_width();
    Ok((0..50)
        .map(|i| {
            let t = -0.98 + 1.96 * i as f64 / 49.0;
            let y = a.map_or(5.0 * t, |a| a * t);
            w.schrodinger_residual(y)
        })
        .fold(0.0_f64, f64::max))
}

fn residuals(s: &Settings, out: &mut Vec<Check>) {
    for l in floats_or(s, &[-0.3, -0.1, 0.0, 0.1, 0.15, 0.3]) {
        let top = classify(l).ok().and_then(|d| d.max_bound()).map_or(8, |n| n.min(8));
        for m in 0..=top {
            let p = params!("lambda" => l, "m" => m);
            match residual_defect(l, m) {
                Ok(r) => out.push(Check::at_most("schrodinger_residual", p, r, 1e-9)),
                Err(e) => out.push(failed("schrodinger_residual", params!("lambda" => l, "m" => m, "error" => e.to_string()))),
            }
        }
    }
}

fn classical(s: &Settings, out: &mut Vec<Check>) {
    for l in floats_or(s, &[-0.5, -0.1, 0.1, 0.5]) {
        for a in [0.5, 1.0] {
            let start = ClassicalState { x: a, v: 0.0, t: 0.0 };
            let exact = OrbitParams::new(a, 1.0, l, 0.0).map(|o| o.period());
            match (exact, measure_period(start, 1.0, l, 5e-4, 100)) {
                (Ok(t), Ok(m)) => {
                    let p = params!("lambda" => l, "amplitude" => a);
                    out.push(Check::at_most("classical_period", p.clone(), (m.period - t).abs() / t, 1e-4));
                    out.push(Check::at_most("classical_energy_drift", p, m.energy_drift, 1e-6));
                }
                (Err(e), _) | (_, Err(e)) => out.push(failed(
                    "classical_period",
                    params!("lambda" => l, "amplitude" => a, "error" => e.to_string()),
                )),
            }
        }
    }
}

/// Physicists' Hermite coefficients by `Hₙ₊₁ = 2yHₙ − 2nHₙ₋₁`.
pub fn hermite_table(nmax: usize) -> Vec<Vec<f64>> {
    let mut h = vec![vec![1.0], vec![0.0, 2.0]];
    for n in 1..nmax {
        let mut next = vec![0.0; n + 2];
        for (k, c) in h[n].iter().enumerate() {
            next[k + 1] += 2.0 * c;
        }
        for (k, c) in h[n - 1].iter().enumerate() {
            next[k] -= 2.0 * n as f64 * c;
        }
        h.push(next);
    }
    h.truncate(nmax + 1);
    h
}

/// Worst relative deviation from the Λ = 0 oscillator for `m ≤ 4`:
/// (polynomial coefficients, energies, wavefunction values).
pub fn continuity_defects(lambda: &Rational) -> (f64, f64, f64) {
    let l = lambda.to_f64();
    let herm = hermite_table(4);
    let fam = generating_coeffs(4, lambda);
    let mut poly = 0.0_f64;
    let mut energy = 0.0_f64;
    let mut wave = 0.0_f64;
    for m in 0..=4usize {
        let p = fam[m].poly().to_f64();
        let scale = herm[m].iter().fold(0.0_f64, |a, c| a.max(c.abs()));
        for (k, c) in herm[m].iter().enumerate() {
            poly = poly.max((p.coeff(k) - c).abs() / scale);
        }
        let e0 = m as f64 + 0.5;
        energy = energy.max((level_energy(l, m as f64) - e0).abs() / e0);
        let w = WaveFunction::new(m as u64, l).expect("finite lambda");
        let h0 = Poly::new(herm[m].clone());
        let ys: Vec<f64> = (0..41).map(|i| -4.0 + 0.2 * i as f64).collect();
        let peak = ys.iter().fold(0.0_f64, |a, &y| a.max((h0.eval_f64(y) * envelope(y, 0.0)).abs()));
        for &y in &ys {
            let want = h0.eval_f64(y) * envelope(y, 0.0);
            wave = wave.max((w.evaluate_unchecked(y) - want).abs() / peak);
        }
    }
    (poly, energy, wave)
}

fn continuity(out: &mut Vec<Check>) {
    for l in [rat(1, 1_000_000), rat(-1, 1_000_000)] {
        let (p, e, w) = continuity_defects(&l);
        let lv = l.to_f64();
        out.push(Check::at_most("continuity_polynomials", params!("lambda" => lv), p, 1e-4));
        out.push(Check::at_most("continuity_energies", params!("lambda" => lv), e, 1e-4));
        out.push(Check::at_most("continuity_wavefunctions", params!("lambda" => lv), w, 1e-4));
    }
}
