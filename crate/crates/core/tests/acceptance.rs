//! One PASS/FAIL line per acceptance criterion. Exits nonzero if any fails.

use std::f64::consts::{FRAC_1_SQRT_2, PI};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use csdiscord::discord::{discord_family, family_eigenvalues, NanoporeFamilyParams};
use csdiscord::localops::{conjugate_local, cs_to_x_params, hadamard2, x_to_cs_params};
use csdiscord::models::{
    gibbs_state, nanopore_correlations, nanopore_state, pseudopure_state, xxz_dm_hamiltonian, NanoporeSettings,
    PseudopureSettings, XxzDmCouplings,
};
use csdiscord::oracle::{discord_numeric, OracleSettings};
use csdiscord::pipeline::analytic_discord;
use csdiscord::qmat::C64;
use csdiscord::states::{cs_residual, embed_x, extract_cs, random_cs_state};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const N: u32 = 20;
const BETA: f64 = 1.0;
const SWEEP_POINTS: usize = 241;
const PATTERN_TOL: f64 = 1e-10;

type Criterion = (&'static str, fn() -> Outcome);

struct Outcome {
    pass: bool,
    detail: String,
}

fn check(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

fn sweep_grid() -> Vec<f64> {
    (0..SWEEP_POINTS).map(|k| 6.0 * k as f64 / (SWEEP_POINTS - 1) as f64).collect()
}

fn nanopore(at: f64) -> csdiscord::models::NanoporeCorrelations {
    nanopore_correlations(&NanoporeSettings::at(N, at, BETA)).unwrap()
}

fn family_q(at: f64) -> f64 {
    discord_family(&nanopore(at).family_params()).unwrap().q
}

fn map_exactness() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let h = hadamard2();
    let (mut entry, mut roundtrip) = (0.0_f64, 0.0_f64);
    for _ in 0..1000 {
        let rho = random_cs_state(&mut rng);
        let p = extract_cs(&rho, PATTERN_TOL).unwrap();
        let x = cs_to_x_params(&p);
        let image = conjugate_local(&rho, &h, &h).unwrap();
        entry = entry.max(embed_x(&x).unwrap().matrix().max_abs_diff(image.matrix()));
        let back = x_to_cs_params(&x).to_array();
        for (a, b) in back.iter().zip(p.to_array()) {
            roundtrip = roundtrip.max((a - b).abs());
        }
    }
    let elapsed = start.elapsed();
    check(
        entry <= 1e-13 && roundtrip <= 1e-14 && elapsed < Duration::from_secs(5),
        format!("entrywise {entry:.2e} (<= 1e-13), roundtrip {roundtrip:.2e} (<= 1e-14), {elapsed:.2?} (< 5s)"),
    )
}

fn discord_invariance() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let h = hadamard2();
    let settings = OracleSettings::default();
    let mut worst = 0.0_f64;
    for _ in 0..200 {
        let rho = random_cs_state(&mut rng);
        let image = conjugate_local(&rho, &h, &h).unwrap();
        let a = discord_numeric(&rho, &settings).unwrap().q;
        let b = discord_numeric(&image, &settings).unwrap().q;
        worst = worst.max((a - b).abs());
    }
    let elapsed = start.elapsed();
    check(
        worst <= 5e-6 && elapsed < Duration::from_secs(120),
        format!("max |Q(cs) - Q(x)| {worst:.2e} (<= 5e-6), {elapsed:.2?} (< 2min)"),
    )
}

fn nanopore_curve() -> Outcome {
    let start = Instant::now();
    let curve: Vec<f64> = sweep_grid().into_iter().map(family_q).collect();
    let zeros = [0.0, PI / 2.0, PI].map(family_q);
    let zero_err = zeros.iter().fold(0.0_f64, |m, q| m.max(q.abs()));
    let plateau_08 = family_q(0.8);
    let period_err = sweep_grid()
        .into_iter()
        .filter(|at| at + PI <= 6.0)
        .map(|at| (family_q(at) - family_q(at + PI)).abs())
        .fold(0.0_f64, f64::max);
    // Saturation: p = u = 0 and q = r = tanh^2(beta/2) / 8.
    let sat = 0.125 * (0.5 * BETA).tanh().powi(2);
    let bell = discord_family(&NanoporeFamilyParams::from_correlations(0.0, sat, sat, 0.0)).unwrap().q;
    let peak = curve.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let elapsed = start.elapsed();
    check(
        zero_err <= 1e-9
            && (0.008..=0.009).contains(&plateau_08)
            && period_err <= 1e-9
            && (peak - bell).abs() <= 1e-9
            && elapsed < Duration::from_secs(60),
        format!(
            "{SWEEP_POINTS} points; Q(0), Q(pi/2), Q(pi) within {zero_err:.2e} of 0; Q(0.8) = {plateau_08:.7}; \
             period error {period_err:.2e}; max {peak:.10} vs saturation {bell:.10}; {elapsed:.2?}"
        ),
    )
}

fn analytic_vs_oracle() -> Outcome {
    let start = Instant::now();
    let settings = OracleSettings::default();
    let mut worst = (0.0_f64, 0.0);
    for at in sweep_grid() {
        let c = nanopore(at);
        let analytic = discord_family(&c.family_params()).unwrap().q;
        let numeric = discord_numeric(&nanopore_state(&c).unwrap(), &settings).unwrap().q;
        let gap = (analytic - numeric).abs();
        if gap > worst.0 {
            worst = (gap, at);
        }
    }
    let elapsed = start.elapsed();
    check(
        worst.0 <= 1e-5 && elapsed < Duration::from_secs(120),
        format!("max gap {:.2e} at at = {:.3} (<= 1e-5), {elapsed:.2?} (< 2min)", worst.0, worst.1),
    )
}

fn spectrum_check() -> Outcome {
    let mut worst = 0.0_f64;
    for at in sweep_grid() {
        let c = nanopore(at);
        let mut closed = family_eigenvalues(&c.family_params());
        closed.sort_by(f64::total_cmp);
        let solved = nanopore_state(&c).unwrap().eigenvalues();
        for (a, b) in closed.iter().zip(solved) {
            worst = worst.max((a - b).abs());
        }
    }
    check(worst <= 1e-12, format!("max eigenvalue mismatch {worst:.2e} (<= 1e-12)"))
}

fn known_endpoints() -> Outcome {
    let settings = OracleSettings::default();
    let bell = |alpha: f64| {
        pseudopure_state(&PseudopureSettings {
            alpha,
            a: C64::new(FRAC_1_SQRT_2, 0.0),
            b: C64::new(0.0, 0.0),
        })
        .unwrap()
    };
    let pure = discord_numeric(&bell(1.0), &settings).unwrap().q;
    let pure_analytic = analytic_discord(&bell(1.0), PATTERN_TOL).unwrap().result.q;
    let mixed = discord_numeric(&bell(0.0), &settings).unwrap().q;
    let mut gibbs = 0.0_f64;
    for (j, jz, dx) in [(1.0, 1.0, 0.5), (-0.7, 2.0, 1.3), (0.0, 0.0, 0.0)] {
        let h = xxz_dm_hamiltonian(&XxzDmCouplings { j, jz, dx, beta: 0.0 });
        let rho = gibbs_state(&h, 0.0).unwrap();
        gibbs = gibbs.max(discord_numeric(&rho, &settings).unwrap().q.abs());
        gibbs = gibbs.max(analytic_discord(&rho, PATTERN_TOL).unwrap().result.q.abs());
    }
    check(
        (pure - 1.0).abs() <= 1e-6 && (pure_analytic - 1.0).abs() <= 1e-6 && mixed.abs() <= 1e-9 && gibbs <= 1e-9,
        format!(
            "alpha=1: oracle {pure:.9}, analytic {pure_analytic:.9}; alpha=0: {mixed:.2e}; Gibbs at beta=0: {gibbs:.2e}"
        ),
    )
}

fn structural_checks() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut ham = 0.0_f64;
    let mut gibbs = 0.0_f64;
    for _ in 0..200 {
        let c = XxzDmCouplings {
            j: rng.random_range(-2.0..2.0),
            jz: rng.random_range(-2.0..2.0),
            dx: rng.random_range(-2.0..2.0),
            beta: rng.random_range(0.0..10.0),
        };
        let h = xxz_dm_hamiltonian(&c);
        ham = ham.max(cs_residual(&h).0);
        gibbs = gibbs.max(cs_residual(gibbs_state(&h, c.beta).unwrap().matrix()).0);
    }
    let mut identity = 0.0_f64;
    for _ in 0..1000 {
        let beta = rng.random_range(0.0..10.0);
        let at = rng.random_range(0.0..6.0);
        let c = nanopore_correlations(&NanoporeSettings::at(N, at, beta)).unwrap();
        identity = identity.max((c.q + c.r - 0.25 * (0.5 * beta).tanh().powi(2)).abs());
    }
    check(
        ham <= 1e-12 && gibbs <= 1e-12 && identity <= 1e-15,
        format!("H residual {ham:.2e}, Gibbs residual {gibbs:.2e} (<= 1e-12); q + r identity {identity:.2e} (<= 1e-15)"),
    )
}

fn main() -> ExitCode {
    let criteria: [Criterion; 7] = [
        ("parameter map exactness", map_exactness),
        ("oracle discord invariance under H (x) H", discord_invariance),
        ("nanopore discord curve", nanopore_curve),
        ("analytic vs oracle along the curve", analytic_vs_oracle),
        ("closed-form spectrum", spectrum_check),
        ("known endpoints", known_endpoints),
        ("structural checks", structural_checks),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let out = run();
        let tag = if out.pass { "PASS" } else { "FAIL" };
        println!("{tag} [{}] {name}: {}", i + 1, out.detail);
        if !out.pass {
            failed += 1;
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
