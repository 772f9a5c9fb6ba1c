use csdiscord::discord::{
    discord_family, entropy_bits, family_eigenvalues, reduced_entropy, von_neumann_entropy, NanoporeFamilyParams,
};
use csdiscord::localops::conjugate_local;
use csdiscord::models::{nanopore_correlations, nanopore_state, NanoporeSettings};
use csdiscord::oracle::{conditional_entropy_after_measurement, discord_numeric, MeasurementBasis, OracleSettings};
use csdiscord::pipeline::analytic_discord;
use csdiscord::qmat::{partial_trace, Subsystem};
use csdiscord::states::{random_cs_state, random_unitary2};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::f64::consts::PI;

fn nanopore(at: f64) -> NanoporeFamilyParams {
    nanopore_correlations(&NanoporeSettings::at(20, at, 1.0)).unwrap().family_params()
}

fn qubit_entropy_of(rho: &csdiscord::states::DensityMatrix, keep: Subsystem) -> f64 {
    let r = partial_trace(rho.matrix(), keep);
    let eig = r.herm_eig().unwrap();
    entropy_bits(&eig.values).unwrap()
}

#[test]
fn oracle_invariant_under_local_unitaries() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    let settings = OracleSettings::default();
    for _ in 0..200 {
        let rho = random_cs_state(&mut rng);
        let (ua, ub) = (random_unitary2(&mut rng), random_unitary2(&mut rng));
        let moved = conjugate_local(&rho, &ua, &ub).unwrap();
        let a = discord_numeric(&rho, &settings).unwrap().q;
        let b = discord_numeric(&moved, &settings).unwrap().q;
        assert!((a - b).abs() <= 5e-6, "{a} vs {b}");
    }
}

#[test]
fn discord_bounded_by_marginal_entropies() {
    let mut rng = ChaCha8Rng::seed_from_u64(32);
    let settings = OracleSettings::default();
    for _ in 0..100 {
        let rho = random_cs_state(&mut rng);
        let q = discord_numeric(&rho, &settings).unwrap().q;
        let bound = qubit_entropy_of(&rho, Subsystem::First).min(qubit_entropy_of(&rho, Subsystem::Second));
        assert!(q >= 0.0 && q <= bound + 1e-9, "{q} vs {bound}");
    }
}

#[test]
fn q1_is_the_z_measurement() {
    for k in 0..100 {
        let at = 6.0 * k as f64 / 99.0;
        let fam = nanopore(at);
        let rho = fam.state().unwrap();
        let res = discord_family(&fam).unwrap();
        let h = conditional_entropy_after_measurement(&rho, &MeasurementBasis::Z, Subsystem::Second);
        let z = qubit_entropy_of(&rho, Subsystem::Second) - von_neumann_entropy(&rho) + h;
        assert!((res.q1 - z).abs() <= 1e-10, "at = {at}: {} vs {z}", res.q1);
    }
}

#[test]
fn family_spectrum_matches_solver() {
    for k in 0..100 {
        let fam = nanopore(6.0 * k as f64 / 99.0);
        let mut closed = family_eigenvalues(&fam);
        closed.sort_by(f64::total_cmp);
        let solved = fam.state().unwrap().eigenvalues();
        for (a, b) in closed.iter().zip(solved) {
            assert!((a - b).abs() <= 1e-12);
        }
    }
}

#[test]
fn nanopore_discord_has_period_pi() {
    for k in 0..50 {
        let at = 3.0 * k as f64 / 49.0;
        let a = discord_family(&nanopore(at)).unwrap().q;
        let b = discord_family(&nanopore(at + PI)).unwrap().q;
        assert!((a - b).abs() <= 1e-9);
    }
}

#[test]
fn reduced_entropy_matches_partial_trace() {
    let p = 0.5 * 0.5_f64.tanh();
    let rho = NanoporeFamilyParams::from_correlations(p, 0.0, 0.0, 0.0).state().unwrap();
    let want = reduced_entropy(p).unwrap();
    for keep in [Subsystem::First, Subsystem::Second] {
        assert!((qubit_entropy_of(&rho, keep) - want).abs() <= 1e-14);
    }
}

#[test]
fn pipeline_on_nanopore_matrix() {
    // The raw nanopore matrix goes through the CS route and lands on the
    // same discord as the family formula.
    for at in [0.0, 0.3, 0.8, 1.7, 2.9] {
        let c = nanopore_correlations(&NanoporeSettings::at(20, at, 1.0)).unwrap();
        let rho = nanopore_state(&c).unwrap();
        let via_pipeline = analytic_discord(&rho, 1e-10).unwrap().result.q;
        let direct = discord_family(&c.family_params()).unwrap().q;
        assert!((via_pipeline - direct).abs() <= 1e-12, "at = {at}");
    }
}

#[test]
fn nanopore_discord_is_two_sided() {
    // The nanopore state is symmetric under exchange of the two spins, so
    // measuring either one gives the same discord.
    let second = OracleSettings::default();
    let first = OracleSettings { measured: Subsystem::First, ..second };
    for at in [0.2, 0.8, 1.3] {
        let c = nanopore_correlations(&NanoporeSettings::at(20, at, 1.0)).unwrap();
        let rho = nanopore_state(&c).unwrap();
        let a = discord_numeric(&rho, &first).unwrap().q;
        let b = discord_numeric(&rho, &second).unwrap().q;
        assert!((a - b).abs() <= 1e-8, "{a} vs {b}");
    }
}
