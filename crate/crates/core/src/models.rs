//! Generators for three physical families of centrosymmetric two-qubit states.

use num_complex::Complex64;
use serde::Serialize;

use crate::discord::NanoporeFamilyParams;
use crate::error::{Error, Result};
use crate::qmat::{CMat4, C64};
use crate::states::DensityMatrix;

/// Couplings of the two-spin XXZ chain with a Dzyaloshinsky-Moriya vector
/// along x.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct XxzDmCouplings {
    pub j: f64,
    pub jz: f64,
    pub dx: f64,
    /// Inverse temperature.
    pub beta: f64,
}

/// `J(sx sx + sy sy) + Jz sz sz + Dx(sy sz - sz sy)` written out in the
/// computational basis.
pub fn xxz_dm_hamiltonian(c: &XxzDmCouplings) -> CMat4 {
    let r = |x: f64| C64::new(x, 0.0);
    let i = |x: f64| C64::new(0.0, x);
    let z = r(0.0);
    let (j, jz, d) = (c.j, c.jz, c.dx);
    CMat4::new([
        [r(jz), i(d), i(-d), z],
        [i(-d), r(-jz), r(2.0 * j), i(d)],
        [i(d), r(2.0 * j), r(-jz), i(-d)],
        [z, i(-d), i(d), r(jz)],
    ])
}

/// `exp(-beta H) / tr exp(-beta H)`, computed as `exp(-beta (H - lambda_min))`
/// so the largest Boltzmann weight is exactly 1.
pub fn gibbs_state(h: &CMat4, beta: f64) -> Result<DensityMatrix> {
    if !(beta.is_finite() && beta >= 0.0) {
        return Err(Error::InvalidParameter(format!("beta must be finite and >= 0, got {beta}")));
    }
    let eig = h.herm_eig()?;
    let ground = eig.values[0];
    let weights = eig.values.map(|e| (-beta * (e - ground)).exp());
    let z: f64 = weights.iter().sum();
    let m = eig.rebuild_with(&weights.map(|w| w / z));
    DensityMatrix::new(m.hermitian_part())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NanoporeSettings {
    /// Number of particles in the pore.
    pub n: u32,
    /// Normalized coupling constant.
    pub a: f64,
    pub t: f64,
    /// Inverse dimensionless temperature.
    pub beta: f64,
}

impl NanoporeSettings {
    /// Settings with `a = 1`, so `t` is the dimensionless time `at`.
    pub fn at(n: u32, at: f64, beta: f64) -> Self {
        NanoporeSettings { n, a: 1.0, t: at, beta }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n < 3 {
            return Err(Error::InvalidParameter(format!("nanopore needs N >= 3, got {}", self.n)));
        }
        if !self.t.is_finite() || self.t < 0.0 {
            return Err(Error::InvalidParameter(format!("time must be finite and >= 0, got {}", self.t)));
        }
        if !self.a.is_finite() || !self.beta.is_finite() {
            return Err(Error::InvalidParameter("a and beta must be finite".into()));
        }
        Ok(())
    }
}

/// Two-spin correlation functions of the nanopore model.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NanoporeCorrelations {
    pub p: f64,
    pub q: f64,
    pub r: f64,
    pub u: f64,
}

impl NanoporeCorrelations {
    /// The phase-reduced real X form, with `phi = -atan2(2u, r) / 2`.
    pub fn family_params(&self) -> NanoporeFamilyParams {
        NanoporeFamilyParams::from_correlations(self.p, self.q, self.r, self.u)
    }
}

/// ```text
/// p = tanh(beta/2) cos^(N-1)(at) / 2
/// q = tanh^2(beta/2) [1 + cos^(N-2)(2at)] / 8
/// r = tanh^2(beta/2) [1 - cos^(N-2)(2at)] / 8
/// u = tanh(beta/2) cos^(N-2)(at) sin(at) / 4
/// ```
pub fn nanopore_correlations(s: &NanoporeSettings) -> Result<NanoporeCorrelations> {
    s.validate()?;
    let th = (0.5 * s.beta).tanh();
    let at = s.a * s.t;
    let (sin, cos) = at.sin_cos();
    let cos2 = (2.0 * at).cos();
    // Integer powers keep the sign of odd powers of a negative cosine.
    let n = s.n as i32;
    let echo = cos2.powi(n - 2);
    Ok(NanoporeCorrelations {
        p: 0.5 * th * cos.powi(n - 1),
        q: 0.125 * th * th * (1.0 + echo),
        r: 0.125 * th * th * (1.0 - echo),
        u: 0.25 * th * cos.powi(n - 2) * sin,
    })
}

/// The centrosymmetric reduced state of two spins in the pore.
pub fn nanopore_state(c: &NanoporeCorrelations) -> Result<DensityMatrix> {
    let d = C64::new(0.25, 0.0);
    let a = C64::new(0.5 * c.p, -c.u);
    let b = a.conj();
    let outer = C64::new(c.q - c.r, 0.0);
    let inner = C64::new(c.q + c.r, 0.0);
    DensityMatrix::new(CMat4::new([
        [d, a, a, outer],
        [b, d, inner, b],
        [b, inner, d, b],
        [outer, a, a, d],
    ]))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PseudopureSettings {
    /// Weight of the pure component.
    pub alpha: f64,
    pub a: Complex64,
    pub b: Complex64,
}

/// Normalization tolerance on `|a|^2 + |b|^2 = 1/2`.
pub const PSEUDOPURE_NORM_TOL: f64 = 1e-12;

/// `alpha |psi><psi| + (1 - alpha) I / 4` with
/// `|psi> = a(|00> + |11>) + b(|01> + |10>)`.
pub fn pseudopure_state(s: &PseudopureSettings) -> Result<DensityMatrix> {
    if !(0.0..=1.0).contains(&s.alpha) {
        return Err(Error::InvalidParameter(format!("alpha must lie in [0, 1], got {}", s.alpha)));
    }
    let norm = s.a.norm_sqr() + s.b.norm_sqr();
    if (norm - 0.5).abs() > PSEUDOPURE_NORM_TOL {
        return Err(Error::InvalidParameter(format!("|a|^2 + |b|^2 = {norm}, expected 1/2")));
    }
    let psi = [s.a, s.b, s.b, s.a];
    let pure = CMat4::from_fn(|i, j| psi[i] * psi[j].conj());
    let m = pure * s.alpha + CMat4::identity() * (0.25 * (1.0 - s.alpha));
    DensityMatrix::new(m)
}
