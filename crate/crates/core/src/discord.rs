//! Entropies and the closed-form discord of real X states with equal middle
//! diagonals, the shape every nanopore state reaches after the Hadamard
//! bridge and phase reduction.
//!
//! All entropies are in bits and use `0 log 0 = 0`.

use std::f64::consts::FRAC_PI_4;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::qmat::{eigvals_herm2, Subsystem};
use crate::states::{DensityMatrix, XParams, EIGEN_CLAMP};

/// Width of the window below zero in which a discord value is treated as 0.
pub const DISCORD_CLAMP: f64 = 1e-9;

/// Tolerance on `sum(lambda) = 1` for [`entropy_bits`].
pub const NORMALIZATION_TOL: f64 = 1e-9;

fn xlog2x(x: f64) -> f64 {
    if x <= 0.0 {
        0.0
    } else {
        x * x.log2()
    }
}

/// Shannon entropy in bits of a probability vector (typically a spectrum).
pub fn entropy_bits(values: &[f64]) -> Result<f64> {
    let mut total = 0.0;
    let mut h = 0.0;
    for &v in values {
        if v < -EIGEN_CLAMP {
            return Err(Error::NegativeEigenvalue { eigenvalue: v });
        }
        total += v;
        h -= xlog2x(v);
    }
    if (total - 1.0).abs() > NORMALIZATION_TOL {
        return Err(Error::InvalidParameter(format!("probabilities sum to {total}, expected 1")));
    }
    Ok(h)
}

/// Binary entropy of `(1/2 + p, 1/2 - p)`: the entropy of either marginal of
/// a family state.
pub fn reduced_entropy(p: f64) -> Result<f64> {
    if p.is_nan() || p.abs() > 0.5 {
        return Err(Error::DomainError { eigenvalue: p });
    }
    Ok(-xlog2x(0.5 + p) - xlog2x(0.5 - p))
}

/// Von Neumann entropy of a validated state, in bits.
pub fn von_neumann_entropy(rho: &DensityMatrix) -> f64 {
    entropy_bits(&rho.eigenvalues()).expect("validated state has a valid spectrum")
}

/// `S(rho_A) + S(rho_B) - S(rho)`.
pub fn mutual_information(rho: &DensityMatrix) -> f64 {
    let sa = qubit_entropy(&rho.reduced(Subsystem::First));
    let sb = qubit_entropy(&rho.reduced(Subsystem::Second));
    sa + sb - von_neumann_entropy(rho)
}

pub(crate) fn qubit_entropy(m: &crate::qmat::CMat2) -> f64 {
    let [l0, l1] = eigvals_herm2(m);
    -xlog2x(l0) - xlog2x(l1)
}

/// Family of phase-reduced real X states
///
/// ```text
/// [ 1/4+p+q   0       0       off     ]
/// [ 0         1/4-q   r       0       ]
/// [ 0         r       1/4-q   0       ]
/// [ off       0       0       1/4-p+q ]
/// ```
///
/// with `off = 2u sin(2 phi) - r cos(2 phi)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NanoporeFamilyParams {
    pub p: f64,
    pub q: f64,
    pub r: f64,
    pub u: f64,
    pub phi: f64,
}

impl NanoporeFamilyParams {
    /// Correlations `(p, q, r, u)` with the reduction angle
    /// `phi = -atan2(2u, r) / 2`.
    pub fn from_correlations(p: f64, q: f64, r: f64, u: f64) -> Self {
        let phi = -0.5 * (2.0 * u).atan2(r);
        NanoporeFamilyParams { p, q, r, u, phi }
    }

    /// Reads a real X state with `q2 = q3` into the family. The outer
    /// coherence is carried by `u` at `phi = pi/4`.
    pub fn from_real_x(x: &XParams, tol: f64) -> Result<Self> {
        if x.q5.abs() > tol || x.q7.abs() > tol {
            return Err(Error::AnalyticNotApplicable(format!(
                "X state is not real (q5 = {:e}, q7 = {:e})",
                x.q5, x.q7
            )));
        }
        if (x.q2 - x.q3).abs() > tol {
            return Err(Error::AnalyticNotApplicable(format!(
                "middle diagonals differ (q2 - q3 = {:e})",
                x.q2 - x.q3
            )));
        }
        let middle = 0.5 * (x.q2 + x.q3);
        Ok(NanoporeFamilyParams {
            p: 0.5 * (x.q1 - x.q44()),
            q: 0.25 - middle,
            r: x.q6,
            u: 0.5 * x.q4,
            phi: FRAC_PI_4,
        })
    }

    /// `2u sin(2 phi) - r cos(2 phi)`.
    pub fn outer_coherence(&self) -> f64 {
        let (s, c) = (2.0 * self.phi).sin_cos();
        2.0 * self.u * s - self.r * c
    }

    pub fn to_x_params(&self) -> XParams {
        XParams {
            q1: 0.25 + self.p + self.q,
            q2: 0.25 - self.q,
            q3: 0.25 - self.q,
            q4: self.outer_coherence(),
            q5: 0.0,
            q6: self.r,
            q7: 0.0,
        }
    }

    pub fn state(&self) -> Result<DensityMatrix> {
        crate::states::embed_x(&self.to_x_params())
    }
}

/// Closed-form spectrum of a family state, in the order
/// `(1/4+q+w, 1/4+q-w, 1/4-q+|r|, 1/4-q-|r|)` with `w = sqrt(p^2 + off^2)`.
pub fn family_eigenvalues(f: &NanoporeFamilyParams) -> [f64; 4] {
    let w = f.p.hypot(f.outer_coherence());
    [0.25 + f.q + w, 0.25 + f.q - w, 0.25 - f.q + f.r.abs(), 0.25 - f.q - f.r.abs()]
}

/// Which measurement achieves the minimum.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Branch {
    /// Measurement along sigma_z.
    Z,
    /// Best measurement in the x-y plane.
    XY,
}

impl std::fmt::Display for Branch {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Branch::Z => "Z",
            Branch::XY => "XY",
        })
    }
}

/// Analytic discord with its branch diagnostics, all in bits.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DiscordResult {
    pub q: f64,
    pub q1: f64,
    pub q2: f64,
    pub branch: Branch,
    /// Entropy of the full state.
    pub s: f64,
    /// Entropy of the reduced state.
    pub sr: f64,
}

fn clamp_discord(q: f64) -> f64 {
    if (-DISCORD_CLAMP..0.0).contains(&q) {
        0.0
    } else {
        q
    }
}

/// `x log2(x / y)` with the `x = 0` term dropped.
fn xlog2_ratio(x: f64, y: f64) -> f64 {
    if x <= 0.0 {
        0.0
    } else {
        x * (x / y).log2()
    }
}

/// `Q = min(Q1, Q2)` for a family state.
///
/// `Q1` is the discord left after a sigma_z measurement,
///
/// ```text
/// Q1 = Sr - S - (1/4+p+q) log2[(1/4+p+q)/(1/2+p)] - (1/4-q) log2[(1/4-q)/(1/2+p)]
///             - (1/4-p+q) log2[(1/4-p+q)/(1/2-p)] - (1/4-q) log2[(1/4-q)/(1/2-p)],
/// ```
///
/// and `Q2 = Sr - S - D1 log2 D1 - D2 log2 D2` with
/// `D1,2 = (1 +- 2 sqrt(p^2 + (|r| + |off|)^2)) / 2` covers the best
/// measurement in the x-y plane.
pub fn discord_family(f: &NanoporeFamilyParams) -> Result<DiscordResult> {
    let (p, q) = (f.p, f.q);
    let sr = reduced_entropy(p)?;
    let s = entropy_bits(&family_eigenvalues(f))?;

    let plus = 0.5 + p;
    let minus = 0.5 - p;
    let q1 = sr - s
        - xlog2_ratio(0.25 + p + q, plus)
        - xlog2_ratio(0.25 - q, plus)
        - xlog2_ratio(0.25 - p + q, minus)
        - xlog2_ratio(0.25 - q, minus);

    let radius = 2.0 * p.hypot(f.r.abs() + f.outer_coherence().abs());
    if radius > 1.0 + EIGEN_CLAMP {
        return Err(Error::NegativeEigenvalue { eigenvalue: 0.5 * (1.0 - radius) });
    }
    let d1 = 0.5 * (1.0 + radius);
    let d2 = 0.5 * (1.0 - radius);
    let q2 = sr - s - xlog2x(d1) - xlog2x(d2);

    let (raw, branch) = if q1 <= q2 { (q1, Branch::Z) } else { (q2, Branch::XY) };
    Ok(DiscordResult { q: clamp_discord(raw), q1, q2, branch, s, sr })
}

/// Analytic discord of a real X state with equal middle diagonals.
pub fn discord_real_x(x: &XParams, tol: f64) -> Result<DiscordResult> {
    discord_family(&NanoporeFamilyParams::from_real_x(x, tol)?)
}
