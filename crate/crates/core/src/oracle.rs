//! Brute-force discord: minimize the post-measurement conditional entropy over
//! all projective measurements on one qubit.
//!
//! The search is a dense grid over the Bloch sphere followed by a
//! compass (pattern) search around the best grid point. Nothing here uses the
//! closed-form machinery in [`crate::discord`] beyond the plain entropy
//! helpers, so it can serve as an independent check on it.

use std::f64::consts::{PI, TAU};

use serde::Serialize;

use crate::discord::{mutual_information, qubit_entropy, von_neumann_entropy};
use crate::error::{Error, Result};
use crate::qmat::{pauli, CMat2, Subsystem, C64};
use crate::states::DensityMatrix;

/// Outcomes less likely than this contribute nothing.
const MIN_OUTCOME_PROBABILITY: f64 = 1e-14;

/// Refinement stops once the step falls below this many radians.
const MIN_STEP: f64 = 1e-7;

/// Guard on compass moves at a single step size.
const MAX_POLLS_PER_STEP: usize = 10_000;

/// A projective measurement `{P+, P-}` along the Bloch direction
/// `(sin theta cos phi, sin theta sin phi, cos theta)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MeasurementBasis {
    pub theta: f64,
    pub phi: f64,
}

impl MeasurementBasis {
    pub const Z: MeasurementBasis = MeasurementBasis { theta: 0.0, phi: 0.0 };

    /// Same projectors with `theta` in `[0, pi]` and `phi` in `[0, 2 pi)`.
    pub fn normalized(self) -> Self {
        let mut theta = self.theta.rem_euclid(TAU);
        let mut phi = self.phi;
        if theta > PI {
            theta = TAU - theta;
            phi += PI;
        }
        MeasurementBasis { theta, phi: phi.rem_euclid(TAU) }
    }

    /// Basis along a (not necessarily normalized) nonzero direction.
    pub fn from_direction(v: [f64; 3]) -> Self {
        let n = norm(v);
        MeasurementBasis { theta: (v[2] / n).clamp(-1.0, 1.0).acos(), phi: v[1].atan2(v[0]).rem_euclid(TAU) }
    }

    pub fn direction(&self) -> [f64; 3] {
        let (st, ct) = self.theta.sin_cos();
        let (sp, cp) = self.phi.sin_cos();
        [st * cp, st * sp, ct]
    }

    /// `(P+, P-)` with `P+- = (I +- n . sigma) / 2`.
    pub fn projectors(&self) -> (CMat2, CMat2) {
        let [x, y, z] = self.direction();
        let n_sigma = pauli(1) * x + pauli(2) * y + pauli(3) * z;
        let id = CMat2::identity();
        ((id + n_sigma) * 0.5, (id - n_sigma) * 0.5)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleSettings {
    pub grid_theta: usize,
    pub grid_phi: usize,
    pub refine_iterations: usize,
    pub refine_shrink: f64,
    /// Small negative discord within this of zero is reported as 0.
    pub tol: f64,
    /// Qubit that is measured.
    pub measured: Subsystem,
}

impl Default for OracleSettings {
    fn default() -> Self {
        OracleSettings {
            grid_theta: 64,
            grid_phi: 128,
            refine_iterations: 60,
            refine_shrink: 0.5,
            tol: 1e-9,
            measured: Subsystem::Second,
        }
    }
}

impl OracleSettings {
    pub fn validate(&self) -> Result<()> {
        if self.grid_theta < 8 || self.grid_phi < 8 {
            return Err(Error::InvalidParameter(format!(
                "oracle grid {}x{} is below the 8x8 minimum",
                self.grid_theta, self.grid_phi
            )));
        }
        if self.tol.is_nan() || self.tol <= 0.0 {
            return Err(Error::InvalidParameter("oracle tol must be positive".into()));
        }
        if !(self.refine_shrink > 0.0 && self.refine_shrink < 1.0) {
            return Err(Error::InvalidParameter("refine_shrink must lie in (0, 1)".into()));
        }
        Ok(())
    }
}

/// Unnormalized conditional state of the unmeasured qubit for the outcome
/// whose projector is `proj`: `tr_measured[(proj on measured) rho]`.
fn conditional_block(rho: &DensityMatrix, proj: &CMat2, measured: Subsystem) -> CMat2 {
    let m = rho.matrix();
    CMat2::from_fn(|i, j| {
        let mut acc = C64::new(0.0, 0.0);
        for k in 0..2 {
            for l in 0..2 {
                // rho indices for (kept, measured) pairs
                let (row, col) = match measured {
                    Subsystem::Second => (2 * i + k, 2 * j + l),
                    Subsystem::First => (2 * k + i, 2 * l + j),
                };
                acc += m[(row, col)] * proj[(l, k)];
            }
        }
        acc
    })
}

/// `sum_k p_k S(rho_{kept|k})` for a measurement on `measured`.
pub fn conditional_entropy_after_measurement(
    rho: &DensityMatrix,
    basis: &MeasurementBasis,
    measured: Subsystem,
) -> f64 {
    let (plus, minus) = basis.projectors();
    [plus, minus]
        .iter()
        .map(|proj| {
            let block = conditional_block(rho, proj, measured);
            let pk = block.trace().re;
            if pk <= MIN_OUTCOME_PROBABILITY {
                0.0
            } else {
                pk * qubit_entropy(&(block * (1.0 / pk)))
            }
        })
        .sum()
}

fn norm(v: [f64; 3]) -> f64 {
    (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt()
}

fn normalize(v: [f64; 3]) -> [f64; 3] {
    let n = norm(v);
    [v[0] / n, v[1] / n, v[2] / n]
}

fn neg(v: [f64; 3]) -> [f64; 3] {
    [-v[0], -v[1], -v[2]]
}

fn cross(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

/// Orthonormal pair spanning the plane tangent to the unit vector `n`.
fn tangent_frame(n: [f64; 3]) -> ([f64; 3], [f64; 3]) {
    // Cross with the axis least aligned with n.
    let axis = if n[0].abs() <= n[1].abs() && n[0].abs() <= n[2].abs() {
        [1.0, 0.0, 0.0]
    } else if n[1].abs() <= n[2].abs() {
        [0.0, 1.0, 0.0]
    } else {
        [0.0, 0.0, 1.0]
    };
    let e1 = normalize(cross(n, axis));
    (e1, cross(n, e1))
}

/// Outcome of the measurement search.
#[derive(Debug, Clone, PartialEq)]
pub struct MeasurementSearch {
    pub basis: MeasurementBasis,
    pub conditional_entropy: f64,
    /// Best value after the grid scan and after each refinement iteration.
    pub history: Vec<f64>,
}

/// Grid scan plus compass search for the measurement minimizing the
/// conditional entropy.
pub fn minimize_conditional_entropy(
    rho: &DensityMatrix,
    settings: &OracleSettings,
    measured: Subsystem,
) -> MeasurementSearch {
    let eval = |theta: f64, phi: f64| {
        conditional_entropy_after_measurement(rho, &MeasurementBasis { theta, phi }, measured)
    };

    let d_theta = PI / (settings.grid_theta - 1) as f64;
    let d_phi = TAU / settings.grid_phi as f64;
    let mut best = (f64::INFINITY, 0.0, 0.0);
    for i in 0..settings.grid_theta {
        let theta = i as f64 * d_theta;
        // Only one azimuth is needed on the poles.
        let azimuths = if i == 0 || i + 1 == settings.grid_theta { 1 } else { settings.grid_phi };
        for j in 0..azimuths {
            let phi = j as f64 * d_phi;
            let h = eval(theta, phi);
            if h < best.0 {
                best = (h, theta, phi);
            }
        }
    }

    // Compass search in the tangent plane of the current direction, so the
    // poles of the (theta, phi) chart are ordinary points. Each refinement
    // iteration polls the four neighbours at a fixed step until none
    // improves, then shrinks the step.
    let mut dir = MeasurementBasis { theta: best.1, phi: best.2 }.direction();
    let mut h_best = best.0;
    let mut history = vec![h_best];
    let mut step = d_theta.max(d_phi);
    for _ in 0..settings.refine_iterations {
        if step < MIN_STEP {
            break;
        }
        for _ in 0..MAX_POLLS_PER_STEP {
            let (e1, e2) = tangent_frame(dir);
            let (s, c) = step.sin_cos();
            let mut moved = false;
            for e in [e1, neg(e1), e2, neg(e2)] {
                let cand = normalize([c * dir[0] + s * e[0], c * dir[1] + s * e[1], c * dir[2] + s * e[2]]);
                let b = MeasurementBasis::from_direction(cand);
                let h = eval(b.theta, b.phi);
                if h < h_best {
                    h_best = h;
                    dir = cand;
                    moved = true;
                    break;
                }
            }
            if !moved {
                break;
            }
        }
        step *= settings.refine_shrink;
        history.push(h_best);
    }
    let basis = MeasurementBasis::from_direction(dir);
    let best = (h_best, basis.theta, basis.phi);

    MeasurementSearch {
        basis: MeasurementBasis { theta: best.1, phi: best.2 }.normalized(),
        conditional_entropy: best.0,
        history,
    }
}

/// `C = S(rho_kept) - min_basis sum_k p_k S(rho_{kept|k})` with the
/// minimizing basis.
pub fn classical_correlation(
    rho: &DensityMatrix,
    settings: &OracleSettings,
    measured: Subsystem,
) -> (f64, MeasurementBasis) {
    let search = minimize_conditional_entropy(rho, settings, measured);
    let s_kept = qubit_entropy(&rho.reduced(measured.other()));
    (s_kept - search.conditional_entropy, search.basis)
}

/// Numerically optimized discord and its ingredients, in bits.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NumericDiscord {
    pub q: f64,
    pub mutual_information: f64,
    pub classical_correlation: f64,
    pub basis: MeasurementBasis,
    /// Entropy of the full state.
    pub s: f64,
    /// Entropy of the measured qubit.
    pub sr: f64,
}

/// `Q = I(rho) - C(rho)` with the measurement on `settings.measured`.
pub fn discord_numeric(rho: &DensityMatrix, settings: &OracleSettings) -> Result<NumericDiscord> {
    settings.validate()?;
    let measured = settings.measured;
    let mi = mutual_information(rho);
    let (cc, basis) = classical_correlation(rho, settings, measured);
    let mut q = mi - cc;
    if (-settings.tol..0.0).contains(&q) {
        q = 0.0;
    }
    Ok(NumericDiscord {
        q,
        mutual_information: mi,
        classical_correlation: cc,
        basis,
        s: von_neumann_entropy(rho),
        sr: qubit_entropy(&rho.reduced(measured)),
    })
}
