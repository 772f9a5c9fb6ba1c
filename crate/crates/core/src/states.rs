//! Validated two-qubit density matrices and the centrosymmetric (CS) and X
//! parameter families.

use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qmat::{partial_trace, CMat2, CMat4, Subsystem, C64};

/// Default tolerance for Hermiticity, trace, PSD and sparsity-pattern checks.
pub const PATTERN_TOL: f64 = 1e-10;

/// Eigenvalues in `[-EIGEN_CLAMP, 0)` are roundoff and count as zero.
pub const EIGEN_CLAMP: f64 = 1e-10;

/// A 4x4 complex matrix known to be Hermitian, unit-trace and PSD.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DensityMatrix(CMat4);

impl DensityMatrix {
    /// Checks Hermiticity, then trace, then positivity.
    pub fn new(m: CMat4) -> Result<Self> {
        if !m.is_finite() {
            return Err(Error::InvalidParameter("matrix has non-finite entries".into()));
        }
        let residual = m.hermiticity_residual();
        if residual > PATTERN_TOL {
            return Err(Error::NotHermitian { residual });
        }
        let trace = m.trace().re;
        if (trace - 1.0).abs() > PATTERN_TOL {
            return Err(Error::TraceNotOne { trace });
        }
        let lowest = m.herm_eig()?.values[0];
        if lowest < -EIGEN_CLAMP {
            return Err(Error::NotPsd { eigenvalue: lowest });
        }
        Ok(DensityMatrix(m))
    }

    /// The maximally mixed state `I/4`.
    pub fn maximally_mixed() -> Self {
        DensityMatrix(CMat4::identity() * 0.25)
    }

    pub fn matrix(&self) -> &CMat4 {
        &self.0
    }

    pub fn into_matrix(self) -> CMat4 {
        self.0
    }

    /// Ascending spectrum.
    pub fn eigenvalues(&self) -> [f64; 4] {
        // Validation already ran the same decomposition, so this cannot fail.
        self.0
            .herm_eig()
            .expect("validated density matrix is Hermitian")
            .values
    }

    pub fn reduced(&self, keep: Subsystem) -> CMat2 {
        partial_trace(&self.0, keep)
    }
}

/// The seven real parameters of a CS density matrix:
///
/// ```text
/// [ p1        p2+i p3   p4+i p5   p6      ]
/// [ p2-i p3   1/2-p1    p7        p4-i p5 ]
/// [ p4-i p5   p7        1/2-p1    p2-i p3 ]
/// [ p6        p4+i p5   p2+i p3   p1      ]
/// ```
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct CSParams {
    pub p1: f64,
    pub p2: f64,
    pub p3: f64,
    pub p4: f64,
    pub p5: f64,
    pub p6: f64,
    pub p7: f64,
}

/// The seven real parameters of an X density matrix:
///
/// ```text
/// [ q1        0         0         q4+i q5        ]
/// [ 0         q2        q6+i q7   0              ]
/// [ 0         q6-i q7   q3        0              ]
/// [ q4-i q5   0         0         1-q1-q2-q3     ]
/// ```
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct XParams {
    pub q1: f64,
    pub q2: f64,
    pub q3: f64,
    pub q4: f64,
    pub q5: f64,
    pub q6: f64,
    pub q7: f64,
}

impl CSParams {
    pub fn to_array(&self) -> [f64; 7] {
        [self.p1, self.p2, self.p3, self.p4, self.p5, self.p6, self.p7]
    }

    pub fn from_array(p: [f64; 7]) -> Self {
        CSParams { p1: p[0], p2: p[1], p3: p[2], p4: p[3], p5: p[4], p6: p[5], p7: p[6] }
    }

    /// The matrix the parameters describe, without validation.
    pub fn matrix(&self) -> CMat4 {
        let c = C64::new;
        let a = c(self.p2, self.p3);
        let b = c(self.p4, self.p5);
        let d = c(0.5 - self.p1, 0.0);
        CMat4::new([
            [c(self.p1, 0.0), a, b, c(self.p6, 0.0)],
            [a.conj(), d, c(self.p7, 0.0), b.conj()],
            [b.conj(), c(self.p7, 0.0), d, a.conj()],
            [c(self.p6, 0.0), b, a, c(self.p1, 0.0)],
        ])
    }
}

impl XParams {
    pub fn to_array(&self) -> [f64; 7] {
        [self.q1, self.q2, self.q3, self.q4, self.q5, self.q6, self.q7]
    }

    pub fn from_array(q: [f64; 7]) -> Self {
        XParams { q1: q[0], q2: q[1], q3: q[2], q4: q[3], q5: q[4], q6: q[5], q7: q[6] }
    }

    /// `1 - q1 - q2 - q3`.
    pub fn q44(&self) -> f64 {
        1.0 - self.q1 - self.q2 - self.q3
    }

    pub fn diagonal(&self) -> [f64; 4] {
        [self.q1, self.q2, self.q3, self.q44()]
    }

    pub fn matrix(&self) -> CMat4 {
        let c = C64::new;
        let z = c(0.0, 0.0);
        let outer = c(self.q4, self.q5);
        let inner = c(self.q6, self.q7);
        CMat4::new([
            [c(self.q1, 0.0), z, z, outer],
            [z, c(self.q2, 0.0), inner, z],
            [z, inner.conj(), c(self.q3, 0.0), z],
            [outer.conj(), z, z, c(self.q44(), 0.0)],
        ])
    }
}

/// Largest violation of `a[i][j] = a[3-i][3-j]` and where it occurs.
pub fn cs_residual(m: &CMat4) -> (f64, (usize, usize)) {
    let mut worst = (0.0, (0, 0));
    for i in 0..4 {
        for j in 0..4 {
            let d = (m.0[i][j] - m.0[3 - i][3 - j]).norm();
            if d > worst.0 {
                worst = (d, (i, j));
            }
        }
    }
    worst
}

/// Largest modulus outside the diagonal and anti-diagonal.
pub fn x_residual(m: &CMat4) -> (f64, (usize, usize)) {
    let mut worst = (0.0, (0, 0));
    for i in 0..4 {
        for j in 0..4 {
            if i == j || i + j == 3 {
                continue;
            }
            let d = m.0[i][j].norm();
            if d > worst.0 {
                worst = (d, (i, j));
            }
        }
    }
    worst
}

pub fn is_centrosymmetric(m: &CMat4, tol: f64) -> bool {
    cs_residual(m).0 <= tol
}

pub fn is_x_form(m: &CMat4, tol: f64) -> bool {
    x_residual(m).0 <= tol
}

pub fn extract_cs(rho: &DensityMatrix, tol: f64) -> Result<CSParams> {
    let m = rho.matrix();
    let (residual, (row, col)) = cs_residual(m);
    if residual > tol {
        return Err(Error::NotCentrosymmetric { residual, row, col });
    }
    Ok(CSParams {
        p1: m[(0, 0)].re,
        p2: m[(0, 1)].re,
        p3: m[(0, 1)].im,
        p4: m[(0, 2)].re,
        p5: m[(0, 2)].im,
        p6: m[(0, 3)].re,
        p7: m[(1, 2)].re,
    })
}

pub fn extract_x(rho: &DensityMatrix, tol: f64) -> Result<XParams> {
    let m = rho.matrix();
    let (residual, (row, col)) = x_residual(m);
    if residual > tol {
        return Err(Error::NotXForm { residual, row, col });
    }
    Ok(XParams {
        q1: m[(0, 0)].re,
        q2: m[(1, 1)].re,
        q3: m[(2, 2)].re,
        q4: m[(0, 3)].re,
        q5: m[(0, 3)].im,
        q6: m[(1, 2)].re,
        q7: m[(1, 2)].im,
    })
}

pub fn embed_cs(p: &CSParams) -> Result<DensityMatrix> {
    DensityMatrix::new(p.matrix())
}

pub fn embed_x(q: &XParams) -> Result<DensityMatrix> {
    DensityMatrix::new(q.matrix())
}

fn gaussian(rng: &mut impl Rng) -> C64 {
    C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

/// `G G^dagger / tr(G G^dagger)`, always a valid state.
fn gram_state(g: CMat4) -> DensityMatrix {
    let gg = g * g.adjoint();
    let tr = gg.trace().re;
    let m = (gg * (1.0 / tr)).hermitian_part();
    DensityMatrix::new(m).expect("Gram construction yields a density matrix")
}

/// Random CS state: Gram matrix of a Gaussian CS matrix.
pub fn random_cs_state(rng: &mut impl Rng) -> DensityMatrix {
    let mut g = CMat4::zeros();
    for i in 0..2 {
        for j in 0..4 {
            let z = gaussian(rng);
            g.0[i][j] = z;
            g.0[3 - i][3 - j] = z;
        }
    }
    gram_state(g)
}

/// Random X state: Gram matrix of a Gaussian X-patterned matrix.
pub fn random_x_state(rng: &mut impl Rng) -> DensityMatrix {
    let g = CMat4::from_fn(|i, j| {
        if i == j || i + j == 3 {
            gaussian(rng)
        } else {
            C64::new(0.0, 0.0)
        }
    });
    gram_state(g)
}

/// Random full-rank state with no imposed structure.
pub fn random_state(rng: &mut impl Rng) -> DensityMatrix {
    gram_state(CMat4::from_fn(|_, _| gaussian(rng)))
}

/// Haar-random 2x2 unitary (unit quaternion).
pub fn random_unitary2(rng: &mut impl Rng) -> CMat2 {
    let mut v = [0.0_f64; 4];
    for x in v.iter_mut() {
        *x = rng.sample(StandardNormal);
    }
    let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    let [a, b, c, d] = v.map(|x| x / n);
    let alpha = C64::new(a, b);
    let beta = C64::new(c, d);
    crate::qmat::CMat([[alpha, -beta.conj()], [beta, alpha.conj()]])
}
