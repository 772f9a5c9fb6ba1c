//! Fixed-size dense complex matrices for two-qubit work.
//!
//! Everything here is sized at compile time: [`CMat2`] for single-qubit
//! operators and [`CMat4`] for two-qubit operators in the computational basis
//! `|00>, |01>, |10>, |11>` (index `2 * a + b` for qubit values `a`, `b`).

use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

pub type C64 = Complex64;

/// Tolerance on `max |m - m^dagger|` accepted by [`CMat::herm_eig`].
pub const HERMITIAN_TOL: f64 = 1e-10;

/// Cap on full Jacobi sweeps before giving up.
pub const MAX_JACOBI_SWEEPS: usize = 100;

const ZERO: C64 = C64::new(0.0, 0.0);
const ONE: C64 = C64::new(1.0, 0.0);

/// Dense `N x N` complex matrix, row-major.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CMat<const N: usize>(pub [[C64; N]; N]);

pub type CMat2 = CMat<2>;
pub type CMat4 = CMat<4>;

/// Which qubit of a pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Subsystem {
    First,
    Second,
}

impl Subsystem {
    pub fn other(self) -> Subsystem {
        match self {
            Subsystem::First => Subsystem::Second,
            Subsystem::Second => Subsystem::First,
        }
    }
}

impl<const N: usize> Default for CMat<N> {
    fn default() -> Self {
        Self::zeros()
    }
}

impl<const N: usize> CMat<N> {
    pub const fn new(rows: [[C64; N]; N]) -> Self {
        CMat(rows)
    }

    pub fn zeros() -> Self {
        CMat([[ZERO; N]; N])
    }

    pub fn identity() -> Self {
        let mut m = Self::zeros();
        for i in 0..N {
            m.0[i][i] = ONE;
        }
        m
    }

    pub fn from_fn(mut f: impl FnMut(usize, usize) -> C64) -> Self {
        let mut m = Self::zeros();
        for i in 0..N {
            for j in 0..N {
                m.0[i][j] = f(i, j);
            }
        }
        m
    }

    pub fn from_real(rows: [[f64; N]; N]) -> Self {
        Self::from_fn(|i, j| C64::new(rows[i][j], 0.0))
    }

    pub fn diag(values: [f64; N]) -> Self {
        let mut m = Self::zeros();
        for (i, v) in values.into_iter().enumerate() {
            m.0[i][i] = C64::new(v, 0.0);
        }
        m
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(|i, j| self.0[j][i].conj())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(|i, j| self.0[j][i])
    }

    pub fn trace(&self) -> C64 {
        (0..N).map(|i| self.0[i][i]).sum()
    }

    pub fn scale(&self, s: C64) -> Self {
        Self::from_fn(|i, j| self.0[i][j] * s)
    }

    pub fn scale_real(&self, s: f64) -> Self {
        Self::from_fn(|i, j| self.0[i][j] * s)
    }

    /// `self * other * self^dagger`.
    pub fn sandwich(&self, other: &Self) -> Self {
        *self * *other * self.adjoint()
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        let mut worst = 0.0_f64;
        for i in 0..N {
            for j in 0..N {
                worst = worst.max((self.0[i][j] - other.0[i][j]).norm());
            }
        }
        worst
    }

    /// `max |m - m^dagger|`.
    pub fn hermiticity_residual(&self) -> f64 {
        self.max_abs_diff(&self.adjoint())
    }

    /// `max |m m^dagger - I|`.
    pub fn unitarity_residual(&self) -> f64 {
        (*self * self.adjoint()).max_abs_diff(&Self::identity())
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.0.iter().flatten().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().flatten().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    /// `(m + m^dagger) / 2`.
    pub fn hermitian_part(&self) -> Self {
        Self::from_fn(|i, j| (self.0[i][j] + self.0[j][i].conj()) * 0.5)
    }

    /// Eigendecomposition of a Hermitian matrix by cyclic complex Jacobi
    /// rotations. The input is symmetrized before iterating.
    pub fn herm_eig(&self) -> Result<EigenDecomposition<N>> {
        let residual = self.hermiticity_residual();
        if residual.is_nan() || residual > HERMITIAN_TOL {
            return Err(Error::NotHermitian { residual });
        }
        let mut a = self.hermitian_part();
        let mut v = Self::identity();
        let scale = a.frobenius_norm();

        let mut sweeps = 0;
        loop {
            let off = off_diagonal_norm(&a);
            if off <= f64::EPSILON * f64::EPSILON * scale {
                break;
            }
            if sweeps == MAX_JACOBI_SWEEPS {
                return Err(Error::NoConvergence { sweeps });
            }
            for p in 0..N {
                for q in (p + 1)..N {
                    if sweeps > 3 && negligible(&a, p, q) {
                        a.0[p][q] = ZERO;
                        a.0[q][p] = ZERO;
                        continue;
                    }
                    jacobi_rotate(&mut a, &mut v, p, q);
                }
            }
            sweeps += 1;
        }

        let mut order: [usize; N] = std::array::from_fn(|i| i);
        order.sort_by(|&i, &j| a.0[i][i].re.total_cmp(&a.0[j][j].re));
        let values = order.map(|k| a.0[k][k].re);
        let vectors = Self::from_fn(|i, j| v.0[i][order[j]]);
        Ok(EigenDecomposition { values, vectors })
    }

    /// Applies `f` to the spectrum: `V diag(f(lambda)) V^dagger`.
    pub fn matrix_function(&self, f: impl Fn(f64) -> f64) -> Result<Self> {
        let eig = self.herm_eig()?;
        let mut mapped = [0.0; N];
        for (out, &lambda) in mapped.iter_mut().zip(eig.values.iter()) {
            let y = f(lambda);
            if !y.is_finite() {
                return Err(Error::DomainError { eigenvalue: lambda });
            }
            *out = y;
        }
        Ok(eig.rebuild_with(&mapped))
    }
}

fn negligible<const N: usize>(a: &CMat<N>, p: usize, q: usize) -> bool {
    let g = 100.0 * a.0[p][q].norm();
    let app = a.0[p][p].re.abs();
    let aqq = a.0[q][q].re.abs();
    app + g == app && aqq + g == aqq
}

fn off_diagonal_norm<const N: usize>(a: &CMat<N>) -> f64 {
    let mut s = 0.0;
    for i in 0..N {
        for j in 0..N {
            if i != j {
                s += a.0[i][j].norm_sqr();
            }
        }
    }
    s.sqrt()
}

/// Annihilates `a[p][q]` with a complex Givens rotation `J`, updating
/// `a <- J^dagger a J` and `v <- v J`.
fn jacobi_rotate<const N: usize>(a: &mut CMat<N>, v: &mut CMat<N>, p: usize, q: usize) {
    let apq = a.0[p][q];
    let g = apq.norm();
    if g == 0.0 {
        return;
    }
    // Phase that makes a[p][q] real and positive.
    let phase = apq / g;
    let app = a.0[p][p].re;
    let aqq = a.0[q][q].re;
    let tau = (aqq - app) / (2.0 * g);
    let t = if tau >= 0.0 {
        1.0 / (tau + (1.0 + tau * tau).sqrt())
    } else {
        -1.0 / (-tau + (1.0 + tau * tau).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;

    // J restricted to (p, q) is [[c, s e^{ia}], [-s e^{-ia}, c]] with e^{ia} = phase.
    let jpp = C64::new(c, 0.0);
    let jqq = C64::new(c, 0.0);
    let jpq = phase * s;
    let jqp = -phase.conj() * s;

    // a <- a J (columns p, q)
    for k in 0..N {
        let akp = a.0[k][p];
        let akq = a.0[k][q];
        a.0[k][p] = akp * jpp + akq * jqp;
        a.0[k][q] = akp * jpq + akq * jqq;
    }
    // a <- J^dagger a (rows p, q)
    for k in 0..N {
        let apk = a.0[p][k];
        let aqk = a.0[q][k];
        a.0[p][k] = jpp.conj() * apk + jqp.conj() * aqk;
        a.0[q][k] = jpq.conj() * apk + jqq.conj() * aqk;
    }
    a.0[p][q] = ZERO;
    a.0[q][p] = ZERO;
    a.0[p][p] = C64::new(a.0[p][p].re, 0.0);
    a.0[q][q] = C64::new(a.0[q][q].re, 0.0);

    for k in 0..N {
        let vkp = v.0[k][p];
        let vkq = v.0[k][q];
        v.0[k][p] = vkp * jpp + vkq * jqp;
        v.0[k][q] = vkp * jpq + vkq * jqq;
    }
}

/// Spectrum of a Hermitian matrix: ascending eigenvalues and the unitary whose
/// columns are the matching eigenvectors.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EigenDecomposition<const N: usize> {
    pub values: [f64; N],
    pub vectors: CMat<N>,
}

impl<const N: usize> EigenDecomposition<N> {
    /// `V diag(values) V^dagger` for replacement eigenvalues.
    pub fn rebuild_with(&self, values: &[f64; N]) -> CMat<N> {
        let v = &self.vectors;
        CMat::from_fn(|i, j| {
            (0..N)
                .map(|k| v.0[i][k] * values[k] * v.0[j][k].conj())
                .sum()
        })
    }

    pub fn reconstruct(&self) -> CMat<N> {
        self.rebuild_with(&self.values)
    }

    /// `max |V^dagger V - I|`.
    pub fn orthonormality_residual(&self) -> f64 {
        (self.vectors.adjoint() * self.vectors).max_abs_diff(&CMat::identity())
    }
}

impl<const N: usize> Index<(usize, usize)> for CMat<N> {
    type Output = C64;
    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        &self.0[i][j]
    }
}

impl<const N: usize> IndexMut<(usize, usize)> for CMat<N> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        &mut self.0[i][j]
    }
}

impl<const N: usize> Add for CMat<N> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self::from_fn(|i, j| self.0[i][j] + rhs.0[i][j])
    }
}

impl<const N: usize> Sub for CMat<N> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self::from_fn(|i, j| self.0[i][j] - rhs.0[i][j])
    }
}

impl<const N: usize> Neg for CMat<N> {
    type Output = Self;
    fn neg(self) -> Self {
        Self::from_fn(|i, j| -self.0[i][j])
    }
}

impl<const N: usize> Mul for CMat<N> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Self::from_fn(|i, j| (0..N).map(|k| self.0[i][k] * rhs.0[k][j]).sum())
    }
}

impl<const N: usize> Mul<f64> for CMat<N> {
    type Output = Self;
    fn mul(self, rhs: f64) -> Self {
        self.scale_real(rhs)
    }
}

/// Kronecker product; entry `(2i + k, 2j + l)` is `a[i][j] * b[k][l]`.
pub fn kron(a: &CMat2, b: &CMat2) -> CMat4 {
    CMat4::from_fn(|r, c| a.0[r / 2][c / 2] * b.0[r % 2][c % 2])
}

/// Partial trace over the qubit not in `keep`.
pub fn partial_trace(rho: &CMat4, keep: Subsystem) -> CMat2 {
    CMat2::from_fn(|i, j| match keep {
        Subsystem::First => rho.0[2 * i][2 * j] + rho.0[2 * i + 1][2 * j + 1],
        Subsystem::Second => rho.0[i][j] + rho.0[2 + i][2 + j],
    })
}

/// Pauli matrix `sigma_mu`, with `mu = 0` the identity.
pub fn pauli(mu: usize) -> CMat2 {
    let i = C64::new(0.0, 1.0);
    match mu {
        0 => CMat2::identity(),
        1 => CMat([[ZERO, ONE], [ONE, ZERO]]),
        2 => CMat([[ZERO, -i], [i, ZERO]]),
        3 => CMat([[ONE, ZERO], [ZERO, -ONE]]),
        _ => panic!("pauli index {mu} out of range 0..4"),
    }
}

/// Eigenvalues of a 2x2 Hermitian matrix, ascending, in closed form.
pub fn eigvals_herm2(m: &CMat2) -> [f64; 2] {
    let a = m.0[0][0].re;
    let d = m.0[1][1].re;
    let b = m.0[0][1];
    let mean = 0.5 * (a + d);
    let radius = (0.25 * (a - d) * (a - d) + b.norm_sqr()).sqrt();
    [mean - radius, mean + radius]
}
