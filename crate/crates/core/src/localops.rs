//! Local unitary machinery: the Hadamard bridge between CS and X states, the
//! explicit parameter maps, Pauli (Bloch) expansion, and the z-phase rotation
//! that turns a complex X state into a real one.

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2};

use crate::error::{Error, Result};
use crate::qmat::{kron, pauli, CMat, CMat2, CMat4, C64};
use crate::states::{CSParams, DensityMatrix, XParams};

/// Unitarity tolerance for [`conjugate_local`].
pub const UNITARY_TOL: f64 = 1e-12;

/// `H = [[1, 1], [1, -1]] / sqrt(2)`.
pub fn hadamard2() -> CMat2 {
    CMat2::from_real([[FRAC_1_SQRT_2, FRAC_1_SQRT_2], [FRAC_1_SQRT_2, -FRAC_1_SQRT_2]])
}

/// `R = H (x) H`: real, symmetric and its own inverse.
pub fn rotation_r() -> CMat4 {
    kron(&hadamard2(), &hadamard2())
}

/// Parameters of `R rho_CS R` read off in X form.
pub fn cs_to_x_params(p: &CSParams) -> XParams {
    let s = p.p6 + p.p7;
    let d = p.p6 - p.p7;
    XParams {
        q1: 0.25 + p.p2 + p.p4 + 0.5 * s,
        q2: 0.25 - p.p2 + p.p4 - 0.5 * s,
        q3: 0.25 + p.p2 - p.p4 - 0.5 * s,
        q4: -0.25 + p.p1 + 0.5 * d,
        q5: -p.p3 - p.p5,
        q6: -0.25 + p.p1 - 0.5 * d,
        q7: p.p3 - p.p5,
    }
}

/// Inverse of [`cs_to_x_params`].
pub fn x_to_cs_params(q: &XParams) -> CSParams {
    CSParams {
        p1: 0.25 + 0.5 * (q.q4 + q.q6),
        p2: -0.25 + 0.5 * (q.q1 + q.q3),
        p3: -0.5 * (q.q5 - q.q7),
        p4: -0.25 + 0.5 * (q.q1 + q.q2),
        p5: -0.5 * (q.q5 + q.q7),
        p6: 0.25 - 0.5 * (q.q2 + q.q3 - q.q4 + q.q6),
        p7: 0.25 - 0.5 * (q.q2 + q.q3 + q.q4 - q.q6),
    }
}

/// `(uA (x) uB) rho (uA (x) uB)^dagger`.
pub fn conjugate_local(rho: &DensityMatrix, ua: &CMat2, ub: &CMat2) -> Result<DensityMatrix> {
    let residual = ua.unitarity_residual().max(ub.unitarity_residual());
    if residual > UNITARY_TOL {
        return Err(Error::NotUnitary { residual });
    }
    let u = kron(ua, ub);
    DensityMatrix::new(u.sandwich(rho.matrix()).hermitian_part())
}

/// Coefficients of `rho = 1/4 sum_{mu,nu} c_{mu nu} sigma_mu (x) sigma_nu`,
/// split into local vectors and the correlation tensor.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochCoefficients {
    /// Always 1 for a unit-trace state.
    pub c0: f64,
    /// First-qubit vector `c_{k0}`.
    pub a: [f64; 3],
    /// Second-qubit vector `c_{0k}`.
    pub b: [f64; 3],
    /// Correlation tensor `c_{kl}`.
    pub t: [[f64; 3]; 3],
}

impl BlochCoefficients {
    /// Coefficient `c_{mu nu}` with 0 for the identity and 1..=3 for x, y, z.
    pub fn get(&self, mu: usize, nu: usize) -> f64 {
        match (mu, nu) {
            (0, 0) => self.c0,
            (k, 0) => self.a[k - 1],
            (0, l) => self.b[l - 1],
            (k, l) => self.t[k - 1][l - 1],
        }
    }

    pub fn reconstruct(&self) -> CMat4 {
        let mut m = CMat4::zeros();
        for mu in 0..4 {
            for nu in 0..4 {
                let c = self.get(mu, nu);
                if c != 0.0 {
                    m = m + kron(&pauli(mu), &pauli(nu)) * c;
                }
            }
        }
        m * 0.25
    }
}

/// `c_{mu nu} = tr[rho (sigma_mu (x) sigma_nu)]`.
pub fn bloch_decompose(rho: &DensityMatrix) -> BlochCoefficients {
    let coeff = |mu: usize, nu: usize| (*rho.matrix() * kron(&pauli(mu), &pauli(nu))).trace().re;
    BlochCoefficients {
        c0: 1.0,
        a: [coeff(1, 0), coeff(2, 0), coeff(3, 0)],
        b: [coeff(0, 1), coeff(0, 2), coeff(0, 3)],
        t: std::array::from_fn(|k| std::array::from_fn(|l| coeff(k + 1, l + 1))),
    }
}

/// `exp(-i phi sigma_z / 2)`.
pub fn z_rotation(phi: f64) -> CMat2 {
    let half = C64::from_polar(1.0, -0.5 * phi);
    CMat([[half, C64::new(0.0, 0.0)], [C64::new(0.0, 0.0), half.conj()]])
}

/// A real X state together with the local z rotations that produce it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseReduction {
    /// The rotated state; `q5 = q7 = 0`.
    pub real_x: XParams,
    pub phi_a: f64,
    pub phi_b: f64,
}

impl PhaseReduction {
    /// `z_rotation(phi_a) (x) z_rotation(phi_b)`.
    pub fn unitary(&self) -> CMat4 {
        kron(&z_rotation(self.phi_a), &z_rotation(self.phi_b))
    }
}

/// Angle `theta` with `e^{-i theta} (re + i im)` real, taken as `atan(im/re)`
/// so that an already real entry is left alone. On the imaginary axis the
/// choice is `-atan2(im, -re)`, which for the nanopore coherence
/// `-r + 2iu` is the reduction angle `-atan2(2u, r)`.
fn realizing_angle(re: f64, im: f64) -> f64 {
    if im == 0.0 {
        0.0
    } else if re == 0.0 {
        -FRAC_PI_2.copysign(im)
    } else {
        (im / re).atan()
    }
}

/// Rotates a complex X state into real form with `U(phi_a) (x) U(phi_b)`,
/// `U(phi) = exp(-i phi sigma_z / 2)`.
///
/// Under that rotation `rho_14` picks up `e^{-i(phi_a + phi_b)}` and
/// `rho_23` picks up `e^{-i(phi_a - phi_b)}`; each sum is chosen to cancel
/// the phase of its entry. Diagonals and the moduli of both coherences are
/// unchanged. For the nanopore form (`q4 = -r`, `q5 = 2u`, `q6 = r`,
/// `q7 = 0`) both angles equal `-atan(2u/r)/2`.
pub fn phase_reduce_x(q: &XParams) -> PhaseReduction {
    let sum = realizing_angle(q.q4, q.q5);
    let diff = realizing_angle(q.q6, q.q7);
    let outer = C64::new(q.q4, q.q5) * C64::from_polar(1.0, -sum);
    let inner = C64::new(q.q6, q.q7) * C64::from_polar(1.0, -diff);
    PhaseReduction {
        real_x: XParams { q4: outer.re, q5: 0.0, q6: inner.re, q7: 0.0, ..*q },
        phi_a: 0.5 * (sum + diff),
        phi_b: 0.5 * (sum - diff),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states::{embed_cs, embed_x, extract_x, PATTERN_TOL};

    #[test]
    fn hadamard_is_involution() {
        let h = hadamard2();
        assert!((h * h).max_abs_diff(&CMat2::identity()) < 1e-15);
        let r = rotation_r();
        assert!((r * r).max_abs_diff(&CMat4::identity()) < 1e-15);
        assert_eq!(r, r.transpose());
        assert!(r.0.iter().flatten().all(|z| z.im == 0.0 && (z.re.abs() - 0.5).abs() < 1e-15));
    }

    #[test]
    fn maximally_mixed_maps_to_itself() {
        let p = CSParams { p1: 0.25, ..Default::default() };
        let q = cs_to_x_params(&p);
        assert_eq!(q.to_array(), [0.25, 0.25, 0.25, 0.0, 0.0, 0.0, 0.0]);
        assert_eq!(x_to_cs_params(&q), p);
    }

    #[test]
    fn hadamard_conjugation_lands_in_x_form() {
        let p = CSParams { p1: 0.2, p2: 0.03, p3: -0.02, p4: 0.01, p5: 0.04, p6: 0.05, p7: 0.1 };
        let rho = embed_cs(&p).unwrap();
        let h = hadamard2();
        let x = conjugate_local(&rho, &h, &h).unwrap();
        let q = extract_x(&x, PATTERN_TOL).unwrap();
        let mapped = cs_to_x_params(&p);
        for (a, b) in q.to_array().iter().zip(mapped.to_array()) {
            assert!((a - b).abs() < 1e-15);
        }
        let back = conjugate_local(&x, &h, &h).unwrap();
        assert!(back.matrix().max_abs_diff(rho.matrix()) < 1e-15);
    }

    #[test]
    fn conjugate_rejects_non_unitary() {
        let rho = DensityMatrix::maximally_mixed();
        let bad = CMat2::diag([1.0, 0.5]);
        assert!(matches!(
            conjugate_local(&rho, &bad, &CMat2::identity()),
            Err(Error::NotUnitary { .. })
        ));
    }

    #[test]
    fn bloch_of_maximally_mixed() {
        let c = bloch_decompose(&DensityMatrix::maximally_mixed());
        for mu in 0..4 {
            for nu in 0..4 {
                let expect = if mu == 0 && nu == 0 { 1.0 } else { 0.0 };
                assert!((c.get(mu, nu) - expect).abs() < 1e-16);
            }
        }
    }

    #[test]
    fn bloch_of_cs_state() {
        let p = CSParams { p1: 0.2, p2: 0.03, p3: -0.02, p4: 0.01, p5: 0.04, p6: 0.05, p7: 0.1 };
        let c = bloch_decompose(&embed_cs(&p).unwrap());
        let (x, y, z) = (1, 2, 3);
        let mut expected = [[0.0; 4]; 4];
        expected[0][0] = 1.0;
        expected[x][0] = 4.0 * p.p4;
        expected[0][x] = 4.0 * p.p2;
        expected[x][x] = 2.0 * (p.p6 + p.p7);
        expected[y][y] = 2.0 * (p.p7 - p.p6);
        expected[z][z] = 4.0 * p.p1 - 1.0;
        expected[z][y] = -4.0 * p.p3;
        expected[y][z] = -4.0 * p.p5;
        for mu in 0..4 {
            for nu in 0..4 {
                assert!(
                    (c.get(mu, nu) - expected[mu][nu]).abs() < 1e-15,
                    "c[{mu}][{nu}] = {} vs {}",
                    c.get(mu, nu),
                    expected[mu][nu]
                );
            }
        }
    }

    #[test]
    fn hadamard_swaps_x_and_z_and_negates_y() {
        let p = CSParams { p1: 0.2, p2: 0.03, p3: -0.02, p4: 0.01, p5: 0.04, p6: 0.05, p7: 0.1 };
        let rho = embed_cs(&p).unwrap();
        let h = hadamard2();
        let before = bloch_decompose(&rho);
        let after = bloch_decompose(&conjugate_local(&rho, &h, &h).unwrap());
        // index map x->z, y->y (sign -1), z->x
        let image = [0usize, 3, 2, 1];
        let sign = [1.0, 1.0, -1.0, 1.0];
        for mu in 0..4 {
            for nu in 0..4 {
                let want = sign[mu] * sign[nu] * before.get(mu, nu);
                assert!((after.get(image[mu], image[nu]) - want).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn nanopore_x_form_cross_terms() {
        // The xy and yx coefficients of the X image are both -4u.
        let (p, q, r, u) = (0.1, 0.04, 0.02, 0.03);
        let x = XParams {
            q1: 0.25 + p + q,
            q2: 0.25 - q,
            q3: 0.25 - q,
            q4: -r,
            q5: 2.0 * u,
            q6: r,
            q7: 0.0,
        };
        let c = bloch_decompose(&embed_x(&x).unwrap());
        assert!((c.t[0][1] + 4.0 * u).abs() < 1e-15);
        assert!((c.t[1][0] + 4.0 * u).abs() < 1e-15);
        assert!((c.t[1][1] - 4.0 * r).abs() < 1e-15);
        assert!((c.t[2][2] - 4.0 * q).abs() < 1e-15);
        assert!((c.a[2] - 2.0 * p).abs() < 1e-15);
        assert!((c.b[2] - 2.0 * p).abs() < 1e-15);
        assert!(c.t[0][0].abs() < 1e-15);
    }

    #[test]
    fn phase_reduce_trivial() {
        let q = XParams { q1: 0.4, q2: 0.2, q3: 0.1, q4: 0.05, q6: -0.03, ..Default::default() };
        let red = phase_reduce_x(&q);
        assert_eq!((red.phi_a, red.phi_b), (0.0, 0.0));
        assert_eq!(red.real_x, q);
    }

    #[test]
    fn phase_reduce_nanopore() {
        let (p, q, r, u) = (0.1, 0.04, 0.02, 0.03);
        let x = XParams {
            q1: 0.25 + p + q,
            q2: 0.25 - q,
            q3: 0.25 - q,
            q4: -r,
            q5: 2.0 * u,
            q6: r,
            q7: 0.0,
        };
        let red = phase_reduce_x(&x);
        let phi = -0.5 * (2.0 * u / r).atan();
        assert!((red.phi_a - phi).abs() < 1e-15);
        assert!((red.phi_b - phi).abs() < 1e-15);
        let off = 2.0 * u * (2.0 * phi).sin() - r * (2.0 * phi).cos();
        assert!((red.real_x.q4 - off).abs() < 1e-15);
        assert!((red.real_x.q6 - r).abs() < 1e-15);

        let rho = embed_x(&x).unwrap();
        let rotated = red.unitary().sandwich(rho.matrix());
        let expected = embed_x(&red.real_x).unwrap();
        assert!(rotated.max_abs_diff(expected.matrix()) < 1e-15);
    }

    #[test]
    fn phase_reduce_on_imaginary_axis() {
        // r = 0: angle from atan2(2u, r).
        let u = 0.07;
        let x = XParams { q1: 0.3, q2: 0.25, q3: 0.25, q4: 0.0, q5: 2.0 * u, ..Default::default() };
        let red = phase_reduce_x(&x);
        let phi = -0.5 * (2.0 * u).atan2(0.0);
        assert!((red.phi_a - phi).abs() < 1e-15);
        assert!((red.real_x.q4.abs() - 2.0 * u).abs() < 1e-15);
    }

    #[test]
    fn phase_reduce_general_preserves_moduli() {
        let x = XParams { q1: 0.3, q2: 0.2, q3: 0.15, q4: -0.05, q5: 0.08, q6: 0.02, q7: -0.06 };
        let red = phase_reduce_x(&x);
        assert!((red.real_x.q4.abs() - 0.05f64.hypot(0.08)).abs() < 1e-16);
        assert!((red.real_x.q6.abs() - 0.02f64.hypot(0.06)).abs() < 1e-16);
        let rho = embed_x(&x).unwrap();
        let rotated = red.unitary().sandwich(rho.matrix());
        assert!(rotated.max_abs_diff(&red.real_x.matrix()) < 1e-15);
    }
}
