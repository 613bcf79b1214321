//! 2×2 complex (Jones) and 4×4 real (Mueller/Lorentz) matrices, the elementary
//! boost and rotation generators in both representations, and the spinor to
//! four-vector map between them.
//!
//! Row/column order of every 4×4 matrix is `(ct, z, x, y)`, which is the same
//! slot order as the Stokes vector `(S0, S1, S2, S3)`. The metric is
//! `g = diag(1, -1, -1, -1)`.

use std::fmt;
use std::ops::Mul;

use num_complex::Complex64;

use crate::error::{finite, Error, Result};
use crate::polarization::{coherency_of_stokes, stokes_of_coherency};

/// Largest rapidity magnitude accepted by the checked generators.
pub const MAX_RAPIDITY: f64 = 50.0;

const METRIC: [f64; 4] = [1.0, -1.0, -1.0, -1.0];

const C0: Complex64 = Complex64::new(0.0, 0.0);
const C1: Complex64 = Complex64::new(1.0, 0.0);

/// A 2×2 complex matrix acting on Jones vectors.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Matrix2(pub [[Complex64; 2]; 2]);

/// A 4×4 real matrix acting on Stokes (or Minkowski) four-vectors.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Matrix4(pub [[f64; 4]; 4]);

impl Matrix2 {
    pub const IDENTITY: Matrix2 = Matrix2([[C1, C0], [C0, C1]]);

    pub fn new(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Self {
        Matrix2([[a, b], [c, d]])
    }

    pub fn from_real(a: f64, b: f64, c: f64, d: f64) -> Self {
        Matrix2([[a.into(), b.into()], [c.into(), d.into()]])
    }

    /// Squeeze `diag(e^{chi/2}, e^{-chi/2})`, unchecked.
    pub fn squeeze(chi: f64) -> Self {
        Matrix2::from_real((chi / 2.0).exp(), 0.0, 0.0, (-chi / 2.0).exp())
    }

    /// Half-angle rotation with entries `cos(phi/2)`, `∓sin(phi/2)`, unchecked.
    pub fn rotation(phi: f64) -> Self {
        let (s, c) = (phi / 2.0).sin_cos();
        Matrix2::from_real(c, -s, s, c)
    }

    /// Symmetric phase retarder `diag(e^{i delta/2}, e^{-i delta/2})`.
    pub fn phase(delta: f64) -> Self {
        Matrix2([
            [Complex64::from_polar(1.0, delta / 2.0), C0],
            [C0, Complex64::from_polar(1.0, -delta / 2.0)],
        ])
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.0[row][col]
    }

    pub fn det(&self) -> Complex64 {
        let m = &self.0;
        m[0][0] * m[1][1] - m[0][1] * m[1][0]
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        let m = &self.0;
        Matrix2([[m[0][0].conj(), m[1][0].conj()], [m[0][1].conj(), m[1][1].conj()]])
    }

    pub fn scale(&self, k: Complex64) -> Self {
        let m = &self.0;
        Matrix2([[m[0][0] * k, m[0][1] * k], [m[1][0] * k, m[1][1] * k]])
    }

    /// Largest `|a_ij - b_ij|` over all entries.
    pub fn max_abs_diff(&self, other: &Matrix2) -> f64 {
        let mut worst = 0.0_f64;
        for i in 0..2 {
            for j in 0..2 {
                worst = worst.max((self.0[i][j] - other.0[i][j]).norm());
            }
        }
        worst
    }

    /// Like [`Matrix2::max_abs_diff`], but treats `M` and `-M` as the same
    /// element (both map to one Lorentz transformation).
    pub fn max_abs_diff_up_to_sign(&self, other: &Matrix2) -> f64 {
        let neg = other.scale(-C1);
        self.max_abs_diff(other).min(self.max_abs_diff(&neg))
    }

    pub fn max_abs(&self) -> f64 {
        self.0.iter().flatten().fold(0.0, |acc, z| acc.max(z.norm()))
    }
}

impl Mul for Matrix2 {
    type Output = Matrix2;

    fn mul(self, rhs: Matrix2) -> Matrix2 {
        let (a, b) = (&self.0, &rhs.0);
        let mut out = [[C0; 2]; 2];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell = a[i][0] * b[0][j] + a[i][1] * b[1][j];
            }
        }
        Matrix2(out)
    }
}

impl Matrix4 {
    pub const IDENTITY: Matrix4 = Matrix4([
        [1.0, 0.0, 0.0, 0.0],
        [0.0, 1.0, 0.0, 0.0],
        [0.0, 0.0, 1.0, 0.0],
        [0.0, 0.0, 0.0, 1.0],
    ]);

    /// Boost along `z` with rapidity `chi`, unchecked.
    pub fn boost(chi: f64) -> Self {
        let (ch, sh) = (chi.cosh(), chi.sinh());
        Matrix4::boost_from_hyperbolic(ch, sh)
    }

    /// Boost along `z` given `cosh` and `sinh` of the rapidity directly.
    pub fn boost_from_hyperbolic(cosh: f64, sinh: f64) -> Self {
        let mut m = Matrix4::IDENTITY;
        m.0[0][0] = cosh;
        m.0[0][1] = sinh;
        m.0[1][0] = sinh;
        m.0[1][1] = cosh;
        m
    }

    /// Rotation by `phi` in the `z`–`x` plane (about `y`), unchecked.
    pub fn rotation(phi: f64) -> Self {
        let (s, c) = phi.sin_cos();
        let mut m = Matrix4::IDENTITY;
        m.0[1][1] = c;
        m.0[1][2] = -s;
        m.0[2][1] = s;
        m.0[2][2] = c;
        m
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.0[row][col]
    }

    pub fn transpose(&self) -> Self {
        let mut out = [[0.0; 4]; 4];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell = self.0[j][i];
            }
        }
        Matrix4(out)
    }

    pub fn apply(&self, v: [f64; 4]) -> [f64; 4] {
        let mut out = [0.0; 4];
        for (i, o) in out.iter_mut().enumerate() {
            *o = (0..4).map(|j| self.0[i][j] * v[j]).sum();
        }
        out
    }

    pub fn det(&self) -> f64 {
        // Laplace expansion over complementary 2×2 minors of rows (0,1) and (2,3).
        let m = &self.0;
        let minor = |r0: usize, r1: usize, c0: usize, c1: usize| m[r0][c0] * m[r1][c1] - m[r0][c1] * m[r1][c0];
        let pairs = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
        let mut det = 0.0;
        for (k, &(a, b)) in pairs.iter().enumerate() {
            let (c, d) = pairs[5 - k];
            let sign = if (a + b + 1) % 2 == 0 { 1.0 } else { -1.0 };
            det += sign * minor(0, 1, a, b) * minor(2, 3, c, d);
        }
        det
    }

    pub fn max_abs_diff(&self, other: &Matrix4) -> f64 {
        let mut worst = 0.0_f64;
        for i in 0..4 {
            for j in 0..4 {
                worst = worst.max((self.0[i][j] - other.0[i][j]).abs());
            }
        }
        worst
    }

    pub fn max_abs(&self) -> f64 {
        self.0.iter().flatten().fold(0.0, |acc, x| acc.max(x.abs()))
    }
}

impl Mul for Matrix4 {
    type Output = Matrix4;

    fn mul(self, rhs: Matrix4) -> Matrix4 {
        let mut out = [[0.0; 4]; 4];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell = (0..4).map(|k| self.0[i][k] * rhs.0[k][j]).sum();
            }
        }
        Matrix4(out)
    }
}

impl fmt::Display for Matrix4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, row) in self.0.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(
                f,
                "[{:>24.16e} {:>24.16e} {:>24.16e} {:>24.16e}]",
                row[0], row[1], row[2], row[3]
            )?;
        }
        Ok(())
    }
}

impl fmt::Display for Matrix2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, row) in self.0.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(
                f,
                "[{:>24.16e}{:+.16e}i {:>24.16e}{:+.16e}i]",
                row[0].re, row[0].im, row[1].re, row[1].im
            )?;
        }
        Ok(())
    }
}

fn checked_rapidity(chi: f64) -> Result<f64> {
    let chi = finite("rapidity", chi)?;
    if chi.abs() > MAX_RAPIDITY {
        return Err(Error::OutOfRange {
            name: "rapidity",
            value: chi,
            allowed: "[-50, 50]",
        });
    }
    Ok(chi)
}

/// Lorentz boost along `z`: `cosh chi`, `sinh chi` in the `(ct, z)` block.
pub fn boost4(chi: f64) -> Result<Matrix4> {
    checked_rapidity(chi).map(Matrix4::boost)
}

/// Rotation in the `z`–`x` plane.
pub fn rot4(phi: f64) -> Result<Matrix4> {
    finite("angle", phi).map(Matrix4::rotation)
}

/// Jones-side image of [`boost4`].
pub fn boost2(chi: f64) -> Result<Matrix2> {
    checked_rapidity(chi).map(Matrix2::squeeze)
}

/// Jones-side image of [`rot4`]; carries half angles, so `rot2(2π) = -I`.
pub fn rot2(phi: f64) -> Result<Matrix2> {
    finite("angle", phi).map(Matrix2::rotation)
}

/// Outcome of a Lorentz-condition check.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LorentzCheck {
    pub is_lorentz: bool,
    /// `max |ΛᵀgΛ - g|`
    pub residual: f64,
}

pub fn lorentz_residual(m: &Matrix4) -> f64 {
    let mut worst = 0.0_f64;
    for i in 0..4 {
        for j in 0..4 {
            let v: f64 = (0..4).map(|k| m.0[k][i] * METRIC[k] * m.0[k][j]).sum();
            let g = if i == j { METRIC[i] } else { 0.0 };
            worst = worst.max((v - g).abs());
        }
    }
    worst
}

/// `true` iff `max |ΛᵀgΛ - g| < tol`.
pub fn is_lorentz(m: &Matrix4, tol: f64) -> LorentzCheck {
    let residual = lorentz_residual(m);
    LorentzCheck {
        is_lorentz: residual < tol,
        residual,
    }
}

/// Image of `m` acting by conjugation `C ↦ m C m†` on Stokes space, without
/// any validity checks. Column `k` is the Stokes vector of `m C_k m†` where
/// `C_k` is the coherency matrix of the `k`-th Stokes basis vector.
pub(crate) fn conjugation_image(m: &Matrix2) -> Matrix4 {
    let adj = m.adjoint();
    let mut out = [[0.0; 4]; 4];
    for k in 0..4 {
        let mut basis = [0.0; 4];
        basis[k] = 1.0;
        let c = Matrix2(coherency_of_stokes(basis));
        let image = (*m * c) * adj;
        let s = stokes_of_coherency(&image.0);
        for (row, value) in out.iter_mut().zip(s) {
            row[k] = value;
        }
    }
    Matrix4(out)
}

/// The unique Mueller matrix `Λ` with `stokes(m C m†) = Λ · stokes(C)`.
///
/// Rejects inputs whose determinant strays from 1 by more than `1e-6`
/// (relative to the entry scale), and any result that fails the Lorentz
/// condition at the same relative tolerance.
pub fn mueller_from_jones(m: &Matrix2) -> Result<Matrix4> {
    let scale = m.max_abs().max(1.0).powi(2);
    let det_err = (m.det() - C1).norm();
    if det_err > 1e-6 * scale {
        return Err(Error::NotUnimodular(det_err));
    }
    let out = conjugation_image(m);
    let residual = lorentz_residual(&out);
    if residual > 1e-6 * out.max_abs().max(1.0).powi(2) {
        return Err(Error::NotLorentz(residual));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    // Frozen from a 40-digit mpmath evaluation.
    const COSH_1: f64 = 1.543_080_634_815_243_7;
    const SINH_1: f64 = 1.175_201_193_643_801_6;
    const EXP_HALF: f64 = 1.648_721_270_700_128_1;
    const EXP_MINUS_HALF: f64 = 0.606_530_659_712_633_4;

    #[test]
    fn boost4_examples() {
        assert_eq!(boost4(0.0).unwrap(), Matrix4::IDENTITY);
        let sum = boost4(0.3).unwrap() * boost4(0.7).unwrap();
        assert!(sum.max_abs_diff(&boost4(1.0).unwrap()) < 1e-12);
        let b = boost4(1.0).unwrap();
        assert!((b.get(0, 0) - COSH_1).abs() < 1e-15);
        assert!((b.get(0, 1) - SINH_1).abs() < 1e-15);
    }

    #[test]
    fn generators_reject_bad_input() {
        assert!(matches!(boost4(f64::NAN), Err(Error::NonFinite { .. })));
        assert!(matches!(boost4(50.5), Err(Error::OutOfRange { .. })));
        assert!(boost4(-50.0).is_ok());
        assert!(rot4(f64::INFINITY).is_err());
        assert!(boost2(f64::NEG_INFINITY).is_err());
        assert!(rot2(f64::NAN).is_err());
    }

    #[test]
    fn rot4_examples() {
        assert_eq!(rot4(0.0).unwrap(), Matrix4::IDENTITY);
        let half = rot4(PI).unwrap();
        let expected = Matrix4([
            [1.0, 0.0, 0.0, 0.0],
            [0.0, -1.0, 0.0, 0.0],
            [0.0, 0.0, -1.0, 0.0],
            [0.0, 0.0, 0.0, 1.0],
        ]);
        assert!(half.max_abs_diff(&expected) < 1e-15);
        let ab = rot4(0.4).unwrap() * rot4(1.1).unwrap();
        assert!(ab.max_abs_diff(&rot4(1.5).unwrap()) < 1e-12);
    }

    #[test]
    fn boost2_examples() {
        assert_eq!(boost2(0.0).unwrap(), Matrix2::IDENTITY);
        let b = boost2(1.0).unwrap();
        assert!((b.get(0, 0).re - EXP_HALF).abs() < 1e-15);
        assert!((b.get(1, 1).re - EXP_MINUS_HALF).abs() < 1e-15);
        assert_eq!(b.get(0, 1), C0);
        assert!((boost2(2.3).unwrap().det() - C1).norm() < 1e-12);
    }

    #[test]
    fn rot2_examples() {
        assert_eq!(rot2(0.0).unwrap(), Matrix2::IDENTITY);
        let full = rot2(2.0 * PI).unwrap();
        assert!(full.max_abs_diff(&Matrix2::IDENTITY.scale(-C1)) < 1e-15);
        let image = mueller_from_jones(&rot2(0.8).unwrap()).unwrap();
        assert!(image.max_abs_diff(&rot4(0.8).unwrap()) < 1e-10);
    }

    #[test]
    fn is_lorentz_examples() {
        let id = is_lorentz(&Matrix4::IDENTITY, 1e-12);
        assert!(id.is_lorentz);
        assert_eq!(id.residual, 0.0);
        assert!(is_lorentz(&boost4(2.0).unwrap(), 1e-9).is_lorentz);
        let mut bad = Matrix4::IDENTITY;
        bad.0[0][0] += 1e-3;
        assert!(!is_lorentz(&bad, 1e-9).is_lorentz);
    }

    #[test]
    fn determinant_of_generators() {
        let m = boost4(1.3).unwrap() * rot4(0.7).unwrap() * boost4(-0.4).unwrap();
        assert!((m.det() - 1.0).abs() < 1e-12);
        assert!((rot4(PI).unwrap().det() - 1.0).abs() < 1e-15);
        let flip = Matrix4([
            [1.0, 0.0, 0.0, 0.0],
            [0.0, -1.0, 0.0, 0.0],
            [0.0, 0.0, 1.0, 0.0],
            [0.0, 0.0, 0.0, 1.0],
        ]);
        assert_eq!(flip.det(), -1.0);
    }

    #[test]
    fn mueller_of_identity_and_boost() {
        assert!(
            mueller_from_jones(&Matrix2::IDENTITY)
                .unwrap()
                .max_abs_diff(&Matrix4::IDENTITY)
                < 1e-15
        );
        // Hand-pushed basis: x-polarized (1,1,0,0) scales by e^{chi}, y-polarized
        // (1,-1,0,0) by e^{-chi}; so (ct,z) block is cosh/sinh, the rest identity.
        let chi: f64 = 0.9;
        let mut expected = Matrix4::IDENTITY;
        expected.0[0][0] = (chi.exp() + (-chi).exp()) / 2.0;
        expected.0[1][1] = expected.0[0][0];
        expected.0[0][1] = (chi.exp() - (-chi).exp()) / 2.0;
        expected.0[1][0] = expected.0[0][1];
        let image = mueller_from_jones(&boost2(chi).unwrap()).unwrap();
        assert!(image.max_abs_diff(&expected) < 1e-10);
    }

    #[test]
    fn mueller_is_multiplicative() {
        let a = rot2(0.3).unwrap();
        let b = boost2(1.2).unwrap();
        let lhs = mueller_from_jones(&(a * b)).unwrap();
        let rhs = mueller_from_jones(&a).unwrap() * mueller_from_jones(&b).unwrap();
        assert!(lhs.max_abs_diff(&rhs) < 1e-10);
    }

    #[test]
    fn mueller_rejects_non_unimodular() {
        let m = Matrix2::from_real(2.0, 0.0, 0.0, 1.0);
        assert!(matches!(mueller_from_jones(&m), Err(Error::NotUnimodular(_))));
    }

    #[test]
    fn up_to_sign_comparison() {
        let r = Matrix2::rotation(0.9);
        let neg = r.scale(-C1);
        assert!(r.max_abs_diff(&neg) > 1.0);
        assert_eq!(r.max_abs_diff_up_to_sign(&neg), 0.0);
    }
}
