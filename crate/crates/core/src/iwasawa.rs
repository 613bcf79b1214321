//! Shear transformations of a massless momentum and their Iwasawa
//! factorization into one squeeze and one rotation.
//!
//! `K_a = (k, k, 0, 0)` is rotated to `K_b` by `R+`, boosted along `z` to
//! `K_c`, and rotated back to `K_a` by `R-`. The product `R-·B(gamma)·R+` is
//! the shear `T(u)` with `u = -2 tan(alpha)`; in 2×2 form it is `[[1, u], [0, 1]]`.

use std::f64::consts::FRAC_PI_2;

use crate::error::{finite, Error, Result};
use crate::filter::{FilterChain, FilterElement};
use crate::matrix::{Matrix2, Matrix4};
use crate::polarization::MinkowskiVector;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct IwasawaParams {
    pub alpha: f64,
    /// `alpha + π/2`
    pub alpha_plus: f64,
    /// `alpha - π/2`
    pub alpha_minus: f64,
    pub gamma: f64,
    pub cosh_gamma: f64,
    pub sinh_gamma: f64,
    pub u: f64,
}

impl IwasawaParams {
    pub fn from_alpha(alpha: f64) -> Result<Self> {
        if !(finite("alpha", alpha)?.abs() < FRAC_PI_2) {
            return Err(Error::OutOfRange {
                name: "alpha",
                value: alpha,
                allowed: "(-pi/2, pi/2)",
            });
        }
        let (sinh_gamma, cosh_gamma) = hyperbolic_of_alpha(alpha);
        Ok(IwasawaParams {
            alpha,
            alpha_plus: alpha + FRAC_PI_2,
            alpha_minus: alpha - FRAC_PI_2,
            gamma: sinh_gamma.asinh(),
            cosh_gamma,
            sinh_gamma,
            u: -2.0 * alpha.tan(),
        })
    }

    /// Principal branch `alpha = atan(-u/2)`.
    pub fn from_u(u: f64) -> Result<Self> {
        let mut p = IwasawaParams::from_alpha((-finite("u", u)? / 2.0).atan())?;
        p.u = u;
        Ok(p)
    }

    /// `cosh(gamma/2) = 1/cos(alpha)`.
    pub fn cosh_half_gamma(&self) -> f64 {
        1.0 / self.alpha.cos()
    }

    /// `sinh(gamma/2) = tan(alpha)`.
    pub fn sinh_half_gamma(&self) -> f64 {
        self.alpha.tan()
    }
}

/// `(sinh gamma, cosh gamma) = (2 sin a / cos² a, (1 + sin² a) / cos² a)`.
fn hyperbolic_of_alpha(alpha: f64) -> (f64, f64) {
    let (s, c) = alpha.sin_cos();
    let c2 = c * c;
    (2.0 * s / c2, (1.0 + s * s) / c2)
}

/// Massless momentum along `z`.
pub fn momentum_a(k: f64) -> MinkowskiVector {
    MinkowskiVector::new(k, k, 0.0, 0.0)
}

pub fn momentum_b(k: f64, alpha: f64) -> MinkowskiVector {
    let (s, c) = alpha.sin_cos();
    MinkowskiVector::new(k, -k * s, k * c, 0.0)
}

pub fn momentum_c(k: f64, alpha: f64) -> MinkowskiVector {
    let (s, c) = alpha.sin_cos();
    MinkowskiVector::new(k, k * s, k * c, 0.0)
}

/// `rot4(alpha ± π/2)`.
pub fn rot_pm(alpha: f64, sign: Sign) -> Matrix4 {
    Matrix4::rotation(shifted(alpha, sign))
}

/// Jones form of [`rot_pm`].
pub fn rot_pm2(alpha: f64, sign: Sign) -> Matrix2 {
    Matrix2::rotation(shifted(alpha, sign))
}

fn shifted(alpha: f64, sign: Sign) -> f64 {
    match sign {
        Sign::Plus => alpha + FRAC_PI_2,
        Sign::Minus => alpha - FRAC_PI_2,
    }
}

/// Boost along `z` taking `K_b` to `K_c`, built from the `alpha` expressions
/// for `cosh gamma` and `sinh gamma`.
pub fn boost_gamma(alpha: f64) -> Matrix4 {
    let (sh, ch) = hyperbolic_of_alpha(alpha);
    Matrix4::boost_from_hyperbolic(ch, sh)
}

/// Jones form of [`boost_gamma`]: `diag(e^{gamma/2}, e^{-gamma/2})`.
pub fn squeeze_gamma(alpha: f64) -> Matrix2 {
    let (sh, _) = hyperbolic_of_alpha(alpha);
    Matrix2::squeeze(sh.asinh())
}

/// The 4×4 shear leaving `(k, k, 0, 0)` fixed.
pub fn shear4(u: f64) -> Matrix4 {
    let h = u * u / 2.0;
    Matrix4([
        [1.0 + h, -h, u, 0.0],
        [h, 1.0 - h, u, 0.0],
        [u, -u, 1.0, 0.0],
        [0.0, 0.0, 0.0, 1.0],
    ])
}

/// `[[1, u], [0, 1]]`.
pub fn shear2(u: f64) -> Matrix2 {
    Matrix2::from_real(1.0, u, 0.0, 1.0)
}

/// Squeeze `S(alpha-)` and rotation `R(2 alpha)` with `S·R = shear2(u)`.
pub fn iwasawa_factors(u: f64) -> Result<(Matrix2, Matrix2, IwasawaParams)> {
    let p = IwasawaParams::from_u(u)?;
    let (ch, sh) = (p.cosh_half_gamma(), p.sinh_half_gamma());
    let (sm, cm) = p.alpha_minus.sin_cos();
    let squeeze = Matrix2::from_real(ch + cm * sh, sm * sh, sm * sh, ch - cm * sh);
    let (s, c) = p.alpha.sin_cos();
    let rotation = Matrix2::from_real(c, -s, s, c);
    Ok((squeeze, rotation, p))
}

impl IwasawaParams {
    /// Two filters realizing `shear2(u)`: a rotator by `2 alpha`, then an
    /// attenuator of rapidity `gamma` with axis parameter `alpha-` (its
    /// physical squeeze direction is `alpha-/2`).
    pub fn two_filter_chain(&self) -> Result<FilterChain> {
        FilterChain::from_elements(vec![
            FilterElement::rotator(2.0 * self.alpha)?,
            FilterElement::attenuator(self.gamma, self.alpha_minus)?,
        ])
    }

    /// `R+`, `S`, `R-` in encounter order.
    pub fn three_filter_chain(&self) -> Result<FilterChain> {
        FilterChain::from_elements(vec![
            FilterElement::rotator(self.alpha_plus)?,
            FilterElement::attenuator(self.gamma, 0.0)?,
            FilterElement::rotator(self.alpha_minus)?,
        ])
    }
}

pub fn synthesize_shear(u: f64) -> Result<FilterChain> {
    IwasawaParams::from_u(u)?.two_filter_chain()
}

pub fn synthesize_shear_three(u: f64) -> Result<FilterChain> {
    IwasawaParams::from_u(u)?.three_filter_chain()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::filter::{compose, verify, Target};
    use crate::matrix::mueller_from_jones;
    use std::f64::consts::{FRAC_PI_4, FRAC_PI_6, PI, SQRT_2};

    #[test]
    fn rot_pm_examples() {
        let r = rot_pm(0.0, Sign::Plus);
        assert!(r.max_abs_diff(&Matrix4::rotation(FRAC_PI_2)) < 1e-15);
        let kb = momentum_a(1.0).transform(&r);
        assert!(kb.max_abs_diff(&MinkowskiVector::new(1.0, 0.0, 1.0, 0.0)) < 1e-15);

        let kb = momentum_a(1.0).transform(&rot_pm(FRAC_PI_4, Sign::Plus));
        let h = SQRT_2 / 2.0;
        assert!(kb.max_abs_diff(&MinkowskiVector::new(1.0, -h, h, 0.0)) < 1e-15);

        let prod = rot_pm(0.3, Sign::Plus) * rot_pm(0.3, Sign::Minus);
        assert!(prod.max_abs_diff(&Matrix4::rotation(0.6)) < 1e-15);
    }

    #[test]
    fn boost_gamma_examples() {
        assert_eq!(boost_gamma(0.0), Matrix4::IDENTITY);
        let b = boost_gamma(FRAC_PI_4);
        assert!((b.get(0, 0) - 3.0).abs() < 1e-14);
        assert!((b.get(0, 1) - 2.0 * SQRT_2).abs() < 1e-14);
        let kc = momentum_b(1.0, FRAC_PI_6).transform(&boost_gamma(FRAC_PI_6));
        assert!(kc.max_abs_diff(&momentum_c(1.0, FRAC_PI_6)) < 1e-12);
    }

    #[test]
    fn shear4_examples() {
        assert_eq!(shear4(0.0), Matrix4::IDENTITY);
        let k = momentum_a(1.0);
        assert_eq!(k.transform(&shear4(-2.0)), k);
        let u = -2.0 * FRAC_PI_6.tan();
        let triple = rot_pm(FRAC_PI_6, Sign::Minus) * boost_gamma(FRAC_PI_6) * rot_pm(FRAC_PI_6, Sign::Plus);
        assert!(triple.max_abs_diff(&shear4(u)) < 1e-10);
    }

    #[test]
    fn shear2_examples() {
        assert_eq!(shear2(0.0), Matrix2::IDENTITY);
        let image = mueller_from_jones(&shear2(1.5)).unwrap();
        assert!(image.max_abs_diff(&shear4(1.5)) < 1e-10);
        assert!((shear2(0.4) * shear2(-1.1)).max_abs_diff(&shear2(-0.7)) < 1e-15);
    }

    #[test]
    fn factor_examples() {
        let (s, r, p) = iwasawa_factors(0.0).unwrap();
        assert_eq!(p.alpha, 0.0);
        assert!(s.max_abs_diff(&Matrix2::IDENTITY) < 1e-15);
        assert_eq!(r, Matrix2::IDENTITY);

        let (s, r, p) = iwasawa_factors(-2.0).unwrap();
        assert!((p.alpha - FRAC_PI_4).abs() < 1e-15);
        assert!((p.gamma - 1.762_747_174_039_086).abs() < 1e-14);
        assert!((p.cosh_half_gamma() - SQRT_2).abs() < 1e-15);
        assert!((s * r).max_abs_diff(&shear2(-2.0)) < 1e-14);

        let (s, r, _) = iwasawa_factors(0.8).unwrap();
        assert!((s.det().re - 1.0).abs() < 1e-14);
        assert_eq!(s.get(0, 1), s.get(1, 0));
        assert!((r * r.adjoint()).max_abs_diff(&Matrix2::IDENTITY) < 1e-15);
    }

    #[test]
    fn synthesis_examples() {
        let c = compose(&synthesize_shear(0.0).unwrap());
        assert!(c.jones.max_abs_diff_up_to_sign(&Matrix2::IDENTITY) < 1e-15);

        let chain = synthesize_shear(-2.0).unwrap();
        let report = verify(&chain, &Target::Jones(shear2(-2.0)), 1e-9);
        assert!(report.passed, "{}", report.residual_maxabs);
        let k = compose(&chain).mueller.apply([1.0, 1.0, 0.0, 0.0]);
        assert!(MinkowskiVector::from_array(k).max_abs_diff(&momentum_a(1.0)) < 1e-9);

        let mismatch = verify(&chain, &Target::Jones(shear2(-2.1)), 1e-9);
        assert!(!mismatch.passed);
        assert!((mismatch.residual_maxabs - 0.1).abs() < 1e-9);

        let three = synthesize_shear_three(-2.0).unwrap();
        assert!(verify(&three, &Target::Jones(shear2(-2.0)), 1e-9).passed);
    }

    #[test]
    fn squeeze_direction() {
        let (s, _, p) = iwasawa_factors(1.3).unwrap();
        let diag = Matrix2::rotation(-p.alpha_minus) * s * Matrix2::rotation(p.alpha_minus);
        assert!(diag.get(0, 1).norm() < 1e-10 && diag.get(1, 0).norm() < 1e-10);
    }

    #[test]
    fn params_invariants() {
        let p = IwasawaParams::from_alpha(0.9).unwrap();
        assert!((p.alpha_plus + p.alpha_minus - 1.8).abs() < 1e-15);
        assert!((p.alpha_plus - p.alpha_minus - PI).abs() < 1e-15);
        assert!((p.cosh_gamma.powi(2) - p.sinh_gamma.powi(2) - 1.0).abs() < 1e-12);
        assert!((p.cosh_half_gamma() * p.alpha.cos() - 1.0).abs() < 1e-12);
        assert!(((p.gamma / 2.0).cosh() - p.cosh_half_gamma()).abs() < 1e-12);
        assert!(IwasawaParams::from_alpha(FRAC_PI_2).is_err());
        assert!(IwasawaParams::from_u(f64::NAN).is_err());
        assert_eq!(IwasawaParams::from_u(3.5).unwrap().u, 3.5);
    }
}
