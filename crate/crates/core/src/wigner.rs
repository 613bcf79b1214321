//! Wigner rotation from three non-collinear boosts.
//!
//! A particle at rest, `(m, 0, 0, 0)`, is boosted along `z` with rapidity
//! `eta` (B1), boosted again so its momentum turns by `theta` in the `z`–`x`
//! plane (B2), then boosted back to rest (B3). The product `B3·B2·B1` is not
//! the identity but a rotation about `y` by the Wigner angle `omega`. On the
//! optics side each boost is one attenuator.

use std::f64::consts::{FRAC_PI_2, PI};

use crate::error::{finite, Error, Result};
use crate::filter::{FilterChain, FilterElement};
use crate::matrix::{Matrix2, Matrix4, MAX_RAPIDITY};
use crate::polarization::MinkowskiVector;

/// First-boost rapidity and turn angle, plus the quantities derived from them.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct WignerParams {
    pub eta: f64,
    pub theta: f64,
    /// Rapidity of the second boost: `2 atanh(sin(theta/2) tanh(eta))`.
    pub lambda: f64,
    /// Direction of the second boost: `theta/2 + π/2`.
    pub psi: f64,
    pub omega: f64,
}

impl WignerParams {
    pub fn new(eta: f64, theta: f64) -> Result<Self> {
        if finite("eta", eta)?.abs() > MAX_RAPIDITY {
            return Err(Error::OutOfRange {
                name: "eta",
                value: eta,
                allowed: "[-50, 50]",
            });
        }
        if !(finite("theta", theta)?.abs() < PI) {
            return Err(Error::OutOfRange {
                name: "theta",
                value: theta,
                allowed: "(-pi, pi)",
            });
        }
        Ok(WignerParams {
            eta,
            theta,
            lambda: second_rapidity(eta, theta),
            psi: second_direction(theta),
            omega: wigner_angle(eta, theta),
        })
    }
}

pub fn second_rapidity(eta: f64, theta: f64) -> f64 {
    2.0 * ((theta / 2.0).sin() * eta.tanh()).atanh()
}

pub fn second_direction(theta: f64) -> f64 {
    theta / 2.0 + FRAC_PI_2
}

/// Boost along `z` taking the rest momentum to `m(cosh eta, sinh eta, 0, 0)`.
pub fn boost_b1(eta: f64) -> Matrix4 {
    Matrix4::boost(eta)
}

/// `R(psi)·B(lambda)·R(-psi)`: carries `P_b` to `P_c`, the momentum turned by `theta`.
pub fn boost_b2(eta: f64, theta: f64) -> Matrix4 {
    let psi = second_direction(theta);
    Matrix4::rotation(psi) * Matrix4::boost(second_rapidity(eta, theta)) * Matrix4::rotation(-psi)
}

/// `R(theta)·B(-eta)·R(-theta)`: brings `P_c` back to rest.
pub fn boost_b3(eta: f64, theta: f64) -> Matrix4 {
    Matrix4::rotation(theta) * Matrix4::boost(-eta) * Matrix4::rotation(-theta)
}

/// Four-momentum after the first boost, for mass `m`.
pub fn momentum_b(m: f64, eta: f64) -> MinkowskiVector {
    MinkowskiVector::new(m * eta.cosh(), m * eta.sinh(), 0.0, 0.0)
}

/// `momentum_b` turned by `theta` about `y`.
pub fn momentum_c(m: f64, eta: f64, theta: f64) -> MinkowskiVector {
    let (s, c) = theta.sin_cos();
    MinkowskiVector::new(m * eta.cosh(), m * eta.sinh() * c, m * eta.sinh() * s, 0.0)
}

/// Closed-form Wigner angle, in `(-π, π]`.
pub fn wigner_angle(eta: f64, theta: f64) -> f64 {
    let sh_half = (eta / 2.0).sinh();
    let num = theta.sin() * sh_half * sh_half;
    let s = (theta / 2.0).sin();
    let ch = eta.cosh();
    let sh = eta.sinh();
    let den = (ch * ch - sh * sh * s * s).sqrt();
    let arg = num / den;
    debug_assert!(arg.abs() <= 1.0 + 1e-12, "asin argument {arg}");
    2.0 * arg.clamp(-1.0, 1.0).asin()
}

/// Rotation angle of the `z`–`x` block: `atan2(Λ[x][z], Λ[z][z])`.
pub fn rotation_angle_zx(m: &Matrix4) -> f64 {
    m.get(2, 1).atan2(m.get(1, 1))
}

/// `B3·B2·B1` and the rotation angle extracted from it.
pub fn wigner_product(eta: f64, theta: f64) -> (Matrix4, f64) {
    let w = boost_b3(eta, theta) * boost_b2(eta, theta) * boost_b1(eta);
    let omega = rotation_angle_zx(&w);
    (w, omega)
}

/// `max |B3·B2·B1 - W(omega)|` with `omega` from the closed form.
pub fn closure_residual(eta: f64, theta: f64) -> f64 {
    let (w, _) = wigner_product(eta, theta);
    w.max_abs_diff(&Matrix4::rotation(wigner_angle(eta, theta)))
}

/// Jones-side counterparts `(S1, S2, S3)` of the three boosts.
pub fn jones_triplet(eta: f64, theta: f64) -> [Matrix2; 3] {
    let psi = second_direction(theta);
    let s1 = Matrix2::squeeze(eta);
    let s2 = Matrix2::rotation(psi) * Matrix2::squeeze(second_rapidity(eta, theta)) * Matrix2::rotation(-psi);
    let s3 = Matrix2::rotation(theta) * Matrix2::squeeze(-eta) * Matrix2::rotation(-theta);
    [s1, s2, s3]
}

/// Entry tables for the multiplied-out B2, B3 and S2.
pub mod closed_form {
    use crate::matrix::{Matrix2, Matrix4};

    use super::second_rapidity;

    pub fn boost_b2(eta: f64, theta: f64) -> Matrix4 {
        let l = second_rapidity(eta, theta);
        let (sh, ch) = (l.sinh(), l.cosh());
        let (s, c) = (theta / 2.0).sin_cos();
        let shh = (l / 2.0).sinh();
        let off = -theta.sin() * shh * shh;
        Matrix4([
            [ch, -s * sh, c * sh, 0.0],
            [-s * sh, 1.0 + s * s * (ch - 1.0), off, 0.0],
            [c * sh, off, 1.0 + c * c * (ch - 1.0), 0.0],
            [0.0, 0.0, 0.0, 1.0],
        ])
    }

    pub fn boost_b3(eta: f64, theta: f64) -> Matrix4 {
        let (sh, ch) = (eta.sinh(), eta.cosh());
        let (s, c) = theta.sin_cos();
        Matrix4([
            [ch, -c * sh, -s * sh, 0.0],
            [-c * sh, 1.0 + c * c * (ch - 1.0), s * c * (ch - 1.0), 0.0],
            [-s * sh, s * c * (ch - 1.0), 1.0 + s * s * (ch - 1.0), 0.0],
            [0.0, 0.0, 0.0, 1.0],
        ])
    }

    pub fn jones_s2(eta: f64, theta: f64) -> Matrix2 {
        let l = second_rapidity(eta, theta);
        let (sh, ch) = ((l / 2.0).sinh(), (l / 2.0).cosh());
        let (s, c) = (theta / 2.0).sin_cos();
        Matrix2::from_real(ch - s * sh, c * sh, c * sh, ch + s * sh)
    }

    pub fn jones_s3(eta: f64, theta: f64) -> Matrix2 {
        let (sh, ch) = ((eta / 2.0).sinh(), (eta / 2.0).cosh());
        let (s, c) = theta.sin_cos();
        Matrix2::from_real(ch - c * sh, -s * sh, -s * sh, ch + c * sh)
    }
}

/// Largest reachable `|omega|` for a given `eta`, and the `theta` in `(0, π)`
/// where it occurs.
pub fn max_wigner_angle(eta: f64) -> (f64, f64) {
    const SAMPLES: usize = 64;
    let f = |t: f64| wigner_angle(eta, t).abs();
    let step = PI / SAMPLES as f64;
    let best = (1..SAMPLES)
        .map(|i| (i, f(i as f64 * step)))
        .fold(
            (1, f64::NEG_INFINITY),
            |acc, (i, v)| if v > acc.1 { (i, v) } else { acc },
        );

    // Golden-section refinement inside the neighbouring cells.
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let (mut lo, mut hi) = ((best.0 - 1) as f64 * step, (best.0 + 1) as f64 * step);
    let mut a = hi - inv_phi * (hi - lo);
    let mut b = lo + inv_phi * (hi - lo);
    let (mut fa, mut fb) = (f(a), f(b));
    while hi - lo > 1e-13 {
        if fa < fb {
            lo = a;
            a = b;
            fa = fb;
            b = lo + inv_phi * (hi - lo);
            fb = f(b);
        } else {
            hi = b;
            b = a;
            fb = fa;
            a = hi - inv_phi * (hi - lo);
            fa = f(a);
        }
    }
    let theta = (lo + hi) / 2.0;
    let candidates = [(theta, f(theta)), (best.0 as f64 * step, best.1)];
    let (theta, omega) = candidates
        .into_iter()
        .fold((0.0, f64::NEG_INFINITY), |acc, c| if c.1 > acc.1 { c } else { acc });
    (theta, omega)
}

/// The `theta` on the ascending branch whose Wigner angle is `omega`.
/// Negative `omega` gives negative `theta`.
pub fn solve_theta(omega: f64, eta: f64) -> Result<f64> {
    let omega = finite("omega", omega)?;
    if !(finite("eta", eta)? > 0.0 && eta <= MAX_RAPIDITY) {
        return Err(Error::OutOfRange {
            name: "eta",
            value: eta,
            allowed: "(0, 50]",
        });
    }
    if omega == 0.0 {
        return Ok(0.0);
    }
    let (theta_max, omega_max) = max_wigner_angle(eta);
    let target = omega.abs();
    if target > omega_max {
        return Err(Error::Unreachable {
            target: omega,
            max: omega_max,
        });
    }
    let (mut lo, mut hi) = (0.0_f64, theta_max);
    while hi - lo > 1e-12 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if wigner_angle(eta, mid) < target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(omega.signum() * 0.5 * (lo + hi))
}

fn wrap_angle(a: f64) -> f64 {
    if a > PI {
        a - 2.0 * PI
    } else if a <= -PI {
        a + 2.0 * PI
    } else {
        a
    }
}

/// Three attenuators realizing `B1`, `B2`, `B3` in encounter order. The third
/// squeezes with rapidity `+eta` along the axis opposite `theta`, which is the
/// same element as rapidity `-eta` along `theta`.
pub fn wigner_chain(params: &WignerParams) -> FilterChain {
    FilterChain::from_elements(vec![
        FilterElement::Attenuator {
            eta: params.eta,
            axis: 0.0,
            transmittance: 1.0,
        },
        FilterElement::Attenuator {
            eta: params.lambda,
            axis: params.psi,
            transmittance: 1.0,
        },
        FilterElement::Attenuator {
            eta: params.eta,
            axis: wrap_angle(params.theta + PI),
            transmittance: 1.0,
        },
    ])
    .expect("finite parameters")
}

/// Three-attenuator chain whose net effect is a rotation by `omega_target`.
pub fn synthesize_rotation(omega_target: f64, eta: f64) -> Result<FilterChain> {
    let theta = solve_theta(omega_target, eta)?;
    Ok(wigner_chain(&WignerParams::new(eta, theta)?))
}
