//! Physical filter elements and ordered filter chains.
//!
//! A chain lists elements in the order light meets them, so the composed
//! matrix is the reversed product `E_n ⋯ E_1`.

use num_complex::Complex64;

use crate::error::{finite, Error, Result};
use crate::matrix::{conjugation_image, mueller_from_jones, Matrix2, Matrix4, MAX_RAPIDITY};
use crate::polarization::{JonesVector, StokesVector};

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum FilterElement {
    /// Neutral squeeze of rapidity `eta` along `axis` (half-angle convention:
    /// the Jones matrix is `rot2(axis)·boost2(eta)·rot2(-axis)`), times an
    /// intensity transmittance in `(0, 1]`.
    Attenuator {
        eta: f64,
        axis: f64,
        transmittance: f64,
    },
    Rotator {
        phi: f64,
    },
    PhaseShifter {
        delta: f64,
    },
}

impl FilterElement {
    pub fn attenuator(eta: f64, axis: f64) -> Result<Self> {
        FilterElement::lossy_attenuator(eta, axis, 1.0)
    }

    pub fn lossy_attenuator(eta: f64, axis: f64, transmittance: f64) -> Result<Self> {
        let e = FilterElement::Attenuator {
            eta,
            axis,
            transmittance,
        };
        e.validate()?;
        Ok(e)
    }

    pub fn rotator(phi: f64) -> Result<Self> {
        let e = FilterElement::Rotator { phi };
        e.validate()?;
        Ok(e)
    }

    pub fn phase_shifter(delta: f64) -> Result<Self> {
        let e = FilterElement::PhaseShifter { delta };
        e.validate()?;
        Ok(e)
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            FilterElement::Attenuator {
                eta,
                axis,
                transmittance,
            } => {
                if finite("eta", eta)?.abs() > MAX_RAPIDITY {
                    return Err(Error::OutOfRange {
                        name: "eta",
                        value: eta,
                        allowed: "[-50, 50]",
                    });
                }
                finite("axis", axis)?;
                let t = finite("transmittance", transmittance)?;
                if !(t > 0.0 && t <= 1.0) {
                    return Err(Error::OutOfRange {
                        name: "transmittance",
                        value: t,
                        allowed: "(0, 1]",
                    });
                }
            }
            FilterElement::Rotator { phi } => {
                finite("phi", phi)?;
            }
            FilterElement::PhaseShifter { delta } => {
                finite("delta", delta)?;
            }
        }
        Ok(())
    }

    pub fn transmittance(&self) -> f64 {
        match *self {
            FilterElement::Attenuator { transmittance, .. } => transmittance,
            _ => 1.0,
        }
    }

    /// Unimodular Jones matrix and intensity transmittance.
    pub fn jones(&self) -> (Matrix2, f64) {
        let m = match *self {
            FilterElement::Attenuator { eta, axis, .. } => {
                if axis == 0.0 {
                    Matrix2::squeeze(eta)
                } else {
                    Matrix2::rotation(axis) * Matrix2::squeeze(eta) * Matrix2::rotation(-axis)
                }
            }
            FilterElement::Rotator { phi } => Matrix2::rotation(phi),
            FilterElement::PhaseShifter { delta } => Matrix2::phase(delta),
        };
        (m, self.transmittance())
    }

    /// Mueller (Lorentz) matrix of the unimodular part and intensity transmittance.
    pub fn mueller(&self) -> Result<(Matrix4, f64)> {
        let (m, t) = self.jones();
        Ok((mueller_from_jones(&m)?, t))
    }
}

pub fn element_jones(e: &FilterElement) -> (Matrix2, f64) {
    e.jones()
}

pub fn element_mueller(e: &FilterElement) -> Result<(Matrix4, f64)> {
    e.mueller()
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct FilterChain {
    elements: Vec<FilterElement>,
}

impl FilterChain {
    pub fn new() -> Self {
        FilterChain::default()
    }

    pub fn from_elements(elements: Vec<FilterElement>) -> Result<Self> {
        for e in &elements {
            e.validate()?;
        }
        Ok(FilterChain { elements })
    }

    pub fn push(&mut self, e: FilterElement) -> Result<()> {
        e.validate()?;
        self.elements.push(e);
        Ok(())
    }

    pub fn elements(&self) -> &[FilterElement] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// `self` followed by `next` on the optical bench.
    pub fn then(&self, next: &FilterChain) -> FilterChain {
        let mut elements = self.elements.clone();
        elements.extend_from_slice(&next.elements);
        FilterChain { elements }
    }

    pub fn compose(&self) -> Composition {
        compose(self)
    }
}

/// Net effect of a chain in both representations.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Composition {
    pub jones: Matrix2,
    pub mueller: Matrix4,
    pub transmittance: f64,
}

/// Multiplies out a chain; an empty chain gives identities and transmittance 1.
pub fn compose(chain: &FilterChain) -> Composition {
    let mut jones = Matrix2::IDENTITY;
    let mut mueller = Matrix4::IDENTITY;
    let mut transmittance = 1.0;
    for e in &chain.elements {
        let (m, t) = e.jones();
        jones = m * jones;
        mueller = conjugation_image(&m) * mueller;
        transmittance *= t;
    }
    Composition {
        jones,
        mueller,
        transmittance,
    }
}

/// Output field: composed Jones matrix times `√t`.
pub fn apply_to_jones(chain: &FilterChain, v: &JonesVector) -> JonesVector {
    let c = compose(chain);
    v.transform(&c.jones).scale(c.transmittance.sqrt())
}

/// Output Stokes vector: composed Mueller matrix times `t`.
pub fn apply_to_stokes(chain: &FilterChain, s: &StokesVector) -> StokesVector {
    let c = compose(chain);
    s.transform(&c.mueller).scale(c.transmittance)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Target {
    Jones(Matrix2),
    Mueller(Matrix4),
}

impl Target {
    pub fn representation(&self) -> &'static str {
        match self {
            Target::Jones(_) => "2x2",
            Target::Mueller(_) => "4x4",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct VerificationReport {
    pub target: Target,
    pub achieved: Target,
    pub residual_maxabs: f64,
    pub passed: bool,
    pub tolerance: f64,
}

/// Compares the chain's composition against `target` in the matching
/// representation. 2×2 comparisons ignore a global sign.
pub fn verify(chain: &FilterChain, target: &Target, tol: f64) -> VerificationReport {
    let c = compose(chain);
    let (achieved, residual) = match target {
        Target::Jones(t) => (Target::Jones(c.jones), c.jones.max_abs_diff_up_to_sign(t)),
        Target::Mueller(t) => (Target::Mueller(c.mueller), c.mueller.max_abs_diff(t)),
    };
    VerificationReport {
        target: *target,
        achieved,
        residual_maxabs: residual,
        passed: residual < tol,
        tolerance: tol,
    }
}

/// Scales a unimodular Jones matrix by `√t` to get the physical (passive) one.
pub fn physical_jones(c: &Composition) -> Matrix2 {
    c.jones.scale(Complex64::new(c.transmittance.sqrt(), 0.0))
}
