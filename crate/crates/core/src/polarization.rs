//! Field and intensity descriptions of polarized light: Jones vectors,
//! coherency matrices, Stokes vectors, and the Minkowski four-vectors they
//! behave like.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{finite, Error, Result};
use crate::matrix::{Matrix2, Matrix4};

/// Transverse field amplitudes `(Ex, Ey)` with the common propagation phase
/// factored out.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct JonesVector {
    pub ex: Complex64,
    pub ey: Complex64,
}

impl JonesVector {
    pub fn new(ex: Complex64, ey: Complex64) -> Result<Self> {
        for z in [ex, ey] {
            finite("Jones component", z.re)?;
            finite("Jones component", z.im)?;
        }
        Ok(JonesVector { ex, ey })
    }

    pub fn from_real(ex: f64, ey: f64) -> Result<Self> {
        JonesVector::new(ex.into(), ey.into())
    }

    /// Builds `(A e^{i phi1}, B e^{i phi2})`. Amplitudes must be nonnegative.
    pub fn from_polar(a: f64, phi1: f64, b: f64, phi2: f64) -> Result<Self> {
        for (name, amp) in [("amplitude A", a), ("amplitude B", b)] {
            if finite(name, amp)? < 0.0 {
                return Err(Error::OutOfRange {
                    name,
                    value: amp,
                    allowed: "[0, inf)",
                });
            }
        }
        finite("phase", phi1)?;
        finite("phase", phi2)?;
        JonesVector::new(Complex64::from_polar(a, phi1), Complex64::from_polar(b, phi2))
    }

    /// `(A, phi1, B, phi2)` with `A, B >= 0` and phases in `(-π, π]`.
    pub fn to_polar(&self) -> (f64, f64, f64, f64) {
        (
            self.ex.norm(),
            principal_phase(self.ex),
            self.ey.norm(),
            principal_phase(self.ey),
        )
    }

    pub fn intensity(&self) -> f64 {
        self.ex.norm_sqr() + self.ey.norm_sqr()
    }

    pub fn transform(&self, m: &Matrix2) -> JonesVector {
        let a = &m.0;
        JonesVector {
            ex: a[0][0] * self.ex + a[0][1] * self.ey,
            ey: a[1][0] * self.ex + a[1][1] * self.ey,
        }
    }

    pub fn scale(&self, k: f64) -> JonesVector {
        JonesVector {
            ex: self.ex * k,
            ey: self.ey * k,
        }
    }

    /// Rank-one coherency `E E†`.
    fn outer(&self) -> [[Complex64; 2]; 2] {
        let e = [self.ex, self.ey];
        let mut out = [[Complex64::new(0.0, 0.0); 2]; 2];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell = e[i] * e[j].conj();
            }
        }
        out
    }
}

fn principal_phase(z: Complex64) -> f64 {
    let arg = z.arg();
    if arg <= -PI {
        arg + 2.0 * PI
    } else {
        arg
    }
}

/// Time-averaged field products, laid out as `C = <E E†>`:
/// `C[0][0] = <Ex* Ex>`, `C[0][1] = <Ey* Ex>`, `C[1][0] = <Ex* Ey>`,
/// `C[1][1] = <Ey* Ey>`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CoherencyMatrix {
    c: [[Complex64; 2]; 2],
}

const HERMITIAN_TOL: f64 = 1e-9;

impl CoherencyMatrix {
    /// Wraps raw entries, rejecting non-finite or non-Hermitian input.
    pub fn from_entries(c: [[Complex64; 2]; 2]) -> Result<Self> {
        for z in c.iter().flatten() {
            finite("coherency entry", z.re)?;
            finite("coherency entry", z.im)?;
        }
        let residual = hermitian_residual(&c);
        let scale = (c[0][0].re.abs() + c[1][1].re.abs()).max(1.0);
        if residual > HERMITIAN_TOL * scale {
            return Err(Error::NotHermitian(residual));
        }
        Ok(CoherencyMatrix { c })
    }

    pub fn entries(&self) -> &[[Complex64; 2]; 2] {
        &self.c
    }

    pub fn trace(&self) -> f64 {
        self.c[0][0].re + self.c[1][1].re
    }

    /// Eigenvalues in ascending order.
    pub fn eigenvalues(&self) -> [f64; 2] {
        let c = &self.c;
        let half_tr = (c[0][0].re + c[1][1].re) / 2.0;
        let half_gap = (c[0][0].re - c[1][1].re) / 2.0;
        let off = (c[0][1].norm_sqr() + c[1][0].norm_sqr()) / 2.0;
        let r = (half_gap * half_gap + off).sqrt();
        [half_tr - r, half_tr + r]
    }

    pub fn hermitian_residual(&self) -> f64 {
        hermitian_residual(&self.c)
    }

    pub fn is_positive_semidefinite(&self, tol: f64) -> bool {
        self.eigenvalues()[0] >= -tol * self.trace().abs().max(f64::MIN_POSITIVE)
    }

    pub fn to_stokes(&self) -> StokesVector {
        let [s0, s1, s2, s3] = stokes_of_coherency(&self.c);
        StokesVector { s0, s1, s2, s3 }
    }
}

fn hermitian_residual(c: &[[Complex64; 2]; 2]) -> f64 {
    let mut worst = 0.0_f64;
    for i in 0..2 {
        for j in 0..2 {
            worst = worst.max((c[i][j] - c[j][i].conj()).norm());
        }
    }
    worst
}

/// Stokes parameters of a coherency layout; imaginary parts are dropped.
pub(crate) fn stokes_of_coherency(c: &[[Complex64; 2]; 2]) -> [f64; 4] {
    let s12 = c[1][0];
    let s21 = c[0][1];
    let i = Complex64::i();
    [
        (c[0][0] + c[1][1]).re,
        (c[0][0] - c[1][1]).re,
        (s12 + s21).re,
        (-i * (s12 - s21)).re,
    ]
}

/// Inverse of [`stokes_of_coherency`] on Hermitian matrices.
pub(crate) fn coherency_of_stokes(s: [f64; 4]) -> [[Complex64; 2]; 2] {
    let [s0, s1, s2, s3] = s;
    [
        [
            Complex64::new((s0 + s1) / 2.0, 0.0),
            Complex64::new(s2 / 2.0, -s3 / 2.0),
        ],
        [Complex64::new(s2 / 2.0, s3 / 2.0), Complex64::new((s0 - s1) / 2.0, 0.0)],
    ]
}

/// `(S0, S1, S2, S3)`, ordered like `(ct, z, x, y)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct StokesVector {
    pub s0: f64,
    pub s1: f64,
    pub s2: f64,
    pub s3: f64,
}

impl StokesVector {
    pub fn new(s0: f64, s1: f64, s2: f64, s3: f64) -> Self {
        StokesVector { s0, s1, s2, s3 }
    }

    pub fn as_array(&self) -> [f64; 4] {
        [self.s0, self.s1, self.s2, self.s3]
    }

    pub fn from_array([s0, s1, s2, s3]: [f64; 4]) -> Self {
        StokesVector { s0, s1, s2, s3 }
    }

    pub fn transform(&self, m: &Matrix4) -> StokesVector {
        StokesVector::from_array(m.apply(self.as_array()))
    }

    pub fn scale(&self, k: f64) -> StokesVector {
        StokesVector::from_array(self.as_array().map(|x| x * k))
    }

    pub fn max_abs_diff(&self, other: &StokesVector) -> f64 {
        self.as_array()
            .iter()
            .zip(other.as_array())
            .fold(0.0, |acc, (a, b)| acc.max((a - b).abs()))
    }

    /// `s0 >= 0` and the Minkowski norm is not spacelike beyond `1e-9·s0²`.
    pub fn is_physical(&self) -> bool {
        self.s0 >= 0.0 && minkowski_norm(self) >= -1e-9 * self.s0 * self.s0
    }
}

/// A four-vector in `(ct, z, x, y)` order.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MinkowskiVector {
    pub ct: f64,
    pub z: f64,
    pub x: f64,
    pub y: f64,
}

impl MinkowskiVector {
    pub fn new(ct: f64, z: f64, x: f64, y: f64) -> Self {
        MinkowskiVector { ct, z, x, y }
    }

    /// Four-momentum of a particle of mass `m` at rest.
    pub fn at_rest(m: f64) -> Self {
        MinkowskiVector::new(m, 0.0, 0.0, 0.0)
    }

    pub fn as_array(&self) -> [f64; 4] {
        [self.ct, self.z, self.x, self.y]
    }

    pub fn from_array([ct, z, x, y]: [f64; 4]) -> Self {
        MinkowskiVector { ct, z, x, y }
    }

    pub fn transform(&self, m: &Matrix4) -> MinkowskiVector {
        MinkowskiVector::from_array(m.apply(self.as_array()))
    }

    pub fn max_abs_diff(&self, other: &MinkowskiVector) -> f64 {
        self.as_array()
            .iter()
            .zip(other.as_array())
            .fold(0.0, |acc, (a, b)| acc.max((a - b).abs()))
    }
}

/// Anything with four components ordered like `(ct, z, x, y)`.
pub trait FourVector {
    fn components(&self) -> [f64; 4];
}

impl FourVector for StokesVector {
    fn components(&self) -> [f64; 4] {
        self.as_array()
    }
}

impl FourVector for MinkowskiVector {
    fn components(&self) -> [f64; 4] {
        self.as_array()
    }
}

impl FourVector for [f64; 4] {
    fn components(&self) -> [f64; 4] {
        *self
    }
}

/// `ct² - z² - x² - y²`.
pub fn minkowski_norm<V: FourVector + ?Sized>(v: &V) -> f64 {
    let [t, z, x, y] = v.components();
    t * t - z * z - x * x - y * y
}

pub fn stokes_from_jones(v: &JonesVector) -> StokesVector {
    stokes_from_coherency(&CoherencyMatrix { c: v.outer() })
}

/// Arithmetic mean of `E E†` over the samples.
pub fn coherency_from_samples(samples: &[JonesVector]) -> Result<CoherencyMatrix> {
    if samples.is_empty() {
        return Err(Error::EmptySamples);
    }
    let mut acc = [[Complex64::new(0.0, 0.0); 2]; 2];
    for s in samples {
        let o = s.outer();
        for i in 0..2 {
            for j in 0..2 {
                acc[i][j] += o[i][j];
            }
        }
    }
    let n = samples.len() as f64;
    for z in acc.iter_mut().flatten() {
        *z /= n;
    }
    // Symmetrize away rounding so the result is Hermitian to the last bit.
    let off = (acc[0][1] + acc[1][0].conj()) / 2.0;
    acc[0][1] = off;
    acc[1][0] = off.conj();
    acc[0][0].im = 0.0;
    acc[1][1].im = 0.0;
    Ok(CoherencyMatrix { c: acc })
}

pub fn stokes_from_coherency(c: &CoherencyMatrix) -> StokesVector {
    c.to_stokes()
}

/// Coherency matrix whose Stokes parameters are `s`.
pub fn coherency_from_stokes(s: &StokesVector) -> CoherencyMatrix {
    CoherencyMatrix {
        c: coherency_of_stokes(s.as_array()),
    }
}
