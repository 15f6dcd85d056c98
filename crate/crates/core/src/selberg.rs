//! Selberg's majorant of the indicator of an interval I = [a, b] inside
//! [-1/2, 1/2], as a trigonometric polynomial of degree M:
//!
//! S(x) = (b - a) + V(x - b) - V(x - a)
//!        + (F(x - a) + F(x - b)) / (2 (M + 1))
//!
//! where F is the Fejer kernel of order M + 1 and V is Vaaler's polynomial
//! for the sawtooth psi(x) = {x} - 1/2, with |V - psi| <= F / (2 (M + 1)).

use std::f64::consts::PI;

use num_complex::Complex64;
use num_rational::{BigRational, Rational64};
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};

/// Largest imaginary residue tolerated when evaluating.
pub const IMAG_TOLERANCE: f64 = 1e-10;

/// Fourier coefficients of the degree-M majorant of [a, b].
#[derive(Debug, Clone, PartialEq)]
pub struct SelbergCoeffs {
    degree: usize,
    a: Rational64,
    b: Rational64,
    /// Entry `n + M` holds the coefficient of e(nx).
    coeffs: Vec<Complex64>,
}

/// e(-n r) for rational r, with the phase reduced exactly mod 1.
fn e_neg(n: i64, r: Rational64) -> Complex64 {
    let num = (n as i128 * *r.numer() as i128).rem_euclid(*r.denom() as i128);
    let phase = num as f64 / *r.denom() as f64;
    Complex64::from_polar(1.0, -2.0 * PI * phase)
}

/// Vaaler's weight pi t (1 - |t|) cot(pi t) + |t| for 0 < |t| < 1.
fn vaaler_weight(t: f64) -> f64 {
    let t = t.abs();
    PI * t * (1.0 - t) / (PI * t).tan() + t
}

/// Fejer kernel sum_{|n| <= M} (1 - |n| / (M + 1)) e(nx).
pub fn fejer(m: usize, x: f64) -> f64 {
    let l = (m + 1) as f64;
    (0..=m as i64)
        .map(|n| {
            let w = 1.0 - n as f64 / l;
            if n == 0 {
                w
            } else {
                2.0 * w * (2.0 * PI * n as f64 * x).cos()
            }
        })
        .sum()
}

/// Fourier coefficient of the indicator of [a, b].
pub fn chi_hat(a: f64, b: f64, n: i64) -> Complex64 {
    if n == 0 {
        return Complex64::new(b - a, 0.0);
    }
    let e = |t: f64| Complex64::from_polar(1.0, 2.0 * PI * t);
    (e(-(n as f64) * a) - e(-(n as f64) * b)) / Complex64::new(0.0, 2.0 * PI * n as f64)
}

/// Builds the majorant of [a, b] of degree `m`.
pub fn build_majorant(a: Rational64, b: Rational64, m: usize) -> Result<SelbergCoeffs> {
    let half = Rational64::new(1, 2);
    if a >= b {
        return Err(Error::invalid(format!("degenerate interval [{a}, {b}]")));
    }
    if a < -half || b > half {
        return Err(Error::invalid(format!("[{a}, {b}] is not inside [-1/2, 1/2]")));
    }
    if m == 0 {
        return Err(Error::invalid("degree must be positive"));
    }
    let l = (m + 1) as f64;
    let len = (b - a).to_f64().expect("finite");
    let mut coeffs = vec![Complex64::zero(); 2 * m + 1];
    coeffs[m] = Complex64::new(len + 1.0 / l, 0.0);
    for n in 1..=m as i64 {
        let ea = e_neg(n, a);
        let eb = e_neg(n, b);
        let t = n as f64 / l;
        // V has coefficients -J(n/(M+1)) / (2 pi i n).
        let v = -vaaler_weight(t) / Complex64::new(0.0, 2.0 * PI * n as f64);
        let fejer_part = (1.0 - t) / (2.0 * l) * (ea + eb);
        let c = v * (eb - ea) + fejer_part;
        coeffs[m + n as usize] = c;
        coeffs[m - n as usize] = c.conj();
    }
    Ok(SelbergCoeffs {
        degree: m,
        a,
        b,
        coeffs,
    })
}

impl SelbergCoeffs {
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn interval(&self) -> (Rational64, Rational64) {
        (self.a, self.b)
    }

    /// Coefficient of e(nx); zero beyond the degree.
    pub fn coeff(&self, n: i64) -> Complex64 {
        if n.unsigned_abs() as usize > self.degree {
            Complex64::zero()
        } else {
            self.coeffs[(n + self.degree as i64) as usize]
        }
    }

    /// Iterator over (n, coefficient) for |n| <= M.
    pub fn iter(&self) -> impl Iterator<Item = (i64, Complex64)> + '_ {
        let m = self.degree as i64;
        self.coeffs.iter().enumerate().map(move |(i, c)| (i as i64 - m, *c))
    }

    /// Constant term assembled in exact arithmetic:
    /// (b - a) + 2 * 1 / (2 (M + 1)).
    pub fn constant_term_exact(&self) -> BigRational {
        let r = |x: Rational64| BigRational::new((*x.numer()).into(), (*x.denom()).into());
        let fejer_mass = BigRational::new(1.into(), (2 * (self.degree as i64 + 1)).into());
        r(self.b) - r(self.a) + fejer_mass.clone() + fejer_mass
    }

    /// The value the constant term must have: b - a + 1/(M+1).
    pub fn expected_mass(&self) -> BigRational {
        let r = |x: Rational64| BigRational::new((*x.numer()).into(), (*x.denom()).into());
        r(self.b) - r(self.a) + BigRational::new(1.into(), (self.degree as i64 + 1).into())
    }

    /// S(x) = sum Ŝ(n) e(nx). The imaginary part must cancel.
    pub fn evaluate(&self, x: f64) -> Result<f64> {
        let mut acc = Complex64::zero();
        for (n, c) in self.iter() {
            let phase = (n as f64 * x).rem_euclid(1.0);
            acc += c * Complex64::from_polar(1.0, 2.0 * PI * phase);
        }
        if acc.im.abs() > IMAG_TOLERANCE {
            return Err(Error::consistency(format!(
                "majorant has imaginary part {} at x = {x}",
                acc.im
            )));
        }
        Ok(acc.re)
    }

    /// Checks the majorant's three defining properties: domination on a
    /// grid of `grid + 1` points of [-1/2, 1/2], the constant term, and the
    /// per-coefficient bound.
    pub fn check(&self, grid: usize) -> Result<PropertyReport> {
        let a = self.a.to_f64().expect("finite");
        let b = self.b.to_f64().expect("finite");
        let mut min_slack = f64::INFINITY;
        for i in 0..=grid {
            let x = -0.5 + i as f64 / grid as f64;
            let chi = if x >= a && x <= b { 1.0 } else { 0.0 };
            min_slack = min_slack.min(self.evaluate(x)? - chi);
        }
        // The endpoints themselves, which the grid may miss.
        for x in [a, b] {
            min_slack = min_slack.min(self.evaluate(x)? - 1.0);
        }
        let l = (self.degree + 1) as f64;
        let mass_error = (self.coeff(0).re - (b - a) - 1.0 / l).abs();
        let mass_exact = self.constant_term_exact() == self.expected_mass();
        let coeff_excess = (1..=self.degree as i64)
            .flat_map(|n| [n, -n])
            .map(|n| {
                let bound = 1.0 / l + (b - a).min(1.0 / (PI * n.unsigned_abs() as f64));
                self.coeff(n).norm() - bound
            })
            .fold(f64::NEG_INFINITY, f64::max);
        let hermitian = (1..=self.degree as i64).all(|n| self.coeff(-n) == self.coeff(n).conj());
        Ok(PropertyReport {
            grid_points: grid + 1,
            min_majorization_slack: min_slack,
            mass_error,
            mass_exact,
            max_coefficient_excess: coeff_excess,
            hermitian,
        })
    }
}

/// Outcome of [`SelbergCoeffs::check`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PropertyReport {
    pub grid_points: usize,
    /// min over the grid of S(x) - chi_I(x).
    pub min_majorization_slack: f64,
    /// |Ŝ(0) - (b - a) - 1/(M+1)| in floating point.
    pub mass_error: f64,
    pub mass_exact: bool,
    /// max over 1 <= |n| <= M of |Ŝ(n)| minus its bound.
    pub max_coefficient_excess: f64,
    pub hermitian: bool,
}

impl PropertyReport {
    /// Majorization slack >= -1e-12, mass within 1e-15, coefficients
    /// within 1e-15 of their bound.
    pub fn passes(&self) -> bool {
        self.min_majorization_slack >= -1e-12
            && self.mass_error <= 1e-15
            && self.mass_exact
            && self.max_coefficient_excess <= 1e-15
            && self.hermitian
    }
}
