//! Real polynomials of low degree and their real roots.

use std::ops::{Add, Mul, Neg, Sub};

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Imaginary parts below this (relative to `max(1, |root|)`) are treated as
/// numerical noise around a real, possibly repeated, root.
const IMAG_TOL: f64 = 1e-6;

/// Coefficients in ascending degree: `c[0] + c[1] x + c[2] x^2 + ...`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RealPolynomial {
    coefficients: Vec<f64>,
}

impl RealPolynomial {
    /// Builds a polynomial, dropping trailing zero coefficients.
    pub fn new(coefficients: Vec<f64>) -> RealPolynomial {
        let mut p = RealPolynomial { coefficients };
        p.trim();
        p
    }

    pub fn constant(c: f64) -> RealPolynomial {
        RealPolynomial::new(vec![c])
    }

    /// `x - root`.
    pub fn linear(root: f64) -> RealPolynomial {
        RealPolynomial::new(vec![-root, 1.0])
    }

    pub fn coefficients(&self) -> &[f64] {
        &self.coefficients
    }

    /// Degree; the zero polynomial has degree 0.
    pub fn degree(&self) -> usize {
        self.coefficients.len().saturating_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.is_empty()
    }

    fn trim(&mut self) {
        while self.coefficients.last() == Some(&0.0) {
            self.coefficients.pop();
        }
    }

    pub fn leading(&self) -> f64 {
        self.coefficients.last().copied().unwrap_or(0.0)
    }

    /// Largest absolute coefficient.
    pub fn norm(&self) -> f64 {
        self.coefficients
            .iter()
            .fold(0.0, |acc, c| acc.max(c.abs()))
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.coefficients
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * x + c)
    }

    pub fn derivative(&self) -> RealPolynomial {
        RealPolynomial::new(
            self.coefficients
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| k as f64 * c)
                .collect(),
        )
    }

    pub fn scale(&self, k: f64) -> RealPolynomial {
        RealPolynomial::new(self.coefficients.iter().map(|c| c * k).collect())
    }

    /// Long division, returning `(quotient, remainder)`.
    pub fn div_rem(&self, divisor: &RealPolynomial) -> (RealPolynomial, RealPolynomial) {
        assert!(!divisor.is_zero(), "division by the zero polynomial");
        let mut rem = self.coefficients.clone();
        let dd = divisor.degree();
        if self.coefficients.len() <= dd {
            return (RealPolynomial::new(Vec::new()), self.clone());
        }
        let mut quot = vec![0.0; rem.len() - dd];
        let lead = divisor.leading();
        for k in (0..quot.len()).rev() {
            let q = rem[k + dd] / lead;
            quot[k] = q;
            for (j, c) in divisor.coefficients.iter().enumerate() {
                rem[k + j] -= q * c;
            }
        }
        rem.truncate(dd);
        (RealPolynomial::new(quot), RealPolynomial::new(rem))
    }
}

impl Add for &RealPolynomial {
    type Output = RealPolynomial;
    fn add(self, rhs: &RealPolynomial) -> RealPolynomial {
        let len = self.coefficients.len().max(rhs.coefficients.len());
        let get = |p: &RealPolynomial, k: usize| p.coefficients.get(k).copied().unwrap_or(0.0);
        RealPolynomial::new((0..len).map(|k| get(self, k) + get(rhs, k)).collect())
    }
}

impl Neg for &RealPolynomial {
    type Output = RealPolynomial;
    fn neg(self) -> RealPolynomial {
        self.scale(-1.0)
    }
}

impl Sub for &RealPolynomial {
    type Output = RealPolynomial;
    fn sub(self, rhs: &RealPolynomial) -> RealPolynomial {
        self + &(-rhs)
    }
}

impl Mul for &RealPolynomial {
    type Output = RealPolynomial;
    fn mul(self, rhs: &RealPolynomial) -> RealPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return RealPolynomial::new(Vec::new());
        }
        let mut out = vec![0.0; self.coefficients.len() + rhs.coefficients.len() - 1];
        for (i, a) in self.coefficients.iter().enumerate() {
            for (j, b) in rhs.coefficients.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        RealPolynomial::new(out)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr for RealPolynomial {
            type Output = RealPolynomial;
            fn $method(self, rhs: RealPolynomial) -> RealPolynomial {
                (&self).$method(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

/// All roots of a polynomial of degree 1 to 4 that are required to be real,
/// ascending and repeated according to multiplicity.
///
/// Roots come from the eigenvalues of the companion matrix and are then
/// refined by one Newton step. A root whose imaginary part is not negligible
/// is reported as [`Error::ComplexRoot`].
pub fn solve_real_polynomial(p: &RealPolynomial) -> Result<Vec<f64>> {
    let degree = p.degree();
    if !(1..=4).contains(&degree) || p.is_zero() {
        return Err(Error::UnsupportedDegree(degree));
    }
    let monic: Vec<f64> = p.coefficients.iter().map(|c| c / p.leading()).collect();

    let mut companion = DMatrix::<f64>::zeros(degree, degree);
    for i in 1..degree {
        companion[(i, i - 1)] = 1.0;
    }
    for i in 0..degree {
        companion[(i, degree - 1)] = -monic[i];
    }

    let dp = p.derivative();
    let mut roots = Vec::with_capacity(degree);
    for z in companion.complex_eigenvalues().iter() {
        if z.im.abs() > IMAG_TOL * z.re.abs().max(1.0) {
            return Err(Error::ComplexRoot { re: z.re, im: z.im });
        }
        roots.push(newton_polish(p, &dp, z.re));
    }
    roots.sort_by(f64::total_cmp);
    Ok(roots)
}

fn newton_polish(p: &RealPolynomial, dp: &RealPolynomial, x: f64) -> f64 {
    let fx = p.eval(x);
    let dfx = dp.eval(x);
    if fx == 0.0 || dfx == 0.0 {
        return x;
    }
    let y = x - fx / dfx;
    if y.is_finite() && p.eval(y).abs() < fx.abs() {
        y
    } else {
        x
    }
}
