//! Dense symmetric linear algebra on graph matrices.
//!
//! Everything numeric in the crate is checked against the routines here:
//! [`sym_eigenvalues`] and [`char_poly_at`] act directly on an assembled
//! matrix and make no use of any structure of the graph that produced it.

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Absolute tolerance used to group sorted eigenvalues into multiplicities.
pub const GROUPING_TOL: f64 = 1e-6;

/// Distance to the spectrum below which an M-coronal evaluation is a pole.
pub const POLE_TOL: f64 = 1e-8;

/// Mixing parameter of `A_α = αD + (1 - α)A`, restricted to `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(try_from = "f64", into = "f64")]
pub struct Alpha(f64);

impl Alpha {
    pub fn new(value: f64) -> Result<Alpha> {
        if (0.0..=1.0).contains(&value) {
            Ok(Alpha(value))
        } else {
            Err(Error::AlphaOutOfRange(value))
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }

    /// `1 - α`.
    pub fn complement(self) -> f64 {
        1.0 - self.0
    }
}

impl TryFrom<f64> for Alpha {
    type Error = Error;
    fn try_from(value: f64) -> Result<Alpha> {
        Alpha::new(value)
    }
}

impl From<Alpha> for f64 {
    fn from(a: Alpha) -> f64 {
        a.0
    }
}

/// Dense real symmetric matrix with finite entries.
#[derive(Debug, Clone, PartialEq)]
pub struct SymmetricMatrix {
    inner: DMatrix<f64>,
}

impl SymmetricMatrix {
    pub fn new(inner: DMatrix<f64>) -> Result<SymmetricMatrix> {
        if inner.nrows() != inner.ncols() {
            return Err(Error::DimensionMismatch {
                expected: inner.nrows(),
                got: inner.ncols(),
            });
        }
        let n = inner.nrows();
        for i in 0..n {
            for j in 0..n {
                let x = inner[(i, j)];
                if !x.is_finite() {
                    return Err(Error::NonFinite(i, j));
                }
                if j > i && x != inner[(j, i)] {
                    return Err(Error::NotSymmetric(i, j));
                }
            }
        }
        Ok(SymmetricMatrix { inner })
    }

    pub fn zeros(n: usize) -> SymmetricMatrix {
        SymmetricMatrix {
            inner: DMatrix::zeros(n, n),
        }
    }

    pub fn order(&self) -> usize {
        self.inner.nrows()
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.inner[(i, j)]
    }

    pub fn as_matrix(&self) -> &DMatrix<f64> {
        &self.inner
    }

    pub fn trace(&self) -> f64 {
        self.inner.trace()
    }

    pub fn row_sums(&self) -> Vec<f64> {
        self.inner.row_iter().map(|r| r.sum()).collect()
    }

    /// Frobenius norm.
    pub fn norm(&self) -> f64 {
        self.inner.norm()
    }
}

/// Ascending eigenvalues together with tolerance-grouped multiplicities.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Spectrum {
    eigenvalues: Vec<f64>,
    groups: Vec<(f64, usize)>,
}

impl Spectrum {
    /// Sorts the values and groups them with [`GROUPING_TOL`].
    pub fn from_values(mut values: Vec<f64>) -> Spectrum {
        values.sort_by(f64::total_cmp);
        let mut groups: Vec<(f64, usize)> = Vec::new();
        let mut start = 0;
        for i in 1..=values.len() {
            if i == values.len() || values[i] - values[start] > GROUPING_TOL {
                let members = &values[start..i];
                let mean = members.iter().sum::<f64>() / members.len() as f64;
                groups.push((mean, members.len()));
                start = i;
            }
        }
        Spectrum {
            eigenvalues: values,
            groups,
        }
    }

    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn groups(&self) -> &[(f64, usize)] {
        &self.groups
    }

    pub fn len(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eigenvalues.is_empty()
    }

    pub fn largest(&self) -> Option<f64> {
        self.eigenvalues.last().copied()
    }

    pub fn spectral_radius(&self) -> f64 {
        self.eigenvalues.iter().fold(0.0, |acc, x| acc.max(x.abs()))
    }

    /// Largest sorted elementwise deviation, or `None` if the sizes differ.
    pub fn max_deviation(&self, other: &Spectrum) -> Option<f64> {
        if self.len() != other.len() {
            return None;
        }
        Some(
            self.eigenvalues
                .iter()
                .zip(&other.eigenvalues)
                .fold(0.0, |acc, (a, b)| acc.max((a - b).abs())),
        )
    }

    /// Multiplicity of `value` within `tol`.
    pub fn count_near(&self, value: f64, tol: f64) -> usize {
        self.eigenvalues
            .iter()
            .filter(|x| (*x - value).abs() <= tol)
            .count()
    }
}

pub fn adjacency_matrix(g: &Graph) -> SymmetricMatrix {
    a_alpha_matrix(g, Alpha(0.0))
}

/// `αD(G) + (1 - α)A(G)`.
pub fn a_alpha_matrix(g: &Graph, alpha: Alpha) -> SymmetricMatrix {
    let n = g.order();
    let a = alpha.value();
    let mut m = DMatrix::zeros(n, n);
    for &(u, v) in g.edges() {
        m[(u, v)] = 1.0 - a;
        m[(v, u)] = 1.0 - a;
    }
    for (i, d) in g.degree_info().degrees.into_iter().enumerate() {
        m[(i, i)] = a * d as f64;
    }
    SymmetricMatrix { inner: m }
}

/// All eigenvalues of a symmetric matrix, ascending.
pub fn sym_eigenvalues(m: &SymmetricMatrix) -> Result<Spectrum> {
    if let Some((i, j)) = first_non_finite(&m.inner) {
        return Err(Error::NonFinite(i, j));
    }
    if m.order() == 0 {
        return Ok(Spectrum::from_values(Vec::new()));
    }
    let values = m.inner.clone().symmetric_eigenvalues();
    Ok(Spectrum::from_values(values.iter().copied().collect()))
}

fn first_non_finite(m: &DMatrix<f64>) -> Option<(usize, usize)> {
    (0..m.nrows())
        .flat_map(|i| (0..m.ncols()).map(move |j| (i, j)))
        .find(|&(i, j)| !m[(i, j)].is_finite())
}

/// Sum of the entries of `(λI - M)^{-1}`, from a single linear solve.
pub fn m_coronal(m: &SymmetricMatrix, lambda: f64) -> Result<f64> {
    let spectrum = sym_eigenvalues(m)?;
    let distance = spectrum
        .eigenvalues()
        .iter()
        .fold(f64::INFINITY, |acc, x| acc.min((lambda - x).abs()));
    if distance < POLE_TOL {
        return Err(Error::Pole { lambda, distance });
    }
    let n = m.order();
    let shifted = DMatrix::identity(n, n) * lambda - &m.inner;
    let ones = DVector::from_element(n, 1.0);
    let x = shifted
        .lu()
        .solve(&ones)
        .ok_or(Error::Pole { lambda, distance })?;
    Ok(x.sum())
}

/// `n / (λ - a)` for a matrix of order `n` with constant row sum `a`.
pub fn m_coronal_regular(n: usize, row_sum: f64, lambda: f64) -> Result<f64> {
    let distance = (lambda - row_sum).abs();
    if distance < POLE_TOL {
        return Err(Error::Pole { lambda, distance });
    }
    Ok(n as f64 / (lambda - row_sum))
}

/// `Σ |λ_i(A_α(G)) - 2αm/n|`.
pub fn a_alpha_energy(g: &Graph, alpha: Alpha) -> Result<f64> {
    let n = g.order();
    if n == 0 {
        return Ok(0.0);
    }
    let shift = 2.0 * alpha.value() * g.size() as f64 / n as f64;
    let spectrum = sym_eigenvalues(&a_alpha_matrix(g, alpha))?;
    Ok(spectrum
        .eigenvalues()
        .iter()
        .map(|x| (x - shift).abs())
        .sum())
}

/// Adjacency spectrum of the line graph of an `r`-regular graph, predicted
/// from the graph's own adjacency spectrum: `-2` with multiplicity `m - n`
/// together with `λ_i + r - 2` for every `i`.
pub fn line_graph_spectrum_regular(
    spectrum: &Spectrum,
    n: usize,
    m: usize,
    r: usize,
) -> Result<Spectrum> {
    if 2 * m != n * r {
        return Err(Error::EdgeCountMismatch { n, m, r });
    }
    if spectrum.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: spectrum.len(),
        });
    }
    if m < n {
        // r = 1: the -r eigenvalues map to -1, and m - n of them vanish.
        if spectrum.count_near(-(r as f64), GROUPING_TOL) < n - m {
            return Err(Error::EdgeCountMismatch { n, m, r });
        }
    }
    let shift = r as f64 - 2.0;
    let mut values: Vec<f64> = spectrum.eigenvalues().iter().map(|x| x + shift).collect();
    if m >= n {
        values.extend(std::iter::repeat_n(-2.0, m - n));
    } else {
        let mut surplus = n - m;
        values.retain(|x| {
            if surplus > 0 && (x + 2.0).abs() <= GROUPING_TOL {
                surplus -= 1;
                false
            } else {
                true
            }
        });
    }
    Ok(Spectrum::from_values(values))
}

/// `det(λI - M)` as a sign and a natural log of the absolute value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogDet {
    pub sign: f64,
    pub ln_abs: f64,
}

impl LogDet {
    pub fn from_value(x: f64) -> LogDet {
        if x == 0.0 {
            LogDet {
                sign: 0.0,
                ln_abs: f64::NEG_INFINITY,
            }
        } else {
            LogDet {
                sign: x.signum(),
                ln_abs: x.abs().ln(),
            }
        }
    }

    pub fn one() -> LogDet {
        LogDet {
            sign: 1.0,
            ln_abs: 0.0,
        }
    }

    pub fn powi(self, k: i64) -> LogDet {
        if k == 0 {
            return LogDet::one();
        }
        LogDet {
            sign: if k % 2 == 0 { 1.0 } else { self.sign },
            ln_abs: self.ln_abs * k as f64,
        }
    }

    /// `|self / other - 1|`, infinite on a sign disagreement.
    pub fn relative_deviation(self, other: LogDet) -> f64 {
        if self.sign != other.sign {
            return f64::INFINITY;
        }
        if self.sign == 0.0 {
            return 0.0;
        }
        ((self.ln_abs - other.ln_abs).exp() - 1.0).abs()
    }

    pub fn value(self) -> f64 {
        self.sign * self.ln_abs.exp()
    }
}

impl std::ops::Mul for LogDet {
    type Output = LogDet;
    fn mul(self, other: LogDet) -> LogDet {
        LogDet {
            sign: self.sign * other.sign,
            ln_abs: self.ln_abs + other.ln_abs,
        }
    }
}

/// Characteristic polynomial `det(λI - M)` evaluated by LU factorisation.
pub fn char_poly_at(m: &SymmetricMatrix, lambda: f64) -> LogDet {
    let n = m.order();
    let shifted = DMatrix::identity(n, n) * lambda - &m.inner;
    let lu = shifted.lu();
    let mut acc = LogDet {
        sign: lu.p().determinant::<f64>(),
        ln_abs: 0.0,
    };
    for x in lu.u().diagonal().iter() {
        acc = acc * LogDet::from_value(*x);
    }
    acc
}
