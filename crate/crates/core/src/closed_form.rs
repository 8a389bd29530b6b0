//! Closed-form `A_α` spectra of corona-type composites with a regular first
//! operand.
//!
//! Write `b = 1 - α`, `μ` for an adjacency eigenvalue of `G1` (r1-regular,
//! n1 vertices, m1 edges), `Γ` for the M-coronal of `A_α(G2)`, and `c` for the
//! diagonal shift each copy of `G2` picks up from its attachments (`α`, or
//! `α r1` when a copy is joined to a whole neighbourhood). Taking the Schur
//! complement of the copy blocks leaves a reduced determinant over
//! `V(G1)` and the auxiliary vertices that diagonalises along the
//! eigenvectors of `A(G1)`; for the incidence-coupled kinds it pairs each
//! eigenvector with its image under `R^T` (singular value `√(μ + r1)`),
//! with the kernel of `R` left over.
//!
//! The characteristic polynomial then factors as
//!
//! ```text
//! φ(λ) = Π_i (λ - c - λ_i(A_α(G2)))^copies · K(λ)^(m1 - n1) · Π_μ F_μ(λ)
//! ```
//!
//! where `F_μ` is the 2x2 determinant of the reduced block for `μ` and `K` is
//! the factor contributed by the kernel of `R` (absent for splitting kinds).
//! With `t = μ + r1`, `s = λ - 2αr1 + 2b` and `u = λ - αr1`:
//!
//! | kind                    | `F_μ`                                                        | `K`    |
//! |-------------------------|--------------------------------------------------------------|--------|
//! | total                   | `(λ - α(2r1+n2) - b²Γ(λ-α) - bμ)(s - bt) - b²t`              | `s`    |
//! | splitting               | `(λ - α(2r1+n2) - b²Γ(λ-α) - bμ)(λ - αr1) - b²μ²`            | none   |
//! | splitting add vertex    | `(λ - 2αr1 - bμ)(λ - α(r1+n2) - b²Γ(λ-α)) - b²μ²`            | none   |
//! | splitting neighbourhood | `(λ - αr1)(λ - αr1(2+n2) - bμ - b²Γ(λ-αr1)μ²) - b²μ²`        | none   |
//! | Q-vertex                | `(λ - α(r1+n2) - b²Γ(λ-α))(s - bt) - b²t`                    | `s`    |
//! | Q-edge                  | `u(w + 2b - bt) - b²t`, `w = λ - α(2r1+n2) - b²Γ(λ-α)`       | `w+2b` |
//!
//! For regular `G2`, `Γ(x) = n2 / (x - r2)`. Multiplying each `F_μ` and each
//! `K` by `x - r2` clears the pole and cancels the `λ_1(A_α(G2)) = r2` copy
//! factor, so the spectrum is the copy spectrum without its top eigenvalue,
//! the roots of the cleared `K` and the roots of every cleared `F_μ`.

use serde::{Deserialize, Serialize};

use crate::corona::{compose, CoronaKind};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::poly::{solve_real_polynomial, RealPolynomial};
use crate::spectra::{
    a_alpha_matrix, adjacency_matrix, char_poly_at, m_coronal, sym_eigenvalues, Alpha, LogDet,
    Spectrum, GROUPING_TOL, POLE_TOL,
};

/// Order, degree and adjacency spectrum of a regular graph.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RegularSpec {
    n: usize,
    r: usize,
    adjacency_eigenvalues: Vec<f64>,
}

impl RegularSpec {
    pub fn new(n: usize, r: usize, mut adjacency_eigenvalues: Vec<f64>) -> Result<RegularSpec> {
        adjacency_eigenvalues.sort_by(f64::total_cmp);
        if adjacency_eigenvalues.len() != n {
            return Err(Error::InvalidRegularSpec(format!(
                "{} eigenvalues for {n} vertices",
                adjacency_eigenvalues.len()
            )));
        }
        if !(n * r).is_multiple_of(2) {
            return Err(Error::InvalidRegularSpec(format!(
                "n * r = {} is odd",
                n * r
            )));
        }
        let rf = r as f64;
        if let Some(&top) = adjacency_eigenvalues.last() {
            if (top - rf).abs() > GROUPING_TOL {
                return Err(Error::InvalidRegularSpec(format!(
                    "largest eigenvalue {top} differs from the degree {r}"
                )));
            }
        }
        if adjacency_eigenvalues
            .iter()
            .any(|x| x.abs() > rf + GROUPING_TOL)
        {
            return Err(Error::InvalidRegularSpec(
                "eigenvalue exceeds the degree".into(),
            ));
        }
        Ok(RegularSpec {
            n,
            r,
            adjacency_eigenvalues,
        })
    }

    /// Computes the adjacency spectrum of a regular graph.
    pub fn from_graph(g: &Graph) -> Result<RegularSpec> {
        let r = g.regular_degree().ok_or(Error::NotRegular)?;
        let spectrum = sym_eigenvalues(&adjacency_matrix(g))?;
        RegularSpec::new(g.order(), r, spectrum.eigenvalues().to_vec())
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.r
    }

    pub fn size(&self) -> usize {
        self.n * self.r / 2
    }

    pub fn adjacency_eigenvalues(&self) -> &[f64] {
        &self.adjacency_eigenvalues
    }

    /// `A_α` eigenvalues `α r + (1 - α) λ_i`, ascending.
    pub fn a_alpha_eigenvalues(&self, alpha: Alpha) -> Vec<f64> {
        let a = alpha.value();
        self.adjacency_eigenvalues
            .iter()
            .map(|x| a * self.r as f64 + (1.0 - a) * x)
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum FamilyKind {
    /// `c + λ_i(A_α(G2))`, `i ≥ 2`, once per copy.
    CopySpectrum,
    /// Roots of the kernel factor `K`, `m1 - n1` times.
    IncidenceKernel,
    /// `α r1`, `n1 - m1` times: the Q-edge corona of a perfect matching.
    MatchingDeficit,
    /// Roots of the cleared factor attached to one adjacency eigenvalue of `G1`.
    EigenvalueFactor { adjacency_eigenvalue: f64 },
}

/// A block of predicted eigenvalues: every entry of `values` repeated
/// `multiplicity` times.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Family {
    pub label: String,
    pub kind: FamilyKind,
    pub values: Vec<f64>,
    pub multiplicity: usize,
}

impl Family {
    pub fn count(&self) -> usize {
        self.values.len() * self.multiplicity
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PredictionReport {
    pub kind: CoronaKind,
    pub alpha: Alpha,
    pub families: Vec<Family>,
    pub total: Spectrum,
}

impl PredictionReport {
    pub fn family(&self, kind: &FamilyKind) -> Option<&Family> {
        self.families.iter().find(|f| &f.kind == kind)
    }
}

/// Scalars shared by every kind.
#[derive(Debug, Clone, Copy)]
struct Params {
    a: f64,
    b: f64,
    n1: usize,
    m1: usize,
    r1: f64,
    n2: f64,
}

impl Params {
    /// Diagonal shift of the copy blocks.
    fn copy_shift(&self, kind: CoronaKind) -> f64 {
        match kind {
            CoronaKind::SplittingNeighbourhood => self.a * self.r1,
            _ => self.a,
        }
    }

    fn copies(&self, kind: CoronaKind) -> usize {
        match kind {
            CoronaKind::QEdge => self.m1,
            _ => self.n1,
        }
    }
}

fn check_closed_form(kind: CoronaKind, m1: usize) -> Result<()> {
    if !kind.has_closed_form() {
        return Err(Error::NoClosedForm(kind.to_string()));
    }
    if matches!(
        kind,
        CoronaKind::Total | CoronaKind::QVertex | CoronaKind::QEdge
    ) && m1 == 0
    {
        return Err(Error::InvalidOperand {
            kind: kind.to_string(),
            requirement: "a first graph with at least one edge".into(),
        });
    }
    Ok(())
}

fn has_kernel_factor(kind: CoronaKind) -> bool {
    matches!(
        kind,
        CoronaKind::Total | CoronaKind::QVertex | CoronaKind::QEdge
    )
}

/// Cleared polynomial factors for regular `G2` of degree `r2`.
struct ClearedFactors {
    kind: CoronaKind,
    p: Params,
    /// `x - c - r2`.
    pole: RealPolynomial,
}

impl ClearedFactors {
    fn new(kind: CoronaKind, p: Params, r2: f64) -> ClearedFactors {
        let pole = RealPolynomial::linear(p.copy_shift(kind) + r2);
        ClearedFactors { kind, p, pole }
    }

    fn x_minus(&self, v: f64) -> RealPolynomial {
        RealPolynomial::linear(v)
    }

    /// `(x - v) * pole - b² n2`: a diagonal term `x - v - b²Γ` times the pole.
    fn coronal_term(&self, v: f64) -> RealPolynomial {
        let Params { b, n2, .. } = self.p;
        &(&self.x_minus(v) * &self.pole) - &RealPolynomial::constant(b * b * n2)
    }

    /// The kernel factor after clearing (linear `s`, or the Q-edge quadratic).
    fn kernel(&self) -> Option<RealPolynomial> {
        let Params { a, b, r1, n2, .. } = self.p;
        match self.kind {
            CoronaKind::Total | CoronaKind::QVertex => Some(self.x_minus(2.0 * a * r1 - 2.0 * b)),
            CoronaKind::QEdge => {
                let w = self.coronal_term(a * (2.0 * r1 + n2));
                Some(&w + &self.pole.scale(2.0 * b))
            }
            _ => None,
        }
    }

    /// `F_μ` times the pole.
    fn eigenvalue_factor(&self, mu: f64) -> RealPolynomial {
        let Params { a, b, r1, n2, .. } = self.p;
        let t = mu + r1;
        let s = self.x_minus(2.0 * a * r1 - 2.0 * b);
        let bt_pole = self.pole.scale(b * b * t);
        match self.kind {
            CoronaKind::Total => {
                let left = &self.coronal_term(a * (2.0 * r1 + n2)) - &self.pole.scale(b * mu);
                let right = &s - &RealPolynomial::constant(b * t);
                &(&left * &right) - &bt_pole
            }
            CoronaKind::QVertex => {
                let left = self.coronal_term(a * (r1 + n2));
                let right = &s - &RealPolynomial::constant(b * t);
                &(&left * &right) - &bt_pole
            }
            CoronaKind::QEdge => {
                let w = self.coronal_term(a * (2.0 * r1 + n2));
                let inner = &(&w + &self.pole.scale(2.0 * b)) - &self.pole.scale(b * t);
                &(&self.x_minus(a * r1) * &inner) - &bt_pole
            }
            CoronaKind::Splitting => {
                let left = &self.coronal_term(a * (2.0 * r1 + n2)) - &self.pole.scale(b * mu);
                &(&left * &self.x_minus(a * r1)) - &self.pole.scale(b * b * mu * mu)
            }
            CoronaKind::SplittingAddVertex => {
                let left = self.x_minus(2.0 * a * r1 + b * mu);
                &(&left * &self.coronal_term(a * (r1 + n2))) - &self.pole.scale(b * b * mu * mu)
            }
            CoronaKind::SplittingNeighbourhood => {
                let diag = &(&self.x_minus(a * r1 * (2.0 + n2) + b * mu) * &self.pole)
                    - &RealPolynomial::constant(b * b * n2 * mu * mu);
                &(&self.x_minus(a * r1) * &diag) - &self.pole.scale(b * b * mu * mu)
            }
            CoronaKind::Corona | CoronaKind::Neighbourhood => unreachable!("checked by caller"),
        }
    }
}

/// Predicts the `A_α` spectrum of the composite of two regular graphs.
pub fn predict_spectrum(
    kind: CoronaKind,
    g1: &RegularSpec,
    g2: &RegularSpec,
    alpha: Alpha,
) -> Result<PredictionReport> {
    let (n1, m1, r1) = (g1.order(), g1.size(), g1.degree());
    check_closed_form(kind, m1)?;
    let a = alpha.value();
    let p = Params {
        a,
        b: 1.0 - a,
        n1,
        m1,
        r1: r1 as f64,
        n2: g2.order() as f64,
    };
    let factors = ClearedFactors::new(kind, p, g2.degree() as f64);
    let mut families = Vec::new();

    // Copy spectrum minus its top eigenvalue r2, which the cleared poles absorb.
    let shift = p.copy_shift(kind);
    let mut copy_values: Vec<f64> = g2
        .a_alpha_eigenvalues(alpha)
        .iter()
        .map(|x| shift + x)
        .collect();
    copy_values.pop();
    families.push(Family {
        label: "copy spectrum".into(),
        kind: FamilyKind::CopySpectrum,
        values: copy_values,
        multiplicity: p.copies(kind),
    });

    // n1 > m1 only for perfect matchings; then n1 - m1 of the μ = -r1 factors
    // lose their kernel part.
    let mut deficit = n1.saturating_sub(m1);
    if let Some(kernel) = factors.kernel() {
        families.push(Family {
            label: "incidence kernel".into(),
            kind: FamilyKind::IncidenceKernel,
            values: solve_real_polynomial(&kernel)?,
            multiplicity: m1.saturating_sub(n1),
        });
    } else {
        deficit = 0;
    }

    let groups = Spectrum::from_values(g1.adjacency_eigenvalues().to_vec());
    for &(mu, multiplicity) in groups.groups() {
        let factor = factors.eigenvalue_factor(mu);
        let mut full = multiplicity;
        if deficit > 0 && (mu + p.r1).abs() <= GROUPING_TOL {
            let reduced_count = deficit.min(multiplicity);
            full -= reduced_count;
            deficit -= reduced_count;
            let kernel = factors.kernel().expect("deficit implies a kernel factor");
            let (reduced, _) = factors.eigenvalue_factor(-p.r1).div_rem(&kernel);
            let values = solve_real_polynomial(&reduced)?;
            let (label, family_kind) = if kind == CoronaKind::QEdge {
                ("matching deficit".to_string(), FamilyKind::MatchingDeficit)
            } else {
                (
                    format!("reduced factor for adjacency eigenvalue {mu}"),
                    FamilyKind::EigenvalueFactor {
                        adjacency_eigenvalue: mu,
                    },
                )
            };
            families.push(Family {
                label,
                kind: family_kind,
                values,
                multiplicity: reduced_count,
            });
        }
        if full > 0 {
            families.push(Family {
                label: format!("factor for adjacency eigenvalue {mu}"),
                kind: FamilyKind::EigenvalueFactor {
                    adjacency_eigenvalue: mu,
                },
                values: solve_real_polynomial(&factor)?,
                multiplicity: full,
            });
        }
    }
    if deficit > 0 {
        return Err(Error::CountMismatch {
            family: "incidence kernel".into(),
            assembled: n1 - m1 - deficit,
            expected: n1 - m1,
        });
    }

    let expected = kind.composite_order(n1, m1, g2.order());
    let assembled: usize = families.iter().map(Family::count).sum();
    if assembled != expected {
        let family = families
            .iter()
            .max_by_key(|f| f.count())
            .map_or_else(|| "none".to_string(), |f| f.label.clone());
        return Err(Error::CountMismatch {
            family,
            assembled,
            expected,
        });
    }

    let values = families
        .iter()
        .flat_map(|f| {
            f.values
                .iter()
                .flat_map(move |&v| std::iter::repeat_n(v, f.multiplicity))
        })
        .collect();
    Ok(PredictionReport {
        kind,
        alpha,
        families,
        total: Spectrum::from_values(values),
    })
}

/// Evaluates the factorised characteristic polynomial
/// `det(λI - A_α(G1 * G2))` at `λ` for regular `g1` and arbitrary `g2`.
///
/// `Γ` is evaluated numerically on `A_α(G2)`; nothing here touches the
/// composite matrix.
pub fn eval_proposition_charpoly(
    kind: CoronaKind,
    g1: &Graph,
    g2: &Graph,
    alpha: Alpha,
    lambda: f64,
) -> Result<LogDet> {
    let r1 = g1.regular_degree().ok_or(Error::NotRegular)?;
    let (n1, m1) = (g1.order(), g1.size());
    check_closed_form(kind, m1)?;
    let a = alpha.value();
    let p = Params {
        a,
        b: 1.0 - a,
        n1,
        m1,
        r1: r1 as f64,
        n2: g2.order() as f64,
    };
    let Params { b, r1, n2, .. } = p;

    let a2 = a_alpha_matrix(g2, alpha);
    let shift = p.copy_shift(kind);
    let copy_block = sym_eigenvalues(&a2)?
        .eigenvalues()
        .iter()
        .fold(LogDet::one(), |acc, x| {
            acc * LogDet::from_value(lambda - shift - x)
        });
    let mut value = copy_block.powi(p.copies(kind) as i64);

    let gamma = if g2.order() == 0 {
        0.0
    } else {
        m_coronal(&a2, lambda - shift)?
    };
    let g = b * b * gamma;
    let s = lambda - 2.0 * a * r1 + 2.0 * b;
    let u = lambda - a * r1;
    let w = lambda - a * (2.0 * r1 + n2) - g;

    if has_kernel_factor(kind) {
        let k = match kind {
            CoronaKind::QEdge => w + 2.0 * b,
            _ => s,
        };
        let exponent = m1 as i64 - n1 as i64;
        if exponent < 0 && k.abs() < POLE_TOL {
            return Err(Error::Pole {
                lambda,
                distance: k.abs(),
            });
        }
        value = value * LogDet::from_value(k).powi(exponent);
    }

    let mus = sym_eigenvalues(&adjacency_matrix(g1))?;
    for &mu in mus.eigenvalues() {
        let t = mu + r1;
        let f = match kind {
            CoronaKind::Total => (w - b * mu) * (s - b * t) - b * b * t,
            CoronaKind::QVertex => (lambda - a * (r1 + n2) - g) * (s - b * t) - b * b * t,
            CoronaKind::QEdge => u * (w + 2.0 * b - b * t) - b * b * t,
            CoronaKind::Splitting => (w - b * mu) * u - b * b * mu * mu,
            CoronaKind::SplittingAddVertex => {
                (lambda - 2.0 * a * r1 - b * mu) * (lambda - a * (r1 + n2) - g) - b * b * mu * mu
            }
            CoronaKind::SplittingNeighbourhood => {
                u * (lambda - a * r1 * (2.0 + n2) - b * mu - g * mu * mu) - b * b * mu * mu
            }
            CoronaKind::Corona | CoronaKind::Neighbourhood => unreachable!("checked above"),
        };
        value = value * LogDet::from_value(f);
    }
    Ok(value)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VerifyMode {
    /// Predicted spectrum against the eigenvalues of the composite.
    Spectrum,
    /// Factorised characteristic polynomial against the determinant of
    /// `λI - A_α(composite)` at sample points beyond the spectral radius.
    Charpoly,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyCell {
    pub alpha: Alpha,
    /// `None` when the prediction itself failed; see `error`.
    pub max_deviation: Option<f64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub samples: Vec<f64>,
    pub passed: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub kind: CoronaKind,
    pub mode: VerifyMode,
    pub tolerance: f64,
    pub cells: Vec<VerifyCell>,
    pub max_deviation: Option<f64>,
    pub passed: bool,
}

/// Number of `λ` samples per α cell in [`VerifyMode::Charpoly`].
pub const CHARPOLY_SAMPLES: usize = 10;

/// `ρ + 1, ρ + 2, ..., ρ + 10` for the spectral radius `ρ`.
pub fn charpoly_samples(spectral_radius: f64) -> Vec<f64> {
    (0..CHARPOLY_SAMPLES)
        .map(|k| spectral_radius + 1.0 + k as f64)
        .collect()
}

/// Compares closed-form predictions with the oracle for every α in `alphas`.
///
/// Numerical disagreement is reported in the result, not as an error.
pub fn verify_prediction(
    kind: CoronaKind,
    g1: &Graph,
    g2: &Graph,
    alphas: &[Alpha],
    tolerance: f64,
    mode: VerifyMode,
) -> Result<VerifyReport> {
    if g1.regular_degree().is_none() {
        return Err(Error::NotRegular);
    }
    check_closed_form(kind, g1.size())?;
    let (composite, _) = compose(kind, g1, g2)?;
    let (spec1, spec2) = match mode {
        VerifyMode::Spectrum => (
            Some(RegularSpec::from_graph(g1)?),
            Some(RegularSpec::from_graph(g2)?),
        ),
        VerifyMode::Charpoly => (None, None),
    };

    let mut cells = Vec::with_capacity(alphas.len());
    for &alpha in alphas {
        let matrix = a_alpha_matrix(&composite, alpha);
        let oracle = sym_eigenvalues(&matrix)?;
        let outcome: Result<(f64, Vec<f64>)> = match mode {
            VerifyMode::Spectrum => {
                let (s1, s2) = (spec1.as_ref().unwrap(), spec2.as_ref().unwrap());
                predict_spectrum(kind, s1, s2, alpha).map(|report| {
                    let dev = report.total.max_deviation(&oracle).unwrap_or(f64::INFINITY);
                    (dev, Vec::new())
                })
            }
            VerifyMode::Charpoly => {
                let samples = charpoly_samples(oracle.spectral_radius());
                samples
                    .iter()
                    .try_fold(0.0f64, |acc, &lambda| {
                        let predicted = eval_proposition_charpoly(kind, g1, g2, alpha, lambda)?;
                        let direct = char_poly_at(&matrix, lambda);
                        Ok(acc.max(predicted.relative_deviation(direct)))
                    })
                    .map(|dev| (dev, samples))
            }
        };
        cells.push(match outcome {
            Ok((dev, samples)) => VerifyCell {
                alpha,
                max_deviation: Some(dev),
                samples,
                passed: dev <= tolerance,
                error: None,
            },
            Err(e) => VerifyCell {
                alpha,
                max_deviation: None,
                samples: Vec::new(),
                passed: false,
                error: Some(e.to_string()),
            },
        });
    }

    let passed = cells.iter().all(|c| c.passed);
    let max_deviation = cells
        .iter()
        .map(|c| c.max_deviation)
        .try_fold(0.0f64, |acc, d| d.map(|d| acc.max(d)));
    Ok(VerifyReport {
        kind,
        mode,
        tolerance,
        cells,
        max_deviation,
        passed,
    })
}
