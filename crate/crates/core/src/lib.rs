//! Corona-type graph products and their `A_α` spectra.
//!
//! The crate builds the composites ([`corona::compose`]), computes their
//! spectra directly ([`spectra`]), predicts the same spectra from closed-form
//! factorisations ([`closed_form`]) and certifies `A_α`-cospectral pairs
//! ([`cospectral`]).

pub mod closed_form;
pub mod corona;
pub mod cospectral;
pub mod error;
pub mod graph;
pub mod layout;
pub mod poly;
pub mod spectra;

pub use closed_form::{
    eval_proposition_charpoly, predict_spectrum, verify_prediction, Family, FamilyKind,
    PredictionReport, RegularSpec, VerifyMode, VerifyReport,
};
pub use corona::{compose, degrees_of_composite, CoronaKind};
pub use cospectral::{
    build_cospectral_pair, coronal_equal_sampled, known_regular_cospectral_pair, spectra_equal,
    CospectralCertificate, NamedGraph,
};
pub use error::{Error, Result};
pub use graph::{generate, DegreeInfo, Graph};
pub use layout::CompositeLayout;
pub use poly::{solve_real_polynomial, RealPolynomial};
pub use spectra::{a_alpha_matrix, sym_eigenvalues, Alpha, Spectrum, SymmetricMatrix};
