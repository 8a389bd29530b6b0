//! `A_α`-cospectral pairs built from corona-type products.
//!
//! Two A-cospectral regular graphs of the same degree give composites with
//! identical `A_α` spectra for any attachment graph `H`, because the
//! factorised characteristic polynomial of the composite only sees `n1`,
//! `r1` and the adjacency spectrum of the first operand.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::corona::{compose, CoronaKind};
use crate::error::{Error, Result};
use crate::graph::{self, Graph};
use crate::spectra::{
    a_alpha_matrix, adjacency_matrix, m_coronal, sym_eigenvalues, Alpha, Spectrum,
};

/// Tolerance for A-cospectrality of seed graphs.
pub const SEED_TOL: f64 = 1e-8;

/// Tolerance for [`coronal_equal_sampled`].
pub const CORONAL_TOL: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NamedGraph {
    pub name: String,
    pub graph: Graph,
}

impl NamedGraph {
    pub fn new(name: impl Into<String>, graph: Graph) -> NamedGraph {
        NamedGraph {
            name: name.into(),
            graph,
        }
    }

    /// Generates a graph from a family descriptor and keeps the descriptor as its name.
    pub fn generate(spec: &str) -> Result<NamedGraph> {
        Ok(NamedGraph::new(spec, graph::generate(spec)?))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CospectralCertificate {
    pub kind: CoronaKind,
    pub seed_names: [String; 2],
    pub attachment: String,
    pub alpha_grid: Vec<Alpha>,
    pub tolerance: f64,
    pub max_deviation: f64,
    pub passed: bool,
    /// Both composites have at least two distinct vertex degrees.
    pub non_regular: bool,
    pub tool_version: String,
}

/// Sorted elementwise comparison. Spectra of different sizes are never equal
/// and report an infinite deviation.
pub fn spectra_equal(s1: &Spectrum, s2: &Spectrum, tol: f64) -> (bool, f64) {
    match s1.max_deviation(s2) {
        Some(dev) => (dev <= tol, dev),
        None => (false, f64::INFINITY),
    }
}

pub const CATALOG: [&str; 1] = ["shrikhande_rook4"];

/// A verified pair of non-isomorphic, A-cospectral regular graphs.
///
/// Spectra are recomputed on every load rather than stored.
pub fn known_regular_cospectral_pair(key: &str) -> Result<(NamedGraph, NamedGraph)> {
    let pair = match key {
        "shrikhande_rook4" => (
            NamedGraph::new("shrikhande", graph::shrikhande()),
            NamedGraph::new("rook:4", graph::rook(4)),
        ),
        _ => return Err(Error::UnknownCatalogKey(key.to_string())),
    };
    check_seeds(&pair.0.graph, &pair.1.graph)
        .map_err(|_| Error::CorruptCatalog(key.to_string()))?;
    if neighbourhood_clique_profile(&pair.0.graph) == neighbourhood_clique_profile(&pair.1.graph) {
        return Err(Error::CorruptCatalog(key.to_string()));
    }
    Ok(pair)
}

fn check_seeds(g1: &Graph, g2: &Graph) -> Result<()> {
    let fail = |why: String| Err(Error::SeedsNotCospectral(why));
    let (r1, r2) = match (g1.regular_degree(), g2.regular_degree()) {
        (Some(r1), Some(r2)) => (r1, r2),
        _ => return fail("seeds must be regular".into()),
    };
    if g1.order() != g2.order() {
        return fail(format!("orders differ: {} vs {}", g1.order(), g2.order()));
    }
    if r1 != r2 {
        return fail(format!("degrees differ: {r1} vs {r2}"));
    }
    let s1 = sym_eigenvalues(&adjacency_matrix(g1))?;
    let s2 = sym_eigenvalues(&adjacency_matrix(g2))?;
    let (equal, dev) = spectra_equal(&s1, &s2, SEED_TOL);
    if !equal {
        return fail(format!("adjacency spectra differ by {dev:e}"));
    }
    Ok(())
}

/// Distribution of common-neighbour counts over adjacent and non-adjacent
/// pairs: `(adjacent?, count) -> number of pairs`.
pub fn common_neighbour_distribution(g: &Graph) -> BTreeMap<(bool, usize), usize> {
    let adj = g.adjacency_lists();
    let mut out = BTreeMap::new();
    for u in 0..g.order() {
        for v in u + 1..g.order() {
            let common = adj[u]
                .iter()
                .filter(|w| adj[v].binary_search(w).is_ok())
                .count();
            *out.entry((g.has_edge(u, v), common)).or_insert(0) += 1;
        }
    }
    out
}

/// Per vertex, the number of triangles inside its neighbourhood (the number
/// of 4-cliques through it), sorted.
pub fn neighbourhood_clique_profile(g: &Graph) -> Vec<usize> {
    let adj = g.adjacency_lists();
    let mut profile: Vec<usize> = adj
        .iter()
        .map(|nbrs| {
            let mut count = 0;
            for (i, &a) in nbrs.iter().enumerate() {
                for (j, &b) in nbrs.iter().enumerate().skip(i + 1) {
                    if !g.has_edge(a, b) {
                        continue;
                    }
                    count += nbrs[j + 1..]
                        .iter()
                        .filter(|&&c| g.has_edge(a, c) && g.has_edge(b, c))
                        .count();
                }
            }
            count
        })
        .collect();
    profile.sort_unstable();
    profile
}

/// Composes both seeds with `h` and compares the composite `A_α` spectra at
/// every α of the grid.
pub fn build_cospectral_pair(
    kind: CoronaKind,
    seeds: (&NamedGraph, &NamedGraph),
    h: &NamedGraph,
    alpha_grid: &[Alpha],
    tolerance: f64,
) -> Result<CospectralCertificate> {
    check_seeds(&seeds.0.graph, &seeds.1.graph)?;
    let (c1, _) = compose(kind, &seeds.0.graph, &h.graph)?;
    let (c2, _) = compose(kind, &seeds.1.graph, &h.graph)?;

    let mut max_deviation = 0.0f64;
    for &alpha in alpha_grid {
        let s1 = sym_eigenvalues(&a_alpha_matrix(&c1, alpha))?;
        let s2 = sym_eigenvalues(&a_alpha_matrix(&c2, alpha))?;
        max_deviation = max_deviation.max(spectra_equal(&s1, &s2, tolerance).1);
    }
    let non_regular = c1.regular_degree().is_none() && c2.regular_degree().is_none();
    Ok(CospectralCertificate {
        kind,
        seed_names: [seeds.0.name.clone(), seeds.1.name.clone()],
        attachment: h.name.clone(),
        alpha_grid: alpha_grid.to_vec(),
        tolerance,
        max_deviation,
        passed: max_deviation <= tolerance,
        non_regular,
        tool_version: env!("CARGO_PKG_VERSION").to_string(),
    })
}

/// Compares the M-coronals of `A_α(h1)` and `A_α(h2)` at each sample.
pub fn coronal_equal_sampled(
    h1: &Graph,
    h2: &Graph,
    alpha: Alpha,
    samples: &[f64],
) -> Result<(bool, f64)> {
    let m1 = a_alpha_matrix(h1, alpha);
    let m2 = a_alpha_matrix(h2, alpha);
    let mut max_deviation = 0.0f64;
    for &lambda in samples {
        let d = (m_coronal(&m1, lambda)? - m_coronal(&m2, lambda)?).abs();
        max_deviation = max_deviation.max(d);
    }
    Ok((max_deviation <= CORONAL_TOL, max_deviation))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, cycle};

    fn alpha(a: f64) -> Alpha {
        Alpha::new(a).unwrap()
    }

    #[test]
    fn spectra_equal_examples() {
        let s = Spectrum::from_values(vec![0.0, 1.0]);
        assert_eq!(spectra_equal(&s, &s, 1e-6), (true, 0.0));
        let t = Spectrum::from_values(vec![0.0, 1.0 + 2e-6]);
        assert!(!spectra_equal(&s, &t, 1e-6).0);
        let u = Spectrum::from_values(vec![0.0]);
        assert_eq!(spectra_equal(&s, &u, 1.0), (false, f64::INFINITY));
    }

    #[test]
    fn catalog_pair() {
        let (a, b) = known_regular_cospectral_pair("shrikhande_rook4").unwrap();
        assert_eq!((a.graph.order(), a.graph.regular_degree()), (16, Some(6)));
        assert_eq!((b.graph.order(), b.graph.regular_degree()), (16, Some(6)));
        let sa = sym_eigenvalues(&adjacency_matrix(&a.graph)).unwrap();
        let groups: Vec<_> = sa
            .groups()
            .iter()
            .map(|&(v, k)| (v.round() as i64, k))
            .collect();
        assert_eq!(groups, vec![(-2, 9), (2, 6), (6, 1)]);
        assert!(matches!(
            known_regular_cospectral_pair("paley9"),
            Err(Error::UnknownCatalogKey(_))
        ));
    }

    #[test]
    fn catalog_pair_local_invariants() {
        let (a, b) = known_regular_cospectral_pair("shrikhande_rook4").unwrap();
        // both are strongly regular (16, 6, 2, 2): pair statistics coincide
        assert_eq!(
            common_neighbour_distribution(&a.graph),
            common_neighbour_distribution(&b.graph)
        );
        // but rook's graph has rows and columns as 4-cliques and Shrikhande has none
        assert_eq!(neighbourhood_clique_profile(&a.graph), vec![0; 16]);
        assert_eq!(neighbourhood_clique_profile(&b.graph), vec![2; 16]);
    }

    #[test]
    fn regular_shift_keeps_cospectrality() {
        let (a, b) = known_regular_cospectral_pair("shrikhande_rook4").unwrap();
        let sa = sym_eigenvalues(&a_alpha_matrix(&a.graph, alpha(0.5))).unwrap();
        let sb = sym_eigenvalues(&a_alpha_matrix(&b.graph, alpha(0.5))).unwrap();
        assert!(spectra_equal(&sa, &sb, 1e-8).0);
    }

    #[test]
    fn certificate_for_q_vertex() {
        let (a, b) = known_regular_cospectral_pair("shrikhande_rook4").unwrap();
        let h = NamedGraph::generate("complete:2").unwrap();
        let grid: Vec<Alpha> = [0.0, 0.25, 0.5, 0.75, 1.0].map(alpha).to_vec();
        let cert = build_cospectral_pair(CoronaKind::QVertex, (&a, &b), &h, &grid, 1e-6).unwrap();
        assert!(cert.passed);
        assert!(cert.non_regular);
        assert_eq!(
            cert.seed_names,
            ["shrikhande".to_string(), "rook:4".to_string()]
        );
    }

    #[test]
    fn non_cospectral_seeds_rejected() {
        let c4 = NamedGraph::generate("cycle:4").unwrap();
        let k4 = NamedGraph::generate("complete:4").unwrap();
        let h = NamedGraph::generate("complete:2").unwrap();
        let err = build_cospectral_pair(CoronaKind::Total, (&c4, &k4), &h, &[alpha(0.5)], 1e-6);
        assert!(matches!(err, Err(Error::SeedsNotCospectral(_))));
        let p = NamedGraph::generate("path:4").unwrap();
        let err = build_cospectral_pair(CoronaKind::Total, (&p, &p), &h, &[alpha(0.5)], 1e-6);
        assert!(matches!(err, Err(Error::SeedsNotCospectral(_))));
    }

    #[test]
    fn coronal_sampling() {
        let k2 = complete(2);
        let (eq, dev) = coronal_equal_sampled(&k2, &k2, alpha(0.3), &[2.0, 3.5, 7.0]).unwrap();
        assert!(eq);
        assert_eq!(dev, 0.0);

        let two_k1 = Graph::empty(2);
        let (eq, dev) = coronal_equal_sampled(&k2, &two_k1, alpha(0.0), &[2.0]).unwrap();
        assert!(!eq);
        assert!((dev - 1.0).abs() < 1e-12);

        // C6 and two disjoint triangles: both 2-regular on 6 vertices
        let two_c3 =
            Graph::from_edge_list(6, &[(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]).unwrap();
        let (eq, _) =
            coronal_equal_sampled(&cycle(6), &two_c3, alpha(0.6), &[4.0, 5.0, 9.0]).unwrap();
        assert!(eq);
    }

    #[test]
    fn coronal_sampling_pole() {
        let k2 = complete(2);
        assert!(matches!(
            coronal_equal_sampled(&k2, &k2, alpha(0.0), &[1.0]),
            Err(Error::Pole { .. })
        ));
    }

    #[test]
    fn certificate_json_roundtrip() {
        let (a, b) = known_regular_cospectral_pair("shrikhande_rook4").unwrap();
        let h = NamedGraph::generate("path:3").unwrap();
        let cert =
            build_cospectral_pair(CoronaKind::Total, (&a, &b), &h, &[alpha(0.25)], 1e-6).unwrap();
        let json = serde_json::to_string(&cert).unwrap();
        let back: CospectralCertificate = serde_json::from_str(&json).unwrap();
        assert_eq!(back, cert);
    }
}
