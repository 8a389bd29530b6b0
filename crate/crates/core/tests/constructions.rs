use corona_spectra::spectra::{adjacency_matrix, line_graph_spectrum_regular};
use corona_spectra::{
    build_cospectral_pair, compose, generate, known_regular_cospectral_pair, sym_eigenvalues,
    verify_prediction, Alpha, CoronaKind, Error, NamedGraph, VerifyMode,
};

fn grid() -> Vec<Alpha> {
    [0.0, 0.25, 0.5, 0.75, 1.0]
        .map(|a| Alpha::new(a).unwrap())
        .to_vec()
}

#[test]
fn line_graph_spectra_of_regular_graphs() {
    for spec in [
        "cycle:4",
        "complete:4",
        "petersen",
        "complete:2",
        "complete_bipartite:3:3",
    ] {
        let g = generate(spec).unwrap();
        let r = g.regular_degree().unwrap();
        let own = sym_eigenvalues(&adjacency_matrix(&g)).unwrap();
        let predicted = line_graph_spectrum_regular(&own, g.order(), g.size(), r).unwrap();
        let oracle = sym_eigenvalues(&adjacency_matrix(&g.line_graph())).unwrap();
        let dev = predicted.max_deviation(&oracle).unwrap();
        assert!(dev < 1e-8, "{spec}: {dev:e}");
    }
}

#[test]
fn q_composites_of_c4_and_k2() {
    let c4 = generate("cycle:4").unwrap();
    let k2 = generate("complete:2").unwrap();
    for kind in [CoronaKind::QVertex, CoronaKind::QEdge] {
        let (g, layout) = compose(kind, &c4, &k2).unwrap();
        assert_eq!((g.order(), g.size()), (16, 24), "{kind}");
        assert!(layout.is_partition());
    }
}

#[test]
fn cospectral_pairs_from_catalog_seeds() {
    let (a, b) = known_regular_cospectral_pair("shrikhande_rook4").unwrap();
    let h = NamedGraph::generate("path:3").unwrap();
    for kind in [CoronaKind::Total, CoronaKind::QVertex] {
        let cert = build_cospectral_pair(kind, (&a, &b), &h, &grid(), 1e-6).unwrap();
        assert!(cert.passed, "{kind}: {:e}", cert.max_deviation);
        assert!(cert.non_regular);
    }
    let c4 = NamedGraph::generate("cycle:4").unwrap();
    let k4 = NamedGraph::generate("complete:4").unwrap();
    let err = build_cospectral_pair(CoronaKind::Total, (&c4, &k4), &h, &grid(), 1e-6).unwrap_err();
    assert!(matches!(err, Error::SeedsNotCospectral(_)));
}

#[test]
fn verification_examples() {
    let cases = [
        (CoronaKind::Total, "cycle:4", "complete:2"),
        (CoronaKind::QEdge, "complete:4", "complete:2"),
        (CoronaKind::SplittingAddVertex, "petersen", "complete:3"),
    ];
    for (kind, g1, g2) in cases {
        let (g1, g2) = (generate(g1).unwrap(), generate(g2).unwrap());
        for mode in [VerifyMode::Spectrum, VerifyMode::Charpoly] {
            let report = verify_prediction(kind, &g1, &g2, &grid(), 1e-6, mode).unwrap();
            assert!(report.passed, "{kind} {mode:?}: {:?}", report.max_deviation);
        }
    }
}
