//! Corona-type products of two graphs.
//!
//! Every composite uses the layout `[V(G1) | aux | copy 0 | copy 1 | ...]`.
//! Copy `i` keeps the canonical labelling of `G2` and sits at
//! `offset + i * n2 .. offset + (i + 1) * n2`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::layout::CompositeLayout;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CoronaKind {
    Corona,
    Neighbourhood,
    Total,
    Splitting,
    SplittingAddVertex,
    SplittingNeighbourhood,
    QVertex,
    QEdge,
}

impl CoronaKind {
    pub const ALL: [CoronaKind; 8] = [
        CoronaKind::Corona,
        CoronaKind::Neighbourhood,
        CoronaKind::Total,
        CoronaKind::Splitting,
        CoronaKind::SplittingAddVertex,
        CoronaKind::SplittingNeighbourhood,
        CoronaKind::QVertex,
        CoronaKind::QEdge,
    ];

    /// Kinds whose spectrum has a closed form for regular operands.
    pub const CLOSED_FORM: [CoronaKind; 6] = [
        CoronaKind::Total,
        CoronaKind::Splitting,
        CoronaKind::SplittingAddVertex,
        CoronaKind::SplittingNeighbourhood,
        CoronaKind::QVertex,
        CoronaKind::QEdge,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CoronaKind::Corona => "corona",
            CoronaKind::Neighbourhood => "neighbourhood",
            CoronaKind::Total => "total",
            CoronaKind::Splitting => "splitting",
            CoronaKind::SplittingAddVertex => "splitting_add_vertex",
            CoronaKind::SplittingNeighbourhood => "splitting_neighbourhood",
            CoronaKind::QVertex => "q_vertex",
            CoronaKind::QEdge => "q_edge",
        }
    }

    pub fn has_closed_form(self) -> bool {
        Self::CLOSED_FORM.contains(&self)
    }

    fn needs_edges(self) -> bool {
        matches!(
            self,
            CoronaKind::Total | CoronaKind::QVertex | CoronaKind::QEdge
        )
    }

    /// Number of vertices of the composite.
    pub fn composite_order(self, n1: usize, m1: usize, n2: usize) -> usize {
        match self {
            CoronaKind::Corona | CoronaKind::Neighbourhood => n1 + n1 * n2,
            CoronaKind::Total | CoronaKind::QVertex => n1 + m1 + n1 * n2,
            CoronaKind::Splitting
            | CoronaKind::SplittingAddVertex
            | CoronaKind::SplittingNeighbourhood => 2 * n1 + n1 * n2,
            CoronaKind::QEdge => n1 + m1 + m1 * n2,
        }
    }
}

impl fmt::Display for CoronaKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CoronaKind {
    type Err = Error;

    /// Accepts snake_case or kebab-case names.
    fn from_str(s: &str) -> Result<CoronaKind> {
        let key = s.trim().to_ascii_lowercase().replace('-', "_");
        CoronaKind::ALL
            .into_iter()
            .find(|k| k.name() == key)
            .ok_or_else(|| Error::UnknownKind(s.to_string()))
    }
}

/// Builds the composite graph of `kind` applied to `g1` and `g2`.
pub fn compose(kind: CoronaKind, g1: &Graph, g2: &Graph) -> Result<(Graph, CompositeLayout)> {
    let (n1, m1, n2) = (g1.order(), g1.size(), g2.order());
    if n1 == 0 {
        return Err(Error::InvalidOperand {
            kind: kind.to_string(),
            requirement: "a non-empty first graph".into(),
        });
    }
    if kind.needs_edges() && m1 == 0 {
        return Err(Error::InvalidOperand {
            kind: kind.to_string(),
            requirement: "a first graph with at least one edge".into(),
        });
    }

    let (skeleton, aux_len): (Graph, usize) = match kind {
        CoronaKind::Corona | CoronaKind::Neighbourhood => (g1.clone(), 0),
        CoronaKind::Total => (g1.total_graph().0, m1),
        CoronaKind::Splitting
        | CoronaKind::SplittingAddVertex
        | CoronaKind::SplittingNeighbourhood => (g1.splitting_graph().0, n1),
        CoronaKind::QVertex | CoronaKind::QEdge => (g1.q_graph().0, m1),
    };
    let copies = if kind == CoronaKind::QEdge { m1 } else { n1 };
    let layout = CompositeLayout::new(n1, aux_len, copies, n2);

    let neighbours = g1.adjacency_lists();
    // Skeleton vertices joined to every vertex of copy i.
    let anchors = |i: usize| -> Vec<usize> {
        match kind {
            CoronaKind::Corona
            | CoronaKind::Total
            | CoronaKind::Splitting
            | CoronaKind::QVertex => vec![i],
            CoronaKind::SplittingAddVertex | CoronaKind::QEdge => vec![n1 + i],
            CoronaKind::Neighbourhood | CoronaKind::SplittingNeighbourhood => neighbours[i].clone(),
        }
    };

    let mut edges: Vec<(usize, usize)> = skeleton.edges().to_vec();
    for i in 0..copies {
        let offset = layout.copy_offset(i);
        edges.extend(g2.edges().iter().map(|&(u, v)| (offset + u, offset + v)));
        for a in anchors(i) {
            edges.extend((0..n2).map(|w| (a, offset + w)));
        }
    }
    let composite = Graph::from_edge_list(layout.order(), &edges)?;
    debug_assert_eq!(composite.order(), kind.composite_order(n1, m1, n2));
    Ok((composite, layout))
}

/// Degree multiset of the composite of two regular graphs, as ascending
/// `(degree, multiplicity)` pairs.
pub fn degrees_of_composite(
    kind: CoronaKind,
    g1: &Graph,
    g2: &Graph,
) -> Result<Vec<(usize, usize)>> {
    let r1 = g1.regular_degree().ok_or(Error::NotRegular)?;
    let r2 = g2.regular_degree().ok_or(Error::NotRegular)?;
    let (n1, m1, n2) = (g1.order(), g1.size(), g2.order());

    let classes: Vec<(usize, usize)> = match kind {
        CoronaKind::Corona => vec![(r1 + n2, n1), (r2 + 1, n1 * n2)],
        CoronaKind::Neighbourhood => vec![(r1 + r1 * n2, n1), (r2 + r1, n1 * n2)],
        CoronaKind::Total => vec![(2 * r1 + n2, n1), (2 * r1, m1), (r2 + 1, n1 * n2)],
        CoronaKind::Splitting => vec![(2 * r1 + n2, n1), (r1, n1), (r2 + 1, n1 * n2)],
        CoronaKind::SplittingAddVertex => vec![(2 * r1, n1), (r1 + n2, n1), (r2 + 1, n1 * n2)],
        CoronaKind::SplittingNeighbourhood => {
            vec![(r1 * (2 + n2), n1), (r1, n1), (r2 + r1, n1 * n2)]
        }
        CoronaKind::QVertex => vec![(r1 + n2, n1), (2 * r1, m1), (r2 + 1, n1 * n2)],
        CoronaKind::QEdge => vec![(r1, n1), (2 * r1 + n2, m1), (r2 + 1, m1 * n2)],
    };

    let mut merged: std::collections::BTreeMap<usize, usize> = Default::default();
    for (d, k) in classes {
        if k > 0 {
            *merged.entry(d).or_default() += k;
        }
    }
    Ok(merged.into_iter().collect())
}
