use std::ops::Range;

use serde::{Deserialize, Serialize};

/// Vertex partition of a derived graph.
///
/// Indices are laid out as `[base | aux | copy 0 | copy 1 | ...]`. `aux` holds
/// the edge-vertices of a Q-graph or total graph, or the twin set `U(G)` of a
/// splitting graph, and is empty when the construction has none.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompositeLayout {
    pub base: Range<usize>,
    pub aux: Range<usize>,
    pub copies: Vec<Range<usize>>,
}

impl CompositeLayout {
    /// Layout for `base_len` base vertices, `aux_len` auxiliary vertices and
    /// `copies` contiguous blocks of width `copy_len`.
    pub fn new(base_len: usize, aux_len: usize, copies: usize, copy_len: usize) -> Self {
        let base = 0..base_len;
        let aux = base_len..base_len + aux_len;
        let offset = aux.end;
        let copies = (0..copies)
            .map(|i| offset + i * copy_len..offset + (i + 1) * copy_len)
            .collect();
        CompositeLayout { base, aux, copies }
    }

    pub fn order(&self) -> usize {
        self.copies.last().map_or(self.aux.end, |r| r.end)
    }

    /// Start of copy `i`.
    pub fn copy_offset(&self, i: usize) -> usize {
        self.copies[i].start
    }

    /// Checks that the ranges are contiguous, disjoint and cover `[0, order)`.
    pub fn is_partition(&self) -> bool {
        if self.base.start != 0 || self.aux.start != self.base.end {
            return false;
        }
        let mut cursor = self.aux.end;
        for r in &self.copies {
            if r.start != cursor || r.end < r.start {
                return false;
            }
            cursor = r.end;
        }
        true
    }
}
