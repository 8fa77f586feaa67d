// Licensed under the Apache License, Version 2.0 (the "License"); you may
// not use this file except in compliance with the License. You may obtain
// a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS, WITHOUT
// WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the
// License for the specific language governing permissions and limitations
// under the License.

//! Minimal edge coloring of bipartite graphs.
//!
//! By König's theorem a bipartite graph can always be edge colored with as many
//! colors as its maximum degree. Edges are inserted one at a time; when the
//! colors free at the two endpoints differ, the alternating path of those two
//! colors starting at the right endpoint is flipped. The path never reaches the
//! left endpoint because the graph is bipartite.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::linmaps::BinMatrix;

const NONE: u32 = u32::MAX;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BipartiteGraph {
    left_count: usize,
    right_count: usize,
    edges: Vec<(usize, usize)>,
}

impl BipartiteGraph {
    pub fn new(left_count: usize, right_count: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        let mut seen = HashSet::with_capacity(edges.len());
        for &(u, v) in &edges {
            if u >= left_count || v >= right_count {
                return Err(Error::InvalidInput(format!(
                    "edge ({u}, {v}) out of bounds for {left_count}+{right_count} vertices"
                )));
            }
            if !seen.insert((u, v)) {
                return Err(Error::InvalidInput(format!("duplicate edge ({u}, {v})")));
            }
        }
        Ok(BipartiteGraph {
            left_count,
            right_count,
            edges,
        })
    }

    pub fn left_count(&self) -> usize {
        self.left_count
    }

    pub fn right_count(&self) -> usize {
        self.right_count
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn max_degree(&self) -> usize {
        let mut left = vec![0usize; self.left_count];
        let mut right = vec![0usize; self.right_count];
        for &(u, v) in &self.edges {
            left[u] += 1;
            right[v] += 1;
        }
        left.into_iter().chain(right).max().unwrap_or(0)
    }
}

/// Graph with the source coefficients on the left and the targets on the right:
/// an edge `(i, j)` for every entry `M[j][i] = 1`.
pub fn graph_of_matrix(m: &BinMatrix) -> BipartiteGraph {
    let mut edges: Vec<(usize, usize)> = m.entries().map(|(row, col)| (col, row)).collect();
    edges.sort_unstable();
    BipartiteGraph {
        left_count: m.dim(),
        right_count: m.dim(),
        edges,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeColoring {
    /// Color of each edge, indexed like [`BipartiteGraph::edges`].
    pub colors: Vec<usize>,
    pub num_colors: usize,
}

impl EdgeColoring {
    pub fn is_proper(&self, g: &BipartiteGraph) -> bool {
        let mut left = HashSet::new();
        let mut right = HashSet::new();
        self.colors.len() == g.edges.len()
            && g.edges
                .iter()
                .zip(&self.colors)
                .all(|(&(u, v), &c)| c < self.num_colors && left.insert((u, c)) && right.insert((v, c)))
    }

    /// Edge indices grouped by color, each group in ascending edge order.
    pub fn classes(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.num_colors];
        for (e, &c) in self.colors.iter().enumerate() {
            out[c].push(e);
        }
        out
    }
}

/// Proper edge coloring with exactly `max_degree(g)` colors.
pub fn color_edges(g: &BipartiteGraph) -> EdgeColoring {
    let k = g.max_degree();
    if k == 0 {
        return EdgeColoring {
            colors: Vec::new(),
            num_colors: 0,
        };
    }
    // at_left[u * k + c] = right neighbour of u along color c, at_right likewise.
    let mut at_left = vec![NONE; g.left_count * k];
    let mut at_right = vec![NONE; g.right_count * k];
    let free = |table: &[u32], vertex: usize| -> usize {
        (0..k)
            .find(|&c| table[vertex * k + c] == NONE)
            .expect("degree bound leaves a free color")
    };
    let mut path: Vec<(usize, usize)> = Vec::new();
    for &(u, v) in &g.edges {
        let alpha = free(&at_left, u);
        if at_right[v * k + alpha] != NONE {
            let beta = free(&at_right, v);
            // Walk v -alpha- u1 -beta- v1 -alpha- ... and collect its edges.
            path.clear();
            let mut right = v;
            loop {
                let l = at_right[right * k + alpha];
                if l == NONE {
                    break;
                }
                let l = l as usize;
                path.push((l, right));
                let r = at_left[l * k + beta];
                if r == NONE {
                    break;
                }
                right = r as usize;
                path.push((l, right));
            }
            // Uncolor then recolor with alpha and beta exchanged.
            for (i, &(l, r)) in path.iter().enumerate() {
                let c = if i % 2 == 0 { alpha } else { beta };
                at_left[l * k + c] = NONE;
                at_right[r * k + c] = NONE;
            }
            for (i, &(l, r)) in path.iter().enumerate() {
                let c = if i % 2 == 0 { beta } else { alpha };
                at_left[l * k + c] = r as u32;
                at_right[r * k + c] = l as u32;
            }
        }
        debug_assert_eq!(at_left[u * k + alpha], NONE);
        debug_assert_eq!(at_right[v * k + alpha], NONE);
        at_left[u * k + alpha] = v as u32;
        at_right[v * k + alpha] = u as u32;
    }
    let colors = g
        .edges
        .iter()
        .map(|&(u, v)| {
            (0..k)
                .find(|&c| at_left[u * k + c] == v as u32)
                .expect("every edge is colored")
        })
        .collect();
    EdgeColoring { colors, num_colors: k }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf2field::IrreduciblePoly;
    use crate::linmaps::{matrix_of_const_mul, matrix_of_squaring};

    #[test]
    fn f8_constant_multiplication_graph() {
        let p = IrreduciblePoly::parse("1+x+x^3").unwrap();
        let m = matrix_of_const_mul(&p.parse_elem("1+x+x^2").unwrap()).unwrap();
        let g = graph_of_matrix(&m);
        assert_eq!(g.edges().len(), 6);
        let col = color_edges(&g);
        assert!(col.is_proper(&g));
        assert_eq!(col.num_colors, 3);
    }

    #[test]
    fn f128_squaring_graph() {
        let p = IrreduciblePoly::parse("1+x+x^7").unwrap();
        let g = graph_of_matrix(&matrix_of_squaring(&p).unwrap());
        assert_eq!(g.edges().len(), 10);
        let col = color_edges(&g);
        assert!(col.is_proper(&g));
        assert_eq!(col.num_colors, 2);
    }

    #[test]
    fn small_cases() {
        let g = BipartiteGraph::new(1, 1, vec![(0, 0)]).unwrap();
        assert_eq!(color_edges(&g).num_colors, 1);
        let empty = BipartiteGraph::new(3, 3, vec![]).unwrap();
        assert_eq!(color_edges(&empty).num_colors, 0);
        let id = graph_of_matrix(&BinMatrix::identity(3).unwrap());
        assert_eq!(id.edges(), &[(0, 0), (1, 1), (2, 2)]);
        assert!(BipartiteGraph::new(2, 2, vec![(0, 1), (0, 1)]).is_err());
        assert!(BipartiteGraph::new(2, 2, vec![(2, 1)]).is_err());
    }

    #[test]
    fn zero_row_gives_isolated_vertex() {
        let m = BinMatrix::from_rows(&[[1, 1], [0, 0]]).unwrap();
        let g = graph_of_matrix(&m);
        assert_eq!(g.edges(), &[(0, 0), (1, 0)]);
        let col = color_edges(&g);
        assert_eq!(col.num_colors, 2);
        assert!(col.is_proper(&g));
    }

    #[test]
    fn complete_bipartite_needs_path_flips() {
        let mut edges = Vec::new();
        for u in 0..7 {
            for v in 0..7 {
                edges.push((u, (u * 3 + v) % 7));
            }
        }
        let g = BipartiteGraph::new(7, 7, edges).unwrap();
        let col = color_edges(&g);
        assert_eq!(col.num_colors, 7);
        assert!(col.is_proper(&g));
        assert_eq!(color_edges(&g), col);
    }
}
