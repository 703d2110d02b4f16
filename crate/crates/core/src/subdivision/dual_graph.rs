//! Dual graphs of matroid subdivisions and their leaf/center decomposition.

use serde_json::{json, Value};

use super::regular::{facet_adjacency, SubdivisionComplex};
use super::SubdivisionError;
use crate::matroid::Matroid;
use crate::subset::GroundSubset;

/// Graph on the maximal cells; edges join cells sharing a facet.
#[derive(Clone, Debug)]
pub struct DualGraph {
    pub vertices: Vec<Matroid>,
    /// `(i, j, M′)` with `i < j` and `Δ_{M′} = Δ_i ∩ Δ_j`.
    pub edges: Vec<(usize, usize, Matroid)>,
}

impl DualGraph {
    pub fn degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|(i, j, _)| *i == v || *j == v).count()
    }

    pub fn neighbours(&self, v: usize) -> Vec<usize> {
        self.edges
            .iter()
            .filter_map(|(i, j, _)| {
                if *i == v {
                    Some(*j)
                } else if *j == v {
                    Some(*i)
                } else {
                    None
                }
            })
            .collect()
    }

    pub fn is_tree(&self) -> bool {
        let k = self.vertices.len();
        if k == 0 || self.edges.len() + 1 != k {
            return false;
        }
        let mut seen = vec![false; k];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for u in self.neighbours(v) {
                if !seen[u] {
                    seen[u] = true;
                    stack.push(u);
                }
            }
        }
        seen.into_iter().all(|b| b)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "vertices": self.vertices.iter().map(|m| m.to_json_value()).collect::<Vec<_>>(),
            "edges": self
                .edges
                .iter()
                .map(|(i, j, m)| json!({"i": i, "j": j, "edge": m.to_json_value()}))
                .collect::<Vec<_>>(),
        })
    }
}

/// Dual graph of a certified matroid subdivision.
pub fn dual_graph(s: &SubdivisionComplex) -> Result<DualGraph, SubdivisionError> {
    let vertices: Vec<Matroid> = s.maximal_cells()?.into_iter().cloned().collect();
    let edges = if s.adjacency.is_empty() && vertices.len() > 1 {
        facet_adjacency(s)
    } else {
        s.adjacency.clone()
    };
    Ok(DualGraph { vertices, edges })
}

/// A 1-valent cell together with the facet it shares with the center.
#[derive(Clone, Debug)]
pub struct Leaf {
    pub cell: usize,
    pub matroid: Matroid,
    pub facet: Matroid,
}

#[derive(Clone, Debug)]
pub struct CenterDecomposition {
    pub center: Matroid,
    pub leaves: Vec<Leaf>,
}

/// Splits off the 1-valent cells; the remaining cells are merged into one
/// matroid whose basis set is the union of theirs.
pub fn center_decomposition(g: &DualGraph, s: &SubdivisionComplex) -> Result<CenterDecomposition, SubdivisionError> {
    let k = g.vertices.len();
    if k <= 2 {
        return Err(SubdivisionError::TooFewCells(k));
    }
    let leaf_ids: Vec<usize> = (0..k).filter(|&v| g.degree(v) == 1).collect();
    let inner: Vec<usize> = (0..k).filter(|v| !leaf_ids.contains(v)).collect();
    if inner.is_empty() {
        return Err(SubdivisionError::NoCenter);
    }
    let mut union: Vec<GroundSubset> = inner
        .iter()
        .flat_map(|&v| g.vertices[v].bases().iter().copied())
        .collect();
    union.sort();
    union.dedup();
    let ambient = &s.ambient;
    let center = Matroid::from_bases(ambient.n(), ambient.d(), union).map_err(SubdivisionError::CenterNotMatroid)?;
    let mut leaves = Vec::new();
    for v in leaf_ids {
        let m = g.vertices[v].clone();
        let common: Vec<GroundSubset> = m.bases().iter().copied().filter(|b| center.is_basis(*b)).collect();
        let facet = Matroid::from_bases(m.n(), m.d(), common).map_err(SubdivisionError::CenterNotMatroid)?;
        leaves.push(Leaf {
            cell: v,
            matroid: m,
            facet,
        });
    }
    Ok(CenterDecomposition { center, leaves })
}

/// Lexicographically least basis shared by all chosen cells.
pub fn common_vertex(s: &SubdivisionComplex, cells: &[usize]) -> Option<GroundSubset> {
    let first = cells.first()?;
    s.cells[*first]
        .bases
        .iter()
        .copied()
        .find(|b| cells.iter().all(|&c| s.cells[c].bases.binary_search(b).is_ok()))
}
