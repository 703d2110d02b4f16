//! Regular subdivisions of matroid polytopes induced by weight vectors.
//!
//! The lower faces of `conv{(u_β, w_β)}` are read off from the cone of
//! affine functionals lying below the lifted points,
//! `{(c, c₀, t) : t·W_β − ⟨c, u_β⟩ − c₀ ≥ 0, t ≥ 0}` with `W = L·w` integral.
//! Its extreme rays with `t > 0` are the lower facets; the constraints tight
//! on such a ray are the bases of the corresponding maximal cell, and
//! `c / (t·L)` is a functional whose `w`-corrected minimum is attained
//! exactly on that cell.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde_json::{json, Value};

use super::polytope::polytope_dim;
use super::SubdivisionError;
use crate::matroid::{Matroid, MatroidError};
use crate::polyhedral::cone_generators;
use crate::rational::{common_denominator, format_rational, Rational};
use crate::subset::GroundSubset;
use crate::weight::WeightVector;

/// Result of checking the exchange axiom on a cell's basis set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CellCertificate {
    Matroid(Matroid),
    NotMatroid(MatroidError),
}

/// A maximal cell of `Δ_{M,w}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cell {
    /// Lexicographically sorted.
    pub bases: Vec<GroundSubset>,
    /// `c` with `argmin_β (w_β − ⟨c, u_β⟩) = bases`.
    pub witness: Vec<Rational>,
    pub certificate: CellCertificate,
}

impl Cell {
    pub fn matroid(&self) -> Option<&Matroid> {
        match &self.certificate {
            CellCertificate::Matroid(m) => Some(m),
            CellCertificate::NotMatroid(_) => None,
        }
    }
}

#[derive(Clone, Debug)]
pub struct SubdivisionComplex {
    pub ambient: Matroid,
    pub weight: WeightVector,
    /// Sorted by basis list.
    pub cells: Vec<Cell>,
    /// Pairs of cells sharing a facet, with the matroid of that facet.
    /// Empty unless every cell is a matroid.
    pub adjacency: Vec<(usize, usize, Matroid)>,
}

impl SubdivisionComplex {
    pub fn is_matroid_subdivision(&self) -> bool {
        self.cells.iter().all(|c| c.matroid().is_some())
    }

    /// Cell matroids, or the index of the first cell that fails the exchange axiom.
    pub fn maximal_cells(&self) -> Result<Vec<&Matroid>, SubdivisionError> {
        self.cells
            .iter()
            .enumerate()
            .map(|(i, c)| c.matroid().ok_or(SubdivisionError::NonMatroidCell(i)))
            .collect()
    }

    /// `w_β − ⟨c, u_β⟩` for one basis.
    pub fn corrected_weight(&self, witness: &[Rational], beta: GroundSubset) -> Rational {
        let mut v = self.weight.get(beta);
        for i in beta.iter() {
            v -= &witness[i - 1];
        }
        v
    }

    /// Exact check that the cell's witness is minimized exactly on its bases.
    pub fn witness_is_sound(&self, cell: usize) -> bool {
        let c = &self.cells[cell];
        let values: Vec<(GroundSubset, Rational)> = self
            .ambient
            .bases()
            .iter()
            .map(|&b| (b, self.corrected_weight(&c.witness, b)))
            .collect();
        let Some(min) = values.iter().map(|(_, v)| v).min().cloned() else {
            return false;
        };
        let argmin: Vec<GroundSubset> = values.into_iter().filter(|(_, v)| *v == min).map(|(b, _)| b).collect();
        argmin == c.bases
    }

    /// Union of the cells' basis sets equals the ambient basis set.
    pub fn covers_ambient(&self) -> bool {
        let mut all: Vec<GroundSubset> = self.cells.iter().flat_map(|c| c.bases.iter().copied()).collect();
        all.sort();
        all.dedup();
        all == self.ambient.bases()
    }

    pub fn to_json(&self) -> Value {
        let cells: Vec<Value> = self
            .cells
            .iter()
            .map(|c| {
                let bases: Vec<Vec<usize>> = c.bases.iter().map(|b| b.to_vec()).collect();
                let (is_matroid, violation) = match &c.certificate {
                    CellCertificate::Matroid(_) => (true, Value::Null),
                    CellCertificate::NotMatroid(e) => (false, json!(e.to_string())),
                };
                json!({
                    "bases": bases,
                    "witness": c.witness.iter().map(format_rational).collect::<Vec<_>>(),
                    "is_matroid": is_matroid,
                    "violation": violation,
                })
            })
            .collect();
        let adjacency: Vec<Value> = self
            .adjacency
            .iter()
            .map(|(i, j, m)| json!({"i": i, "j": j, "edge": m.to_json_value()}))
            .collect();
        json!({
            "ambient": self.ambient.to_json_value(),
            "weight": self.weight.to_json(),
            "cells": cells,
            "adjacency": adjacency,
            "matroid_subdivision": self.is_matroid_subdivision(),
        })
    }
}

/// Regular subdivision of `Δ_M` induced by `w` (minimum convention).
pub fn regular_subdivision(m: &Matroid, w: &WeightVector) -> Result<SubdivisionComplex, SubdivisionError> {
    if w.d() != m.d() || w.n() != m.n() {
        return Err(SubdivisionError::WeightShape {
            expected: (m.d(), m.n()),
            found: (w.d(), w.n()),
        });
    }
    let n = m.n();
    let bases = m.bases();
    let values: Vec<Rational> = bases.iter().map(|&b| w.get(b)).collect();
    let scale = common_denominator(values.iter());
    let scaled: Vec<BigInt> = values
        .iter()
        .map(|v| (v * Rational::from_integer(scale.clone())).to_integer())
        .collect();

    // coordinates: c_1..c_n, c_0, t
    let dim = n + 2;
    let mut ineqs: Vec<Vec<BigInt>> = Vec::with_capacity(bases.len() + 1);
    for (b, wb) in bases.iter().zip(&scaled) {
        let mut row = vec![BigInt::zero(); dim];
        for i in b.iter() {
            row[i - 1] = BigInt::from(-1);
        }
        row[n] = BigInt::from(-1);
        row[n + 1] = wb.clone();
        ineqs.push(row);
    }
    let mut t_row = vec![BigInt::zero(); dim];
    t_row[n + 1] = BigInt::from(1);
    ineqs.push(t_row);

    let gens = cone_generators(dim, &ineqs, &[]);
    let mut cells = Vec::new();
    for (ray, tight) in gens.rays.iter().zip(&gens.tight) {
        if !ray[n + 1].is_positive() {
            continue;
        }
        let cell_bases: Vec<GroundSubset> = tight.iter().filter(|&k| k < bases.len()).map(|k| bases[k]).collect();
        let denom = Rational::from_integer(&ray[n + 1] * &scale);
        let witness: Vec<Rational> = ray[..n]
            .iter()
            .map(|c| Rational::from_integer(c.clone()) / &denom)
            .collect();
        let certificate = match Matroid::from_bases(n, m.d(), cell_bases.clone()) {
            Ok(cm) => CellCertificate::Matroid(cm),
            Err(e) => CellCertificate::NotMatroid(e),
        };
        let mut sorted = cell_bases;
        sorted.sort();
        cells.push(Cell {
            bases: sorted,
            witness,
            certificate,
        });
    }
    cells.sort_by(|a, b| a.bases.cmp(&b.bases));

    let mut complex = SubdivisionComplex {
        ambient: m.clone(),
        weight: w.clone(),
        cells,
        adjacency: Vec::new(),
    };
    if complex.is_matroid_subdivision() {
        complex.adjacency = facet_adjacency(&complex);
    }
    Ok(complex)
}

/// Pairs of cells whose common face is a matroid polytope of codimension one.
pub(crate) fn facet_adjacency(s: &SubdivisionComplex) -> Vec<(usize, usize, Matroid)> {
    let mut edges = Vec::new();
    for i in 0..s.cells.len() {
        let Some(mi) = s.cells[i].matroid() else { continue };
        let dim = polytope_dim(mi);
        for j in i + 1..s.cells.len() {
            let Some(mj) = s.cells[j].matroid() else { continue };
            let common: Vec<GroundSubset> = mi.bases().iter().copied().filter(|b| mj.is_basis(*b)).collect();
            if common.is_empty() {
                continue;
            }
            if let Ok(shared) = Matroid::from_bases(mi.n(), mi.d(), common) {
                if polytope_dim(&shared) + 1 == dim {
                    edges.push((i, j, shared));
                }
            }
        }
    }
    edges
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn set(v: &[usize]) -> GroundSubset {
        GroundSubset::from_elements(v.iter().copied())
    }

    #[test]
    fn zero_weight_gives_one_cell() {
        let m = Matroid::uniform(2, 4);
        let s = regular_subdivision(&m, &WeightVector::zero(2, 4)).unwrap();
        assert_eq!(s.cells.len(), 1);
        assert_eq!(s.cells[0].matroid(), Some(&m));
        assert!(s.witness_is_sound(0));
        assert!(s.adjacency.is_empty());
    }

    #[test]
    fn octahedron_split() {
        let m = Matroid::uniform(2, 4);
        let w = WeightVector::indicator(2, 4, &["12", "34"]).unwrap();
        let s = regular_subdivision(&m, &w).unwrap();
        assert_eq!(s.cells.len(), 2);
        let p1 = Matroid::partition_matroid(4, &[set(&[1]), set(&[2]), set(&[3, 4])]).unwrap();
        let p2 = Matroid::partition_matroid(4, &[set(&[1, 2]), set(&[3]), set(&[4])]).unwrap();
        let got: Vec<&Matroid> = s.maximal_cells().unwrap();
        assert!(got.contains(&&p1) && got.contains(&&p2));
        assert_eq!(s.adjacency.len(), 1);
        let square: Vec<GroundSubset> = ["13", "14", "23", "24"]
            .iter()
            .map(|l| GroundSubset::parse_label(l).unwrap())
            .collect();
        assert_eq!(s.adjacency[0].2.bases(), square.as_slice());
        for i in 0..2 {
            assert!(s.witness_is_sound(i));
        }
        assert!(s.covers_ambient());
    }

    #[test]
    fn non_matroid_cell_is_reported() {
        // lowering u_12 and u_34 cuts the octahedron along a diagonal
        let m = Matroid::uniform(2, 4);
        let mut bad = WeightVector::zero(2, 4);
        bad.set(set(&[1, 2]), int(-1));
        bad.set(set(&[3, 4]), int(-1));
        let s = regular_subdivision(&m, &bad).unwrap();
        assert!(!s.is_matroid_subdivision());
        assert!(s.maximal_cells().is_err());
    }
}
