//! Matroid polytopes: dimension, vertices, facets and the edge criterion.

use std::fmt;

use num_bigint::BigInt;
use serde::Serialize;

use super::SubdivisionError;
use crate::matroid::Matroid;
use crate::polyhedral::hull_facets;
use crate::subset::GroundSubset;

/// `dim Δ_M = n − #components`.
pub fn polytope_dim(m: &Matroid) -> usize {
    m.n() - m.components().len()
}

/// Indicator vectors `u_β` of the bases, sorted.
pub fn matroid_polytope_vertices(m: &Matroid) -> Vec<Vec<i64>> {
    let mut v: Vec<Vec<i64>> = m.bases().iter().map(|b| b.indicator(m.n())).collect();
    v.sort();
    v
}

fn big(points: &[Vec<i64>]) -> Vec<Vec<BigInt>> {
    points
        .iter()
        .map(|p| p.iter().map(|&x| BigInt::from(x)).collect())
        .collect()
}

/// Edges of `conv(points)` as index pairs `(i, j)`, `i < j`.
///
/// Two vertices span an edge exactly when the facets containing both cut out
/// no further vertex.
pub fn polytope_edges(points: &[Vec<i64>]) -> Vec<(usize, usize)> {
    let k = points.len();
    if k < 2 {
        return Vec::new();
    }
    if k == 2 {
        return vec![(0, 1)];
    }
    let hull = hull_facets(&big(points));
    let mut edges = Vec::new();
    for i in 0..k {
        for j in i + 1..k {
            let mut face: Vec<bool> = vec![true; k];
            for (_, _, on) in &hull.facets {
                if on.contains(&i) && on.contains(&j) {
                    let mut mask = vec![false; k];
                    for &p in on {
                        mask[p] = true;
                    }
                    for p in 0..k {
                        face[p] &= mask[p];
                    }
                }
            }
            if face.iter().filter(|&&b| b).count() == 2 {
                edges.push((i, j));
            }
        }
    }
    edges
}

/// The edge criterion: every edge of the hull is parallel to some `u_i − u_j`.
pub fn ggms_is_matroid_polytope(vertices: &[Vec<i64>]) -> Result<bool, SubdivisionError> {
    if vertices.is_empty() {
        return Err(SubdivisionError::EmptyInput);
    }
    let parallel = |a: &[i64], b: &[i64]| {
        let diff: Vec<i64> = a.iter().zip(b).map(|(x, y)| x - y).filter(|&x| x != 0).collect();
        diff.len() == 2 && diff.contains(&1) && diff.contains(&-1)
    };
    Ok(polytope_edges(vertices)
        .into_iter()
        .all(|(i, j)| parallel(&vertices[i], &vertices[j])))
}

/// A facet-defining inequality of a matroid polytope.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FacetDescription {
    /// `x_i ≥ 0`.
    LowerBound { i: usize },
    /// `x_η ≤ ρ(η)` for a nondegenerate flat `η`.
    FlatBound { flat: GroundSubset, bound: usize },
}

impl FacetDescription {
    /// Bases lying on the facet, i.e. the face matroid's basis set.
    pub fn face(&self, m: &Matroid) -> Result<Matroid, crate::matroid::MatroidError> {
        match self {
            FacetDescription::LowerBound { i } => Matroid::from_bases(
                m.n(),
                m.d(),
                m.bases().iter().copied().filter(|b| !b.contains(*i)),
            ),
            FacetDescription::FlatBound { flat, .. } => Ok(m.face_matroid(*flat)),
        }
    }

    /// Whether this is `x_i = 1` written as the bound for the flat `{i}`.
    pub fn singleton_upper(&self) -> Option<usize> {
        match self {
            FacetDescription::FlatBound { flat, bound: 1 } if flat.len() == 1 => flat.min_element(),
            _ => None,
        }
    }
}

impl fmt::Display for FacetDescription {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FacetDescription::LowerBound { i } => write!(f, "x_{i} = 0"),
            FacetDescription::FlatBound { flat, bound } => {
                let label: String = flat.iter().map(|i| i.to_string()).collect::<Vec<_>>().join("");
                write!(f, "x_{label} = {bound}")
            }
        }
    }
}

/// Flats whose restriction and contraction are both connected.
pub fn nondegenerate_flats(m: &Matroid) -> Vec<GroundSubset> {
    let ground = m.ground();
    m.flats()
        .into_iter()
        .filter(|&f| !f.is_empty() && f != ground)
        .filter(|&f| {
            let restricted = m.restriction(f).map(|r| r.is_connected()).unwrap_or(false);
            restricted && m.contraction(f).map(|c| c.is_connected()).unwrap_or(false)
        })
        .collect()
}

fn connected_facets(m: &Matroid) -> Vec<FacetDescription> {
    let dim = polytope_dim(m);
    let mut out = Vec::new();
    if dim == 0 {
        return out;
    }
    for i in 1..=m.n() {
        let avoiding: Vec<GroundSubset> = m.bases().iter().copied().filter(|b| !b.contains(i)).collect();
        if avoiding.is_empty() {
            continue;
        }
        let face = Matroid::from_bases(m.n(), m.d(), avoiding).expect("deletion face");
        if polytope_dim(&face) + 1 == dim {
            out.push(FacetDescription::LowerBound { i });
        }
    }
    for flat in nondegenerate_flats(m) {
        let facet = FacetDescription::FlatBound {
            flat,
            bound: m.rank(flat),
        };
        assert_eq!(
            polytope_dim(&facet.face(m).expect("faces are matroids")) + 1,
            dim,
            "nondegenerate flat {flat} does not give a facet"
        );
        out.push(facet);
    }
    out
}

/// Facets of `Δ_M`. For a disconnected matroid the polytope is the product of
/// its components' polytopes, and the facets are gathered per component with
/// flats expressed in the original labels.
pub fn facets(m: &Matroid) -> Vec<FacetDescription> {
    let comps = m.components();
    let mut out = Vec::new();
    if comps.len() == 1 {
        out = connected_facets(m);
    } else {
        for comp in comps {
            if comp.len() < 2 {
                continue;
            }
            let part = m.restriction(comp).expect("restriction to a component");
            let labels = comp.to_vec();
            let relabel = |s: GroundSubset| GroundSubset::from_elements(s.iter().map(|i| labels[i - 1]));
            for f in connected_facets(&part) {
                out.push(match f {
                    FacetDescription::LowerBound { i } => FacetDescription::LowerBound { i: labels[i - 1] },
                    FacetDescription::FlatBound { flat, bound } => FacetDescription::FlatBound {
                        flat: relabel(flat),
                        bound,
                    },
                });
            }
        }
    }
    let dim = polytope_dim(m);
    for f in &out {
        let face = f.face(m).expect("facet faces are matroids");
        assert_eq!(polytope_dim(&face) + 1, dim, "facet {f} has the wrong dimension");
    }
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matroid::named_matroid;

    fn set(v: &[usize]) -> GroundSubset {
        GroundSubset::from_elements(v.iter().copied())
    }

    #[test]
    fn dimensions() {
        assert_eq!(polytope_dim(&Matroid::uniform(3, 7)), 6);
        let seg = Matroid::from_bases(3, 2, [set(&[1, 3]), set(&[2, 3])]).unwrap();
        assert_eq!(polytope_dim(&seg), 1);
        let point = Matroid::from_bases(7, 3, [set(&[1, 2, 3])]).unwrap();
        assert_eq!(polytope_dim(&point), 0);
        assert_eq!(matroid_polytope_vertices(&point).len(), 1);
    }

    #[test]
    fn triangle_facets() {
        let f = facets(&Matroid::uniform(2, 3));
        let expected: Vec<FacetDescription> = (1..=3)
            .map(|i| FacetDescription::FlatBound {
                flat: set(&[i]),
                bound: 1,
            })
            .collect();
        assert_eq!(f, expected);
    }

    #[test]
    fn ggms_examples() {
        let u24 = matroid_polytope_vertices(&Matroid::uniform(2, 4));
        assert!(ggms_is_matroid_polytope(&u24).unwrap());
        let bad = vec![vec![1, 1, 0, 0], vec![0, 0, 1, 1]];
        assert!(!ggms_is_matroid_polytope(&bad).unwrap());
        assert!(ggms_is_matroid_polytope(&[]).is_err());
        let fano = matroid_polytope_vertices(&named_matroid("fano").unwrap());
        assert!(ggms_is_matroid_polytope(&fano).unwrap());
    }

    #[test]
    fn octahedron_edges() {
        let v = matroid_polytope_vertices(&Matroid::uniform(2, 4));
        assert_eq!(polytope_edges(&v).len(), 12);
    }

    #[test]
    fn display_forms() {
        assert_eq!(FacetDescription::LowerBound { i: 4 }.to_string(), "x_4 = 0");
        let f = FacetDescription::FlatBound {
            flat: set(&[1, 2, 4]),
            bound: 2,
        };
        assert_eq!(f.to_string(), "x_124 = 2");
    }
}
