//! Exact normalized volumes of polytopes in the hyperplane `Σ x_i = d`.
//!
//! Dropping the last coordinate maps the lattice of that hyperplane
//! isomorphically onto `Z^{n-1}`, so normalized volume there is the sum of
//! `|det|` over a triangulation. The triangulation pulls the first vertex and
//! recurses into the facets avoiding it.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::polyhedral::hull_facets;
use crate::polyhedral::linalg::abs_det;

/// Pulling triangulation of `conv(points)`; simplices are index lists.
pub fn pulling_triangulation(points: &[Vec<BigInt>]) -> Vec<Vec<usize>> {
    let all: Vec<usize> = (0..points.len()).collect();
    triangulate(points, &all)
}

fn triangulate(points: &[Vec<BigInt>], idx: &[usize]) -> Vec<Vec<usize>> {
    if idx.is_empty() {
        return Vec::new();
    }
    let sub: Vec<Vec<BigInt>> = idx.iter().map(|&i| points[i].clone()).collect();
    let hull = hull_facets(&sub);
    if idx.len() == hull.dim + 1 {
        return vec![idx.to_vec()];
    }
    let mut out = Vec::new();
    for (_, _, on) in &hull.facets {
        if on.contains(&0) {
            continue;
        }
        let face: Vec<usize> = on.iter().map(|&k| idx[k]).collect();
        for mut simplex in triangulate(points, &face) {
            simplex.push(idx[0]);
            out.push(simplex);
        }
    }
    out
}

/// Normalized `(n−1)`-volume of the hull of 0/1 points with constant
/// coordinate sum; zero when the hull is lower dimensional.
pub fn normalized_volume(points: &[Vec<i64>]) -> BigInt {
    let Some(first) = points.first() else {
        return BigInt::zero();
    };
    let n = first.len();
    let big: Vec<Vec<BigInt>> = points
        .iter()
        .map(|p| p.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    let hull = hull_facets(&big);
    if hull.dim + 1 != n {
        return BigInt::zero();
    }
    let mut total = BigInt::zero();
    for simplex in pulling_triangulation(&big) {
        let apex = &big[simplex[simplex.len() - 1]];
        let rows: Vec<Vec<BigInt>> = simplex[..simplex.len() - 1]
            .iter()
            .map(|&v| (0..n - 1).map(|c| &big[v][c] - &apex[c]).collect())
            .collect();
        total += abs_det(&rows);
    }
    total
}
