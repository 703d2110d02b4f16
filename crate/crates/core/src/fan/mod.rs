//! Exact polyhedral cones in `R^{Λ(d,n)}`, the line test on stars of cones,
//! symmetry orbits and fan data exchange.

mod data;
mod scan;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use data::{lex_coordinate_table, symmetric_group_generators, tgr2_fan_builder, FanData, IndexConvention};
pub use scan::{orbit_fvector, star_scan, OrbitReport, PairFailure, StarReport};

use crate::polyhedral::cone_generators;
use crate::polyhedral::linalg::{in_span, rank};
use crate::subset::k_subsets;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FanError {
    #[error("vectors of different lengths ({0} and {1})")]
    DimensionMismatch(usize, usize),
    #[error("{0:?} is not a cone of the fan")]
    UnknownCone(Vec<usize>),
    #[error("invalid symmetry action: {0}")]
    ActionInvalid(String),
    #[error("the tree fan is built for 4 <= n <= 7, got {0}")]
    TooLarge(usize),
    #[error("invalid fan data: {0}")]
    Invalid(String),
}

/// `{Σ a_k r_k + Σ b_k ℓ_k : a ≥ 0}`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cone {
    pub rays: Vec<Vec<i64>>,
    pub lineality: Vec<Vec<i64>>,
}

impl Cone {
    pub fn new(rays: Vec<Vec<i64>>, lineality: Vec<Vec<i64>>) -> Cone {
        Cone { rays, lineality }
    }

    fn ambient(&self) -> Option<usize> {
        self.rays.iter().chain(&self.lineality).map(Vec::len).next()
    }
}

pub(crate) fn big(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

/// `v_i = Σ_{λ ∋ i} e_λ` for `i = 1..n`, coordinates in lexicographic order.
pub fn lineality_nh(d: usize, n: usize) -> Vec<Vec<i64>> {
    let coords = k_subsets(n, d);
    (1..=n)
        .map(|i| coords.iter().map(|l| i64::from(l.contains(i))).collect())
        .collect()
}

/// Dimension of the linear span of a cone.
pub fn cone_dim(c: &Cone) -> usize {
    let rows: Vec<Vec<BigInt>> = c.rays.iter().chain(&c.lineality).map(|v| big(v)).collect();
    rank(&rows)
}

/// Outcome of the line test for one pair of star cones.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LineTest {
    pub passes: bool,
    pub intersection_dim: usize,
    pub center_dim: usize,
    /// A primitive point of `T ∩ (−T′)` outside the center's span.
    pub witness: Option<Vec<BigInt>>,
}

/// Inequalities and equations of `span + cone(rays)`, read off from the
/// generators of its dual cone.
fn h_description(dim: usize, span: &[Vec<BigInt>], rays: &[Vec<BigInt>]) -> (Vec<Vec<BigInt>>, Vec<Vec<BigInt>>) {
    let dual = cone_generators(dim, rays, span);
    (dual.rays, dual.lineality)
}

/// Whether `(span(center) + cone(τ)) ∩ −(span(center) + cone(τ′))` is no
/// larger than `span(center)`. The center enters only through its linear
/// span, so this is the test in the quotient by that span.
pub fn pair_line_test(center: &Cone, tau: &[Vec<i64>], tau2: &[Vec<i64>]) -> Result<LineTest, FanError> {
    let mut lengths = center
        .rays
        .iter()
        .chain(&center.lineality)
        .chain(tau)
        .chain(tau2)
        .map(Vec::len);
    let Some(dim) = center.ambient().or_else(|| lengths.next()) else {
        return Ok(LineTest {
            passes: true,
            intersection_dim: 0,
            center_dim: 0,
            witness: None,
        });
    };
    if let Some(bad) = lengths.find(|&l| l != dim) {
        return Err(FanError::DimensionMismatch(dim, bad));
    }
    let span: Vec<Vec<BigInt>> = center.rays.iter().chain(&center.lineality).map(|v| big(v)).collect();
    let t1: Vec<Vec<BigInt>> = tau.iter().map(|v| big(v)).collect();
    let t2: Vec<Vec<BigInt>> = tau2.iter().map(|v| big(v)).collect();
    let (mut ineqs, mut eqs) = h_description(dim, &span, &t1);
    let (ineqs2, eqs2) = h_description(dim, &span, &t2);
    ineqs.extend(ineqs2.into_iter().map(|r| r.into_iter().map(|x| -x).collect::<Vec<_>>()));
    eqs.extend(eqs2);
    let meet = cone_generators(dim, &ineqs, &eqs);
    let intersection_dim = meet.span_dim();
    let center_dim = rank(&span);
    let witness = if intersection_dim > center_dim {
        meet.lineality
            .iter()
            .chain(&meet.rays)
            .find(|v| !v.iter().all(Zero::is_zero) && !in_span(&span, v))
            .cloned()
    } else {
        None
    };
    Ok(LineTest {
        passes: intersection_dim == center_dim,
        intersection_dim,
        center_dim,
        witness,
    })
}

/// `(σ·v)_λ = v_{σ⁻¹(λ)}` on `Λ(d,n)` coordinates, `perm[i − 1] = σ(i)`.
pub fn symmetric_action<T: Clone>(perm: &[usize], v: &[T], d: usize, n: usize) -> Vec<T> {
    let coords = k_subsets(n, d);
    assert_eq!(v.len(), coords.len(), "vector is not indexed by Λ(d,n)");
    let mut out = v.to_vec();
    for (k, mu) in coords.iter().enumerate() {
        let image = mu.permute(perm);
        let target = coords.binary_search(&image).expect("permutation of [n]");
        out[target] = v[k].clone();
    }
    out
}
