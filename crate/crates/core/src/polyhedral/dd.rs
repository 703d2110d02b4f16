//! Exact double description for polyhedral cones.
//!
//! [`cone_generators`] turns `{x : A x ≥ 0, E x = 0}` into a lineality basis
//! plus extreme rays. Lineality is carried natively: the computation starts
//! from the whole space (every standard basis vector is a lineality
//! generator) and only produces rays once a constraint cuts the lineality
//! space. Adjacency of rays is decided combinatorially from the sets of
//! tight constraints.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::linalg::dot;
use crate::rational::make_primitive;

/// Small fixed-width bitset indexed by constraint number.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TightSet {
    words: Vec<u64>,
}

impl TightSet {
    pub fn new(len: usize) -> Self {
        TightSet {
            words: vec![0; len.div_ceil(64).max(1)],
        }
    }

    pub fn insert(&mut self, i: usize) {
        self.words[i / 64] |= 1u64 << (i % 64);
    }

    pub fn contains(&self, i: usize) -> bool {
        self.words[i / 64] & (1u64 << (i % 64)) != 0
    }

    pub fn intersection(&self, other: &TightSet) -> TightSet {
        TightSet {
            words: self.words.iter().zip(&other.words).map(|(a, b)| a & b).collect(),
        }
    }

    pub fn is_subset(&self, other: &TightSet) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(k, &w)| {
            (0..64).filter(move |b| w & (1u64 << b) != 0).map(move |b| k * 64 + b)
        })
    }
}

/// Generators of a polyhedral cone.
#[derive(Clone, Debug)]
pub struct ConeGenerators {
    pub dim: usize,
    /// Basis of the lineality space, primitive integer vectors.
    pub lineality: Vec<Vec<BigInt>>,
    /// Extreme rays modulo lineality, primitive integer vectors.
    pub rays: Vec<Vec<BigInt>>,
    /// For each ray, the inequality indices on which it is tight.
    pub tight: Vec<TightSet>,
}

impl ConeGenerators {
    /// Dimension of the linear span of the cone.
    pub fn span_dim(&self) -> usize {
        let mut all = self.lineality.clone();
        all.extend(self.rays.iter().cloned());
        super::linalg::rank(&all)
    }
}

fn combine(a: &BigInt, x: &[BigInt], b: &BigInt, y: &[BigInt]) -> Vec<BigInt> {
    make_primitive(x.iter().zip(y).map(|(u, v)| a * u + b * v).collect())
}

/// Generators of `{x ∈ R^dim : ineqs · x ≥ 0, eqs · x = 0}`.
pub fn cone_generators(dim: usize, ineqs: &[Vec<BigInt>], eqs: &[Vec<BigInt>]) -> ConeGenerators {
    let mut lineality: Vec<Vec<BigInt>> = (0..dim)
        .map(|i| {
            let mut v = vec![BigInt::zero(); dim];
            v[i] = BigInt::from(1);
            v
        })
        .collect();

    for a in eqs {
        debug_assert_eq!(a.len(), dim);
        let values: Vec<BigInt> = lineality.iter().map(|l| dot(a, l)).collect();
        let Some(p) = values.iter().position(|v| !v.is_zero()) else {
            continue;
        };
        let pivot = lineality[p].clone();
        let pv = values[p].clone();
        let mut next = Vec::with_capacity(lineality.len() - 1);
        for (k, l) in lineality.iter().enumerate() {
            if k != p {
                next.push(combine(&pv, l, &(-&values[k]), &pivot));
            }
        }
        lineality = next;
    }

    let m = ineqs.len();
    let mut rays: Vec<Vec<BigInt>> = Vec::new();
    let mut tight: Vec<TightSet> = Vec::new();

    for (ci, a) in ineqs.iter().enumerate() {
        debug_assert_eq!(a.len(), dim);
        let lvals: Vec<BigInt> = lineality.iter().map(|l| dot(a, l)).collect();
        if let Some(p) = lvals.iter().position(|v| !v.is_zero()) {
            let mut pivot = lineality[p].clone();
            let mut pv = lvals[p].clone();
            if pv.is_negative() {
                pivot = pivot.iter().map(|x| -x).collect();
                pv = -pv;
            }
            let mut next = Vec::with_capacity(lineality.len() - 1);
            for (k, l) in lineality.iter().enumerate() {
                if k != p {
                    next.push(combine(&pv, l, &(-&lvals[k]), &pivot));
                }
            }
            lineality = next;
            for (r, t) in rays.iter_mut().zip(tight.iter_mut()) {
                let rv = dot(a, r);
                if !rv.is_zero() {
                    *r = combine(&pv, r, &(-rv), &pivot);
                }
                t.insert(ci);
            }
            // the pivot was tight on everything processed so far
            let mut t = TightSet::new(m);
            for j in 0..ci {
                t.insert(j);
            }
            rays.push(pivot);
            tight.push(t);
            continue;
        }

        let vals: Vec<BigInt> = rays.iter().map(|r| dot(a, r)).collect();
        let pos: Vec<usize> = (0..rays.len()).filter(|&k| vals[k].is_positive()).collect();
        let neg: Vec<usize> = (0..rays.len()).filter(|&k| vals[k].is_negative()).collect();
        if neg.is_empty() {
            for k in 0..rays.len() {
                if vals[k].is_zero() {
                    tight[k].insert(ci);
                }
            }
            continue;
        }
        let mut new_rays = Vec::new();
        let mut new_tight = Vec::new();
        for &pi in &pos {
            for &ni in &neg {
                let common = tight[pi].intersection(&tight[ni]);
                let blocked = (0..rays.len())
                    .any(|k| k != pi && k != ni && common.is_subset(&tight[k]));
                if blocked {
                    continue;
                }
                let r = combine(&vals[pi], &rays[ni], &(-&vals[ni]), &rays[pi]);
                let mut t = common;
                t.insert(ci);
                new_rays.push(r);
                new_tight.push(t);
            }
        }
        let mut kept_rays = Vec::new();
        let mut kept_tight = Vec::new();
        for k in 0..rays.len() {
            if vals[k].is_negative() {
                continue;
            }
            let mut t = tight[k].clone();
            if vals[k].is_zero() {
                t.insert(ci);
            }
            kept_rays.push(rays[k].clone());
            kept_tight.push(t);
        }
        kept_rays.extend(new_rays);
        kept_tight.extend(new_tight);
        rays = kept_rays;
        tight = kept_tight;
    }

    ConeGenerators {
        dim,
        lineality,
        rays,
        tight,
    }
}

/// Facet description of `conv(points)`.
#[derive(Clone, Debug)]
pub struct HullFacets {
    /// Affine equations `(a, b)` meaning `a · x + b = 0` on the hull.
    pub equations: Vec<(Vec<BigInt>, BigInt)>,
    /// Facet inequalities `a · x + b ≥ 0` with the indices of the points on them.
    pub facets: Vec<(Vec<BigInt>, BigInt, Vec<usize>)>,
    /// Affine dimension of the hull.
    pub dim: usize,
}

/// Facets of the convex hull of integer points (V to H conversion).
pub fn hull_facets(points: &[Vec<BigInt>]) -> HullFacets {
    let n = points.first().map_or(0, |p| p.len());
    let lifted: Vec<Vec<BigInt>> = points
        .iter()
        .map(|p| {
            let mut v = p.clone();
            v.push(BigInt::from(1));
            v
        })
        .collect();
    let dual = cone_generators(n + 1, &lifted, &[]);
    let split = |v: &Vec<BigInt>| (v[..n].to_vec(), v[n].clone());
    let equations: Vec<(Vec<BigInt>, BigInt)> = dual.lineality.iter().map(split).collect();
    let facets = dual
        .rays
        .iter()
        .zip(&dual.tight)
        .map(|(r, t)| {
            let (a, b) = split(r);
            (a, b, t.iter().filter(|&i| i < points.len()).collect())
        })
        .collect();
    let dim = if points.is_empty() {
        0
    } else {
        n - equations.len()
    };
    HullFacets {
        equations,
        facets,
        dim,
    }
}
