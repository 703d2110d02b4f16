//! Plücker coordinates and the quadrics cutting out thin Schubert cells.

use std::sync::Arc;

use rayon::prelude::*;

use super::PluckerError;
use crate::matroid::Matroid;
use crate::poly::{dedup_up_to_scalar, Field, Monomial, Polynomial, VarContext};
use crate::rational::Rational;
use crate::subdivision::SubdivisionComplex;
use crate::subset::{binomial, k_subsets, GroundSubset};
use crate::weight::WeightVector;

/// The polynomial ring `k[p_λ : λ ∈ Λ(d,n)]` with variables in lex order.
#[derive(Clone, Debug)]
pub struct PlueckerContext {
    d: usize,
    n: usize,
    field: Field,
    subsets: Vec<GroundSubset>,
    ctx: Arc<VarContext>,
}

impl PlueckerContext {
    pub fn new(d: usize, n: usize) -> PlueckerContext {
        Self::with_field(d, n, Field::Rationals)
    }

    pub fn with_field(d: usize, n: usize, field: Field) -> PlueckerContext {
        let subsets = k_subsets(n, d);
        let names: Vec<String> = subsets.iter().map(|s| variable_name(*s, n)).collect();
        PlueckerContext {
            d,
            n,
            field,
            subsets,
            ctx: VarContext::new(names),
        }
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn context(&self) -> &Arc<VarContext> {
        &self.ctx
    }

    pub fn subsets(&self) -> &[GroundSubset] {
        &self.subsets
    }

    pub fn index(&self, lambda: GroundSubset) -> Option<usize> {
        self.subsets.binary_search(&lambda).ok()
    }

    /// `p_λ` for a sorted index set.
    pub fn var(&self, lambda: GroundSubset) -> Polynomial {
        let i = self.index(lambda).expect("index set of the right size");
        Polynomial::var(&self.ctx, self.field, i)
    }

    /// `p` with an unsorted index tuple: `sgn(σ)·p_sorted`, or zero when an
    /// index repeats.
    pub fn var_tuple(&self, tuple: &[usize]) -> Result<Polynomial, PluckerError> {
        if tuple.len() != self.d || tuple.iter().any(|&i| i == 0 || i > self.n) {
            return Err(PluckerError::BadTuple(tuple.to_vec()));
        }
        let set = GroundSubset::from_elements(tuple.iter().copied());
        if set.len() != self.d {
            return Ok(self.zero());
        }
        let inversions = (0..tuple.len())
            .flat_map(|a| (a + 1..tuple.len()).map(move |b| (a, b)))
            .filter(|&(a, b)| tuple[a] > tuple[b])
            .count();
        let p = self.var(set);
        Ok(if inversions % 2 == 0 { p } else { -&p })
    }

    pub fn zero(&self) -> Polynomial {
        Polynomial::zero(&self.ctx, self.field)
    }

    pub fn parse(&self, s: &str) -> Result<Polynomial, PluckerError> {
        Ok(Polynomial::parse(s, &self.ctx, self.field)?)
    }

    /// Weights on the variables read from a weight vector.
    pub fn weights(&self, w: &WeightVector) -> Vec<Rational> {
        self.subsets.iter().map(|&s| w.get(s)).collect()
    }

    /// `T_{ijkℓ} = p_{ij}p_{kℓ} − p_{ik}p_{jℓ} + p_{iℓ}p_{jk}` (rank two).
    pub fn t_relation(&self, i: usize, j: usize, k: usize, l: usize) -> Polynomial {
        let p = |a, b| self.var_tuple(&[a, b]).expect("rank two indices");
        let t = &(&p(i, j) * &p(k, l)) - &(&p(i, k) * &p(j, l));
        &t + &(&p(i, l) * &p(j, k))
    }

    /// `B_{ij,kℓ} = −p_{ik}p_{jℓ} + p_{iℓ}p_{jk}` (rank two).
    pub fn b_relation(&self, i: usize, j: usize, k: usize, l: usize) -> Polynomial {
        let p = |a, b| self.var_tuple(&[a, b]).expect("rank two indices");
        &(&p(i, l) * &p(j, k)) - &(&p(i, k) * &p(j, l))
    }

    /// Relabels variables by `σ` (with `perm[i − 1] = σ(i)`), including the
    /// sign of sorting each permuted index tuple.
    pub fn permute(&self, f: &Polynomial, perm: &[usize]) -> Polynomial {
        let mut images: Vec<(usize, bool)> = Vec::with_capacity(self.subsets.len());
        for s in &self.subsets {
            let tuple: Vec<usize> = s.iter().map(|i| perm[i - 1]).collect();
            let img = self.var_tuple(&tuple).expect("permutation of [n]");
            let (m, c) = img.leading_term().expect("distinct indices");
            let target = m.0.iter().position(|&e| e == 1).expect("a variable");
            images.push((target, *c < Rational::from_integer(0.into())));
        }
        let mut out = self.zero();
        for (m, c) in f.terms() {
            let mut e = Monomial::one(self.ctx.len());
            let mut negative = false;
            for (i, &k) in m.0.iter().enumerate() {
                if k > 0 {
                    e.0[images[i].0] += k;
                    negative ^= images[i].1 && k % 2 == 1;
                }
            }
            let c = if negative { -c.clone() } else { c.clone() };
            out = &out + &Polynomial::monomial(&self.ctx, self.field, e, c);
        }
        out
    }
}

fn variable_name(s: GroundSubset, n: usize) -> String {
    if n <= 9 {
        format!("p{}", s.label(n))
    } else {
        let parts: Vec<String> = s.iter().map(|i| i.to_string()).collect();
        format!("p{}", parts.join("_"))
    }
}

/// `sgn(i; λ, μ) = (−1)^ℓ`, `ℓ = #{j ∈ μ : j > i} + #{j ∈ λ : j < i}`.
pub fn plucker_sign(i: usize, lambda: GroundSubset, mu: GroundSubset) -> Result<i8, PluckerError> {
    if !mu.contains(i) || lambda.contains(i) {
        return Err(PluckerError::BadIndex { i, lambda, mu });
    }
    let l = mu.count_above(i) + lambda.count_below(i);
    Ok(if l % 2 == 0 { 1 } else { -1 })
}

/// The quadric attached to `(λ, μ)`, summed over the `i ∈ μ ∖ λ` for which
/// both `λ ∪ i` and `μ ∖ i` satisfy `is_basis`.
pub fn quadric<F: Fn(GroundSubset) -> bool>(
    pc: &PlueckerContext,
    is_basis: F,
    lambda: GroundSubset,
    mu: GroundSubset,
) -> Polynomial {
    let mut f = pc.zero();
    for i in mu.difference(lambda).iter() {
        let a = lambda.insert(i);
        let b = mu.remove(i);
        if !(is_basis(a) && is_basis(b)) {
            continue;
        }
        let term = &pc.var(a) * &pc.var(b);
        f = match plucker_sign(i, lambda, mu).expect("i ∈ μ ∖ λ") {
            1 => &f + &term,
            _ => &f - &term,
        };
    }
    f
}

/// The pairs `(λ, μ)` indexing the quadrics of a matroid: `λ` independent of
/// size `d − 1`, `μ` of size `d + 1` and rank `d`, `λ ⊄ μ`.
pub fn admissible_pairs(m: &Matroid) -> Vec<(GroundSubset, GroundSubset)> {
    let (d, n) = (m.d(), m.n());
    if d == 0 || d + 1 > n {
        return Vec::new();
    }
    let mus: Vec<GroundSubset> = k_subsets(n, d + 1).into_iter().filter(|&mu| m.rank(mu) == d).collect();
    k_subsets(n, d - 1)
        .into_iter()
        .filter(|&l| m.is_independent(l))
        .flat_map(|l| mus.iter().filter(move |&&mu| !l.is_subset(mu)).map(move |&mu| (l, mu)))
        .collect()
}

/// Generators of the ideal of the thin Schubert cell of `m`.
pub fn thin_schubert_generators(m: &Matroid) -> Vec<Polynomial> {
    let pc = PlueckerContext::new(m.d(), m.n());
    let polys: Vec<Polynomial> = admissible_pairs(m)
        .par_iter()
        .map(|&(l, mu)| quadric(&pc, |b| m.is_basis(b), l, mu))
        .collect();
    dedup_up_to_scalar(polys)
}

/// Union of the cell generators of a matroid subdivision.
pub fn limit_ideal_generators(s: &SubdivisionComplex) -> Result<Vec<Polynomial>, PluckerError> {
    let cells = s.maximal_cells().map_err(|_| {
        let bad = s.cells.iter().position(|c| c.matroid().is_none()).unwrap_or(0);
        PluckerError::NonMatroidCell(bad)
    })?;
    let all: Vec<Polynomial> = cells.par_iter().flat_map(|m| thin_schubert_generators(m)).collect();
    Ok(dedup_up_to_scalar(all))
}

/// Sets `p_λ = 0` for every `λ` outside `ℬ(m)`.
pub fn reduce_by_matroid(f: &Polynomial, m: &Matroid) -> Result<Polynomial, PluckerError> {
    if f.context().len() != binomial(m.n(), m.d()) {
        return Err(PluckerError::ContextMismatch);
    }
    let zeroed: Vec<usize> = k_subsets(m.n(), m.d())
        .into_iter()
        .enumerate()
        .filter(|(_, s)| !m.is_basis(*s))
        .map(|(i, _)| i)
        .collect();
    Ok(f.set_zero(&zeroed))
}

/// Pairs `(λ, μ)` of the face `face ≤ m` whose nonzero quadric changes when
/// it is summed over `ℬ(m)` instead of `ℬ(face)`. An empty sum is the zero
/// generator and lies in every ideal, so it is not compared.
pub fn face_quadric_mismatches(m: &Matroid, face: &Matroid) -> Vec<(GroundSubset, GroundSubset)> {
    let pc = PlueckerContext::new(m.d(), m.n());
    admissible_pairs(face)
        .into_par_iter()
        .filter(|&(l, mu)| {
            let own = quadric(&pc, |b| face.is_basis(b), l, mu);
            !own.is_zero() && own != quadric(&pc, |b| m.is_basis(b), l, mu)
        })
        .collect()
}
