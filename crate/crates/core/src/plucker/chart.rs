//! Affine charts `A = [I | X]` of a thin Schubert cell, Jacobian minors and
//! explicit unit certificates.
//!
//! Inside a chart the basis minors `A_λ`, `λ ∈ ℬ(M)`, are invertible; a
//! Jacobian minor that factors into such minors is therefore a unit.

use std::sync::Arc;

use serde_json::{json, Value};

use super::PluckerError;
use crate::matroid::Matroid;
use crate::poly::{dedup_up_to_scalar, determinant, Field, Polynomial, VarContext};
use crate::rational::{format_rational, Rational};
use crate::subset::{k_subsets, GroundSubset};

/// Chart of `Gr_M` around the basis `β`, after the order-preserving relabeling
/// that sends `β` to `{1, …, d}`.
#[derive(Clone, Debug)]
pub struct AffineChart {
    original: Matroid,
    basis: GroundSubset,
    /// `labels[k − 1]` is the original element placed at position `k`.
    labels: Vec<usize>,
    matroid: Matroid,
    ctx: Arc<VarContext>,
    active: Vec<bool>,
}

impl AffineChart {
    pub fn d(&self) -> usize {
        self.matroid.d()
    }

    pub fn n(&self) -> usize {
        self.matroid.n()
    }

    /// The original matroid and chart basis.
    pub fn source(&self) -> (&Matroid, GroundSubset) {
        (&self.original, self.basis)
    }

    /// The matroid in chart labels, where `{1, …, d}` is a basis.
    pub fn matroid(&self) -> &Matroid {
        &self.matroid
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn context(&self) -> &Arc<VarContext> {
        &self.ctx
    }

    /// Index of `X_{ij}`; the order is `X11, X21, …, Xd1, X12, …`.
    pub fn var_index(&self, i: usize, j: usize) -> usize {
        (j - 1) * self.d() + (i - 1)
    }

    /// `(i, j)` for a variable index.
    pub fn var_position(&self, v: usize) -> (usize, usize) {
        (v % self.d() + 1, v / self.d() + 1)
    }

    pub fn x(&self, i: usize, j: usize) -> Polynomial {
        Polynomial::var(&self.ctx, Field::Rationals, self.var_index(i, j))
    }

    /// `λ_{ij} = ({1, …, d} ∖ i) ∪ {d + j}`.
    pub fn lambda(&self, i: usize, j: usize) -> GroundSubset {
        lambda_ij(self.d(), i, j)
    }

    pub fn is_active(&self, v: usize) -> bool {
        self.active[v]
    }

    pub fn active_variables(&self) -> Vec<usize> {
        (0..self.active.len()).filter(|&v| self.active[v]).collect()
    }

    pub fn inactive_variables(&self) -> Vec<usize> {
        (0..self.active.len()).filter(|&v| !self.active[v]).collect()
    }

    pub fn variable_names(&self, vars: &[usize]) -> Vec<String> {
        vars.iter().map(|&v| self.ctx.name(v).to_string()).collect()
    }

    /// Entry of the symbolic matrix with every `X_{ij}` present.
    fn entry(&self, row: usize, col: usize) -> Polynomial {
        let d = self.d();
        if col <= d {
            let c = if row == col { 1 } else { 0 };
            Polynomial::constant(&self.ctx, Field::Rationals, Rational::from_integer(c.into()))
        } else {
            self.x(row, col - d)
        }
    }

    /// `A_λ` of the fully symbolic matrix (chart labels).
    pub fn symbolic_minor(&self, lambda: GroundSubset) -> Polynomial {
        let cols = lambda.to_vec();
        let rows: Vec<Vec<Polynomial>> = (1..=self.d())
            .map(|r| cols.iter().map(|&c| self.entry(r, c)).collect())
            .collect();
        determinant(&rows, &self.ctx, Field::Rationals)
    }

    /// `A_λ` with the inactive variables set to zero (chart labels).
    pub fn minor(&self, lambda: GroundSubset) -> Polynomial {
        self.symbolic_minor(lambda).set_zero(&self.inactive_variables())
    }

    /// Checks `X_{ij} = (−1)^{i−1} A_{λ_{ij}}` on the symbolic matrix.
    pub fn coordinates_consistent(&self) -> bool {
        (1..=self.d()).all(|i| {
            (1..=self.n() - self.d()).all(|j| {
                let a = self.symbolic_minor(self.lambda(i, j));
                let signed = if i % 2 == 1 { a } else { -&a };
                signed == self.x(i, j)
            })
        })
    }

    pub fn to_json(&self) -> Value {
        json!({
            "basis": self.basis.to_vec(),
            "labels": self.labels,
            "active": self.variable_names(&self.active_variables()),
            "inactive": self.variable_names(&self.inactive_variables()),
        })
    }
}

pub fn lambda_ij(d: usize, i: usize, j: usize) -> GroundSubset {
    GroundSubset::full(d).remove(i).insert(d + j)
}

fn variable_name(d: usize, n: usize, i: usize, j: usize) -> String {
    if d <= 9 && n - d <= 9 {
        format!("X{i}{j}")
    } else {
        format!("X{i}_{j}")
    }
}

pub fn affine_chart(m: &Matroid, basis: GroundSubset) -> Result<AffineChart, PluckerError> {
    if !m.is_basis(basis) {
        return Err(PluckerError::NotABasis(basis));
    }
    let (d, n) = (m.d(), m.n());
    let mut labels: Vec<usize> = basis.to_vec();
    labels.extend(basis.complement(n).iter());
    let mut perm = vec![0; n];
    for (pos, &old) in labels.iter().enumerate() {
        perm[old - 1] = pos + 1;
    }
    let relabeled = m.permute(&perm);
    let mut names = Vec::with_capacity(d * (n - d));
    let mut active = Vec::with_capacity(d * (n - d));
    for j in 1..=n - d {
        for i in 1..=d {
            names.push(variable_name(d, n, i, j));
            active.push(relabeled.is_basis(lambda_ij(d, i, j)));
        }
    }
    Ok(AffineChart {
        original: m.clone(),
        basis,
        labels,
        matroid: relabeled,
        ctx: VarContext::new(names),
        active,
    })
}

/// `{A_λ : λ ∉ ℬ(M)}` with inactive variables zeroed, up to scalars.
pub fn affine_minor_generators(c: &AffineChart) -> Vec<Polynomial> {
    let polys = k_subsets(c.n(), c.d())
        .into_iter()
        .filter(|&l| !c.matroid.is_basis(l))
        .map(|l| c.minor(l));
    dedup_up_to_scalar(polys)
}

/// A variable solved from a relation `a·x + b = 0`, i.e. `x = −b / a`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Elimination {
    pub var: usize,
    pub numerator: Polynomial,
    pub denominator: Polynomial,
}

/// A presentation of the chart's coordinate ring: the listed variables
/// (all units or free) modulo the generators.
#[derive(Clone, Debug)]
pub struct AffinePresentation {
    pub variables: Vec<usize>,
    pub generators: Vec<Polynomial>,
    pub eliminated: Vec<Elimination>,
}

impl AffinePresentation {
    pub fn to_json(&self, c: &AffineChart) -> Value {
        json!({
            "variables": c.variable_names(&self.variables),
            "generators": self.generators.iter().map(|g| g.to_string()).collect::<Vec<_>>(),
            "eliminated": self.eliminated.iter().map(|e| json!({
                "variable": c.ctx.name(e.var),
                "value": format!("-({}) / ({})", e.numerator, e.denominator),
            })).collect::<Vec<_>>(),
        })
    }
}

/// Strips the monomial factor (a unit in the chart) and normalizes.
fn tidy(p: &Polynomial) -> Polynomial {
    p.divide_monomial(&p.monomial_content()).monic()
}

/// A variable of `g` occurring to the first power whose coefficient is a
/// scalar multiple of a single other variable; the latest such variable.
fn solvable_variable(g: &Polynomial, vars: &[usize]) -> Option<(usize, Polynomial, Polynomial)> {
    for &x in vars.iter().rev() {
        if g.degree_in(x) != 1 {
            continue;
        }
        let a = g.coefficient_of_power(x, 1);
        let single = a.num_terms() == 1 && a.total_degree() == Some(1);
        if single && a.variables() != [x] {
            return Some((x, a, g.coefficient_of_power(x, 0)));
        }
    }
    None
}

/// Presentation of the chart's ideal: the nonbasis minors with inactive
/// variables zeroed, then repeatedly solving a relation that is linear in its
/// latest variable with a unit monomial coefficient and substituting into the
/// remaining relations (denominators cleared, monomial factors removed).
pub fn affine_ideal_generators(c: &AffineChart) -> AffinePresentation {
    let mut variables = c.active_variables();
    let mut gens: Vec<Polynomial> = dedup_up_to_scalar(affine_minor_generators(c).iter().map(tidy));
    let mut eliminated = Vec::new();
    loop {
        let found = gens
            .iter()
            .enumerate()
            .find_map(|(k, g)| solvable_variable(g, &variables).map(|s| (k, s)));
        let Some((k, (x, a, b))) = found else { break };
        gens.remove(k);
        let minus_b = -&b;
        let rest: Vec<Polynomial> = gens
            .iter()
            .map(|h| {
                let top = h.degree_in(x);
                let mut out = Polynomial::zero(c.context(), Field::Rationals);
                for e in 0..=top {
                    let coeff = h.coefficient_of_power(x, e);
                    if coeff.is_zero() {
                        continue;
                    }
                    let term = &(&coeff * &minus_b.pow(e)) * &a.pow(top - e);
                    out = &out + &term;
                }
                tidy(&out)
            })
            .collect();
        gens = dedup_up_to_scalar(rest);
        variables.retain(|&v| v != x);
        eliminated.push(Elimination {
            var: x,
            numerator: b,
            denominator: a,
        });
    }
    AffinePresentation {
        variables,
        generators: gens,
        eliminated,
    }
}

/// Jacobian matrix of `gens` in the listed variables and its maximal minors
/// (column subsets in lexicographic order), zero minors and repeats up to
/// sign dropped.
pub fn jacobian_minors(
    gens: &[Polynomial],
    vars: &[usize],
) -> Result<(Vec<Vec<Polynomial>>, Vec<Polynomial>), PluckerError> {
    let Some(first) = gens.first() else {
        return Err(PluckerError::NoGenerators);
    };
    if gens.len() > vars.len() {
        return Err(PluckerError::MoreGensThanVars {
            gens: gens.len(),
            vars: vars.len(),
        });
    }
    let (ctx, field) = (first.context().clone(), first.field());
    let matrix: Vec<Vec<Polynomial>> = gens
        .iter()
        .map(|g| vars.iter().map(|&v| g.derivative(v)).collect())
        .collect();
    let mut minors: Vec<Polynomial> = Vec::new();
    for cols in k_subsets(vars.len(), gens.len()) {
        let cols: Vec<usize> = cols.iter().map(|c| c - 1).collect();
        let sub: Vec<Vec<Polynomial>> = matrix
            .iter()
            .map(|row| cols.iter().map(|&c| row[c].clone()).collect())
            .collect();
        let det = determinant(&sub, &ctx, field);
        if det.is_zero() || minors.iter().any(|m| *m == det || *m == -&det) {
            continue;
        }
        minors.push(det);
    }
    Ok((matrix, minors))
}

/// `minor = scalar · Π_λ A_λ` with every `λ` a basis (chart labels).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnitCertificate {
    pub minor_index: usize,
    pub minor: Polynomial,
    pub factors: Vec<GroundSubset>,
    pub scalar: Rational,
}

impl UnitCertificate {
    pub fn to_json(&self, c: &AffineChart) -> Value {
        json!({
            "minor_index": self.minor_index,
            "minor": self.minor.to_string(),
            "factors": self.factors.iter().map(|l| json!({
                "lambda": l.to_vec(),
                "minor": c.minor(*l).to_string(),
            })).collect::<Vec<_>>(),
            "scalar": format_rational(&self.scalar),
        })
    }
}

/// Nonconstant basis minors usable as units: those free of eliminated
/// variables.
fn unit_factors(c: &AffineChart, excluded: &[usize]) -> Vec<(GroundSubset, Polynomial)> {
    k_subsets(c.n(), c.d())
        .into_iter()
        .filter(|&l| c.matroid.is_basis(l))
        .map(|l| (l, c.minor(l)))
        .filter(|(_, p)| !p.is_zero() && !p.is_constant())
        .filter(|(_, p)| p.variables().iter().all(|v| !excluded.contains(v)))
        .collect()
}

fn factorizations(
    target: &Polynomial,
    units: &[(GroundSubset, Polynomial)],
    max_factors: usize,
) -> Option<(Vec<GroundSubset>, Rational)> {
    let goal = target.total_degree()?;
    if !target.is_homogeneous() || goal == 0 {
        return None;
    }
    let degrees: Vec<u32> = units.iter().map(|(_, p)| p.total_degree().unwrap_or(0)).collect();
    let mut chosen: Vec<usize> = Vec::new();
    search(target, units, &degrees, goal, max_factors, 0, &mut chosen)
}

fn search(
    target: &Polynomial,
    units: &[(GroundSubset, Polynomial)],
    degrees: &[u32],
    remaining: u32,
    slots: usize,
    start: usize,
    chosen: &mut Vec<usize>,
) -> Option<(Vec<GroundSubset>, Rational)> {
    if remaining == 0 {
        let mut prod = Polynomial::one(target.context(), target.field());
        for &k in chosen.iter() {
            prod = &prod * &units[k].1;
        }
        let (_, tc) = target.leading_term()?;
        let (_, pc) = prod.leading_term()?;
        let scalar = tc / pc;
        return (prod.scale(&scalar) == *target).then(|| (chosen.iter().map(|&k| units[k].0).collect(), scalar));
    }
    if slots == 0 {
        return None;
    }
    for k in start..units.len() {
        if degrees[k] > remaining {
            continue;
        }
        chosen.push(k);
        let found = search(target, units, degrees, remaining - degrees[k], slots - 1, k, chosen);
        chosen.pop();
        if found.is_some() {
            return found;
        }
    }
    None
}

/// Every minor that factors into at most `max_factors` basis minors of the
/// chart; `eliminated` lists variables no longer present in the presentation.
pub fn unit_witnesses(
    minors: &[Polynomial],
    c: &AffineChart,
    eliminated: &[usize],
    max_factors: usize,
) -> Vec<UnitCertificate> {
    let units = unit_factors(c, eliminated);
    minors
        .iter()
        .enumerate()
        .filter_map(|(k, m)| {
            factorizations(m, &units, max_factors).map(|(factors, scalar)| UnitCertificate {
                minor_index: k,
                minor: m.clone(),
                factors,
                scalar,
            })
        })
        .collect()
}

/// First minor, in order, certified to be a unit.
pub fn unit_witness(
    minors: &[Polynomial],
    c: &AffineChart,
    eliminated: &[usize],
    max_factors: usize,
) -> Option<UnitCertificate> {
    let units = unit_factors(c, eliminated);
    minors.iter().enumerate().find_map(|(k, m)| {
        factorizations(m, &units, max_factors).map(|(factors, scalar)| UnitCertificate {
            minor_index: k,
            minor: m.clone(),
            factors,
            scalar,
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matroid::named_matroid;

    fn set(v: &[usize]) -> GroundSubset {
        GroundSubset::from_elements(v.iter().copied())
    }

    fn parse(c: &AffineChart, s: &str) -> Polynomial {
        Polynomial::parse(s, c.context(), Field::Rationals).unwrap()
    }

    #[test]
    fn fig36_chart() {
        let m = named_matroid("fig36").unwrap();
        let c = affine_chart(&m, set(&[1, 2, 3])).unwrap();
        assert_eq!(
            c.variable_names(&c.active_variables()),
            ["X11", "X21", "X12", "X32", "X23", "X33"]
        );
        assert!(c.coordinates_consistent());
        let pres = affine_ideal_generators(&c);
        assert_eq!(pres.generators.len(), 1);
        assert!(pres.generators[0].same_up_to_scalar(&parse(&c, "X11*X23*X32 + X12*X21*X33")));
        let (_, minors) = jacobian_minors(&pres.generators, &pres.variables).unwrap();
        let w = unit_witness(&minors, &c, &[], 3).unwrap();
        assert!(w.minor.same_up_to_scalar(&parse(&c, "X23*X32")));
    }

    #[test]
    fn uniform_chart_is_free() {
        let c = affine_chart(&crate::matroid::Matroid::uniform(3, 7), set(&[1, 2, 3])).unwrap();
        assert_eq!(c.active_variables().len(), 12);
        assert!(affine_ideal_generators(&c).generators.is_empty());
        assert_eq!(c.lambda(2, 1), set(&[1, 3, 4]));
    }

    #[test]
    fn relabeled_chart() {
        let m = named_matroid("fano").unwrap();
        assert!(affine_chart(&m, set(&[1, 2, 4])).is_err());
        let c = affine_chart(&m, set(&[1, 2, 3])).unwrap();
        assert!(c.coordinates_consistent());
        let c2 = affine_chart(&m, set(&[2, 5, 6])).unwrap();
        assert_eq!(c2.labels(), [2, 5, 6, 1, 3, 4, 7]);
        assert!(c2.matroid().is_basis(set(&[1, 2, 3])));
    }

    #[test]
    fn non_product_minor_has_no_witness() {
        let m = crate::matroid::Matroid::uniform(3, 6);
        let c = affine_chart(&m, set(&[1, 2, 3])).unwrap();
        let f = parse(&c, "X11 + X21");
        assert!(unit_witness(&[f], &c, &[], 3).is_none());
    }

    #[test]
    fn jacobian_shape_errors() {
        let c = affine_chart(&crate::matroid::Matroid::uniform(2, 4), set(&[1, 2])).unwrap();
        let g = parse(&c, "X11*X22 - X12*X21");
        assert!(jacobian_minors(&[g.clone(), g.clone()], &[0]).is_err());
        assert!(jacobian_minors(&[], &[0]).is_err());
        let (matrix, minors) = jacobian_minors(&[g], &[0, 1]).unwrap();
        assert_eq!(matrix[0].len(), 2);
        assert_eq!(minors.len(), 2);
    }
}
