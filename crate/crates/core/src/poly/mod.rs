//! Exact multivariate polynomials over `Q` or `F_p`.
//!
//! Terms are kept in a map ordered by graded lexicographic order on the
//! exponent vectors, so the last entry is the leading term.

mod field;
mod parse;

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Signed, Zero};
use thiserror::Error;

pub use field::Field;

use crate::rational::{format_rational, Rational};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("the zero polynomial has no initial form")]
    ZeroPolynomial,
    #[error("cannot parse polynomial {0:?}: {1}")]
    Parse(String, String),
    #[error("unknown variable {0:?}")]
    UnknownVariable(String),
    #[error("{0} is not invertible in the coefficient field")]
    NotInvertible(String),
    #[error("characteristic {0} is not 0 or a prime below 65536")]
    BadCharacteristic(u32),
    #[error("expected {expected} weights, found {found}")]
    WeightLength { expected: usize, found: usize },
}

/// Ordered list of variable names shared by the polynomials of one ring.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VarContext {
    names: Vec<String>,
}

impl VarContext {
    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Arc<VarContext> {
        Arc::new(VarContext {
            names: names.into_iter().map(Into::into).collect(),
        })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }
}

/// Exponent vector, ordered by total degree and then lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Monomial {
        Monomial(vec![0; nvars])
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn exponent(&self, var: usize) -> u32 {
        self.0[var]
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// Weighted degree `⟨w, z⟩`.
    pub fn weight(&self, w: &[Rational]) -> Rational {
        self.0
            .iter()
            .zip(w)
            .filter(|(e, _)| **e > 0)
            .map(|(e, wi)| wi * Rational::from_integer((*e).into()))
            .sum()
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone)]
pub struct Polynomial {
    ctx: Arc<VarContext>,
    field: Field,
    terms: BTreeMap<Monomial, Rational>,
}

impl Polynomial {
    pub fn zero(ctx: &Arc<VarContext>, field: Field) -> Polynomial {
        Polynomial {
            ctx: ctx.clone(),
            field,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(ctx: &Arc<VarContext>, field: Field, c: Rational) -> Polynomial {
        Self::monomial(ctx, field, Monomial::one(ctx.len()), c)
    }

    pub fn one(ctx: &Arc<VarContext>, field: Field) -> Polynomial {
        Self::constant(ctx, field, Rational::one())
    }

    pub fn var(ctx: &Arc<VarContext>, field: Field, i: usize) -> Polynomial {
        let mut e = Monomial::one(ctx.len());
        e.0[i] = 1;
        Self::monomial(ctx, field, e, Rational::one())
    }

    /// `c · x^e`; `c` must be integral in `F_p`, use [`Field::element`] otherwise.
    pub fn monomial(ctx: &Arc<VarContext>, field: Field, e: Monomial, c: Rational) -> Polynomial {
        let mut p = Self::zero(ctx, field);
        p.add_term(e, c);
        p
    }

    pub fn context(&self) -> &Arc<VarContext> {
        &self.ctx
    }

    pub fn field(&self) -> Field {
        self.field
    }

    fn add_term(&mut self, e: Monomial, c: Rational) {
        debug_assert_eq!(e.0.len(), self.ctx.len());
        let entry = self.terms.entry(e);
        match entry {
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let v = self.field.normalize(o.get() + c);
                if v.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = v;
                }
            }
            std::collections::btree_map::Entry::Vacant(v) => {
                let c = self.field.normalize(c);
                if !c.is_zero() {
                    v.insert(c);
                }
            }
        }
    }

    fn same_ring(&self, other: &Polynomial) {
        assert!(
            self.field == other.field && (Arc::ptr_eq(&self.ctx, &other.ctx) || self.ctx == other.ctx),
            "polynomials from different rings"
        );
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.degree() == 0)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms from the leading one down.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter().rev()
    }

    pub fn coefficient(&self, e: &Monomial) -> Rational {
        self.terms.get(e).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.keys().map(|m| m.0[var]).max().unwrap_or(0)
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(Monomial::degree);
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    /// Variables that occur, in context order.
    pub fn variables(&self) -> Vec<usize> {
        (0..self.ctx.len())
            .filter(|&i| self.terms.keys().any(|m| m.0[i] > 0))
            .collect()
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        let mut out = Self::zero(&self.ctx, self.field);
        for (m, v) in &self.terms {
            out.add_term(m.clone(), v * c);
        }
        out
    }

    /// Divides by the leading coefficient; zero stays zero.
    pub fn monic(&self) -> Polynomial {
        match self.leading_term() {
            None => self.clone(),
            Some((_, c)) => {
                let inv = self.field.inverse(c).expect("nonzero leading coefficient");
                self.scale(&inv)
            }
        }
    }

    /// Equality up to a nonzero constant factor.
    pub fn same_up_to_scalar(&self, other: &Polynomial) -> bool {
        self.monic() == other.monic()
    }

    pub fn pow(&self, k: u32) -> Polynomial {
        let mut out = Self::one(&self.ctx, self.field);
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    pub fn derivative(&self, var: usize) -> Polynomial {
        let mut out = Self::zero(&self.ctx, self.field);
        for (m, c) in &self.terms {
            let e = m.0[var];
            if e == 0 {
                continue;
            }
            let mut m2 = m.clone();
            m2.0[var] -= 1;
            out.add_term(m2, c * Rational::from_integer(e.into()));
        }
        out
    }

    /// Replaces `x_var` by `value`.
    pub fn substitute(&self, var: usize, value: &Polynomial) -> Polynomial {
        self.same_ring(value);
        let mut powers: Vec<Polynomial> = vec![Self::one(&self.ctx, self.field)];
        let mut out = Self::zero(&self.ctx, self.field);
        for (m, c) in &self.terms {
            let e = m.0[var] as usize;
            while powers.len() <= e {
                let next = &powers[powers.len() - 1] * value;
                powers.push(next);
            }
            let mut rest = m.clone();
            rest.0[var] = 0;
            let term = Self::monomial(&self.ctx, self.field, rest, c.clone());
            out = &out + &(&term * &powers[e]);
        }
        out
    }

    /// Sets every listed variable to zero.
    pub fn set_zero(&self, vars: &[usize]) -> Polynomial {
        let mut out = self.clone();
        out.terms.retain(|m, _| vars.iter().all(|&v| m.0[v] == 0));
        out
    }

    /// Coefficient of `x_var^k`, as a polynomial free of `x_var`.
    pub fn coefficient_of_power(&self, var: usize, k: u32) -> Polynomial {
        let mut out = Self::zero(&self.ctx, self.field);
        for (m, c) in &self.terms {
            if m.0[var] == k {
                let mut m2 = m.clone();
                m2.0[var] = 0;
                out.add_term(m2, c.clone());
            }
        }
        out
    }

    /// Greatest monomial dividing every term.
    pub fn monomial_content(&self) -> Monomial {
        let mut it = self.terms.keys();
        let Some(first) = it.next() else {
            return Monomial::one(self.ctx.len());
        };
        let mut g = first.clone();
        for m in it {
            for (a, b) in g.0.iter_mut().zip(&m.0) {
                *a = (*a).min(*b);
            }
        }
        g
    }

    /// Exact division by a monomial dividing every term.
    pub fn divide_monomial(&self, d: &Monomial) -> Polynomial {
        let mut out = Self::zero(&self.ctx, self.field);
        for (m, c) in &self.terms {
            assert!(d.divides(m), "monomial does not divide");
            out.add_term(Monomial(m.0.iter().zip(&d.0).map(|(a, b)| a - b).collect()), c.clone());
        }
        out
    }

    /// Re-expresses the polynomial in another context containing its variables.
    pub fn to_context(&self, ctx: &Arc<VarContext>) -> Result<Polynomial, PolyError> {
        let map: Vec<Option<usize>> = self.ctx.names.iter().map(|n| ctx.index_of(n)).collect();
        let mut out = Self::zero(ctx, self.field);
        for (m, c) in &self.terms {
            let mut e = Monomial::one(ctx.len());
            for (i, &k) in m.0.iter().enumerate() {
                if k > 0 {
                    let j = map[i].ok_or_else(|| PolyError::UnknownVariable(self.ctx.names[i].clone()))?;
                    e.0[j] += k;
                }
            }
            out.add_term(e, c.clone());
        }
        Ok(out)
    }

    pub fn parse(s: &str, ctx: &Arc<VarContext>, field: Field) -> Result<Polynomial, PolyError> {
        parse::parse(s, ctx, field)
    }

    /// Parses a polynomial in the single variable `t`.
    pub fn parse_univariate(s: &str, field: Field) -> Result<Polynomial, PolyError> {
        parse::parse(s, &VarContext::new(["t"]), field)
    }

    /// Lowest exponent of a univariate polynomial (`None` for zero).
    pub fn order(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).min()
    }

    pub fn format_monomial(&self, m: &Monomial) -> String {
        let mut parts = Vec::new();
        for (i, &e) in m.0.iter().enumerate() {
            match e {
                0 => {}
                1 => parts.push(self.ctx.names[i].clone()),
                _ => parts.push(format!("{}^{e}", self.ctx.names[i])),
            }
        }
        parts.join("*")
    }
}

/// Terms of minimal `w`-weight.
pub fn initial_form(f: &Polynomial, w: &[Rational]) -> Result<Polynomial, PolyError> {
    if w.len() != f.ctx.len() {
        return Err(PolyError::WeightLength {
            expected: f.ctx.len(),
            found: w.len(),
        });
    }
    let min = f
        .terms
        .keys()
        .map(|m| m.weight(w))
        .min()
        .ok_or(PolyError::ZeroPolynomial)?;
    let mut out = Polynomial::zero(&f.ctx, f.field);
    for (m, c) in &f.terms {
        if m.weight(w) == min {
            out.add_term(m.clone(), c.clone());
        }
    }
    Ok(out)
}

/// Drops zeros and keeps one representative per class up to scalars, sorted.
pub fn dedup_up_to_scalar(polys: impl IntoIterator<Item = Polynomial>) -> Vec<Polynomial> {
    let mut out: Vec<Polynomial> = polys.into_iter().filter(|p| !p.is_zero()).map(|p| p.monic()).collect();
    out.sort();
    out.dedup();
    out
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.ctx.names == other.ctx.names && self.terms == other.terms
    }
}

impl Eq for Polynomial {}

impl Ord for Polynomial {
    /// Compares term lists from the leading term down.
    fn cmp(&self, other: &Self) -> Ordering {
        let a = self.terms.iter().rev();
        let b = other.terms.iter().rev();
        a.cmp(b)
    }
}

impl PartialOrd for Polynomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<'a> std::ops::Add<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.same_ring(rhs);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl<'a> std::ops::Sub<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self + &(-rhs)
    }
}

impl std::ops::Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(&-Rational::one())
    }
}

impl<'a> std::ops::Mul<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.same_ring(rhs);
        let mut out = Polynomial::zero(&self.ctx, self.field);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms().enumerate() {
            let negative = c.is_negative();
            let mag = c.abs();
            if k == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if negative { " - " } else { " + " })?;
            }
            let mono = self.format_monomial(m);
            if mono.is_empty() {
                write!(f, "{}", format_rational(&mag))?;
            } else if mag.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{}*{mono}", format_rational(&mag))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Determinant by Laplace expansion along the first row.
pub fn determinant(rows: &[Vec<Polynomial>], ctx: &Arc<VarContext>, field: Field) -> Polynomial {
    let k = rows.len();
    if k == 0 {
        return Polynomial::one(ctx, field);
    }
    let cols: Vec<usize> = (0..k).collect();
    laplace(rows, 0, &cols, ctx, field)
}

fn laplace(rows: &[Vec<Polynomial>], r: usize, cols: &[usize], ctx: &Arc<VarContext>, field: Field) -> Polynomial {
    if cols.len() == 1 {
        return rows[r][cols[0]].clone();
    }
    let mut out = Polynomial::zero(ctx, field);
    for (pos, &c) in cols.iter().enumerate() {
        let entry = &rows[r][c];
        if entry.is_zero() {
            continue;
        }
        let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
        let sub = laplace(rows, r + 1, &rest, ctx, field);
        let term = entry * &sub;
        out = if pos % 2 == 0 { &out + &term } else { &out - &term };
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn ring() -> Arc<VarContext> {
        VarContext::new(["x", "y", "z"])
    }

    fn p(s: &str) -> Polynomial {
        Polynomial::parse(s, &ring(), Field::Rationals).unwrap()
    }

    #[test]
    fn arithmetic_and_display() {
        let f = p("x + y");
        let g = p("x - y");
        assert_eq!((&f * &g).to_string(), "x^2 - y^2");
        assert_eq!((&f + &g).to_string(), "2*x");
        assert!((&f - &f).is_zero());
        assert_eq!(p("3/2*x^2*z - 1").to_string(), "3/2*x^2*z - 1");
        assert_eq!(f.pow(2).to_string(), "x^2 + 2*x*y + y^2");
    }

    #[test]
    fn grlex_leading_term() {
        let f = p("x + y^2 + x*z");
        let (m, _) = f.leading_term().unwrap();
        assert_eq!(f.format_monomial(m), "x*z");
    }

    #[test]
    fn derivative_and_substitution() {
        let f = p("x^2*y + 3*y");
        assert_eq!(f.derivative(0), p("2*x*y"));
        assert_eq!(f.derivative(2), p("0"));
        assert_eq!(f.substitute(0, &p("y + 1")), p("y^3 + 2*y^2 + 4*y"));
        assert_eq!(f.set_zero(&[0]), p("3*y"));
    }

    #[test]
    fn content_and_monic() {
        let f = p("-2*x^2*y + 4*x*y^3");
        let c = f.monomial_content();
        assert_eq!(c.0, vec![1, 1, 0]);
        assert_eq!(f.divide_monomial(&c), p("-2*x + 4*y^2"));
        assert_eq!(f.monic(), p("-1/2*x^2*y + x*y^3"));
        assert!(f.same_up_to_scalar(&f.scale(&int(-7))));
    }

    #[test]
    fn prime_field_arithmetic() {
        let ctx = VarContext::new(["t"]);
        let f = Polynomial::parse("1 + t", &ctx, Field::Prime(2)).unwrap();
        assert_eq!(f.pow(2).to_string(), "t^2 + 1");
        assert_eq!(Polynomial::parse("3*t", &ctx, Field::Prime(3)).unwrap().to_string(), "0");
    }

    #[test]
    fn initial_forms() {
        let f = p("x*y + z^2 + x");
        let w = vec![int(1), int(1), int(0)];
        assert_eq!(initial_form(&f, &w).unwrap(), p("z^2"));
        assert_eq!(initial_form(&f, &[int(0), int(0), int(0)]).unwrap(), f);
        assert!(initial_form(&p("0"), &w).is_err());
    }

    #[test]
    fn determinants() {
        let ctx = ring();
        let m: Vec<Vec<Polynomial>> = vec![vec![p("x"), p("y")], vec![p("z"), p("1")]];
        assert_eq!(determinant(&m, &ctx, Field::Rationals), p("x - y*z"));
    }
}
