//! Coordinatewise `t`-adic valuations of Plücker vectors of matrices whose
//! entries are polynomials in `t`.

use serde_json::{json, Value};

use super::PluckerError;
use crate::poly::{determinant, Field, Polynomial, VarContext};
use crate::rational::Rational;
use crate::subset::{k_subsets, GroundSubset};
use crate::weight::WeightVector;

/// A `d × n` matrix over `k[t]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMatrix {
    pub field: Field,
    pub rows: Vec<Vec<Polynomial>>,
}

impl PolyMatrix {
    pub fn parse(field: Field, rows: &[Vec<&str>]) -> Result<PolyMatrix, PluckerError> {
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|s| Polynomial::parse_univariate(s, field)).collect())
            .collect::<Result<Vec<Vec<Polynomial>>, _>>()?;
        Self::new(field, rows)
    }

    pub fn new(field: Field, rows: Vec<Vec<Polynomial>>) -> Result<PolyMatrix, PluckerError> {
        let width = rows.first().map(Vec::len).unwrap_or(0);
        if rows.is_empty() || width < rows.len() || rows.iter().any(|r| r.len() != width) {
            return Err(PluckerError::Shape("expected a d × n matrix with d ≤ n".into()));
        }
        Ok(PolyMatrix { field, rows })
    }

    pub fn d(&self) -> usize {
        self.rows.len()
    }

    pub fn n(&self) -> usize {
        self.rows[0].len()
    }

    /// Reads `{"char": p, "rows": [["1", "t", …], …]}`; entries may also be integers.
    pub fn from_json(v: &Value) -> Result<PolyMatrix, PluckerError> {
        let bad = |m: &str| PluckerError::Shape(m.to_string());
        let p = v
            .get("char")
            .and_then(Value::as_u64)
            .ok_or_else(|| bad("missing integer field \"char\""))?;
        let field = Field::with_characteristic(u32::try_from(p).map_err(|_| bad("characteristic too large"))?)?;
        let rows = v
            .get("rows")
            .and_then(Value::as_array)
            .ok_or_else(|| bad("missing array field \"rows\""))?;
        let mut parsed = Vec::new();
        for r in rows {
            let r = r.as_array().ok_or_else(|| bad("rows must be arrays"))?;
            let mut row = Vec::new();
            for e in r {
                let s = match e {
                    Value::String(s) => s.clone(),
                    Value::Number(n) => n.to_string(),
                    _ => return Err(bad("entries must be strings or integers")),
                };
                row.push(Polynomial::parse_univariate(&s, field)?);
            }
            parsed.push(row);
        }
        Self::new(field, parsed)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "char": self.field.characteristic(),
            "rows": self.rows.iter().map(|r| r.iter().map(|e| e.to_string()).collect::<Vec<_>>()).collect::<Vec<_>>(),
        })
    }

    /// Maximal minor on the columns `λ`.
    pub fn minor(&self, lambda: GroundSubset) -> Polynomial {
        let cols = lambda.to_vec();
        let sub: Vec<Vec<Polynomial>> = self
            .rows
            .iter()
            .map(|r| cols.iter().map(|&c| r[c - 1].clone()).collect())
            .collect();
        let ctx = self.rows[0][0].context().clone();
        determinant(&sub, &ctx, self.field)
    }
}

/// `w_λ = ord_t det(columns λ)`.
pub fn pluecker_valuation(mat: &PolyMatrix) -> Result<WeightVector, PluckerError> {
    let (d, n) = (mat.d(), mat.n());
    let mut w = WeightVector::zero(d, n);
    for lambda in k_subsets(n, d) {
        let order = mat.minor(lambda).order().ok_or(PluckerError::SingularMinor(lambda))?;
        w.set(lambda, Rational::from_integer(order.into()));
    }
    Ok(w)
}

/// The univariate ring `k[t]` used by [`PolyMatrix`].
pub fn t_ring() -> std::sync::Arc<VarContext> {
    VarContext::new(["t"])
}
