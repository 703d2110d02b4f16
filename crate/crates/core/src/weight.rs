//! Weight vectors indexed by the Plücker index set `Λ(d, n)`.

use std::collections::BTreeMap;

use num_traits::Zero;
use serde_json::{Map, Value};
use thiserror::Error;

use crate::rational::{format_rational, from_json, int, Rational};
use crate::subset::{k_subsets, GroundSubset};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WeightError {
    #[error("key `{0}` is not a {1}-subset of [{2}]")]
    BadKey(String, usize, usize),
    #[error("value for `{0}` is not a rational number")]
    BadValue(String),
    #[error("malformed weight vector: {0}")]
    Malformed(String),
}

/// Exact weights `w_λ`, `λ ∈ Λ(d, n)`; entries not stored are zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightVector {
    d: usize,
    n: usize,
    entries: BTreeMap<GroundSubset, Rational>,
}

impl WeightVector {
    pub fn zero(d: usize, n: usize) -> Self {
        WeightVector {
            d,
            n,
            entries: BTreeMap::new(),
        }
    }

    /// Sum of unit vectors `e_λ` over the given labels, e.g. `["124", "135"]`.
    pub fn indicator(d: usize, n: usize, labels: &[&str]) -> Result<Self, WeightError> {
        let mut w = Self::zero(d, n);
        for l in labels {
            let s = w.parse_key(l)?;
            let v = w.get(s) + int(1);
            w.set(s, v);
        }
        Ok(w)
    }

    /// Weights listed in the lexicographic order of `Λ(d, n)`.
    pub fn from_dense(d: usize, n: usize, values: Vec<Rational>) -> Self {
        let keys = k_subsets(n, d);
        assert_eq!(keys.len(), values.len(), "dense weight vector has wrong length");
        let mut w = Self::zero(d, n);
        for (k, v) in keys.into_iter().zip(values) {
            w.set(k, v);
        }
        w
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, lambda: GroundSubset) -> Rational {
        self.entries.get(&lambda).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn set(&mut self, lambda: GroundSubset, value: Rational) {
        assert!(
            lambda.len() == self.d && lambda.within(self.n),
            "{lambda} is not in Λ({}, {})",
            self.d,
            self.n
        );
        if value.is_zero() {
            self.entries.remove(&lambda);
        } else {
            self.entries.insert(lambda, value);
        }
    }

    /// Nonzero entries in lexicographic order.
    pub fn nonzero(&self) -> impl Iterator<Item = (GroundSubset, &Rational)> {
        self.entries.iter().map(|(k, v)| (*k, v))
    }

    /// All entries in the lexicographic order of `Λ(d, n)`.
    pub fn dense(&self) -> Vec<Rational> {
        k_subsets(self.n, self.d).into_iter().map(|k| self.get(k)).collect()
    }

    /// `w + c·𝟙`.
    pub fn shifted(&self, c: &Rational) -> Self {
        Self::from_dense(self.d, self.n, self.dense().into_iter().map(|v| v + c).collect())
    }

    pub fn scaled(&self, c: &Rational) -> Self {
        Self::from_dense(self.d, self.n, self.dense().into_iter().map(|v| v * c).collect())
    }

    pub fn add(&self, other: &WeightVector) -> Self {
        assert_eq!((self.d, self.n), (other.d, other.n));
        let values = self
            .dense()
            .into_iter()
            .zip(other.dense())
            .map(|(a, b)| a + b)
            .collect();
        Self::from_dense(self.d, self.n, values)
    }

    /// `σ·w` with `(σ·w)_{σ(λ)} = w_λ`, where `perm[i - 1] = σ(i)`.
    pub fn permute(&self, perm: &[usize]) -> Self {
        let mut out = Self::zero(self.d, self.n);
        for (k, v) in &self.entries {
            out.set(k.permute(perm), v.clone());
        }
        out
    }

    /// Weights on `[n] ∖ λ` viewed in `Λ(n − d, n)`.
    pub fn complemented(&self) -> Self {
        let mut out = Self::zero(self.n - self.d, self.n);
        for (k, v) in &self.entries {
            out.set(k.complement(self.n), v.clone());
        }
        out
    }

    fn parse_key(&self, key: &str) -> Result<GroundSubset, WeightError> {
        GroundSubset::parse_label(key)
            .filter(|s| s.len() == self.d && s.within(self.n))
            .ok_or_else(|| WeightError::BadKey(key.to_string(), self.d, self.n))
    }

    pub fn to_json(&self) -> Value {
        let mut entries = Map::new();
        for (k, v) in &self.entries {
            entries.insert(k.label(self.n), Value::String(format_rational(v)));
        }
        let mut obj = Map::new();
        obj.insert("d".into(), Value::from(self.d));
        obj.insert("n".into(), Value::from(self.n));
        obj.insert("entries".into(), Value::Object(entries));
        Value::Object(obj)
    }

    pub fn from_json(v: &Value) -> Result<Self, WeightError> {
        let field = |name: &str| {
            v.get(name)
                .and_then(Value::as_u64)
                .map(|x| x as usize)
                .ok_or_else(|| WeightError::Malformed(format!("missing integer field `{name}`")))
        };
        let d = field("d")?;
        let n = field("n")?;
        if n == 0 || d > n || n >= crate::subset::MAX_GROUND {
            return Err(WeightError::Malformed(format!("invalid (d, n) = ({d}, {n})")));
        }
        let mut w = Self::zero(d, n);
        match v.get("entries") {
            None => {}
            Some(Value::Object(map)) => {
                for (key, val) in map {
                    let s = w.parse_key(key)?;
                    let r = from_json(val).ok_or_else(|| WeightError::BadValue(key.clone()))?;
                    w.set(s, r);
                }
            }
            Some(_) => return Err(WeightError::Malformed("`entries` must be an object".into())),
        }
        Ok(w)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    #[test]
    fn json_round_trip() {
        let text = r#"{"d":3,"n":7,"entries":{"124":1,"135":"3/2","167":"-0.5"}}"#;
        let w = WeightVector::from_json(&serde_json::from_str(text).unwrap()).unwrap();
        assert_eq!(w.get(GroundSubset::from_elements([1, 3, 5])), ratio(3, 2));
        assert_eq!(w.get(GroundSubset::from_elements([1, 6, 7])), ratio(-1, 2));
        assert_eq!(w.get(GroundSubset::from_elements([1, 2, 3])), int(0));
        let back = WeightVector::from_json(&w.to_json()).unwrap();
        assert_eq!(back, w);
    }

    #[test]
    fn rejects_bad_keys() {
        let bad = serde_json::json!({"d": 2, "n": 4, "entries": {"125": "1"}});
        assert!(matches!(WeightVector::from_json(&bad), Err(WeightError::BadKey(..))));
        let bad = serde_json::json!({"d": 2, "n": 4, "entries": {"12": "x"}});
        assert!(matches!(WeightVector::from_json(&bad), Err(WeightError::BadValue(..))));
    }

    #[test]
    fn permutation_moves_entries() {
        let w = WeightVector::indicator(3, 4, &["134"]).unwrap();
        let p = w.permute(&[2, 1, 3, 4]);
        assert_eq!(p, WeightVector::indicator(3, 4, &["234"]).unwrap());
    }
}
