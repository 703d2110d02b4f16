//! Fan data: rays, cones grouped by dimension, lineality and symmetry
//! generators, with JSON exchange in two index conventions.

use std::collections::BTreeMap;

use serde_json::{json, Value};

use super::{lineality_nh, FanError};
use crate::subset::{binomial, k_subsets, GroundSubset};
use crate::tree::{enumerate_trees, four_point_check, tree_distance};

/// `Lex1`: ray indices start at 1. `Website0`: ray indices start at 0 and
/// coordinates are labeled by subsets of `{0, …, n−1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IndexConvention {
    Lex1,
    Website0,
}

impl IndexConvention {
    pub fn parse(s: &str) -> Option<IndexConvention> {
        match s {
            "lex1" => Some(IndexConvention::Lex1),
            "website0" => Some(IndexConvention::Website0),
            _ => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            IndexConvention::Lex1 => "lex1",
            IndexConvention::Website0 => "website0",
        }
    }

    /// Index of the first ray.
    pub fn offset(self) -> usize {
        match self {
            IndexConvention::Lex1 => 1,
            IndexConvention::Website0 => 0,
        }
    }
}

/// Position in the lexicographic `Λ(d,n)` order of each coordinate of the
/// 0-based labeling, with both labels, for audit output.
pub fn lex_coordinate_table(d: usize, n: usize) -> Vec<(Vec<usize>, Vec<usize>, usize)> {
    let lex = k_subsets(n, d);
    lex.iter()
        .map(|s| {
            let zero_based: Vec<usize> = s.iter().map(|i| i - 1).collect();
            let target = lex.binary_search(s).expect("same subset");
            (zero_based, s.to_vec(), target)
        })
        .collect()
}

/// A polyhedral fan in `R^{Λ(d,n)}`; cone index lists are 0-based internally.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FanData {
    pub d: usize,
    pub n: usize,
    pub rays: Vec<Vec<i64>>,
    /// Cones keyed by dimension, each a sorted list of ray indices.
    pub cones: BTreeMap<usize, Vec<Vec<usize>>>,
    pub lineality: Vec<Vec<i64>>,
    /// Generators of the symmetry group as permutations `perm[i − 1] = σ(i)`.
    pub symmetry: Vec<Vec<usize>>,
}

/// The transposition `(1 2)` and the cycle `(1 2 … n)`.
pub fn symmetric_group_generators(n: usize) -> Vec<Vec<usize>> {
    if n < 2 {
        return Vec::new();
    }
    let mut swap: Vec<usize> = (1..=n).collect();
    swap.swap(0, 1);
    let cycle: Vec<usize> = (1..=n).map(|i| i % n + 1).collect();
    vec![swap, cycle]
}

impl FanData {
    pub fn all_cones(&self) -> impl Iterator<Item = (usize, &Vec<usize>)> {
        self.cones.iter().flat_map(|(d, cs)| cs.iter().map(move |c| (*d, c)))
    }

    pub fn num_cones(&self) -> usize {
        self.cones.values().map(Vec::len).sum()
    }

    /// Listed cones not contained in another listed cone.
    pub fn maximal_cones(&self) -> Vec<Vec<usize>> {
        let all: Vec<&Vec<usize>> = self.cones.values().flatten().collect();
        all.iter()
            .filter(|c| !all.iter().any(|o| o.len() > c.len() && c.iter().all(|x| o.contains(x))))
            .map(|c| (*c).clone())
            .collect()
    }

    pub fn contains_cone(&self, cone: &[usize]) -> bool {
        cone.is_empty() || self.cones.values().any(|cs| cs.iter().any(|c| c == cone))
    }

    fn validate(&self) -> Result<(), FanError> {
        let width = binomial(self.n, self.d);
        if let Some(r) = self.rays.iter().chain(&self.lineality).find(|r| r.len() != width) {
            return Err(FanError::DimensionMismatch(width, r.len()));
        }
        for (_, c) in self.all_cones() {
            if c.iter().any(|&i| i >= self.rays.len()) {
                return Err(FanError::Invalid(format!("cone {c:?} references a missing ray")));
            }
        }
        for p in &self.symmetry {
            let mut sorted = p.clone();
            sorted.sort();
            if sorted != (1..=self.n).collect::<Vec<_>>() {
                return Err(FanError::ActionInvalid(format!("{p:?} is not a permutation of [n]")));
            }
        }
        Ok(())
    }

    /// Reads the fan JSON. Missing `lineality` defaults to `N^H`, missing
    /// `symmetry` to generators of `S_n`.
    pub fn from_json(v: &Value) -> Result<FanData, FanError> {
        let bad = |m: &str| FanError::Invalid(m.to_string());
        let get_usize = |k: &str| {
            v.get(k)
                .and_then(Value::as_u64)
                .map(|x| x as usize)
                .ok_or_else(|| bad(&format!("missing integer field {k:?}")))
        };
        let (d, n) = (get_usize("d")?, get_usize("n")?);
        if d > n || n > crate::subset::MAX_GROUND {
            return Err(bad("need d <= n <= 64"));
        }
        let convention = match v.get("index_convention") {
            None => IndexConvention::Lex1,
            Some(c) => c
                .as_str()
                .and_then(IndexConvention::parse)
                .ok_or_else(|| bad("index_convention must be \"lex1\" or \"website0\""))?,
        };
        let int_rows = |val: &Value, what: &str| -> Result<Vec<Vec<i64>>, FanError> {
            val.as_array()
                .ok_or_else(|| bad(&format!("{what} must be an array")))?
                .iter()
                .map(|r| {
                    r.as_array()
                        .ok_or_else(|| bad(&format!("{what} entries must be arrays")))?
                        .iter()
                        .map(|x| x.as_i64().ok_or_else(|| bad(&format!("{what} must hold integers"))))
                        .collect()
                })
                .collect()
        };
        let rays = int_rows(v.get("rays").ok_or_else(|| bad("missing \"rays\""))?, "rays")?;
        let mut cones: BTreeMap<usize, Vec<Vec<usize>>> = BTreeMap::new();
        for entry in v
            .get("cones")
            .and_then(Value::as_array)
            .ok_or_else(|| bad("missing array \"cones\""))?
        {
            let dim = entry
                .get("dim")
                .and_then(Value::as_u64)
                .ok_or_else(|| bad("cone group without \"dim\""))? as usize;
            let cells = int_rows(entry.get("cells").ok_or_else(|| bad("cone group without \"cells\""))?, "cells")?;
            let list = cones.entry(dim).or_default();
            for cell in cells {
                let mut idx = Vec::with_capacity(cell.len());
                for x in cell {
                    let shifted = x - convention.offset() as i64;
                    if shifted < 0 {
                        return Err(bad(&format!("ray index {x} below the {} base", convention.name())));
                    }
                    idx.push(shifted as usize);
                }
                idx.sort();
                idx.dedup();
                list.push(idx);
            }
        }
        let lineality = match v.get("lineality") {
            Some(l) => int_rows(l, "lineality")?,
            None => lineality_nh(d, n),
        };
        let symmetry = match v.get("symmetry") {
            Some(s) => int_rows(s, "symmetry")?
                .into_iter()
                .map(|p| {
                    p.into_iter()
                        .map(|x| {
                            usize::try_from(x + 1 - convention.offset() as i64)
                                .map_err(|_| FanError::ActionInvalid(format!("bad permutation entry {x}")))
                        })
                        .collect::<Result<Vec<usize>, FanError>>()
                })
                .collect::<Result<Vec<_>, FanError>>()?,
            None => symmetric_group_generators(n),
        };
        let fan = FanData {
            d,
            n,
            rays,
            cones,
            lineality,
            symmetry,
        };
        fan.validate()?;
        Ok(fan)
    }

    pub fn to_json(&self, convention: IndexConvention) -> Value {
        let off = convention.offset();
        let cones: Vec<Value> = self
            .cones
            .iter()
            .map(|(dim, cs)| {
                let cells: Vec<Vec<usize>> = cs.iter().map(|c| c.iter().map(|i| i + off).collect()).collect();
                json!({"dim": dim, "cells": cells})
            })
            .collect();
        let symmetry: Vec<Vec<usize>> = self
            .symmetry
            .iter()
            .map(|p| p.iter().map(|i| i - 1 + off).collect())
            .collect();
        json!({
            "d": self.d,
            "n": self.n,
            "index_convention": convention.name(),
            "rays": self.rays,
            "cones": cones,
            "lineality": self.lineality,
            "symmetry": symmetry,
        })
    }
}

/// Weight vector of a split `A | [n]∖A`: `−1` on pairs separated by it.
fn split_ray(split: GroundSubset, n: usize) -> Vec<i64> {
    k_subsets(n, 2)
        .iter()
        .map(|pair| {
            let inside = pair.intersection(split).len();
            if inside == 1 {
                -1
            } else {
                0
            }
        })
        .collect()
}

/// Space of phylogenetic trees on `n` leaves inside `R^{Λ(2,n)}`: one ray per
/// split with both sides of size at least two, one cone per tree type.
pub fn tgr2_fan_builder(n: usize) -> Result<FanData, FanError> {
    if !(4..=7).contains(&n) {
        return Err(FanError::TooLarge(n));
    }
    let splits: Vec<GroundSubset> = crate::subset::all_subsets(n)
        .filter(|s| !s.contains(1) && s.len() >= 2 && n - s.len() >= 2)
        .collect::<std::collections::BTreeSet<_>>()
        .into_iter()
        .collect();
    let rays: Vec<Vec<i64>> = splits.iter().map(|&s| split_ray(s, n)).collect();
    let mut cones: BTreeMap<usize, Vec<Vec<usize>>> = BTreeMap::new();
    let trees = enumerate_trees(n).map_err(|e| FanError::Invalid(e.to_string()))?;
    for t in &trees {
        let idx: Vec<usize> = t
            .splits()
            .iter()
            .map(|s| splits.binary_search(s).expect("nontrivial split"))
            .collect();
        if idx.is_empty() {
            continue;
        }
        let check = four_point_check(&tree_distance(t));
        if let Err(e) = check {
            return Err(FanError::Invalid(format!("tree cone {idx:?}: {e}")));
        }
        let mut idx = idx;
        idx.sort();
        cones.entry(idx.len()).or_default().push(idx);
    }
    for cs in cones.values_mut() {
        cs.sort();
    }
    Ok(FanData {
        d: 2,
        n,
        rays,
        cones,
        lineality: lineality_nh(2, n),
        symmetry: symmetric_group_generators(n),
    })
}
