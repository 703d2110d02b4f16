//! Matroids on `[n]` given by their bases.
//!
//! A [`Matroid`] can only be obtained through [`Matroid::from_bases`] (or a
//! constructor that goes through it), so every value satisfies the basis
//! exchange axiom. Rank, flats, duals, minors and face matroids are derived
//! from the basis list.

mod iso;
mod named;

pub use iso::{canonical_form, enumerate_matroids, is_isomorphic};
pub use named::{named_matroid, table_matroid, TABLE_IDS};

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::subset::{all_subsets, k_subsets, GroundSubset, MAX_GROUND};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatroidError {
    #[error("basis exchange fails for {b1} and {b2} at element {x}")]
    ExchangeViolation {
        b1: GroundSubset,
        b2: GroundSubset,
        x: usize,
    },
    #[error("basis {0} does not have cardinality {1}")]
    WrongCardinality(GroundSubset, usize),
    #[error("subset {0} is not contained in [{1}]")]
    OutOfRange(GroundSubset, usize),
    #[error("a matroid needs at least one basis")]
    EmptyBases,
    #[error("ground set size {0} is not supported")]
    BadGroundSet(usize),
    #[error("deleted and contracted sets overlap in {0}")]
    Overlap(GroundSubset),
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("unknown matroid name `{0}`")]
    UnknownName(String),
    #[error("matroids have different (d, n): ({0}, {1}) vs ({2}, {3})")]
    DimensionMismatch(usize, usize, usize, usize),
    #[error("enumeration is limited to n <= 6, got n = {0}")]
    TooLarge(usize),
    #[error("rank {d} exceeds ground set size {n}")]
    RankTooLarge { d: usize, n: usize },
}

/// A matroid of rank `d` on `[n]`, stored as its sorted list of bases.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matroid {
    n: usize,
    d: usize,
    /// Lexicographically sorted.
    bases: Vec<GroundSubset>,
    /// Raw bit patterns, numerically sorted, for membership queries.
    lookup: Vec<u64>,
}

/// Loops, parallel classes and simplicity of a matroid.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SimplicityReport {
    pub loops: GroundSubset,
    pub parallel_classes: Vec<GroundSubset>,
    pub is_simple: bool,
}

impl Matroid {
    /// Validates a basis family and returns the matroid it defines.
    pub fn from_bases<I>(n: usize, d: usize, bases: I) -> Result<Matroid, MatroidError>
    where
        I: IntoIterator<Item = GroundSubset>,
    {
        if n == 0 || n >= MAX_GROUND {
            return Err(MatroidError::BadGroundSet(n));
        }
        if d > n {
            return Err(MatroidError::RankTooLarge { d, n });
        }
        let mut bases: Vec<GroundSubset> = bases.into_iter().collect();
        for &b in &bases {
            if !b.within(n) {
                return Err(MatroidError::OutOfRange(b, n));
            }
            if b.len() != d {
                return Err(MatroidError::WrongCardinality(b, d));
            }
        }
        bases.sort();
        bases.dedup();
        if bases.is_empty() {
            return Err(MatroidError::EmptyBases);
        }
        let m = Self::assemble(n, d, bases);
        m.check_exchange()?;
        Ok(m)
    }

    fn assemble(n: usize, d: usize, bases: Vec<GroundSubset>) -> Matroid {
        let mut lookup: Vec<u64> = bases.iter().map(|b| b.bits()).collect();
        lookup.sort_unstable();
        Matroid {
            n,
            d,
            bases,
            lookup,
        }
    }

    /// Matroid whose bases are the `d`-subsets of `[n]` not listed in `nonbases`.
    pub fn from_nonbases<I>(n: usize, d: usize, nonbases: I) -> Result<Matroid, MatroidError>
    where
        I: IntoIterator<Item = GroundSubset>,
    {
        let excluded: Vec<GroundSubset> = nonbases.into_iter().collect();
        Self::from_bases(
            n,
            d,
            k_subsets(n, d).into_iter().filter(|b| !excluded.contains(b)),
        )
    }

    /// Simple rank-3 matroid on `[n]` whose lines (rank-2 flats of size ≥ 3) are given.
    pub fn from_lines<I>(n: usize, lines: I) -> Result<Matroid, MatroidError>
    where
        I: IntoIterator<Item = GroundSubset>,
    {
        let lines: Vec<GroundSubset> = lines.into_iter().collect();
        Self::from_bases(
            n,
            3,
            k_subsets(n, 3)
                .into_iter()
                .filter(|b| !lines.iter().any(|l| b.is_subset(*l))),
        )
    }

    pub fn uniform(d: usize, n: usize) -> Matroid {
        Self::from_bases(n, d, k_subsets(n, d)).expect("uniform matroid")
    }

    /// Rank-2 matroid of a partition of `[n]`: bases are pairs meeting two blocks.
    pub fn partition_matroid(n: usize, blocks: &[GroundSubset]) -> Result<Matroid, MatroidError> {
        if blocks.len() < 2 {
            return Err(MatroidError::InvalidPartition(
                "at least two blocks are required".into(),
            ));
        }
        let mut seen = GroundSubset::EMPTY;
        for &b in blocks {
            if b.is_empty() {
                return Err(MatroidError::InvalidPartition("empty block".into()));
            }
            if !b.within(n) {
                return Err(MatroidError::InvalidPartition(format!("{b} not inside [{n}]")));
            }
            if !seen.intersection(b).is_empty() {
                return Err(MatroidError::InvalidPartition(format!("{b} overlaps another block")));
            }
            seen = seen.union(b);
        }
        if seen != GroundSubset::full(n) {
            return Err(MatroidError::InvalidPartition(format!(
                "blocks do not cover [{n}]"
            )));
        }
        let block_of = |i: usize| blocks.iter().position(|b| b.contains(i));
        Self::from_bases(
            n,
            2,
            k_subsets(n, 2).into_iter().filter(|p| {
                let v = p.to_vec();
                block_of(v[0]) != block_of(v[1])
            }),
        )
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn bases(&self) -> &[GroundSubset] {
        &self.bases
    }

    pub fn num_bases(&self) -> usize {
        self.bases.len()
    }

    pub fn ground(&self) -> GroundSubset {
        GroundSubset::full(self.n)
    }

    pub fn is_basis(&self, b: GroundSubset) -> bool {
        self.lookup.binary_search(&b.bits()).is_ok()
    }

    /// First exchange-axiom failure, scanning pairs in lexicographic order.
    fn check_exchange(&self) -> Result<(), MatroidError> {
        for &b1 in &self.bases {
            for &b2 in &self.bases {
                let only2 = b2.difference(b1);
                for x in b1.difference(b2).iter() {
                    let base = b1.remove(x);
                    if !only2.iter().any(|y| self.is_basis(base.insert(y))) {
                        return Err(MatroidError::ExchangeViolation { b1, b2, x });
                    }
                }
            }
        }
        Ok(())
    }

    /// `ρ(λ) = max_β |β ∩ λ|`.
    pub fn rank(&self, subset: GroundSubset) -> usize {
        let mut best = 0;
        for b in &self.bases {
            let r = b.intersection(subset).len();
            if r > best {
                best = r;
                if best == self.d {
                    break;
                }
            }
        }
        best
    }

    pub fn is_independent(&self, subset: GroundSubset) -> bool {
        self.rank(subset) == subset.len()
    }

    pub fn closure(&self, subset: GroundSubset) -> GroundSubset {
        let r = self.rank(subset);
        let mut cl = subset;
        for i in subset.complement(self.n).iter() {
            if self.rank(subset.insert(i)) == r {
                cl = cl.insert(i);
            }
        }
        cl
    }

    pub fn is_flat(&self, subset: GroundSubset) -> bool {
        self.closure(subset) == subset
    }

    /// All flats in lexicographic order.
    pub fn flats(&self) -> Vec<GroundSubset> {
        let mut flats: Vec<GroundSubset> = all_subsets(self.n).filter(|&s| self.is_flat(s)).collect();
        flats.sort();
        flats
    }

    /// Flats of rank 2 with at least three elements.
    pub fn lines(&self) -> Vec<GroundSubset> {
        let mut lines: Vec<GroundSubset> = self
            .flats()
            .into_iter()
            .filter(|&f| f.len() >= 3 && self.rank(f) == 2)
            .collect();
        lines.sort();
        lines
    }

    pub fn flats_and_lines(&self) -> (Vec<GroundSubset>, Vec<GroundSubset>) {
        let flats = self.flats();
        let lines = flats
            .iter()
            .copied()
            .filter(|&f| f.len() >= 3 && self.rank(f) == 2)
            .collect();
        (flats, lines)
    }

    pub fn loops(&self) -> GroundSubset {
        let covered = self
            .bases
            .iter()
            .fold(GroundSubset::EMPTY, |acc, b| acc.union(*b));
        covered.complement(self.n)
    }

    /// Elements lying in every basis.
    pub fn coloops(&self) -> GroundSubset {
        self.bases
            .iter()
            .fold(self.ground(), |acc, b| acc.intersection(*b))
    }

    pub fn simplicity_report(&self) -> SimplicityReport {
        let loops = self.loops();
        let mut classes: Vec<GroundSubset> = Vec::new();
        for i in loops.complement(self.n).iter() {
            if classes.iter().any(|c| c.contains(i)) {
                continue;
            }
            let class = loops
                .complement(self.n)
                .iter()
                .filter(|&j| j == i || self.rank(GroundSubset::from_elements([i, j])) == 1)
                .fold(GroundSubset::EMPTY, |acc, j| acc.insert(j));
            classes.push(class);
        }
        classes.sort_by_key(|c| c.min_element());
        let is_simple = loops.is_empty() && classes.iter().all(|c| c.len() == 1);
        SimplicityReport {
            loops,
            parallel_classes: classes,
            is_simple,
        }
    }

    pub fn is_simple(&self) -> bool {
        self.simplicity_report().is_simple
    }

    pub fn dual(&self) -> Matroid {
        let bases = self.bases.iter().map(|b| b.complement(self.n)).collect();
        let mut sorted: Vec<GroundSubset> = bases;
        sorted.sort();
        Self::assemble(self.n, self.n - self.d, sorted)
    }

    /// Connected components, ordered by their smallest element.
    ///
    /// Two elements are joined when one can be exchanged for the other in some
    /// basis; the transitive closure of that relation gives the components.
    pub fn components(&self) -> Vec<GroundSubset> {
        let n = self.n;
        let mut parent: Vec<usize> = (0..=n).collect();
        fn find(parent: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while parent[r] != r {
                r = parent[r];
            }
            let mut y = x;
            while parent[y] != r {
                let next = parent[y];
                parent[y] = r;
                y = next;
            }
            r
        }
        for &b in &self.bases {
            for i in b.iter() {
                let rest = b.remove(i);
                for j in b.complement(n).iter() {
                    if self.is_basis(rest.insert(j)) {
                        let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                        if ri != rj {
                            parent[ri.max(rj)] = ri.min(rj);
                        }
                    }
                }
            }
        }
        let mut comps: Vec<GroundSubset> = Vec::new();
        let mut roots: Vec<usize> = Vec::new();
        for i in 1..=n {
            let r = find(&mut parent, i);
            match roots.iter().position(|&x| x == r) {
                Some(k) => comps[k] = comps[k].insert(i),
                None => {
                    roots.push(r);
                    comps.push(GroundSubset::singleton(i));
                }
            }
        }
        comps.sort_by_key(|c| c.min_element());
        comps
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() == 1
    }

    /// Direct sum of two matroids on the same `[n]` with disjoint supports.
    pub fn direct_sum(&self, other: &Matroid) -> Result<Matroid, MatroidError> {
        if self.n != other.n {
            return Err(MatroidError::DimensionMismatch(self.d, self.n, other.d, other.n));
        }
        let mut bases = Vec::with_capacity(self.bases.len() * other.bases.len());
        for &a in &self.bases {
            for &b in &other.bases {
                let overlap = a.intersection(b);
                if !overlap.is_empty() {
                    return Err(MatroidError::Overlap(overlap));
                }
                bases.push(a.union(b));
            }
        }
        Self::from_bases(self.n, self.d + other.d, bases)
    }

    /// Deletes `delete`, contracts `contract` and relabels the remaining
    /// elements order-preservingly to `1..=m`. A dependent contraction set is
    /// allowed; the minor's rank function is `ρ(λ ∪ C) − ρ(C)`.
    pub fn minor(&self, delete: GroundSubset, contract: GroundSubset) -> Result<Matroid, MatroidError> {
        let overlap = delete.intersection(contract);
        if !overlap.is_empty() {
            return Err(MatroidError::Overlap(overlap));
        }
        let rest = self.ground().difference(delete.union(contract));
        let m = rest.len();
        if m == 0 {
            return Err(MatroidError::BadGroundSet(0));
        }
        let rc = self.rank(contract);
        let r = self.rank(rest.union(contract)) - rc;
        let relabel: Vec<usize> = rest.to_vec();
        let bases: Vec<GroundSubset> = k_subsets(m, r)
            .into_iter()
            .filter(|s| {
                let orig = GroundSubset::from_elements(s.iter().map(|i| relabel[i - 1]));
                self.rank(orig.union(contract)) - rc == r
            })
            .collect();
        Self::from_bases(m, r, bases)
    }

    /// Restriction to `subset`, relabeled to `1..=|subset|`.
    pub fn restriction(&self, subset: GroundSubset) -> Result<Matroid, MatroidError> {
        self.minor(subset.complement(self.n), GroundSubset::EMPTY)
    }

    /// Contraction by `subset`, relabeled.
    pub fn contraction(&self, subset: GroundSubset) -> Result<Matroid, MatroidError> {
        self.minor(GroundSubset::EMPTY, subset)
    }

    /// The matroid of the face `x_η = ρ(η)` of the matroid polytope.
    pub fn face_matroid(&self, eta: GroundSubset) -> Matroid {
        let r = self.rank(eta);
        let bases: Vec<GroundSubset> = self
            .bases
            .iter()
            .copied()
            .filter(|b| b.intersection(eta).len() == r)
            .collect();
        Self::from_bases(self.n, self.d, bases).expect("faces of matroid polytopes are matroid polytopes")
    }

    /// Relabels by `perm[i - 1] = σ(i)`.
    pub fn permute(&self, perm: &[usize]) -> Matroid {
        let mut bases: Vec<GroundSubset> = self.bases.iter().map(|b| b.permute(perm)).collect();
        bases.sort();
        Self::assemble(self.n, self.d, bases)
    }

    /// Intersection of two basis families, if it is a matroid.
    pub fn intersect(&self, other: &Matroid) -> Result<Matroid, MatroidError> {
        if self.n != other.n || self.d != other.d {
            return Err(MatroidError::DimensionMismatch(self.d, self.n, other.d, other.n));
        }
        Self::from_bases(
            self.n,
            self.d,
            self.bases.iter().copied().filter(|b| other.is_basis(*b)),
        )
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("matroid serializes")
    }
}

/// Validates a basis family; alias of [`Matroid::from_bases`].
pub fn validate<I>(bases: I, n: usize, d: usize) -> Result<Matroid, MatroidError>
where
    I: IntoIterator<Item = GroundSubset>,
{
    Matroid::from_bases(n, d, bases)
}

#[derive(Serialize, Deserialize)]
struct MatroidJson {
    n: usize,
    d: usize,
    bases: Vec<Vec<usize>>,
}

impl Serialize for Matroid {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        MatroidJson {
            n: self.n,
            d: self.d,
            bases: self.bases.iter().map(|b| b.to_vec()).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Matroid {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Matroid, D::Error> {
        let raw = MatroidJson::deserialize(d)?;
        let mut bases = Vec::with_capacity(raw.bases.len());
        for b in &raw.bases {
            if b.iter().any(|&i| i == 0 || i > raw.n) {
                return Err(serde::de::Error::custom(format!(
                    "basis {b:?} has an element outside 1..={}",
                    raw.n
                )));
            }
            let s = GroundSubset::from_elements(b.iter().copied());
            if s.len() != b.len() {
                return Err(serde::de::Error::custom(format!("basis {b:?} repeats an element")));
            }
            bases.push(s);
        }
        Matroid::from_bases(raw.n, raw.d, bases).map_err(serde::de::Error::custom)
    }
}

impl Serialize for GroundSubset {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_vec().serialize(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(v: &[usize]) -> GroundSubset {
        GroundSubset::from_elements(v.iter().copied())
    }

    #[test]
    fn exchange_violation_is_reported() {
        let err = Matroid::from_bases(4, 2, [set(&[1, 2]), set(&[3, 4])]).unwrap_err();
        assert_eq!(
            err,
            MatroidError::ExchangeViolation {
                b1: set(&[1, 2]),
                b2: set(&[3, 4]),
                x: 1
            }
        );
    }

    #[test]
    fn malformed_bases_are_rejected() {
        assert!(matches!(
            Matroid::from_bases(4, 2, [set(&[1, 2, 3])]),
            Err(MatroidError::WrongCardinality(..))
        ));
        assert!(matches!(
            Matroid::from_bases(3, 2, [set(&[1, 4])]),
            Err(MatroidError::OutOfRange(..))
        ));
        assert_eq!(
            Matroid::from_bases(3, 2, Vec::new()),
            Err(MatroidError::EmptyBases)
        );
    }

    #[test]
    fn rank_of_uniform_and_empty() {
        let u = Matroid::uniform(3, 7);
        assert_eq!(u.rank(set(&[2, 5, 6])), 3);
        assert_eq!(u.rank(GroundSubset::EMPTY), 0);
        assert_eq!(u.rank(u.ground()), 3);
        assert!(u.lines().is_empty());
    }

    #[test]
    fn components_of_small_sum() {
        let m = Matroid::from_bases(3, 1, [set(&[1]), set(&[2])]).unwrap();
        assert_eq!(m.components(), vec![set(&[1, 2]), set(&[3])]);
        let m = Matroid::from_bases(3, 2, [set(&[1, 3]), set(&[2, 3])]).unwrap();
        assert_eq!(m.components(), vec![set(&[1, 2]), set(&[3])]);
        assert!(Matroid::uniform(3, 7).is_connected());
    }

    #[test]
    fn partition_matroid_bases() {
        let m = Matroid::partition_matroid(4, &[set(&[1]), set(&[2]), set(&[3, 4])]).unwrap();
        let expected: Vec<GroundSubset> = [[1, 2], [1, 3], [1, 4], [2, 3], [2, 4]]
            .iter()
            .map(|p| set(p))
            .collect();
        assert_eq!(m.bases(), expected.as_slice());
        let singletons: Vec<GroundSubset> = (1..=5).map(GroundSubset::singleton).collect();
        assert_eq!(
            Matroid::partition_matroid(5, &singletons).unwrap(),
            Matroid::uniform(2, 5)
        );
        assert!(matches!(
            Matroid::partition_matroid(3, &[set(&[1, 2, 3])]),
            Err(MatroidError::InvalidPartition(_))
        ));
        assert!(matches!(
            Matroid::partition_matroid(3, &[set(&[1, 2]), set(&[2, 3])]),
            Err(MatroidError::InvalidPartition(_))
        ));
    }

    #[test]
    fn simplicity() {
        let m = Matroid::partition_matroid(3, &[set(&[1, 2]), set(&[3])]).unwrap();
        let rep = m.simplicity_report();
        assert!(rep.loops.is_empty());
        assert_eq!(rep.parallel_classes, vec![set(&[1, 2]), set(&[3])]);
        assert!(!rep.is_simple);
        let zero = Matroid::from_bases(3, 0, [GroundSubset::EMPTY]).unwrap();
        let rep = zero.simplicity_report();
        assert_eq!(rep.loops, set(&[1, 2, 3]));
        assert!(rep.parallel_classes.is_empty());
    }

    #[test]
    fn duals() {
        assert_eq!(Matroid::uniform(2, 5).dual(), Matroid::uniform(3, 5));
        let full = Matroid::uniform(4, 4);
        let zero = full.dual();
        assert_eq!(zero.d(), 0);
        assert_eq!(zero.bases(), &[GroundSubset::EMPTY]);
    }

    #[test]
    fn minors() {
        let u = Matroid::uniform(3, 7);
        assert_eq!(u.minor(set(&[7]), GroundSubset::EMPTY).unwrap(), Matroid::uniform(3, 6));
        assert!(matches!(
            u.minor(set(&[1, 2]), set(&[2])),
            Err(MatroidError::Overlap(_))
        ));
        // dependent contraction set: contracting a parallel pair acts like contracting one
        let m = Matroid::partition_matroid(4, &[set(&[1, 2]), set(&[3]), set(&[4])]).unwrap();
        let c = m.contraction(set(&[1, 2])).unwrap();
        assert_eq!(c.d(), 1);
        assert_eq!(c, Matroid::uniform(1, 2));
    }

    #[test]
    fn face_of_full_subset_is_identity() {
        let u = Matroid::uniform(3, 7);
        assert_eq!(u.face_matroid(u.ground()), u);
        let vertex = u.face_matroid(set(&[1, 2, 4]));
        assert_eq!(vertex.bases(), &[set(&[1, 2, 4])]);
    }

    #[test]
    fn json_round_trip_and_rejection() {
        let m = Matroid::uniform(2, 4);
        let s = serde_json::to_string(&m).unwrap();
        assert!(s.starts_with("{\"n\":4,\"d\":2,\"bases\":[[1,2],[1,3]"));
        let back: Matroid = serde_json::from_str(&s).unwrap();
        assert_eq!(back, m);
        let bad = r#"{"n":4,"d":2,"bases":[[1,2],[3,4]]}"#;
        assert!(serde_json::from_str::<Matroid>(bad).is_err());
    }
}
