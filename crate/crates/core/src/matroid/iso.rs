//! Isomorphism testing and exhaustive enumeration of small matroids.

use rayon::prelude::*;

use super::{Matroid, MatroidError};
use crate::subset::{k_subsets, GroundSubset};

/// Number of bases containing each element.
fn element_degrees(m: &Matroid) -> Vec<usize> {
    (1..=m.n())
        .map(|i| m.bases().iter().filter(|b| b.contains(i)).count())
        .collect()
}

fn sorted_line_sizes(m: &Matroid) -> Vec<usize> {
    let mut sizes: Vec<usize> = m.lines().iter().map(|l| l.len()).collect();
    sizes.sort_unstable();
    sizes
}

/// Finds `σ` (as `perm[i - 1] = σ(i)`) with `σ(ℬ(m1)) = ℬ(m2)`.
pub fn is_isomorphic(m1: &Matroid, m2: &Matroid) -> Result<Option<Vec<usize>>, MatroidError> {
    if m1.n() != m2.n() || m1.d() != m2.d() {
        return Err(MatroidError::DimensionMismatch(m1.d(), m1.n(), m2.d(), m2.n()));
    }
    if m1.num_bases() != m2.num_bases() {
        return Ok(None);
    }
    let deg1 = element_degrees(m1);
    let deg2 = element_degrees(m2);
    let mut s1 = deg1.clone();
    let mut s2 = deg2.clone();
    s1.sort_unstable();
    s2.sort_unstable();
    if s1 != s2 || sorted_line_sizes(m1) != sorted_line_sizes(m2) {
        return Ok(None);
    }
    let n = m1.n();
    let mut perm = vec![0usize; n];
    let mut used = GroundSubset::EMPTY;
    let found = extend(m1, m2, &deg1, &deg2, 1, &mut perm, &mut used);
    Ok(found.then_some(perm))
}

/// Depth-first assignment of `σ(k)`; after each step the bases inside the
/// assigned prefix must map onto exactly the bases inside its image.
fn extend(
    m1: &Matroid,
    m2: &Matroid,
    deg1: &[usize],
    deg2: &[usize],
    k: usize,
    perm: &mut Vec<usize>,
    used: &mut GroundSubset,
) -> bool {
    let n = m1.n();
    if k > n {
        return true;
    }
    let domain = GroundSubset::full(k);
    for target in 1..=n {
        if used.contains(target) || deg1[k - 1] != deg2[target - 1] {
            continue;
        }
        perm[k - 1] = target;
        let image = used.insert(target);
        let inside1: Vec<&GroundSubset> = m1.bases().iter().filter(|b| b.is_subset(domain)).collect();
        let inside2 = m2.bases().iter().filter(|b| b.is_subset(image)).count();
        let consistent = inside1.len() == inside2
            && inside1
                .iter()
                .all(|b| m2.is_basis(GroundSubset::from_elements(b.iter().map(|i| perm[i - 1]))));
        if consistent {
            *used = image;
            if extend(m1, m2, deg1, deg2, k + 1, perm, used) {
                return true;
            }
            *used = used.remove(target);
        }
    }
    false
}

/// Basis families over `Λ(d, n)` encoded as bitmasks, with the bit of the
/// `k`-th subset (lexicographic) stored at position `m - 1 - k`. Under this
/// encoding a larger mask is a lexicographically smaller basis list.
struct FamilyCodec {
    n: usize,
    d: usize,
    subsets: Vec<GroundSubset>,
    index_of: Vec<usize>,
    perms: Vec<Vec<usize>>,
}

impl FamilyCodec {
    fn new(d: usize, n: usize) -> Self {
        let subsets = k_subsets(n, d);
        let mut index_of = vec![usize::MAX; 1 << n];
        for (k, s) in subsets.iter().enumerate() {
            index_of[s.bits() as usize] = k;
        }
        let perms = permutations(n)
            .into_iter()
            .map(|p| {
                subsets
                    .iter()
                    .map(|s| index_of[s.permute(&p).bits() as usize])
                    .collect()
            })
            .collect();
        FamilyCodec {
            n,
            d,
            subsets,
            index_of,
            perms,
        }
    }

    fn m(&self) -> usize {
        self.subsets.len()
    }

    fn bit(&self, k: usize) -> u64 {
        1u64 << (self.m() - 1 - k)
    }

    fn contains(&self, mask: u64, s: GroundSubset) -> bool {
        mask & self.bit(self.index_of[s.bits() as usize]) != 0
    }

    fn members(&self, mask: u64) -> Vec<GroundSubset> {
        (0..self.m())
            .filter(|&k| mask & self.bit(k) != 0)
            .map(|k| self.subsets[k])
            .collect()
    }

    fn satisfies_exchange(&self, mask: u64) -> bool {
        let members = self.members(mask);
        for &b1 in &members {
            for &b2 in &members {
                let only2 = b2.difference(b1);
                for x in b1.difference(b2).iter() {
                    let base = b1.remove(x);
                    if !only2.iter().any(|y| self.contains(mask, base.insert(y))) {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn canonical(&self, mask: u64) -> u64 {
        self.perms
            .iter()
            .map(|p| {
                let mut out = 0u64;
                for (k, &img) in p.iter().enumerate() {
                    if mask & self.bit(k) != 0 {
                        out |= self.bit(img);
                    }
                }
                out
            })
            .max()
            .unwrap_or(mask)
    }

    fn matroid(&self, mask: u64) -> Matroid {
        Matroid::from_bases(self.n, self.d, self.members(mask)).expect("exchange already checked")
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current: Vec<usize> = (1..=n).collect();
    heap_permutations(n, &mut current, &mut out);
    out
}

fn heap_permutations(k: usize, a: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if k <= 1 {
        out.push(a.clone());
        return;
    }
    for i in 0..k {
        heap_permutations(k - 1, a, out);
        if k % 2 == 0 {
            a.swap(i, k - 1);
        } else {
            a.swap(0, k - 1);
        }
    }
}

/// Relabeling of `m` whose basis list is lexicographically least among all
/// relabelings. Two matroids are isomorphic iff their canonical forms agree.
pub fn canonical_form(m: &Matroid) -> Result<Matroid, MatroidError> {
    if m.n() > 6 {
        return Err(MatroidError::TooLarge(m.n()));
    }
    let codec = FamilyCodec::new(m.d(), m.n());
    let mask = m
        .bases()
        .iter()
        .fold(0u64, |acc, b| acc | codec.bit(codec.index_of[b.bits() as usize]));
    Ok(codec.matroid(codec.canonical(mask)))
}

/// One representative per isomorphism class of rank-`d` matroids on `[n]`.
///
/// Every nonempty family of `d`-subsets is tested against the exchange axiom;
/// survivors are reduced to canonical forms. Classes are ordered by number of
/// bases, then by their (lexicographically least) basis list.
pub fn enumerate_matroids(d: usize, n: usize) -> Result<Vec<Matroid>, MatroidError> {
    if n > 6 {
        return Err(MatroidError::TooLarge(n));
    }
    if n == 0 {
        return Err(MatroidError::BadGroundSet(0));
    }
    if d > n {
        return Err(MatroidError::RankTooLarge { d, n });
    }
    let codec = FamilyCodec::new(d, n);
    let total: u64 = 1u64 << codec.m();
    let mut canon: Vec<u64> = (1..total)
        .into_par_iter()
        .filter(|&mask| codec.satisfies_exchange(mask))
        .map(|mask| codec.canonical(mask))
        .collect();
    canon.par_sort_unstable();
    canon.dedup();
    let mut reps: Vec<Matroid> = canon.into_iter().map(|mask| codec.matroid(mask)).collect();
    reps.sort_by(|a, b| {
        a.num_bases()
            .cmp(&b.num_bases())
            .then_with(|| a.bases().cmp(b.bases()))
    });
    Ok(reps)
}
