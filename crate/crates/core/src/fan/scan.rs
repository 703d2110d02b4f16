//! The line test over stars of cones and orbit counts under symmetry.

use std::collections::{HashMap, HashSet};

use num_bigint::BigInt;
use rayon::prelude::*;
use serde_json::{json, Value};

use super::{big, pair_line_test, symmetric_action, Cone, FanData, FanError};
use crate::polyhedral::linalg::{rref, to_rational};
use crate::rational::{primitive_integer_vector, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairFailure {
    /// Positions in the star list.
    pub i: usize,
    pub j: usize,
    pub witness: Vec<BigInt>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StarReport {
    pub center: Vec<usize>,
    /// Maximal cones containing the center, sorted.
    pub star: Vec<Vec<usize>>,
    pub pairs_checked: usize,
    pub failures: Vec<PairFailure>,
}

impl StarReport {
    pub fn to_json(&self, index_base: usize) -> Value {
        let shift = |c: &Vec<usize>| c.iter().map(|i| i + index_base).collect::<Vec<_>>();
        json!({
            "center": shift(&self.center),
            "star": self.star.iter().map(shift).collect::<Vec<_>>(),
            "pairs_checked": self.pairs_checked,
            "failures": self.failures.iter().map(|f| json!({
                "i": f.i,
                "j": f.j,
                "witness": f.witness.iter().map(|x| x.to_string().parse::<i64>().map(Value::from).unwrap_or_else(|_| Value::String(x.to_string()))).collect::<Vec<_>>(),
            })).collect::<Vec<_>>(),
        })
    }
}

/// Runs the line test on every unordered pair (with repetition) of maximal
/// cones containing `sigma`, in the quotient by `span(σ) + lineality`.
pub fn star_scan(f: &FanData, sigma: &[usize], lineality: &[Vec<i64>]) -> Result<StarReport, FanError> {
    let mut center: Vec<usize> = sigma.to_vec();
    center.sort();
    center.dedup();
    if !f.contains_cone(&center) {
        return Err(FanError::UnknownCone(center));
    }
    // a cone containing σ is maximal in the fan iff it is maximal among those
    let around: Vec<&Vec<usize>> = f
        .cones
        .values()
        .flatten()
        .filter(|c| center.iter().all(|x| c.contains(x)))
        .collect();
    let mut star: Vec<Vec<usize>> = around
        .iter()
        .filter(|c| !around.iter().any(|o| o.len() > c.len() && c.iter().all(|x| o.contains(x))))
        .map(|c| (*c).clone())
        .collect();
    star.sort();
    star.dedup();
    let mut span: Vec<Vec<i64>> = lineality.to_vec();
    span.extend(center.iter().map(|&i| f.rays[i].clone()));
    let center_cone = Cone::new(Vec::new(), span);
    let outside = |c: &Vec<usize>| -> Vec<Vec<i64>> {
        c.iter()
            .filter(|i| !center.contains(i))
            .map(|&i| f.rays[i].clone())
            .collect()
    };
    let pairs: Vec<(usize, usize)> = (0..star.len())
        .flat_map(|i| (i..star.len()).map(move |j| (i, j)))
        .collect();
    let results: Vec<Result<Option<PairFailure>, FanError>> = pairs
        .par_iter()
        .map(|&(i, j)| {
            let t = pair_line_test(&center_cone, &outside(&star[i]), &outside(&star[j]))?;
            Ok((!t.passes).then(|| PairFailure {
                i,
                j,
                witness: t.witness.unwrap_or_default(),
            }))
        })
        .collect();
    let mut failures = Vec::new();
    for r in results {
        if let Some(fail) = r? {
            failures.push(fail);
        }
    }
    Ok(StarReport {
        center,
        star,
        pairs_checked: pairs.len(),
        failures,
    })
}

/// Reduces vectors modulo the lineality space to a primitive representative.
struct Reducer {
    rows: Vec<Vec<Rational>>,
    pivots: Vec<usize>,
}

impl Reducer {
    fn new(lineality: &[Vec<i64>]) -> Reducer {
        let rows: Vec<Vec<Rational>> = lineality.iter().map(|l| to_rational(&big(l))).collect();
        let (rows, pivots) = rref(&rows);
        Reducer { rows, pivots }
    }

    fn canonical(&self, v: &[i64]) -> Vec<BigInt> {
        let mut x = to_rational(&big(v));
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            let c = x[p].clone();
            if c != Rational::from_integer(0.into()) {
                for (xi, ri) in x.iter_mut().zip(row) {
                    *xi -= &c * ri;
                }
            }
        }
        primitive_integer_vector(&x)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitReport {
    /// Number of cones per dimension, dimensions `1, 2, …`.
    pub fvector: Vec<usize>,
    /// Number of orbits per dimension.
    pub orbit_fvector: Vec<usize>,
    /// Orbit sizes per dimension.
    pub orbit_sizes: Vec<Vec<usize>>,
    /// Lexicographically first cone of each orbit, per dimension.
    pub representatives: Vec<Vec<Vec<usize>>>,
}

/// Orbits of cones under the group generated by `generators`, acting on rays
/// through the coordinate action modulo the fan's lineality.
pub fn orbit_fvector(f: &FanData, generators: &[Vec<usize>]) -> Result<OrbitReport, FanError> {
    let reducer = Reducer::new(&f.lineality);
    let canonical: Vec<Vec<BigInt>> = f.rays.par_iter().map(|r| reducer.canonical(r)).collect();
    let mut index: HashMap<Vec<BigInt>, usize> = HashMap::new();
    for (k, c) in canonical.iter().enumerate() {
        if index.insert(c.clone(), k).is_some() {
            return Err(FanError::Invalid(format!("ray {k} repeats an earlier ray modulo lineality")));
        }
    }
    let mut ray_maps: Vec<Vec<usize>> = Vec::with_capacity(generators.len());
    for g in generators {
        if g.len() != f.n {
            return Err(FanError::ActionInvalid(format!("{g:?} does not act on [{}]", f.n)));
        }
        let map: Result<Vec<usize>, FanError> = f
            .rays
            .par_iter()
            .enumerate()
            .map(|(k, r)| {
                let image = reducer.canonical(&symmetric_action(g, r, f.d, f.n));
                index
                    .get(&image)
                    .copied()
                    .ok_or_else(|| FanError::ActionInvalid(format!("image of ray {k} under {g:?} is not a ray")))
            })
            .collect();
        ray_maps.push(map?);
    }
    let top = f.cones.keys().copied().max().unwrap_or(0);
    let mut fvector = Vec::new();
    let mut orbit_fvector = Vec::new();
    let mut orbit_sizes = Vec::new();
    let mut representatives = Vec::new();
    for dim in 1..=top {
        let cones: HashSet<Vec<usize>> = f.cones.get(&dim).map(|cs| cs.iter().cloned().collect()).unwrap_or_default();
        let mut ordered: Vec<&Vec<usize>> = cones.iter().collect();
        ordered.sort();
        let mut seen: HashSet<Vec<usize>> = HashSet::new();
        let mut sizes = Vec::new();
        let mut reps = Vec::new();
        for start in ordered {
            if seen.contains(start) {
                continue;
            }
            seen.insert(start.clone());
            let mut stack = vec![start.clone()];
            let mut size = 1;
            while let Some(c) = stack.pop() {
                for map in &ray_maps {
                    let mut image: Vec<usize> = c.iter().map(|&i| map[i]).collect();
                    image.sort();
                    if !cones.contains(&image) {
                        return Err(FanError::ActionInvalid(format!("image {image:?} of cone {c:?} is not listed")));
                    }
                    if seen.insert(image.clone()) {
                        size += 1;
                        stack.push(image);
                    }
                }
            }
            sizes.push(size);
            reps.push(start.clone());
        }
        fvector.push(cones.len());
        orbit_fvector.push(sizes.len());
        orbit_sizes.push(sizes);
        representatives.push(reps);
    }
    Ok(OrbitReport {
        fvector,
        orbit_fvector,
        orbit_sizes,
        representatives,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fan::{tgr2_fan_builder, FanData};
    use std::collections::BTreeMap;

    #[test]
    fn tree_fan_orbits() {
        let f = tgr2_fan_builder(5).unwrap();
        let r = orbit_fvector(&f, &f.symmetry).unwrap();
        assert_eq!(r.fvector, vec![10, 15]);
        assert_eq!(r.orbit_fvector, vec![1, 1]);
    }

    #[test]
    fn trivial_fan() {
        let f = FanData {
            d: 1,
            n: 2,
            rays: vec![],
            cones: BTreeMap::new(),
            lineality: vec![],
            symmetry: vec![vec![2, 1]],
        };
        assert!(orbit_fvector(&f, &f.symmetry).unwrap().orbit_fvector.is_empty());
    }

    #[test]
    fn opposite_rays_fail() {
        let mut cones = BTreeMap::new();
        cones.insert(1, vec![vec![0], vec![1]]);
        let f = FanData {
            d: 1,
            n: 2,
            rays: vec![vec![1, 0], vec![-1, 0]],
            cones,
            lineality: vec![],
            symmetry: vec![],
        };
        let report = star_scan(&f, &[], &[]).unwrap();
        assert_eq!(report.pairs_checked, 3);
        assert_eq!(report.failures.len(), 1);
        assert!(star_scan(&f, &[0, 1], &[]).is_err());
    }

    #[test]
    fn tree_fan_has_no_lines() {
        let f = tgr2_fan_builder(5).unwrap();
        let mut centers: Vec<Vec<usize>> = vec![vec![]];
        centers.extend(f.all_cones().map(|(_, c)| c.clone()));
        for c in centers {
            let r = star_scan(&f, &c, &f.lineality).unwrap();
            assert!(r.failures.is_empty(), "{c:?}: {:?}", r.failures);
        }
    }
}
