use std::collections::BTreeSet;
use std::sync::Arc;

use num_bigint::BigInt;
use proptest::prelude::*;

use tropgrass::fan::{orbit_fvector, pair_line_test, symmetric_action, tgr2_fan_builder, Cone};
use tropgrass::matroid::{canonical_form, enumerate_matroids, table_matroid, TABLE_IDS};
use tropgrass::plucker::{affine_chart, thin_schubert_generators, PlueckerContext};
use tropgrass::poly::{dedup_up_to_scalar, initial_form, Field, Monomial, Polynomial, VarContext};
use tropgrass::polyhedral::hull_facets;
use tropgrass::rational::int;
use tropgrass::subdivision::{facets, matroid_polytope_vertices, normalized_volume, regular_subdivision};
use tropgrass::subset::k_subsets;
use tropgrass::tree::{enumerate_trees, four_point_check, tree_distance, tree_from_weight, PhyloTree, TreeEdge};
use tropgrass::{GroundSubset, Matroid, Rational, WeightVector};

fn xyz() -> Arc<VarContext> {
    VarContext::new(["x", "y", "z"])
}

fn build(ctx: &Arc<VarContext>, field: Field, terms: &[([u32; 3], i64)]) -> Polynomial {
    terms.iter().fold(Polynomial::zero(ctx, field), |acc, (e, c)| {
        &acc + &Polynomial::monomial(ctx, field, Monomial(e.to_vec()), int(*c))
    })
}

fn terms() -> impl Strategy<Value = Vec<([u32; 3], i64)>> {
    prop::collection::vec(([0u32..3, 0u32..3, 0u32..3].prop_map(|a| a), -6i64..7), 0..5)
}

fn field() -> impl Strategy<Value = Field> {
    prop_oneof![Just(Field::Rationals), Just(Field::Prime(5)), Just(Field::Prime(2))]
}

fn permutation(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((1..=n).collect::<Vec<usize>>()).prop_shuffle()
}

fn compose(sigma: &[usize], tau: &[usize]) -> Vec<usize> {
    tau.iter().map(|&t| sigma[t - 1]).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms(a in terms(), b in terms(), c in terms(), f in field()) {
        let ctx = xyz();
        let (a, b, c) = (build(&ctx, f, &a), build(&ctx, f, &b), build(&ctx, f, &c));
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn product_rule(a in terms(), b in terms(), f in field(), v in 0usize..3) {
        let ctx = xyz();
        let (a, b) = (build(&ctx, f, &a), build(&ctx, f, &b));
        let lhs = (&a * &b).derivative(v);
        let rhs = &(&a.derivative(v) * &b) + &(&a * &b.derivative(v));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn initial_forms_multiply(a in terms(), b in terms(), w in prop::collection::vec(-4i64..5, 3)) {
        let ctx = xyz();
        let (a, b) = (build(&ctx, Field::Rationals, &a), build(&ctx, Field::Rationals, &b));
        prop_assume!(!a.is_zero() && !b.is_zero());
        let w: Vec<Rational> = w.into_iter().map(int).collect();
        let lhs = initial_form(&(&a * &b), &w).unwrap();
        let rhs = &initial_form(&a, &w).unwrap() * &initial_form(&b, &w).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn initial_forms_ignore_shifts(w in prop::collection::vec(-4i64..5, 10), c in -5i64..6, q in 0usize..5) {
        let pc = PlueckerContext::new(2, 5);
        let quad = k_subsets(5, 4)[q].to_vec();
        let rel = pc.t_relation(quad[0], quad[1], quad[2], quad[3]);
        let w = WeightVector::from_dense(2, 5, w.into_iter().map(int).collect());
        let base = initial_form(&rel, &pc.weights(&w)).unwrap();
        let shifted = initial_form(&rel, &pc.weights(&w.shifted(&int(c)))).unwrap();
        prop_assert_eq!(base, shifted);
    }

    #[test]
    fn tuple_signs(t in Just(vec![1usize, 2, 4, 6]).prop_shuffle(), i in 0usize..4, j in 0usize..4) {
        prop_assume!(i != j);
        let pc = PlueckerContext::new(4, 6);
        let p = pc.var_tuple(&t).unwrap();
        let mut swapped = t.clone();
        swapped.swap(i, j);
        prop_assert_eq!(pc.var_tuple(&swapped).unwrap(), -&p);
        swapped.swap(i, j);
        prop_assert_eq!(pc.var_tuple(&swapped).unwrap(), p);
        let mut repeated = t.clone();
        repeated[i] = repeated[j];
        prop_assert!(pc.var_tuple(&repeated).unwrap().is_zero());
    }

    #[test]
    fn action_is_a_homomorphism(s in permutation(5), t in permutation(5), v in prop::collection::vec(-9i64..10, 10)) {
        let lhs = symmetric_action(&s, &symmetric_action(&t, &v, 2, 5), 2, 5);
        prop_assert_eq!(lhs, symmetric_action(&compose(&s, &t), &v, 2, 5));
    }

    #[test]
    fn line_test_is_symmetric(
        center in prop::collection::vec(prop::collection::vec(-2i64..3, 4), 0..2),
        a in prop::collection::vec(prop::collection::vec(-2i64..3, 4), 0..3),
        b in prop::collection::vec(prop::collection::vec(-2i64..3, 4), 0..3),
    ) {
        let center = Cone::new(Vec::new(), center);
        let ab = pair_line_test(&center, &a, &b).unwrap();
        let ba = pair_line_test(&center, &b, &a).unwrap();
        prop_assert_eq!(ab.passes, ba.passes);
        prop_assert_eq!(ab.intersection_dim, ba.intersection_dim);
        if let Some(w) = ab.witness {
            prop_assert!(w.iter().any(|x| *x != BigInt::from(0)));
        }
    }

    #[test]
    fn generators_are_equivariant(id in prop::sample::select(&TABLE_IDS[..11]), s in permutation(6)) {
        let m = table_matroid(id).unwrap();
        let n = m.n();
        let perm: Vec<usize> = s.into_iter().filter(|&x| x <= n).collect();
        let pc = PlueckerContext::new(3, n);
        let moved = dedup_up_to_scalar(thin_schubert_generators(&m).iter().map(|g| pc.permute(g, &perm)));
        prop_assert_eq!(moved, thin_schubert_generators(&m.permute(&perm)));
    }

    #[test]
    fn charts_are_consistent(id in prop::sample::select(&TABLE_IDS[..]), k in 0usize..64) {
        let m = table_matroid(id).unwrap();
        let beta = m.bases()[k % m.num_bases()];
        let c = affine_chart(&m, beta).unwrap();
        prop_assert!(c.coordinates_consistent());
        for (pos, &label) in c.labels().iter().enumerate().take(m.d()) {
            prop_assert!(beta.contains(label), "label {} at {} outside the basis", label, pos);
        }
    }

    #[test]
    fn random_subdivisions_are_sound(d in 1usize..4, w in prop::collection::vec(-3i64..4, 10)) {
        let n = 5;
        let m = Matroid::uniform(d, n);
        let len = m.num_bases();
        let w = WeightVector::from_dense(d, n, w.into_iter().cycle().take(len).map(int).collect());
        let s = regular_subdivision(&m, &w).unwrap();
        prop_assert!(s.covers_ambient());
        let mut total = BigInt::from(0);
        for (k, cell) in s.cells.iter().enumerate() {
            prop_assert!(s.witness_is_sound(k));
            let pts: Vec<Vec<i64>> = cell.bases.iter().map(|b| b.indicator(n)).collect();
            total += normalized_volume(&pts);
        }
        prop_assert_eq!(total, normalized_volume(&matroid_polytope_vertices(&m)));
    }

    #[test]
    fn tree_metrics_round_trip(n in 4usize..7, pick in 0usize..1000, lengths in prop::collection::vec(1i64..9, 16)) {
        let trees = enumerate_trees(n).unwrap();
        let t = &trees[pick % trees.len()];
        let mut it = lengths.into_iter();
        let edges: Vec<TreeEdge> = t.edges().iter().map(|e| TreeEdge {
            a: e.a,
            b: e.b,
            weight: if e.is_internal() { int(-it.next().unwrap_or(1)) } else { int(it.next().unwrap_or(0) - 4) },
        }).collect();
        let t = PhyloTree::new(n, t.internal_vertices().len(), edges).unwrap();
        let w = tree_distance(&t);
        prop_assert!(four_point_check(&w).is_ok());
        let back = tree_from_weight(&w).unwrap();
        prop_assert_eq!(back.partition_multiset(), t.partition_multiset());
        prop_assert_eq!(tree_distance(&back), w);
    }

    #[test]
    fn canonical_forms_are_invariant(k in 0usize..1000, s in permutation(5)) {
        let classes = enumerate_matroids(3, 5).unwrap();
        let m = &classes[k % classes.len()];
        prop_assert_eq!(canonical_form(&m.permute(&s)).unwrap(), canonical_form(m).unwrap());
    }
}

/// A point is a tree metric iff it lies in some cone of the tree fan; the
/// four-point condition must agree with membership.
#[test]
fn four_point_condition_matches_cones() {
    let pc = |v: &[i64]| WeightVector::from_dense(2, 5, v.iter().map(|&x| int(x)).collect());
    let f = tgr2_fan_builder(5).unwrap();
    for cone in f.maximal_cones() {
        let mut v = vec![0i64; 10];
        for (k, &r) in cone.iter().enumerate() {
            for (x, y) in v.iter_mut().zip(&f.rays[r]) {
                *x += (k as i64 + 1) * y;
            }
        }
        assert!(four_point_check(&pc(&v)).is_ok(), "{cone:?}");
    }
    // w_12 + w_34 strictly below the other two pair sums on every quartet through it
    let mut bad = vec![0i64; 10];
    bad[0] = -1;
    bad[7] = -1;
    assert!(four_point_check(&pc(&bad)).is_err());
    let ones = vec![-1i64; 10];
    assert!(four_point_check(&pc(&ones)).is_ok());
}

#[test]
fn orbit_sizes_add_up() {
    for n in [5, 6] {
        let f = tgr2_fan_builder(n).unwrap();
        let r = orbit_fvector(&f, &f.symmetry).unwrap();
        for (count, sizes) in r.fvector.iter().zip(&r.orbit_sizes) {
            assert_eq!(sizes.iter().sum::<usize>(), *count);
        }
        assert!(r.orbit_fvector.iter().all(|&k| k == 1 || n > 5));
    }
}

#[test]
fn rank_two_census() {
    // partitions of at most 6 elements into parallel classes, loops aside
    assert_eq!(enumerate_matroids(2, 6).unwrap().len(), 23);
    assert_eq!(enumerate_matroids(1, 6).unwrap().len(), 6);
}

/// Facets agree with an independent convex hull computation on the vertices.
#[test]
fn facets_match_hull() {
    let mut matroids: Vec<Matroid> = enumerate_matroids(3, 5).unwrap();
    matroids.extend(enumerate_matroids(2, 5).unwrap());
    matroids.extend(TABLE_IDS.iter().take(11).map(|id| table_matroid(id).unwrap()));
    for m in &matroids {
        let verts = matroid_polytope_vertices(m);
        let big: Vec<Vec<BigInt>> = verts.iter().map(|v| v.iter().map(|&x| BigInt::from(x)).collect()).collect();
        let hull = hull_facets(&big);
        if hull.dim == 0 {
            continue;
        }
        let from_hull: BTreeSet<BTreeSet<GroundSubset>> = hull
            .facets
            .iter()
            .map(|(_, _, tight)| {
                tight
                    .iter()
                    .map(|&i| GroundSubset::from_elements((1..=m.n()).filter(|&j| verts[i][j - 1] == 1)))
                    .collect()
            })
            .collect();
        let ours: BTreeSet<BTreeSet<GroundSubset>> = facets(m)
            .iter()
            .map(|f| f.face(m).unwrap().bases().iter().copied().collect())
            .collect();
        assert_eq!(ours, from_hull, "{:?}", m.bases());
    }
}
