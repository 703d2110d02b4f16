use tropgrass::matroid::{named_matroid, table_matroid};
use tropgrass::plucker::{
    affine_chart, affine_ideal_generators, limit_ideal_generators, thin_schubert_generators, PlueckerContext,
};
use tropgrass::poly::dedup_up_to_scalar;
use tropgrass::subdivision::{center_decomposition, dual_graph, facets, regular_subdivision, FacetDescription};
use tropgrass::subset::{k_subsets, GroundSubset};
use tropgrass::{Matroid, WeightVector};

fn set(label: &str) -> GroundSubset {
    GroundSubset::parse_label(label).unwrap()
}

#[test]
fn loopless_rank_two_matroids_are_partitions() {
    let blocks = [set("13"), set("2"), set("456")];
    let m = Matroid::partition_matroid(6, &blocks).unwrap();
    let mut classes = m.simplicity_report().parallel_classes;
    classes.sort();
    let mut want = blocks.to_vec();
    want.sort();
    assert_eq!(classes, want);
    for l in k_subsets(6, 2) {
        let inside = blocks.iter().any(|b| l.is_subset(*b));
        assert_eq!(m.rank(l), if inside { 1 } else { 2 });
    }
}

#[test]
fn intro_center_and_leaves() {
    let w = WeightVector::indicator(3, 7, &["124", "135", "167", "236", "257", "347"]).unwrap();
    let s = regular_subdivision(&Matroid::uniform(3, 7), &w).unwrap();
    let g = dual_graph(&s).unwrap();
    assert!(g.is_tree());
    let cd = center_decomposition(&g, &s).unwrap();
    assert_eq!(cd.center, named_matroid("c_intro").unwrap());
    assert_eq!(cd.leaves.len(), 6);
    for leaf in &cd.leaves {
        let triple = k_subsets(7, 3)
            .into_iter()
            .find(|t| leaf.matroid == named_matroid(&format!("m_{}", t.label(7))).unwrap())
            .expect("leaf is some M_ijk");
        assert_eq!(leaf.facet, named_matroid(&format!("mprime_{}", triple.label(7))).unwrap());
    }
}

#[test]
fn intro_limit_contains_every_cell() {
    let w = WeightVector::indicator(3, 7, &["124", "135", "167", "236", "257", "347"]).unwrap();
    let s = regular_subdivision(&Matroid::uniform(3, 7), &w).unwrap();
    let limit = limit_ideal_generators(&s).unwrap();
    for cell in s.maximal_cells().unwrap() {
        for g in thin_schubert_generators(cell) {
            assert!(limit.iter().any(|h| h.same_up_to_scalar(&g)));
        }
    }
}

#[test]
fn fig36_chart_variables() {
    let m = named_matroid("fig36").unwrap();
    let c = affine_chart(&m, set("123")).unwrap();
    assert_eq!(
        c.variable_names(&c.active_variables()),
        ["X11", "X21", "X12", "X32", "X23", "X33"]
    );
}

#[test]
fn m1_chart_drops_one_variable() {
    let m = named_matroid("m1_37").unwrap();
    let c = affine_chart(&m, set("123")).unwrap();
    let p = affine_ideal_generators(&c);
    assert_eq!(
        c.variable_names(&p.variables),
        ["X11", "X21", "X12", "X32", "X23", "X33", "X14", "X34"]
    );
    assert_eq!(p.eliminated.len(), 1);
    assert_eq!(c.variable_names(&[p.eliminated[0].var]), ["X24"]);
}

#[test]
fn quartet_limit_is_the_binomial() {
    // the tree 12|34 with an internal edge of weight −1
    let mut w = WeightVector::zero(2, 4);
    for l in ["13", "14", "23", "24"] {
        w.set(set(l), tropgrass::rational::int(-1));
    }
    let s = regular_subdivision(&Matroid::uniform(2, 4), &w).unwrap();
    assert_eq!(s.cells.len(), 2);
    let pc = PlueckerContext::new(2, 4);
    let limit = limit_ideal_generators(&s).unwrap();
    assert_eq!(limit, dedup_up_to_scalar([pc.b_relation(1, 2, 3, 4)]));
}

#[test]
fn dependent_points_give_lower_bound_facets() {
    // 5.3 has no lines: it is U(3,5), whose facets are the ten coordinate bounds
    let m = table_matroid("5.3").unwrap();
    let f = facets(&m);
    assert_eq!(f.len(), 10);
    assert!(f.contains(&FacetDescription::LowerBound { i: 5 }));
    assert!(f.contains(&FacetDescription::FlatBound { flat: set("3"), bound: 1 }));
}

#[test]
fn uniform_thin_schubert_generators_are_plucker_relations() {
    let pc = PlueckerContext::new(2, 4);
    assert_eq!(
        thin_schubert_generators(&Matroid::uniform(2, 4)),
        dedup_up_to_scalar([pc.t_relation(1, 2, 3, 4)])
    );
}
