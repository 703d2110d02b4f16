//! Phylogenetic trees and the rank-2 case: tree metrics, the four-point
//! condition and the correspondence between trees and matroid subdivisions
//! of `Δ^{2,n}`.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{Signed, Zero};
use serde_json::{json, Value};
use thiserror::Error;

use crate::matroid::Matroid;
use crate::rational::{format_rational, from_json, int, Rational};
use crate::subdivision::{dual_graph, regular_subdivision, SubdivisionError};
use crate::subset::{k_subsets, GroundSubset};
use crate::weight::WeightVector;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TreeError {
    #[error("four-point condition fails on {0}")]
    FourPointViolation(GroundSubset),
    #[error("{0} is not an internal vertex")]
    NotInternal(Node),
    #[error("tree enumeration supports 3 <= n <= 8, got {0}")]
    TooLarge(usize),
    #[error("invalid tree: {0}")]
    Invalid(String),
    #[error("weight vector must have d = 2, got d = {0}")]
    WrongRank(usize),
    #[error(transparent)]
    Subdivision(#[from] SubdivisionError),
}

/// A vertex of a phylogenetic tree: leaves are labeled `1..=n`, internal
/// vertices `0..internal`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Node {
    Leaf(usize),
    Internal(usize),
}

impl fmt::Display for Node {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Node::Leaf(i) => write!(f, "leaf{i}"),
            Node::Internal(j) => write!(f, "v{}", j + 1),
        }
    }
}

impl Node {
    fn parse(s: &str) -> Option<Node> {
        if let Some(k) = s.strip_prefix("leaf") {
            k.parse().ok().filter(|&k| k >= 1).map(Node::Leaf)
        } else if let Some(k) = s.strip_prefix('v') {
            k.parse::<usize>().ok().filter(|&k| k >= 1).map(|k| Node::Internal(k - 1))
        } else {
            None
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeEdge {
    pub a: Node,
    pub b: Node,
    pub weight: Rational,
}

impl TreeEdge {
    pub fn is_internal(&self) -> bool {
        matches!((self.a, self.b), (Node::Internal(_), Node::Internal(_)))
    }

    fn other(&self, v: Node) -> Option<Node> {
        if self.a == v {
            Some(self.b)
        } else if self.b == v {
            Some(self.a)
        } else {
            None
        }
    }
}

/// A leaf-labeled tree without 2-valent vertices, with rational edge weights
/// that are nonpositive on internal edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhyloTree {
    n: usize,
    internal: usize,
    edges: Vec<TreeEdge>,
}

impl PhyloTree {
    pub fn new(n: usize, internal: usize, edges: Vec<TreeEdge>) -> Result<Self, TreeError> {
        let t = PhyloTree { n, internal, edges };
        t.check()?;
        Ok(t)
    }

    fn check(&self) -> Result<(), TreeError> {
        let bad = |m: String| Err(TreeError::Invalid(m));
        if self.n < 3 {
            return bad(format!("need at least 3 leaves, got {}", self.n));
        }
        let nodes = self.nodes();
        if self.edges.len() + 1 != nodes.len() {
            return bad(format!("{} edges for {} vertices", self.edges.len(), nodes.len()));
        }
        for e in &self.edges {
            for v in [e.a, e.b] {
                if !nodes.contains(&v) {
                    return bad(format!("edge endpoint {v} does not exist"));
                }
            }
            if e.a == e.b {
                return bad(format!("loop at {}", e.a));
            }
            if e.is_internal() && e.weight.is_positive() {
                return bad(format!("internal edge {}-{} has positive weight", e.a, e.b));
            }
        }
        for &v in &nodes {
            let deg = self.degree(v);
            match v {
                Node::Leaf(_) if deg != 1 => return bad(format!("{v} has degree {deg}")),
                Node::Internal(_) if deg < 3 => return bad(format!("{v} has degree {deg}")),
                _ => {}
            }
        }
        // connectivity; with |E| = |V| - 1 this makes it a tree
        let mut seen = vec![nodes[0]];
        let mut stack = vec![nodes[0]];
        while let Some(v) = stack.pop() {
            for u in self.neighbours(v) {
                if !seen.contains(&u) {
                    seen.push(u);
                    stack.push(u);
                }
            }
        }
        if seen.len() != nodes.len() {
            return bad("tree is disconnected".into());
        }
        Ok(())
    }

    /// Star tree with the given leaf edge weights.
    pub fn star(leaf_weights: &[Rational]) -> Result<Self, TreeError> {
        let edges = leaf_weights
            .iter()
            .enumerate()
            .map(|(k, w)| TreeEdge {
                a: Node::Internal(0),
                b: Node::Leaf(k + 1),
                weight: w.clone(),
            })
            .collect();
        Self::new(leaf_weights.len(), 1, edges)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[TreeEdge] {
        &self.edges
    }

    pub fn nodes(&self) -> Vec<Node> {
        (1..=self.n)
            .map(Node::Leaf)
            .chain((0..self.internal).map(Node::Internal))
            .collect()
    }

    pub fn internal_vertices(&self) -> Vec<Node> {
        (0..self.internal).map(Node::Internal).collect()
    }

    pub fn neighbours(&self, v: Node) -> Vec<Node> {
        self.edges.iter().filter_map(|e| e.other(v)).collect()
    }

    pub fn degree(&self, v: Node) -> usize {
        self.edges.iter().filter(|e| e.a == v || e.b == v).count()
    }

    /// Leaves reachable from `start` without passing through `block`.
    fn leaves_beyond(&self, start: Node, block: Node) -> GroundSubset {
        let mut leaves = GroundSubset::EMPTY;
        let mut stack = vec![(start, block)];
        while let Some((v, from)) = stack.pop() {
            if let Node::Leaf(i) = v {
                leaves = leaves.insert(i);
            }
            for u in self.neighbours(v) {
                if u != from {
                    stack.push((u, v));
                }
            }
        }
        leaves
    }

    /// Leaf sets of the components of `T ∖ {v}`, sorted.
    pub fn leaf_partition(&self, v: Node) -> Result<Vec<GroundSubset>, TreeError> {
        if !matches!(v, Node::Internal(j) if j < self.internal) {
            return Err(TreeError::NotInternal(v));
        }
        let mut blocks: Vec<GroundSubset> = self.neighbours(v).into_iter().map(|u| self.leaves_beyond(u, v)).collect();
        blocks.sort();
        Ok(blocks)
    }

    /// Leaf partitions of all internal vertices, sorted: the combinatorial type.
    pub fn partition_multiset(&self) -> Vec<Vec<GroundSubset>> {
        let mut all: Vec<Vec<GroundSubset>> = self
            .internal_vertices()
            .into_iter()
            .map(|v| self.leaf_partition(v).expect("internal"))
            .collect();
        all.sort();
        all
    }

    /// Splits of the internal edges, each given by the side not containing leaf 1.
    pub fn splits(&self) -> Vec<GroundSubset> {
        let mut out: Vec<GroundSubset> = self
            .edges
            .iter()
            .filter(|e| e.is_internal())
            .map(|e| {
                let side = self.leaves_beyond(e.b, e.a);
                if side.contains(1) {
                    side.complement(self.n)
                } else {
                    side
                }
            })
            .collect();
        out.sort();
        out
    }

    fn path_weight(&self, from: Node, to: Node) -> Rational {
        fn walk(t: &PhyloTree, v: Node, prev: Option<Node>, target: Node) -> Option<Rational> {
            if v == target {
                return Some(Rational::zero());
            }
            for e in &t.edges {
                if let Some(u) = e.other(v) {
                    if Some(u) != prev {
                        if let Some(rest) = walk(t, u, Some(v), target) {
                            return Some(rest + &e.weight);
                        }
                    }
                }
            }
            None
        }
        walk(self, from, None, to).expect("trees are connected")
    }

    pub fn to_json(&self) -> Value {
        let edges: Vec<Value> = self
            .edges
            .iter()
            .map(|e| json!({"a": e.a.to_string(), "b": e.b.to_string(), "w": format_rational(&e.weight)}))
            .collect();
        json!({"n": self.n, "edges": edges})
    }

    pub fn from_json(v: &Value) -> Result<Self, TreeError> {
        let n = v
            .get("n")
            .and_then(Value::as_u64)
            .ok_or_else(|| TreeError::Invalid("missing `n`".into()))? as usize;
        let raw = v
            .get("edges")
            .and_then(Value::as_array)
            .ok_or_else(|| TreeError::Invalid("missing `edges`".into()))?;
        let mut edges = Vec::new();
        let mut internal = 0;
        for e in raw {
            let node = |key: &str| {
                e.get(key)
                    .and_then(Value::as_str)
                    .and_then(Node::parse)
                    .ok_or_else(|| TreeError::Invalid(format!("bad endpoint `{key}` in {e}")))
            };
            let (a, b) = (node("a")?, node("b")?);
            for x in [a, b] {
                match x {
                    Node::Internal(j) => internal = internal.max(j + 1),
                    Node::Leaf(i) if i > n => return Err(TreeError::Invalid(format!("leaf {i} exceeds n = {n}"))),
                    Node::Leaf(_) => {}
                }
            }
            let weight = match e.get("w") {
                None => Rational::zero(),
                Some(w) => from_json(w).ok_or_else(|| TreeError::Invalid(format!("bad weight in {e}")))?,
            };
            edges.push(TreeEdge { a, b, weight });
        }
        Self::new(n, internal, edges)
    }
}

/// `w_ij` = total weight of the path between leaves `i` and `j`.
pub fn tree_distance(t: &PhyloTree) -> WeightVector {
    let mut w = WeightVector::zero(2, t.n);
    for pair in k_subsets(t.n, 2) {
        let v = pair.to_vec();
        w.set(pair, t.path_weight(Node::Leaf(v[0]), Node::Leaf(v[1])));
    }
    w
}

/// Checks that for every quadruple the minimum of the three pair sums is
/// attained at least twice; returns the first failing quadruple otherwise.
pub fn four_point_check(w: &WeightVector) -> Result<(), TreeError> {
    if w.d() != 2 {
        return Err(TreeError::WrongRank(w.d()));
    }
    let p = |a: usize, b: usize| w.get(GroundSubset::from_elements([a, b]));
    for quad in k_subsets(w.n(), 4) {
        let q = quad.to_vec();
        let (i, j, k, l) = (q[0], q[1], q[2], q[3]);
        let mut sums = [p(i, j) + p(k, l), p(i, k) + p(j, l), p(i, l) + p(j, k)];
        sums.sort();
        if sums[0] != sums[1] {
            return Err(TreeError::FourPointViolation(quad));
        }
    }
    Ok(())
}

/// The partition matroid of the leaf partition at an internal vertex.
pub fn vertex_split_matroid(t: &PhyloTree, v: Node) -> Result<Matroid, TreeError> {
    let blocks = t.leaf_partition(v)?;
    Ok(Matroid::partition_matroid(t.n, &blocks).expect("leaf partitions have at least three blocks"))
}

/// Reconstructs the tree of a tree metric through the subdivision of
/// `Δ^{2,n}` it induces: cells give internal vertices (their parallel classes
/// are the vertex's leaf partition) and the dual graph gives internal edges.
/// Edge weights are then solved for exactly.
pub fn tree_from_weight(w: &WeightVector) -> Result<PhyloTree, TreeError> {
    four_point_check(w)?;
    let n = w.n();
    if n < 3 {
        return Err(TreeError::Invalid(format!("need at least 3 leaves, got {n}")));
    }
    let s = regular_subdivision(&Matroid::uniform(2, n), w)?;
    let g = dual_graph(&s)?;
    let partitions: Vec<Vec<GroundSubset>> = g
        .vertices
        .iter()
        .map(|m| m.simplicity_report().parallel_classes)
        .collect();
    let get = |a: usize, b: usize| w.get(GroundSubset::from_elements([a, b]));
    // two leaves from distinct blocks other than `skip`
    let pick_two = |blocks: &[GroundSubset], skip: GroundSubset| -> (usize, usize) {
        let others: Vec<usize> = blocks
            .iter()
            .filter(|b| **b != skip)
            .filter_map(|b| b.min_element())
            .collect();
        (others[0], others[1])
    };

    let mut edges = Vec::new();
    for (i, j, _) in &g.edges {
        // the block of cell i facing cell j is the complement of j's block facing i
        let side_j = partitions[*i]
            .iter()
            .copied()
            .find(|b| partitions[*j].contains(&b.complement(n)))
            .ok_or_else(|| TreeError::Invalid("adjacent cells are not compatible".into()))?;
        let side_i = side_j.complement(n);
        let (a, b) = pick_two(&partitions[*i], side_j);
        let (c, d) = pick_two(&partitions[*j], side_i);
        let length = (get(a, c) + get(b, d) - get(a, b) - get(c, d)) / int(2);
        edges.push(TreeEdge {
            a: Node::Internal(*i),
            b: Node::Internal(*j),
            weight: length,
        });
    }
    for leaf in 1..=n {
        let single = GroundSubset::singleton(leaf);
        let v = partitions
            .iter()
            .position(|p| p.contains(&single))
            .ok_or_else(|| TreeError::Invalid(format!("leaf {leaf} has no attaching vertex")))?;
        let (a, b) = pick_two(&partitions[v], single);
        let weight = (get(leaf, a) + get(leaf, b) - get(a, b)) / int(2);
        edges.push(TreeEdge {
            a: Node::Internal(v),
            b: Node::Leaf(leaf),
            weight,
        });
    }
    let t = PhyloTree::new(n, g.vertices.len(), edges)?;
    if tree_distance(&t) != *w {
        return Err(TreeError::Invalid("reconstructed tree does not reproduce the weights".into()));
    }
    Ok(t)
}

/// All combinatorial types of trees on `n` leaves, with internal edges of
/// weight −1 and leaf edges of weight 0.
pub fn enumerate_trees(n: usize) -> Result<Vec<PhyloTree>, TreeError> {
    if !(3..=8).contains(&n) {
        return Err(TreeError::TooLarge(n));
    }
    // edges as endpoint pairs; weights are assigned at the end
    let mut shapes: Vec<(usize, Vec<(Node, Node)>)> =
        vec![(1, (1..=3).map(|i| (Node::Internal(0), Node::Leaf(i))).collect())];
    for k in 4..=n {
        let mut next = Vec::new();
        for (internal, edges) in &shapes {
            for v in 0..*internal {
                let mut e = edges.clone();
                e.push((Node::Internal(v), Node::Leaf(k)));
                next.push((*internal, e));
            }
            for idx in 0..edges.len() {
                let (a, b) = edges[idx];
                let mid = Node::Internal(*internal);
                let mut e = edges.clone();
                e[idx] = (a, mid);
                e.push((mid, b));
                e.push((mid, Node::Leaf(k)));
                next.push((internal + 1, e));
            }
        }
        shapes = next;
    }
    let mut seen = BTreeMap::new();
    for (internal, pairs) in shapes {
        let edges = pairs
            .into_iter()
            .map(|(a, b)| {
                let (a, b) = if a <= b { (a, b) } else { (b, a) };
                let weight = if matches!((a, b), (Node::Internal(_), Node::Internal(_))) {
                    int(-1)
                } else {
                    int(0)
                };
                TreeEdge { a, b, weight }
            })
            .collect();
        let t = PhyloTree::new(n, internal, edges)?;
        seen.entry(t.partition_multiset()).or_insert(t);
    }
    Ok(seen.into_values().collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(v: &[usize]) -> GroundSubset {
        GroundSubset::from_elements(v.iter().copied())
    }

    fn quartet() -> PhyloTree {
        let e = |a, b, w: i64| TreeEdge {
            a,
            b,
            weight: int(w),
        };
        PhyloTree::new(
            4,
            2,
            vec![
                e(Node::Internal(0), Node::Leaf(1), 0),
                e(Node::Internal(0), Node::Leaf(2), 0),
                e(Node::Internal(1), Node::Leaf(3), 0),
                e(Node::Internal(1), Node::Leaf(4), 0),
                e(Node::Internal(0), Node::Internal(1), -1),
            ],
        )
        .unwrap()
    }

    #[test]
    fn quartet_distances() {
        let w = tree_distance(&quartet());
        assert_eq!(w.get(set(&[1, 2])), int(0));
        assert_eq!(w.get(set(&[3, 4])), int(0));
        for p in [[1, 3], [1, 4], [2, 3], [2, 4]] {
            assert_eq!(w.get(set(&p)), int(-1));
        }
        assert!(four_point_check(&w).is_ok());
    }

    #[test]
    fn star_distances() {
        let t = PhyloTree::star(&[int(1), int(2), int(3)]).unwrap();
        let w = tree_distance(&t);
        assert_eq!(w.get(set(&[2, 3])), int(5));
        assert_eq!(
            vertex_split_matroid(&t, Node::Internal(0)).unwrap(),
            Matroid::uniform(2, 3)
        );
    }

    #[test]
    fn four_point_failure() {
        let mut w = WeightVector::zero(2, 4);
        w.set(set(&[1, 3]), int(1));
        w.set(set(&[2, 4]), int(1));
        w.set(set(&[1, 4]), int(2));
        w.set(set(&[2, 3]), int(2));
        assert_eq!(four_point_check(&w), Err(TreeError::FourPointViolation(set(&[1, 2, 3, 4]))));
        assert!(matches!(tree_from_weight(&w), Err(TreeError::FourPointViolation(_))));
    }

    #[test]
    fn vertex_split() {
        let t = quartet();
        let m = vertex_split_matroid(&t, Node::Internal(0)).unwrap();
        let expected = Matroid::partition_matroid(4, &[set(&[1]), set(&[2]), set(&[3, 4])]).unwrap();
        assert_eq!(m, expected);
        assert_eq!(vertex_split_matroid(&t, Node::Leaf(1)), Err(TreeError::NotInternal(Node::Leaf(1))));
    }

    #[test]
    fn reconstruction() {
        let w = WeightVector::zero(2, 5);
        let t = tree_from_weight(&w).unwrap();
        assert_eq!(t.internal_vertices().len(), 1);
        let w = WeightVector::indicator(2, 4, &["12", "34"]).unwrap();
        let t = tree_from_weight(&w).unwrap();
        assert_eq!(t.splits(), vec![set(&[3, 4])]);
        assert_eq!(tree_distance(&t), w);
    }

    #[test]
    fn counts() {
        assert_eq!(enumerate_trees(3).unwrap().len(), 1);
        assert_eq!(enumerate_trees(4).unwrap().len(), 4);
        let five = enumerate_trees(5).unwrap();
        assert_eq!(five.len(), 26);
        assert_eq!(five.iter().filter(|t| t.internal_vertices().len() == 3).count(), 15);
        assert!(matches!(enumerate_trees(9), Err(TreeError::TooLarge(9))));
    }

    #[test]
    fn json_round_trip() {
        let t = quartet();
        let back = PhyloTree::from_json(&t.to_json()).unwrap();
        assert_eq!(back, t);
        let bad = json!({"n": 4, "edges": [{"a": "v1", "b": "leaf9", "w": "0"}]});
        assert!(PhyloTree::from_json(&bad).is_err());
    }
}
