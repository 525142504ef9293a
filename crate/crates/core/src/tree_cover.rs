//! Leaf labelings of a tree by the vertices of an auxiliary digraph, and the
//! leaf-to-leaf dipath family they induce.
//!
//! Every arc `(x, y)` of the digraph contributes the tree dipath from the leaf
//! labelled `x` to the leaf labelled `y`. Parallel arcs contribute the same
//! dipath more than once, so a family is a multiset. The family covers every
//! tree edge at least four times.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::aux::{build_aux, AuxDigraph, Partition};
use crate::bridges::{BridgeError, BridgeTree};
use crate::graph::{Edge, VertexId};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TreeCoverError {
    #[error("partition sums to {n} but the tree has {leaves} leaves")]
    PartitionMismatch { leaves: usize, n: usize },
    #[error("labeling is not a bijection from leaves onto digraph vertices")]
    NotBijective,
    #[error("dipath endpoints coincide at {0}")]
    SameEndpoints(VertexId),
    #[error(transparent)]
    Bridge(#[from] BridgeError),
}

/// A bijection from the leaves of a tree onto the vertices of an auxiliary digraph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Labeling {
    to_aux: BTreeMap<VertexId, VertexId>,
    to_leaf: BTreeMap<VertexId, VertexId>,
}

impl Labeling {
    pub fn new(map: BTreeMap<VertexId, VertexId>, tree: &BridgeTree, aux: &AuxDigraph) -> Result<Self, TreeCoverError> {
        let leaves: BTreeSet<VertexId> = tree.attachments().iter().copied().collect();
        let targets: BTreeSet<VertexId> = aux.vertices().collect();
        let keys: BTreeSet<VertexId> = map.keys().copied().collect();
        let values: BTreeSet<VertexId> = map.values().copied().collect();
        if keys != leaves || values != targets || values.len() != map.len() {
            return Err(TreeCoverError::NotBijective);
        }
        let to_leaf = map.iter().map(|(&l, &x)| (x, l)).collect();
        Ok(Labeling { to_aux: map, to_leaf })
    }

    /// Labels `leaves[t]` with the `t`-th digraph vertex in part-major order.
    pub fn in_order(leaves: &[VertexId], aux: &AuxDigraph) -> Result<Self, TreeCoverError> {
        if leaves.len() != aux.vertex_count() {
            return Err(TreeCoverError::PartitionMismatch { leaves: leaves.len(), n: aux.vertex_count() });
        }
        let to_aux: BTreeMap<VertexId, VertexId> = leaves.iter().copied().zip(aux.vertices()).collect();
        if to_aux.len() != leaves.len() {
            return Err(TreeCoverError::NotBijective);
        }
        let to_leaf = to_aux.iter().map(|(&l, &x)| (x, l)).collect();
        Ok(Labeling { to_aux, to_leaf })
    }

    pub fn label(&self, leaf: VertexId) -> Option<VertexId> {
        self.to_aux.get(&leaf).copied()
    }

    pub fn leaf(&self, aux_vertex: VertexId) -> Option<VertexId> {
        self.to_leaf.get(&aux_vertex).copied()
    }
}

/// The tree path from `u` to `v`, listed in walking order.
pub fn tree_dipath(tree: &BridgeTree, u: VertexId, v: VertexId) -> Result<Vec<VertexId>, TreeCoverError> {
    if u == v {
        return Err(TreeCoverError::SameEndpoints(u));
    }
    Ok(tree.path(u, v)?)
}

/// One dipath per arc of the digraph built from `eta`, parallel arcs included.
pub fn path_family(
    tree: &BridgeTree,
    eta: &Partition,
    labeling: &Labeling,
) -> Result<Vec<Vec<VertexId>>, TreeCoverError> {
    let leaves = tree.attachments().len();
    if eta.n() != leaves {
        return Err(TreeCoverError::PartitionMismatch { leaves, n: eta.n() });
    }
    let aux = build_aux(eta);
    aux.arcs()
        .iter()
        .map(|a| {
            let from = labeling.leaf(a.tail).ok_or(TreeCoverError::NotBijective)?;
            let to = labeling.leaf(a.head).ok_or(TreeCoverError::NotBijective)?;
            tree_dipath(tree, from, to)
        })
        .collect()
}

/// How many dipaths of `family` use each edge of `tree`; unused edges map to 0.
pub fn coverage(tree: &BridgeTree, family: &[Vec<VertexId>]) -> BTreeMap<Edge, usize> {
    let mut counts: BTreeMap<Edge, usize> = tree.edges().iter().map(|&e| (e, 0)).collect();
    for path in family {
        for w in path.windows(2) {
            *counts.entry(Edge::new(w[0], w[1])).or_default() += 1;
        }
    }
    counts
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::aux::compositions;
    use crate::generate::random_tree;
    use crate::graph::HostCycle;
    use proptest::prelude::*;
    use rand::seq::SliceRandom;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn v(x: u32) -> VertexId {
        VertexId(x)
    }

    fn e(a: u32, b: u32) -> Edge {
        Edge::new(v(a), v(b))
    }

    /// Host 0..2m-1 with leaves on the even positions.
    fn host_for(m: usize) -> HostCycle {
        HostCycle::from_ids(0..(2 * m.max(2)) as u32).unwrap()
    }

    fn star3() -> BridgeTree {
        BridgeTree::new([e(0, 100), e(2, 100), e(4, 100)], &host_for(3)).unwrap()
    }

    #[test]
    fn dipaths() {
        let t = star3();
        assert_eq!(tree_dipath(&t, v(0), v(2)).unwrap(), vec![v(0), v(100), v(2)]);
        assert_eq!(tree_dipath(&t, v(0), v(0)), Err(TreeCoverError::SameEndpoints(v(0))));
        let path = BridgeTree::new([e(0, 100), e(100, 101), e(101, 2)], &host_for(2)).unwrap();
        assert_eq!(tree_dipath(&path, v(0), v(2)).unwrap(), vec![v(0), v(100), v(101), v(2)]);
    }

    #[test]
    fn star_with_single_part() {
        let t = star3();
        let eta = Partition::new(vec![3]).unwrap();
        let lab = Labeling::in_order(t.attachments(), &build_aux(&eta)).unwrap();
        let fam = path_family(&t, &eta, &lab).unwrap();
        assert_eq!(fam.len(), 6);
        assert!(coverage(&t, &fam).values().all(|&c| c == 4));
    }

    #[test]
    fn two_leaf_path() {
        let t = BridgeTree::new([e(0, 100), e(100, 2)], &host_for(2)).unwrap();
        let eta = Partition::new(vec![2]).unwrap();
        let lab = Labeling::in_order(t.attachments(), &build_aux(&eta)).unwrap();
        let fam = path_family(&t, &eta, &lab).unwrap();
        assert_eq!(fam.len(), 4);
        assert!(coverage(&t, &fam).values().all(|&c| c == 4));
    }

    #[test]
    fn empty_family_covers_nothing() {
        assert!(coverage(&star3(), &[]).values().all(|&c| c == 0));
    }

    #[test]
    fn mismatched_partition() {
        let t = star3();
        let eta = Partition::new(vec![2, 2]).unwrap();
        let lab = Labeling::in_order(&[v(0), v(2), v(4), v(6)], &build_aux(&eta)).unwrap();
        assert_eq!(path_family(&t, &eta, &lab), Err(TreeCoverError::PartitionMismatch { leaves: 3, n: 4 }));
    }

    #[test]
    fn labeling_must_be_bijective() {
        let t = star3();
        let aux = build_aux(&Partition::new(vec![3]).unwrap());
        let map = BTreeMap::from([(v(0), v(0)), (v(2), v(0)), (v(4), v(1))]);
        assert_eq!(Labeling::new(map, &t, &aux), Err(TreeCoverError::NotBijective));
    }

    fn random_case(seed: u64, max_leaves: usize) -> (BridgeTree, Partition, Labeling) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = rand::Rng::gen_range(&mut rng, 2..=max_leaves);
        let host = host_for(m);
        let leaves: Vec<VertexId> = (0..m as u32).map(|i| v(2 * i)).collect();
        let edges = random_tree(&mut rng, &leaves, 1000, 8);
        let tree = BridgeTree::new(edges, &host).unwrap();
        let all = compositions(m);
        let eta = all.choose(&mut rng).unwrap().clone();
        let mut shuffled = leaves.clone();
        shuffled.shuffle(&mut rng);
        let lab = Labeling::in_order(&shuffled, &build_aux(&eta)).unwrap();
        (tree, eta, lab)
    }

    /// Number of underlying digraph edges between the labels on either side of `cut`.
    fn crossing_arcs(tree: &BridgeTree, cut: Edge, eta: &Partition, lab: &Labeling) -> usize {
        let (a, _) = cut.ends();
        let mut side = BTreeSet::from([a]);
        let mut stack = vec![a];
        while let Some(x) = stack.pop() {
            for &y in tree.neighbors(x) {
                if Edge::new(x, y) != cut && side.insert(y) {
                    stack.push(y);
                }
            }
        }
        build_aux(eta)
            .arcs()
            .iter()
            .filter(|arc| {
                let t = side.contains(&lab.leaf(arc.tail).unwrap());
                let h = side.contains(&lab.leaf(arc.head).unwrap());
                t != h
            })
            .count()
    }

    proptest! {
        #[test]
        fn coverage_at_least_four(seed in any::<u64>()) {
            let (tree, eta, lab) = random_case(seed, 12);
            let fam = path_family(&tree, &eta, &lab).unwrap();
            prop_assert_eq!(fam.len(), 2 * tree.attachments().len());
            for (edge, c) in coverage(&tree, &fam) {
                prop_assert!(c >= 4, "{} covered {}", edge, c);
            }
        }

        #[test]
        fn coverage_equals_cut(seed in any::<u64>()) {
            let (tree, eta, lab) = random_case(seed, 9);
            let fam = path_family(&tree, &eta, &lab).unwrap();
            for (edge, c) in coverage(&tree, &fam) {
                prop_assert_eq!(c, crossing_arcs(&tree, edge, &eta, &lab));
            }
        }
    }
}
