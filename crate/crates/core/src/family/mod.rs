//! Construction of a feasible dicycle family.
//!
//! One bridge and two bridges are handled directly ([`base_one`],
//! [`base_two`]). With three or more bridges a leaf of the overlap tree is
//! split off together with part of its unique neighbour, the two smaller
//! instances are solved recursively, and the two families are glued back
//! together. When the leaf's segment borders a third bridge, fresh host
//! vertices are spliced in first and contracted away at the end.

mod base;
mod induct;
mod segment;

use std::collections::BTreeMap;

use thiserror::Error;

use crate::bridges::{BridgeError, BridgeTree, Instance};
use crate::graph::{Arc, Dicycle, Direction, Edge, GraphError, HostCycle, TypeTag, VertexId};

pub use base::{base_one, base_two};
pub use segment::{choose_leaf_segment, classify_witness_case, LeafSegment, WitnessCase};

/// Why an instance cannot be handled at all.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Precondition {
    OverlapNotTree,
}

impl Precondition {
    /// Stable machine-readable reason.
    pub fn reason(self) -> &'static str {
        match self {
            Precondition::OverlapNotTree => "overlap-not-tree",
        }
    }
}

impl std::fmt::Display for Precondition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.reason())
    }
}

/// Everything except [`ConstructError::PreconditionViolated`] means the
/// construction itself went wrong.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructError {
    #[error("precondition violated: {0}")]
    PreconditionViolated(Precondition),
    #[error("sub-instance invariant broken: {0}")]
    InternalRecursionInvariantBroken(String),
    #[error("attachments of the two bridges do not alternate in at least two blocks")]
    BlockStructureNotFound,
    #[error("no leaf bridge has a segment free of unrelated attachments")]
    NoLeafSegment,
    #[error("witness scan failed: {0}")]
    WitnessScanFailed(String),
    #[error("expected dicycle missing from a recursive family: {0}")]
    ForcedCycleNotFound(String),
    #[error("the dicycles to combine at {0} agree in orientation on their common path")]
    GadgetOrientationConflict(VertexId),
    #[error("no admissible branch vertex for the gadget edges")]
    XChoiceInvalid,
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Bridge(#[from] BridgeError),
}

impl ConstructError {
    pub fn is_precondition(&self) -> bool {
        matches!(self, ConstructError::PreconditionViolated(_))
    }
}

/// A multiset of dicycles; equal dicycles may occur more than once.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CycleFamily {
    dicycles: Vec<Dicycle>,
}

impl CycleFamily {
    pub fn new(dicycles: Vec<Dicycle>) -> Self {
        CycleFamily { dicycles }
    }

    pub fn len(&self) -> usize {
        self.dicycles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dicycles.is_empty()
    }

    pub fn dicycles(&self) -> &[Dicycle] {
        &self.dicycles
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Dicycle> {
        self.dicycles.iter()
    }

    pub fn push(&mut self, c: Dicycle) {
        self.dicycles.push(c);
    }

    /// Removes one occurrence of `c`.
    pub fn remove_one(&mut self, c: &Dicycle) -> bool {
        match self.dicycles.iter().position(|d| d == c) {
            Some(i) => {
                self.dicycles.remove(i);
                true
            }
            None => false,
        }
    }

    /// Number of dicycles through each edge they use.
    pub fn edge_counts(&self) -> BTreeMap<Edge, usize> {
        let mut counts = BTreeMap::new();
        for c in &self.dicycles {
            for e in c.edges() {
                *counts.entry(e).or_default() += 1;
            }
        }
        counts
    }

    /// The same family with dicycles in canonical sorted order.
    pub fn sorted(mut self) -> Self {
        self.dicycles.sort();
        self
    }

    pub fn into_vec(self) -> Vec<Dicycle> {
        self.dicycles
    }
}

impl IntoIterator for CycleFamily {
    type Item = Dicycle;
    type IntoIter = std::vec::IntoIter<Dicycle>;
    fn into_iter(self) -> Self::IntoIter {
        self.dicycles.into_iter()
    }
}

impl<'a> IntoIterator for &'a CycleFamily {
    type Item = &'a Dicycle;
    type IntoIter = std::slice::Iter<'a, Dicycle>;
    fn into_iter(self) -> Self::IntoIter {
        self.dicycles.iter()
    }
}

impl FromIterator<Dicycle> for CycleFamily {
    fn from_iter<I: IntoIterator<Item = Dicycle>>(iter: I) -> Self {
        CycleFamily { dicycles: iter.into_iter().collect() }
    }
}

/// Which construction steps a run went through.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ConstructStats {
    pub base_one: usize,
    pub base_two: usize,
    pub case_one: usize,
    pub case_two: usize,
    pub case_three: usize,
    pub reflections: usize,
    pub subdivided_chords: usize,
}

/// Builds a feasible family for `inst`.
pub fn construct(inst: &Instance) -> Result<CycleFamily, ConstructError> {
    construct_traced(inst).map(|(fam, _)| fam)
}

/// [`construct`], also reporting which steps were taken.
pub fn construct_traced(inst: &Instance) -> Result<(CycleFamily, ConstructStats), ConstructError> {
    if inst.bridge_count() == 0 {
        return Ok((CycleFamily::default(), ConstructStats::default()));
    }
    if !inst.overlap_graph().is_tree() {
        return Err(ConstructError::PreconditionViolated(Precondition::OverlapNotTree));
    }
    let mut b = Builder { next_fresh: inst.max_vertex_id() + 1, stats: ConstructStats::default() };

    // A chord bridge has no vertex off the host for gadget edges to hang on,
    // so every chord gets a midpoint that is contracted again at the end.
    let mut midpoints = Vec::new();
    let mut trees = Vec::with_capacity(inst.bridge_count());
    for t in inst.bridges() {
        if t.is_chord() {
            let (p, q) = t.edges()[0].ends();
            let m = b.fresh();
            midpoints.push(m);
            trees.push(BridgeTree::new([Edge::new(p, m), Edge::new(m, q)], inst.host())?);
        } else {
            trees.push(t.clone());
        }
    }
    b.stats.subdivided_chords = midpoints.len();
    let work = Instance::new(inst.host().clone(), trees)?;

    let mut out = Vec::new();
    for mut c in b.build(&work)? {
        for &m in &midpoints {
            if c.contains_vertex(m) {
                c = crate::graph::contract_path2(&c, m)?;
            }
        }
        out.push(c);
    }
    Ok((CycleFamily::new(out), b.stats))
}

pub(crate) struct Builder {
    next_fresh: u32,
    pub(crate) stats: ConstructStats,
}

impl Builder {
    pub(crate) fn fresh(&mut self) -> VertexId {
        let v = VertexId(self.next_fresh);
        self.next_fresh += 1;
        v
    }

    pub(crate) fn build(&mut self, inst: &Instance) -> Result<Vec<Dicycle>, ConstructError> {
        match inst.bridge_count() {
            0 => Ok(Vec::new()),
            1 => {
                self.stats.base_one += 1;
                Ok(base_one(inst)?.into_vec())
            }
            2 => {
                self.stats.base_two += 1;
                Ok(base_two(inst)?.into_vec())
            }
            _ => induct::step(self, inst),
        }
    }

    /// Recurses into a sub-instance after checking it is a valid input.
    pub(crate) fn recurse(&mut self, inst: &Instance) -> Result<Vec<Dicycle>, ConstructError> {
        if !inst.overlap_graph().is_tree() {
            return Err(ConstructError::InternalRecursionInvariantBroken(format!(
                "sub-instance with {} bridges has a non-tree overlap graph",
                inst.bridge_count()
            )));
        }
        self.build(inst)
    }
}

/// Arcs of the tree path from `from` to `to`.
pub(crate) fn tree_arcs(t: &BridgeTree, from: VertexId, to: VertexId) -> Result<Vec<Arc>, ConstructError> {
    Ok(t.path(from, to)?.windows(2).map(|w| Arc::new(w[0], w[1])).collect())
}

/// Arcs of the clockwise host segment `u..v`, walked forward or backward.
pub(crate) fn host_arcs(
    host: &HostCycle,
    u: VertexId,
    v: VertexId,
    dir: Direction,
) -> Result<Vec<Arc>, ConstructError> {
    Ok(host.segment(u, v, dir)?)
}

pub(crate) fn closed(parts: impl IntoIterator<Item = Vec<Arc>>) -> Result<Dicycle, ConstructError> {
    Ok(Dicycle::new(parts.into_iter().flatten().collect())?)
}

/// The unique dicycle of `fam` with type `tag` at attachment `a`.
pub(crate) fn unique_with_tag<'f>(
    fam: &'f [Dicycle],
    inst: &Instance,
    a: VertexId,
    tag: TypeTag,
) -> Result<&'f Dicycle, ConstructError> {
    let nbrs = inst.bridge_neighbors(a);
    let mut hits = fam.iter().filter(|c| crate::graph::type_tag(c, a, inst.host(), nbrs) == Some(tag));
    match (hits.next(), hits.next()) {
        (Some(c), None) => Ok(c),
        (None, _) => Err(ConstructError::ForcedCycleNotFound(format!("no dicycle of type {tag} at {a}"))),
        (Some(_), Some(_)) => Err(ConstructError::ForcedCycleNotFound(format!("two dicycles of type {tag} at {a}"))),
    }
}
