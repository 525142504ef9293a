//! Bridges of the host cycle, the overlap relation, and the bridge-length oracle.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use thiserror::Error;

use crate::graph::{Edge, GraphError, HostCycle, VertexId};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BridgeError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("bridge has no edges")]
    Empty,
    #[error("bridge edges do not form a tree")]
    NotATree,
    #[error("leaf {0} of a bridge is not on the host")]
    LeafOffHost(VertexId),
    #[error("host vertex {0} is an interior vertex of a bridge")]
    InteriorOnHost(VertexId),
    #[error("bridge has {0} attachments, needs at least 2")]
    TooFewAttachments(usize),
    #[error("vertex {0} belongs to two bridges")]
    SharedVertex(VertexId),
    #[error("bridge edge {0} duplicates a host edge")]
    ParallelToHost(Edge),
    #[error("vertex {0} is not in the tree")]
    VertexAbsent(VertexId),
    #[error("the host order is not a cycle of the graph: edge {0} missing")]
    HostNotACycle(Edge),
    #[error("no subtree has leaf set exactly the attachments")]
    NoSpanningTreeWithLeaves,
    #[error("bridge has {edges} edges, above the exhaustive bound {cap}")]
    TooLarge { edges: usize, cap: usize },
}

/// A bridge given as a tree whose leaves are exactly its attachments.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BridgeTree {
    edges: Vec<Edge>,
    adj: BTreeMap<VertexId, Vec<VertexId>>,
    attachments: Vec<VertexId>,
    internal: Vec<VertexId>,
}

impl BridgeTree {
    pub fn new(edges: impl IntoIterator<Item = Edge>, host: &HostCycle) -> Result<Self, BridgeError> {
        let mut edges: Vec<Edge> = edges.into_iter().collect();
        edges.sort();
        edges.dedup();
        if edges.is_empty() {
            return Err(BridgeError::Empty);
        }
        let mut adj: BTreeMap<VertexId, Vec<VertexId>> = BTreeMap::new();
        for e in &edges {
            let (a, b) = e.ends();
            if a == b {
                return Err(BridgeError::NotATree);
            }
            adj.entry(a).or_default().push(b);
            adj.entry(b).or_default().push(a);
        }
        if adj.len() != edges.len() + 1 || !is_connected(&adj) {
            return Err(BridgeError::NotATree);
        }
        let mut attachments = Vec::new();
        let mut internal = Vec::new();
        for (&v, ns) in &adj {
            match (ns.len() == 1, host.contains(v)) {
                (true, true) => attachments.push(v),
                (true, false) => return Err(BridgeError::LeafOffHost(v)),
                (false, true) => return Err(BridgeError::InteriorOnHost(v)),
                (false, false) => internal.push(v),
            }
        }
        if attachments.len() < 2 {
            return Err(BridgeError::TooFewAttachments(attachments.len()));
        }
        attachments.sort_by_key(|&a| host.position(a).expect("checked on host"));
        Ok(BridgeTree { edges, adj, attachments, internal })
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Attachments in clockwise host order.
    pub fn attachments(&self) -> &[VertexId] {
        &self.attachments
    }

    pub fn internal(&self) -> &[VertexId] {
        &self.internal
    }

    /// Number of edges; equals the bridge length when leaves are the attachments.
    pub fn size(&self) -> usize {
        self.edges.len()
    }

    pub fn is_chord(&self) -> bool {
        self.edges.len() == 1
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.adj.contains_key(&v)
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.adj.keys().copied()
    }

    pub fn neighbors(&self, v: VertexId) -> &[VertexId] {
        self.adj.get(&v).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.neighbors(v).len()
    }

    pub fn is_attachment(&self, v: VertexId) -> bool {
        self.attachments.contains(&v)
    }

    /// The unique tree path from `u` to `v`, both included.
    pub fn path(&self, u: VertexId, v: VertexId) -> Result<Vec<VertexId>, BridgeError> {
        for x in [u, v] {
            if !self.contains(x) {
                return Err(BridgeError::VertexAbsent(x));
            }
        }
        if u == v {
            return Err(GraphError::DegenerateSegment(u).into());
        }
        let mut parent: BTreeMap<VertexId, VertexId> = BTreeMap::new();
        let mut queue = VecDeque::from([u]);
        parent.insert(u, u);
        while let Some(x) = queue.pop_front() {
            if x == v {
                break;
            }
            for &y in &self.adj[&x] {
                if let std::collections::btree_map::Entry::Vacant(slot) = parent.entry(y) {
                    slot.insert(x);
                    queue.push_back(y);
                }
            }
        }
        let mut path = vec![v];
        let mut cur = v;
        while cur != u {
            cur = parent[&cur];
            path.push(cur);
        }
        path.reverse();
        Ok(path)
    }

    pub fn path_edges(&self, u: VertexId, v: VertexId) -> Result<BTreeSet<Edge>, BridgeError> {
        Ok(self.path(u, v)?.windows(2).map(|w| Edge::new(w[0], w[1])).collect())
    }

    /// Edges of the smallest subtree containing `keep`.
    pub fn spanning_subtree(&self, keep: &BTreeSet<VertexId>) -> Vec<Edge> {
        let mut adj = self.adj.clone();
        let mut leaves: Vec<VertexId> =
            adj.iter().filter(|(v, ns)| ns.len() <= 1 && !keep.contains(v)).map(|(v, _)| *v).collect();
        while let Some(v) = leaves.pop() {
            let Some(ns) = adj.remove(&v) else { continue };
            for w in ns {
                let wn = adj.get_mut(&w).expect("symmetric");
                wn.retain(|&x| x != v);
                if wn.len() <= 1 && !keep.contains(&w) {
                    leaves.push(w);
                }
            }
        }
        let mut out = Vec::new();
        for (&a, ns) in &adj {
            for &b in ns {
                if a < b {
                    out.push(Edge::new(a, b));
                }
            }
        }
        out
    }
}

fn is_connected(adj: &BTreeMap<VertexId, Vec<VertexId>>) -> bool {
    let Some(&start) = adj.keys().next() else {
        return true;
    };
    let mut seen = BTreeSet::from([start]);
    let mut stack = vec![start];
    while let Some(v) = stack.pop() {
        for &w in &adj[&v] {
            if seen.insert(w) {
                stack.push(w);
            }
        }
    }
    seen.len() == adj.len()
}

/// A host cycle together with pairwise vertex-disjoint tree bridges.
///
/// The overlap graph is not required to be a tree here; the construction
/// checks that itself.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    host: HostCycle,
    bridges: Vec<BridgeTree>,
    owner: BTreeMap<VertexId, usize>,
}

impl Instance {
    pub fn new(host: HostCycle, bridges: Vec<BridgeTree>) -> Result<Self, BridgeError> {
        let mut owner = BTreeMap::new();
        let mut seen_internal = BTreeSet::new();
        for (i, b) in bridges.iter().enumerate() {
            for &a in b.attachments() {
                if !host.contains(a) {
                    return Err(BridgeError::LeafOffHost(a));
                }
                if owner.insert(a, i).is_some() {
                    return Err(BridgeError::SharedVertex(a));
                }
            }
            for &v in b.internal() {
                if host.contains(v) {
                    return Err(BridgeError::InteriorOnHost(v));
                }
                if !seen_internal.insert(v) {
                    return Err(BridgeError::SharedVertex(v));
                }
            }
            for &e in b.edges() {
                if host.has_edge(e) {
                    return Err(BridgeError::ParallelToHost(e));
                }
            }
        }
        Ok(Instance { host, bridges, owner })
    }

    /// Builds bridge trees from raw edge lists against `host`.
    pub fn from_edges(host: HostCycle, bridges: Vec<Vec<Edge>>) -> Result<Self, BridgeError> {
        let trees = bridges.into_iter().map(|es| BridgeTree::new(es, &host)).collect::<Result<Vec<_>, _>>()?;
        Instance::new(host, trees)
    }

    pub fn host(&self) -> &HostCycle {
        &self.host
    }

    pub fn bridges(&self) -> &[BridgeTree] {
        &self.bridges
    }

    pub fn bridge_count(&self) -> usize {
        self.bridges.len()
    }

    /// Which bridge `v` is an attachment of.
    pub fn owner(&self, v: VertexId) -> Option<usize> {
        self.owner.get(&v).copied()
    }

    pub fn is_attachment(&self, v: VertexId) -> bool {
        self.owner.contains_key(&v)
    }

    pub fn bridge_neighbors(&self, a: VertexId) -> &[VertexId] {
        match self.owner(a) {
            Some(i) => self.bridges[i].neighbors(a),
            None => &[],
        }
    }

    /// All attachments in clockwise order, starting from the first host vertex.
    pub fn attachment_cycle(&self) -> Vec<(VertexId, usize)> {
        self.host.order().iter().filter_map(|&v| self.owner(v).map(|i| (v, i))).collect()
    }

    pub fn edges(&self) -> Vec<Edge> {
        let mut out: Vec<Edge> = self.host.edges().collect();
        for b in &self.bridges {
            out.extend_from_slice(b.edges());
        }
        out.sort();
        out
    }

    pub fn edge_set(&self) -> BTreeSet<Edge> {
        self.edges().into_iter().collect()
    }

    pub fn vertices(&self) -> BTreeSet<VertexId> {
        let mut vs: BTreeSet<VertexId> = self.host.order().iter().copied().collect();
        for b in &self.bridges {
            vs.extend(b.vertices());
        }
        vs
    }

    pub fn max_vertex_id(&self) -> u32 {
        self.vertices().iter().map(|v| v.0).max().unwrap_or(0)
    }

    /// The same bridges over a host with the opposite orientation.
    pub fn reflected(&self) -> Instance {
        let host = self.host.reversed();
        let bridges = self
            .bridges
            .iter()
            .map(|b| BridgeTree::new(b.edges().iter().copied(), &host).expect("same vertex sets"))
            .collect();
        Instance::new(host, bridges).expect("reflection keeps validity")
    }

    /// Sum of bridge sizes, i.e. the total bridge length for tree bridges.
    pub fn total_length(&self) -> usize {
        self.bridges.iter().map(BridgeTree::size).sum()
    }

    pub fn overlap_graph(&self) -> OverlapGraph {
        overlap_graph(self)
    }
}

/// Whether two disjoint attachment sets interleave along the host.
///
/// For disjoint sets this is equivalent to the host admitting no split into
/// two subpaths that each carry one of the sets.
pub fn overlaps(a1: &[VertexId], a2: &[VertexId], host: &HostCycle) -> bool {
    let mut p1: Vec<usize> = a1.iter().filter_map(|&v| host.position(v).ok()).collect();
    p1.sort_unstable();
    if p1.is_empty() {
        return false;
    }
    // gap index of p = number of a1 positions below p, with the wraparound gap folded into 0
    let gap = |p: usize| p1.partition_point(|&q| q < p) % p1.len();
    let mut gaps = a2.iter().filter_map(|&v| host.position(v).ok()).map(gap);
    match gaps.next() {
        Some(g0) => gaps.any(|g| g != g0),
        None => false,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OverlapGraph {
    nodes: usize,
    edges: Vec<(usize, usize)>,
}

impl OverlapGraph {
    pub fn node_count(&self) -> usize {
        self.nodes
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, i: usize) -> Vec<usize> {
        self.edges
            .iter()
            .filter_map(|&(a, b)| {
                if a == i {
                    Some(b)
                } else if b == i {
                    Some(a)
                } else {
                    None
                }
            })
            .collect()
    }

    pub fn degree(&self, i: usize) -> usize {
        self.neighbors(i).len()
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        let key = (a.min(b), a.max(b));
        self.edges.contains(&key)
    }

    pub fn is_connected(&self) -> bool {
        if self.nodes == 0 {
            return true;
        }
        let mut seen = vec![false; self.nodes];
        seen[0] = true;
        let mut stack = vec![0];
        let mut count = 1;
        while let Some(i) = stack.pop() {
            for j in self.neighbors(i) {
                if !seen[j] {
                    seen[j] = true;
                    count += 1;
                    stack.push(j);
                }
            }
        }
        count == self.nodes
    }

    pub fn is_tree(&self) -> bool {
        self.nodes > 0 && self.edges.len() + 1 == self.nodes && self.is_connected()
    }
}

pub fn overlap_graph(inst: &Instance) -> OverlapGraph {
    let bs = inst.bridges();
    let mut edges = Vec::new();
    for i in 0..bs.len() {
        for j in i + 1..bs.len() {
            if overlaps(bs[i].attachments(), bs[j].attachments(), inst.host()) {
                edges.push((i, j));
            }
        }
    }
    OverlapGraph { nodes: bs.len(), edges }
}

/// A bridge of an arbitrary graph relative to the host: a chord, or a
/// component off the host together with its edges to the host.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawBridge {
    pub edges: Vec<Edge>,
    pub attachments: Vec<VertexId>,
    pub internal: Vec<VertexId>,
}

/// Splits `graph` into the bridges of `host`.
pub fn decompose_bridges(graph: &[Edge], host: &HostCycle) -> Result<Vec<RawBridge>, BridgeError> {
    let all: BTreeSet<Edge> = graph.iter().copied().collect();
    for e in host.edges() {
        if !all.contains(&e) {
            return Err(BridgeError::HostNotACycle(e));
        }
    }
    let mut chords = Vec::new();
    let mut off: BTreeMap<VertexId, Vec<Edge>> = BTreeMap::new();
    for &e in &all {
        let (a, b) = e.ends();
        match (host.contains(a), host.contains(b)) {
            (true, true) => {
                if !host.has_edge(e) {
                    chords.push(e);
                }
            }
            _ => {
                for v in [a, b] {
                    if !host.contains(v) {
                        off.entry(v).or_default().push(e);
                    }
                }
            }
        }
    }
    let mut out: Vec<RawBridge> = chords
        .into_iter()
        .map(|e| {
            let (a, b) = e.ends();
            RawBridge { edges: vec![e], attachments: sort_on_host(vec![a, b], host), internal: vec![] }
        })
        .collect();

    let mut seen = BTreeSet::new();
    for &start in off.keys() {
        if !seen.insert(start) {
            continue;
        }
        let mut comp = vec![start];
        let mut stack = vec![start];
        let mut edges = BTreeSet::new();
        let mut attach = BTreeSet::new();
        while let Some(v) = stack.pop() {
            for &e in &off[&v] {
                edges.insert(e);
                let w = e.other(v).expect("incident");
                if host.contains(w) {
                    attach.insert(w);
                } else if seen.insert(w) {
                    comp.push(w);
                    stack.push(w);
                }
            }
        }
        comp.sort();
        out.push(RawBridge {
            edges: edges.into_iter().collect(),
            attachments: sort_on_host(attach.into_iter().collect(), host),
            internal: comp,
        });
    }
    Ok(out)
}

fn sort_on_host(mut vs: Vec<VertexId>, host: &HostCycle) -> Vec<VertexId> {
    vs.sort_by_key(|&v| host.position(v).unwrap_or(usize::MAX));
    vs
}

/// Default edge cap for [`lambda_oracle`].
pub const LAMBDA_EDGE_CAP: usize = 20;

/// Exhaustive bridge length: the most edges in a subtree of the bridge whose
/// leaves are exactly its attachments.
///
/// Branches on each edge with union-find cycle pruning; exponential, so gated
/// by `cap` edges.
pub fn lambda_oracle(bridge: &RawBridge, cap: usize) -> Result<usize, BridgeError> {
    let m = bridge.edges.len();
    if m > cap {
        return Err(BridgeError::TooLarge { edges: m, cap });
    }
    let mut ids: BTreeMap<VertexId, usize> = BTreeMap::new();
    for e in &bridge.edges {
        let (a, b) = e.ends();
        let n = ids.len();
        ids.entry(a).or_insert(n);
        let n = ids.len();
        ids.entry(b).or_insert(n);
    }
    let ends: Vec<(usize, usize)> = bridge
        .edges
        .iter()
        .map(|e| {
            let (a, b) = e.ends();
            (ids[&a], ids[&b])
        })
        .collect();
    let mut is_attach = vec![false; ids.len()];
    for a in &bridge.attachments {
        match ids.get(a) {
            Some(&i) => is_attach[i] = true,
            None => return Err(BridgeError::NoSpanningTreeWithLeaves),
        }
    }
    let mut search = LambdaSearch {
        ends,
        is_attach,
        deg: vec![0; ids.len()],
        parent: (0..ids.len()).collect(),
        size: vec![1; ids.len()],
        chosen: 0,
        best: None,
    };
    search.go(0);
    search.best.ok_or(BridgeError::NoSpanningTreeWithLeaves)
}

struct LambdaSearch {
    ends: Vec<(usize, usize)>,
    is_attach: Vec<bool>,
    deg: Vec<usize>,
    parent: Vec<usize>,
    size: Vec<usize>,
    chosen: usize,
    best: Option<usize>,
}

impl LambdaSearch {
    fn find(&self, mut x: usize) -> usize {
        while self.parent[x] != x {
            x = self.parent[x];
        }
        x
    }

    fn go(&mut self, i: usize) {
        let remaining = self.ends.len() - i;
        if self.best.is_some_and(|b| self.chosen + remaining <= b) {
            return;
        }
        if i == self.ends.len() {
            if self.accepts() {
                self.best = Some(self.chosen);
            }
            return;
        }
        let (a, b) = self.ends[i];
        let (ra, rb) = (self.find(a), self.find(b));
        let attach_ok = !(self.is_attach[a] && self.deg[a] >= 1) && !(self.is_attach[b] && self.deg[b] >= 1);
        if ra != rb && attach_ok {
            let (big, small) = if self.size[ra] >= self.size[rb] { (ra, rb) } else { (rb, ra) };
            self.parent[small] = big;
            self.size[big] += self.size[small];
            self.deg[a] += 1;
            self.deg[b] += 1;
            self.chosen += 1;
            self.go(i + 1);
            self.chosen -= 1;
            self.deg[a] -= 1;
            self.deg[b] -= 1;
            self.size[big] -= self.size[small];
            self.parent[small] = small;
        }
        self.go(i + 1);
    }

    fn accepts(&self) -> bool {
        // every attachment a leaf, every other touched vertex interior, one component
        let mut root = None;
        for v in 0..self.deg.len() {
            if self.is_attach[v] {
                if self.deg[v] != 1 {
                    return false;
                }
            } else if self.deg[v] == 1 {
                return false;
            }
            if self.deg[v] > 0 {
                let r = self.find(v);
                if *root.get_or_insert(r) != r {
                    return false;
                }
            }
        }
        root.is_some()
    }
}
