//! Vertices, edges, arcs, the host cycle and directed cycles.
//!
//! Everything here is immutable once built. A [`Dicycle`] is always stored in
//! canonical rotation, so structural equality is cyclic-sequence equality.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexId(pub u32);

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl From<u32> for VertexId {
    fn from(v: u32) -> Self {
        VertexId(v)
    }
}

/// An undirected edge, stored with its smaller endpoint first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Edge(VertexId, VertexId);

impl Edge {
    pub fn new(a: VertexId, b: VertexId) -> Self {
        if a <= b {
            Edge(a, b)
        } else {
            Edge(b, a)
        }
    }

    pub fn ends(self) -> (VertexId, VertexId) {
        (self.0, self.1)
    }

    pub fn contains(self, v: VertexId) -> bool {
        self.0 == v || self.1 == v
    }

    pub fn other(self, v: VertexId) -> Option<VertexId> {
        if self.0 == v {
            Some(self.1)
        } else if self.1 == v {
            Some(self.0)
        } else {
            None
        }
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.0, self.1)
    }
}

pub type EdgeSet = BTreeSet<Edge>;

/// A directed arc. `key` separates parallel arcs between the same ordered pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Arc {
    pub tail: VertexId,
    pub head: VertexId,
    pub key: u8,
}

impl Arc {
    pub fn new(tail: VertexId, head: VertexId) -> Self {
        Arc { tail, head, key: 0 }
    }

    pub fn keyed(tail: VertexId, head: VertexId, key: u8) -> Self {
        Arc { tail, head, key }
    }

    pub fn edge(self) -> Edge {
        Edge::new(self.tail, self.head)
    }
}

impl fmt::Display for Arc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.key == 0 {
            write!(f, "{}->{}", self.tail, self.head)
        } else {
            write!(f, "{}->{}#{}", self.tail, self.head, self.key)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("vertex {0} is not on the host cycle")]
    VertexNotOnHost(VertexId),
    #[error("segment endpoints coincide at {0}")]
    DegenerateSegment(VertexId),
    #[error("host cycle needs at least 3 vertices, got {0}")]
    HostTooShort(usize),
    #[error("vertex {0} repeats on the host cycle")]
    RepeatedHostVertex(VertexId),
    #[error("dicycle needs at least 2 arcs, got {0}")]
    DicycleTooShort(usize),
    #[error("arc {0} is a loop")]
    Loop(Arc),
    #[error("arcs do not chain: {0} is followed by {1}")]
    BrokenChain(Arc, Arc),
    #[error("vertex {0} is visited twice")]
    NotSimple(VertexId),
    #[error("intersection of the two dicycles is not a single nonempty path")]
    BadIntersection,
    #[error("the two dicycles traverse their common path in the same direction")]
    OrientationConflict,
    #[error("vertex {0} is not on the dicycle")]
    VertexAbsent(VertexId),
    #[error("contracting {0} would create a loop")]
    WouldCreateLoop(VertexId),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    /// Clockwise, from the first endpoint to the second.
    Forward,
    /// The same clockwise segment, walked from its second endpoint back to the first.
    Reverse,
}

/// The distinguished cycle. Storage order is the clockwise order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HostCycle {
    order: Vec<VertexId>,
    pos: HashMap<VertexId, usize>,
}

impl HostCycle {
    pub fn new(order: Vec<VertexId>) -> Result<Self, GraphError> {
        if order.len() < 3 {
            return Err(GraphError::HostTooShort(order.len()));
        }
        let mut pos = HashMap::with_capacity(order.len());
        for (i, &v) in order.iter().enumerate() {
            if pos.insert(v, i).is_some() {
                return Err(GraphError::RepeatedHostVertex(v));
            }
        }
        Ok(HostCycle { order, pos })
    }

    pub fn from_ids(ids: impl IntoIterator<Item = u32>) -> Result<Self, GraphError> {
        Self::new(ids.into_iter().map(VertexId).collect())
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    pub fn order(&self) -> &[VertexId] {
        &self.order
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.pos.contains_key(&v)
    }

    pub fn position(&self, v: VertexId) -> Result<usize, GraphError> {
        self.pos.get(&v).copied().ok_or(GraphError::VertexNotOnHost(v))
    }

    pub fn successor(&self, v: VertexId) -> Result<VertexId, GraphError> {
        let i = self.position(v)?;
        Ok(self.order[(i + 1) % self.order.len()])
    }

    pub fn predecessor(&self, v: VertexId) -> Result<VertexId, GraphError> {
        let i = self.position(v)?;
        let n = self.order.len();
        Ok(self.order[(i + n - 1) % n])
    }

    /// Number of clockwise steps from `u` to `v`.
    pub fn distance(&self, u: VertexId, v: VertexId) -> Result<usize, GraphError> {
        let (i, j) = (self.position(u)?, self.position(v)?);
        let n = self.order.len();
        Ok((j + n - i) % n)
    }

    /// Vertices of the clockwise segment from `u` to `v`, both included.
    pub fn segment_vertices(&self, u: VertexId, v: VertexId) -> Result<Vec<VertexId>, GraphError> {
        let i = self.position(u)?;
        let steps = self.distance(u, v)?;
        if steps == 0 {
            return Err(GraphError::DegenerateSegment(u));
        }
        let n = self.order.len();
        Ok((0..=steps).map(|d| self.order[(i + d) % n]).collect())
    }

    /// The clockwise segment `u..v` as arcs. `Reverse` walks the same edges from `v` to `u`.
    pub fn segment(&self, u: VertexId, v: VertexId, dir: Direction) -> Result<Vec<Arc>, GraphError> {
        let mut verts = self.segment_vertices(u, v)?;
        if dir == Direction::Reverse {
            verts.reverse();
        }
        Ok(verts.windows(2).map(|w| Arc::new(w[0], w[1])).collect())
    }

    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        let n = self.order.len();
        (0..n).map(move |i| Edge::new(self.order[i], self.order[(i + 1) % n]))
    }

    pub fn edge_set(&self) -> EdgeSet {
        self.edges().collect()
    }

    pub fn has_edge(&self, e: Edge) -> bool {
        let (a, b) = e.ends();
        matches!(self.successor(a), Ok(s) if s == b) || matches!(self.successor(b), Ok(s) if s == a)
    }

    /// The same cycle with the opposite clockwise orientation.
    pub fn reversed(&self) -> HostCycle {
        let mut order = self.order.clone();
        order.reverse();
        HostCycle::new(order).expect("reversal keeps a valid host")
    }

    /// Splices `fresh` between `v` and its successor.
    pub fn subdivide_after(&self, v: VertexId, fresh: VertexId) -> Result<HostCycle, GraphError> {
        let i = self.position(v)?;
        if self.contains(fresh) {
            return Err(GraphError::RepeatedHostVertex(fresh));
        }
        let mut order = self.order.clone();
        order.insert(i + 1, fresh);
        HostCycle::new(order)
    }
}

/// The four ways a dicycle can pass through an attachment.
///
/// The first bit says which host neighbour sits beside the attachment
/// (0: successor, 1: predecessor); the second says whether the bridge arc
/// enters the attachment (0) or leaves it (1).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum TypeTag {
    #[serde(rename = "00")]
    T00,
    #[serde(rename = "01")]
    T01,
    #[serde(rename = "10")]
    T10,
    #[serde(rename = "11")]
    T11,
}

impl TypeTag {
    pub const ALL: [TypeTag; 4] = [TypeTag::T00, TypeTag::T01, TypeTag::T10, TypeTag::T11];

    pub fn from_bits(i: bool, j: bool) -> TypeTag {
        match (i, j) {
            (false, false) => TypeTag::T00,
            (false, true) => TypeTag::T01,
            (true, false) => TypeTag::T10,
            (true, true) => TypeTag::T11,
        }
    }

    pub fn i(self) -> bool {
        matches!(self, TypeTag::T10 | TypeTag::T11)
    }

    pub fn j(self) -> bool {
        matches!(self, TypeTag::T01 | TypeTag::T11)
    }

    /// The tag the same dicycle carries once the host orientation is flipped.
    pub fn mirrored(self) -> TypeTag {
        TypeTag::from_bits(!self.i(), self.j())
    }
}

impl fmt::Display for TypeTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.i() as u8, self.j() as u8)
    }
}

/// A simple directed cycle, kept rotated so that its smallest tail comes first.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Dicycle {
    arcs: Vec<Arc>,
}

impl Dicycle {
    pub fn new(arcs: Vec<Arc>) -> Result<Self, GraphError> {
        if arcs.len() < 2 {
            return Err(GraphError::DicycleTooShort(arcs.len()));
        }
        let mut tails = BTreeSet::new();
        for (i, a) in arcs.iter().enumerate() {
            if a.tail == a.head {
                return Err(GraphError::Loop(*a));
            }
            let next = arcs[(i + 1) % arcs.len()];
            if a.head != next.tail {
                return Err(GraphError::BrokenChain(*a, next));
            }
            if !tails.insert(a.tail) {
                return Err(GraphError::NotSimple(a.tail));
            }
        }
        Ok(Dicycle { arcs: canonical_rotation(arcs) })
    }

    /// Builds the dicycle `w[0] -> w[1] -> ... -> w[last] -> w[0]` on key-0 arcs.
    pub fn from_walk(walk: &[VertexId]) -> Result<Self, GraphError> {
        let n = walk.len();
        Self::new((0..n).map(|i| Arc::new(walk[i], walk[(i + 1) % n])).collect())
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    pub fn len(&self) -> usize {
        self.arcs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arcs.is_empty()
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.arcs.iter().map(|a| a.tail)
    }

    pub fn contains_vertex(&self, v: VertexId) -> bool {
        self.arcs.iter().any(|a| a.tail == v)
    }

    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.arcs.iter().map(|a| a.edge())
    }

    pub fn edge_set(&self) -> EdgeSet {
        self.edges().collect()
    }

    pub fn contains_edge(&self, e: Edge) -> bool {
        self.arcs.iter().any(|a| a.edge() == e)
    }

    pub fn arc_into(&self, v: VertexId) -> Option<Arc> {
        self.arcs.iter().copied().find(|a| a.head == v)
    }

    pub fn arc_out_of(&self, v: VertexId) -> Option<Arc> {
        self.arcs.iter().copied().find(|a| a.tail == v)
    }

    /// The same cycle walked backwards.
    pub fn reversed(&self) -> Dicycle {
        let arcs = self.arcs.iter().rev().map(|a| Arc::keyed(a.head, a.tail, a.key)).collect();
        Dicycle { arcs: canonical_rotation(arcs) }
    }

    /// Rotation-minimal arc sequence; identical for equal dicycles.
    pub fn canonical_form(&self) -> &[Arc] {
        &self.arcs
    }
}

impl fmt::Display for Dicycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for a in &self.arcs {
            write!(f, "{}->", a.tail)?;
        }
        match self.arcs.first() {
            Some(a) => write!(f, "{}", a.tail),
            None => Ok(()),
        }
    }
}

fn canonical_rotation(mut arcs: Vec<Arc>) -> Vec<Arc> {
    if let Some((start, _)) = arcs.iter().enumerate().min_by_key(|(_, a)| **a) {
        arcs.rotate_left(start);
    }
    arcs
}

/// Whether an edge set is exactly one simple cycle.
pub fn is_single_cycle(edges: &EdgeSet) -> bool {
    if edges.len() < 3 {
        return false;
    }
    let mut adj: BTreeMap<VertexId, Vec<VertexId>> = BTreeMap::new();
    for e in edges {
        let (a, b) = e.ends();
        adj.entry(a).or_default().push(b);
        adj.entry(b).or_default().push(a);
    }
    if adj.values().any(|ns| ns.len() != 2) {
        return false;
    }
    // 2-regular: connected iff a walk from any vertex closes after |V| steps.
    let start = *adj.keys().next().expect("nonempty");
    let (mut prev, mut cur) = (start, adj[&start][0]);
    let mut steps = 1;
    while cur != start {
        let ns = &adj[&cur];
        let next = if ns[0] == prev { ns[1] } else { ns[0] };
        prev = cur;
        cur = next;
        steps += 1;
    }
    steps == adj.len()
}

/// `E(L) △ E(C)` and whether it forms a single cycle.
pub fn symdiff_with_host(host: &HostCycle, c: &Dicycle) -> (EdgeSet, bool) {
    let diff: EdgeSet = host.edge_set().symmetric_difference(&c.edge_set()).copied().collect();
    let single = is_single_cycle(&diff);
    (diff, single)
}

/// Symmetric difference of two dicycles that share a single path traversed in
/// opposite directions; surviving arcs keep their orientation.
///
/// Edges are compared on their underlying vertex pairs, so this is meant for
/// dicycles of a simple graph.
pub fn dicycle_symdiff(c1: &Dicycle, c2: &Dicycle) -> Result<Dicycle, GraphError> {
    let e1 = c1.edge_set();
    let e2 = c2.edge_set();
    let common: EdgeSet = e1.intersection(&e2).copied().collect();
    if common.is_empty() || !is_path(&common) {
        return Err(GraphError::BadIntersection);
    }
    for e in &common {
        let a1 = c1.arcs.iter().find(|a| a.edge() == *e).expect("common edge");
        let a2 = c2.arcs.iter().find(|a| a.edge() == *e).expect("common edge");
        if a1.tail == a2.tail {
            return Err(GraphError::OrientationConflict);
        }
    }
    let rest: Vec<Arc> =
        c1.arcs.iter().chain(c2.arcs.iter()).copied().filter(|a| !common.contains(&a.edge())).collect();
    let mut by_tail: BTreeMap<VertexId, Arc> = BTreeMap::new();
    for a in &rest {
        if by_tail.insert(a.tail, *a).is_some() {
            return Err(GraphError::BadIntersection);
        }
    }
    let first = rest.first().ok_or(GraphError::BadIntersection)?;
    let mut chain = vec![*first];
    let mut cur = first.head;
    while cur != first.tail {
        let next = by_tail.get(&cur).ok_or(GraphError::BadIntersection)?;
        chain.push(*next);
        cur = next.head;
        if chain.len() > rest.len() {
            return Err(GraphError::BadIntersection);
        }
    }
    if chain.len() != rest.len() {
        return Err(GraphError::BadIntersection);
    }
    Dicycle::new(chain)
}

fn is_path(edges: &EdgeSet) -> bool {
    let mut deg: BTreeMap<VertexId, usize> = BTreeMap::new();
    for e in edges {
        let (a, b) = e.ends();
        *deg.entry(a).or_default() += 1;
        *deg.entry(b).or_default() += 1;
    }
    if deg.values().any(|&d| d > 2) {
        return false;
    }
    // a forest with max degree 2 and |V| = |E| + 1 is one path
    deg.len() == edges.len() + 1 && connected(edges)
}

fn connected(edges: &EdgeSet) -> bool {
    let mut adj: BTreeMap<VertexId, Vec<VertexId>> = BTreeMap::new();
    for e in edges {
        let (a, b) = e.ends();
        adj.entry(a).or_default().push(b);
        adj.entry(b).or_default().push(a);
    }
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

/// Replaces `u -> mid -> v` by the single arc `u -> v`.
pub fn contract_path2(c: &Dicycle, mid: VertexId) -> Result<Dicycle, GraphError> {
    let inn = c.arc_into(mid).ok_or(GraphError::VertexAbsent(mid))?;
    let out = c.arc_out_of(mid).ok_or(GraphError::VertexAbsent(mid))?;
    if inn.tail == out.head {
        return Err(GraphError::WouldCreateLoop(mid));
    }
    let mut arcs = Vec::with_capacity(c.len() - 1);
    for a in &c.arcs {
        if *a == inn {
            arcs.push(Arc::new(inn.tail, out.head));
        } else if *a != out {
            arcs.push(*a);
        }
    }
    Dicycle::new(arcs)
}

/// The type of `c` at attachment `a`, if `c` uses a bridge edge at `a`.
///
/// `bridge_neighbors` are the neighbours of `a` off the host. At most one tag
/// applies since `a` has degree two in `c`.
pub fn type_tag(c: &Dicycle, a: VertexId, host: &HostCycle, bridge_neighbors: &[VertexId]) -> Option<TypeTag> {
    let inn = c.arc_into(a)?;
    let out = c.arc_out_of(a)?;
    let succ = host.successor(a).ok()?;
    let pred = host.predecessor(a).ok()?;
    let is_bridge = |v: VertexId| bridge_neighbors.contains(&v);
    if is_bridge(inn.tail) {
        if out.head == succ {
            return Some(TypeTag::T00);
        }
        if out.head == pred {
            return Some(TypeTag::T10);
        }
    }
    if is_bridge(out.head) {
        if inn.tail == succ {
            return Some(TypeTag::T01);
        }
        if inn.tail == pred {
            return Some(TypeTag::T11);
        }
    }
    None
}

/// Set-valued form of [`type_tag`].
pub fn type_tags(c: &Dicycle, a: VertexId, host: &HostCycle, bridge_neighbors: &[VertexId]) -> BTreeSet<TypeTag> {
    type_tag(c, a, host, bridge_neighbors).into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(x: u32) -> VertexId {
        VertexId(x)
    }

    fn walk(ids: &[u32]) -> Dicycle {
        Dicycle::from_walk(&ids.iter().map(|&x| v(x)).collect::<Vec<_>>()).unwrap()
    }

    fn l4() -> HostCycle {
        HostCycle::from_ids([1, 2, 3, 4]).unwrap()
    }

    #[test]
    fn successor_predecessor() {
        let l = l4();
        assert_eq!(l.successor(v(2)).unwrap(), v(3));
        assert_eq!(l.successor(v(4)).unwrap(), v(1));
        assert_eq!(l.predecessor(v(1)).unwrap(), v(4));
        assert_eq!(l.successor(v(7)), Err(GraphError::VertexNotOnHost(v(7))));
    }

    #[test]
    fn host_rejects_bad_orders() {
        assert_eq!(HostCycle::from_ids([1, 2]), Err(GraphError::HostTooShort(2)));
        assert_eq!(HostCycle::from_ids([1, 2, 1]), Err(GraphError::RepeatedHostVertex(v(1))));
    }

    #[test]
    fn segments() {
        let l = l4();
        assert_eq!(
            l.segment(v(1), v(3), Direction::Forward).unwrap(),
            vec![Arc::new(v(1), v(2)), Arc::new(v(2), v(3))]
        );
        assert_eq!(
            l.segment(v(3), v(1), Direction::Forward).unwrap(),
            vec![Arc::new(v(3), v(4)), Arc::new(v(4), v(1))]
        );
        assert_eq!(
            l.segment(v(1), v(3), Direction::Reverse).unwrap(),
            vec![Arc::new(v(3), v(2)), Arc::new(v(2), v(1))]
        );
        assert_eq!(l.segment(v(2), v(2), Direction::Forward), Err(GraphError::DegenerateSegment(v(2))));
        assert_eq!(l.segment(v(2), v(9), Direction::Forward), Err(GraphError::VertexNotOnHost(v(9))));
    }

    #[test]
    fn symdiff_with_host_cases() {
        let l = l4();
        let (d, single) = symdiff_with_host(&l, &walk(&[1, 2, 3, 4]));
        assert!(d.is_empty() && !single);
        let (d, single) = symdiff_with_host(&l, &walk(&[4, 3, 2, 1]));
        assert!(d.is_empty() && !single);

        // K_{2,3}: c = 9
        let (d, single) = symdiff_with_host(&l, &walk(&[1, 9, 3, 2]));
        let want: EdgeSet = [(1, 9), (9, 3), (3, 4), (4, 1)].iter().map(|&(a, b)| Edge::new(v(a), v(b))).collect();
        assert_eq!(d, want);
        assert!(single);

        // a bridge-only cycle leaves L plus the cycle: degree 4 nowhere but two components
        let (_, single) = symdiff_with_host(&l, &walk(&[10, 11, 12]));
        assert!(!single);
    }

    #[test]
    fn symdiff_of_triangles() {
        let c1 = walk(&[1, 2, 3]);
        let c2 = walk(&[2, 1, 4]);
        let got = dicycle_symdiff(&c1, &c2).unwrap();
        assert_eq!(got, walk(&[2, 3, 1, 4]));
        assert_eq!(dicycle_symdiff(&c2, &c1).unwrap(), got);

        assert_eq!(dicycle_symdiff(&c1, &c2.reversed()), Err(GraphError::OrientationConflict));
        // share edges {1,2} and {3,4} only
        let a = walk(&[1, 2, 5, 3, 4, 6]);
        let b = walk(&[2, 1, 7, 4, 3, 8]);
        assert_eq!(dicycle_symdiff(&a, &b), Err(GraphError::BadIntersection));
        assert_eq!(dicycle_symdiff(&walk(&[1, 2, 3]), &walk(&[4, 5, 6])), Err(GraphError::BadIntersection));
    }

    #[test]
    fn contraction() {
        assert_eq!(contract_path2(&walk(&[1, 9, 2, 3]), v(9)).unwrap(), walk(&[1, 2, 3]));
        assert_eq!(contract_path2(&walk(&[1, 9]), v(9)), Err(GraphError::WouldCreateLoop(v(9))));
        assert_eq!(contract_path2(&walk(&[1, 2, 3]), v(9)), Err(GraphError::VertexAbsent(v(9))));
    }

    #[test]
    fn tags_on_k23() {
        let l = l4();
        let c = walk(&[1, 9, 3, 2]);
        // at 1: arcs 2->1 (from the successor) and 1->9 (into the bridge)
        assert_eq!(type_tags(&c, v(1), &l, &[v(9)]), BTreeSet::from([TypeTag::T01]));
        // at 3: 9->3 from the bridge, then 3->2 to the predecessor
        assert_eq!(type_tags(&c, v(3), &l, &[v(9)]), BTreeSet::from([TypeTag::T10]));
        assert!(type_tags(&c, v(4), &l, &[v(9)]).is_empty());
        assert!(type_tags(&walk(&[1, 2, 3, 4]), v(1), &l, &[v(9)]).is_empty());
    }

    #[test]
    fn mirrored_tags_follow_reflection() {
        let l = l4();
        let r = l.reversed();
        let c = walk(&[1, 9, 3, 2]);
        for a in [v(1), v(3)] {
            let t = type_tag(&c, a, &l, &[v(9)]).unwrap();
            assert_eq!(type_tag(&c, a, &r, &[v(9)]).unwrap(), t.mirrored());
        }
    }

    #[test]
    fn canonical_forms() {
        assert_eq!(walk(&[2, 3, 1]), walk(&[1, 2, 3]));
        assert_eq!(walk(&[2, 3, 1]).canonical_form(), walk(&[1, 2, 3]).canonical_form());
        assert_ne!(walk(&[1, 2, 3]), walk(&[1, 3, 2]));
        let a = Dicycle::new(vec![Arc::keyed(v(1), v(2), 0), Arc::keyed(v(2), v(1), 0)]).unwrap();
        let b = Dicycle::new(vec![Arc::keyed(v(1), v(2), 0), Arc::keyed(v(2), v(1), 1)]).unwrap();
        assert_ne!(a, b);
    }

    #[test]
    fn dicycle_validation() {
        assert_eq!(Dicycle::new(vec![Arc::new(v(1), v(2))]), Err(GraphError::DicycleTooShort(1)));
        assert!(matches!(
            Dicycle::new(vec![Arc::new(v(1), v(2)), Arc::new(v(3), v(1))]),
            Err(GraphError::BrokenChain(..))
        ));
        assert_eq!(Dicycle::from_walk(&[v(1), v(2), v(1), v(3)]), Err(GraphError::NotSimple(v(1))));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn successor_is_a_rotation(n in 3usize..40, start in 0usize..40) {
                let l = HostCycle::from_ids(0..n as u32).unwrap();
                let v0 = VertexId((start % n) as u32);
                let mut x = v0;
                for _ in 0..n {
                    let s = l.successor(x).unwrap();
                    prop_assert_eq!(l.predecessor(s).unwrap(), x);
                    x = s;
                }
                prop_assert_eq!(x, v0);
            }

            #[test]
            fn complementary_segments_cover_host(n in 3usize..30, a in 0usize..30, b in 0usize..30) {
                let (a, b) = (a % n, b % n);
                prop_assume!(a != b);
                let l = HostCycle::from_ids(0..n as u32).unwrap();
                let (u, w) = (VertexId(a as u32), VertexId(b as u32));
                let mut edges: Vec<Edge> = l.segment(u, w, Direction::Forward).unwrap()
                    .into_iter().chain(l.segment(w, u, Direction::Forward).unwrap())
                    .map(|a| a.edge()).collect();
                edges.sort();
                let mut all: Vec<Edge> = l.edges().collect();
                all.sort();
                prop_assert_eq!(edges, all);
            }

            #[test]
            fn symdiff_commutes(n in 4usize..12, cut in 1usize..10, extra in 1u32..4) {
                // two cycles glued along the host path 0..=cut
                let cut = 1 + cut % (n - 2);
                let path: Vec<VertexId> = (0..=cut as u32).map(VertexId).collect();
                let mut w1 = path.clone();
                w1.extend((0..extra).map(|i| VertexId(100 + i)));
                let mut w2: Vec<VertexId> = path.iter().rev().copied().collect();
                w2.extend((0..extra + 1).map(|i| VertexId(200 + i)));
                let c1 = Dicycle::from_walk(&w1).unwrap();
                let c2 = Dicycle::from_walk(&w2).unwrap();
                prop_assert_eq!(dicycle_symdiff(&c1, &c2).unwrap(), dicycle_symdiff(&c2, &c1).unwrap());
            }
        }
    }
}
