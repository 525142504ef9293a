//! Seeded instance generation, the tight extremal family and known negatives.
//!
//! Randomness comes from ChaCha8 seeded with the 64-bit seed. Stream 0 lays
//! out the attachment order and host positions; bridge `i` draws its tree
//! shape from stream `i + 1`, so changing one bridge's shape never shifts the
//! layout of the others.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bridges::{decompose_bridges, BridgeError, BridgeTree, Instance};
use crate::graph::{Edge, HostCycle, VertexId};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenError {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("generation failed: {0}")]
    GenerationFailed(String),
    #[error(transparent)]
    Bridge(#[from] BridgeError),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenParams {
    pub host_len: usize,
    pub bridges: usize,
    pub max_leaves: usize,
    pub max_internal: usize,
    pub seed: u64,
}

impl Default for GenParams {
    fn default() -> Self {
        GenParams { host_len: 24, bridges: 3, max_leaves: 4, max_internal: 4, seed: 0 }
    }
}

/// A random tree whose leaves are exactly `leaves`.
///
/// Draws up to `max_internal` internal vertices as a random recursive tree,
/// hangs every leaf on one of them, then prunes internal vertices left as
/// leaves. Internal ids are consecutive from `first_internal`. Two leaves and
/// no internal vertex give a single chord.
pub fn random_tree<R: Rng>(rng: &mut R, leaves: &[VertexId], first_internal: u32, max_internal: usize) -> Vec<Edge> {
    assert!(leaves.len() >= 2, "a bridge needs at least two leaves");
    let min_internal = if leaves.len() == 2 { 0 } else { 1 };
    let r = rng.gen_range(min_internal..=max_internal.max(min_internal));
    if r == 0 {
        return vec![Edge::new(leaves[0], leaves[1])];
    }
    // internal vertices are 0..r here and renumbered at the end
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); r];
    for i in 1..r {
        let j = rng.gen_range(0..i);
        adj[i].push(j);
        adj[j].push(i);
    }
    let mut hung: Vec<Vec<VertexId>> = vec![Vec::new(); r];
    for &leaf in leaves {
        hung[rng.gen_range(0..r)].push(leaf);
    }
    let mut alive = vec![true; r];
    loop {
        let dead =
            (0..r).find(|&i| alive[i] && hung[i].is_empty() && adj[i].iter().filter(|&&j| alive[j]).count() <= 1);
        match dead {
            Some(i) => alive[i] = false,
            None => break,
        }
    }
    let mut ids = BTreeMap::new();
    for i in (0..r).filter(|&i| alive[i]) {
        let next = first_internal + ids.len() as u32;
        ids.insert(i, VertexId(next));
    }
    let mut edges = Vec::new();
    for i in (0..r).filter(|&i| alive[i]) {
        for &j in &adj[i] {
            if j > i && alive[j] {
                edges.push(Edge::new(ids[&i], ids[&j]));
            }
        }
        for &leaf in &hung[i] {
            edges.push(Edge::new(ids[&i], leaf));
        }
    }
    edges.sort();
    edges
}

/// A random instance whose overlap graph is a tree.
///
/// Attachments are first laid out as a cyclic sequence of bridge labels. Each
/// new bridge picks an existing parent and a run of consecutive parent
/// attachments with nothing else between them, then places its own
/// attachments in at least two of the gaps around and inside that run. It
/// therefore overlaps the parent and lies within a single gap of every other
/// bridge. The sequence is then spread over the host with at least one free
/// host vertex between consecutive attachments.
pub fn gen_random(p: &GenParams) -> Result<Instance, GenError> {
    if p.bridges == 0 {
        return Err(GenError::InvalidParams("at least one bridge is needed".into()));
    }
    if p.max_leaves < 2 {
        return Err(GenError::InvalidParams("bridges need at least two leaves".into()));
    }
    let budget = p.host_len / 2;
    if budget < 2 * p.bridges {
        return Err(GenError::GenerationFailed(format!(
            "a host of length {} holds at most {budget} attachments, {} bridges need {}",
            p.host_len,
            p.bridges,
            2 * p.bridges
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(p.seed);
    rng.set_stream(0);

    let mut seq: Vec<usize> = Vec::new();
    let mut used = 0;
    for i in 0..p.bridges {
        let reserve = 2 * (p.bridges - i - 1);
        let cap = p.max_leaves.min(budget - used - reserve);
        let m = rng.gen_range(2..=cap);
        used += m;
        if i == 0 {
            seq = vec![0; m];
        } else {
            let parent = rng.gen_range(0..i);
            seq = insert_child(&mut rng, &seq, parent, i, m);
        }
    }

    let a = seq.len();
    let extra = p.host_len - 2 * a;
    let mut gaps = vec![2usize; a];
    for _ in 0..extra {
        gaps[rng.gen_range(0..a)] += 1;
    }
    let offset = rng.gen_range(0..p.host_len);
    let mut leaves: Vec<Vec<VertexId>> = vec![Vec::new(); p.bridges];
    let mut pos = offset;
    for (idx, &b) in seq.iter().enumerate() {
        leaves[b].push(VertexId((pos % p.host_len) as u32));
        pos += gaps[idx];
    }

    let host = HostCycle::from_ids(0..p.host_len as u32).map_err(BridgeError::from)?;
    let mut next = p.host_len as u32;
    let mut trees = Vec::with_capacity(p.bridges);
    for (i, ls) in leaves.iter().enumerate() {
        let mut brng = ChaCha8Rng::seed_from_u64(p.seed);
        brng.set_stream(i as u64 + 1);
        let edges = random_tree(&mut brng, ls, next, p.max_internal);
        next += edges.len() as u32 + 1 - ls.len() as u32;
        trees.push(BridgeTree::new(edges, &host)?);
    }
    let inst = Instance::new(host, trees)?;
    assert!(inst.overlap_graph().is_tree(), "generated overlap graph is not a tree");
    Ok(inst)
}

/// Inserts `m` attachments labelled `child` around a run of `parent`.
fn insert_child<R: Rng>(rng: &mut R, seq: &[usize], parent: usize, child: usize, m: usize) -> Vec<usize> {
    let n = seq.len();
    let whole = seq.iter().all(|&b| b == parent);
    // pick a parent position, then the maximal run of parent labels around it
    let positions: Vec<usize> = (0..n).filter(|&i| seq[i] == parent).collect();
    let at = *positions.choose(rng).expect("parent has attachments");
    let (start, len) = if whole {
        (at, n - 1)
    } else {
        let mut s = at;
        while seq[(s + n - 1) % n] == parent {
            s = (s + n - 1) % n;
        }
        let mut l = 1;
        while seq[(s + l) % n] == parent {
            l += 1;
        }
        (s, l)
    };
    // a sub-run of length r, leaving r + 1 gaps to fill
    let r = rng.gen_range(1..=len);
    let sub = start + rng.gen_range(0..=len - r);
    let slots = r + 1;
    let mut counts = vec![0usize; slots];
    let first = rng.gen_range(0..slots);
    let mut second = rng.gen_range(0..slots - 1);
    if second >= first {
        second += 1;
    }
    counts[first] += 1;
    counts[second] += 1;
    for _ in 2..m {
        counts[rng.gen_range(0..slots)] += 1;
    }
    let mut out = Vec::with_capacity(n + m);
    let rotated: Vec<usize> = (0..n).map(|i| seq[(sub + i) % n]).collect();
    for (j, &b) in rotated.iter().enumerate() {
        if j <= r {
            out.extend(std::iter::repeat_n(child, counts[j]));
        }
        out.push(b);
    }
    out
}

/// The cycle `1..2k` with chords `{1, k+1}` and `{i, 2k+2-i}` for `2 <= i <= k`.
///
/// The overlap graph is a star centred on the first chord, and the lengths sum to exactly half the
/// host length.
pub fn gen_extremal(k: usize) -> Result<Instance, GenError> {
    if k < 2 {
        return Err(GenError::InvalidParams(format!("k must be at least 2, got {k}")));
    }
    let n = 2 * k as u32;
    let host = HostCycle::from_ids(1..=n).map_err(BridgeError::from)?;
    let v = VertexId;
    let mut chords = vec![vec![Edge::new(v(1), v(k as u32 + 1))]];
    for i in 2..=k as u32 {
        chords.push(vec![Edge::new(v(i), v(n + 2 - i))]);
    }
    Ok(Instance::from_edges(host, chords)?)
}

/// `K_{2,3}` as the 4-cycle `1,2,3,4` with the bridge `1-5-3`.
pub fn gen_k23() -> Instance {
    let v = VertexId;
    let host = HostCycle::from_ids(1..=4).expect("valid host");
    Instance::from_edges(host, vec![vec![Edge::new(v(1), v(5)), Edge::new(v(5), v(3))]]).expect("valid instance")
}

/// Why a negative example must be refused.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Rejection {
    OverlapDisconnected,
    OverlapCycle,
}

/// A graph with a host cycle and a chosen set of bridges that violates the
/// tree-overlap requirement.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Negative {
    pub name: &'static str,
    /// The whole graph, host edges included.
    pub graph: Vec<Edge>,
    pub host: HostCycle,
    /// Edge sets of the selected bridges.
    pub bridges: Vec<Vec<Edge>>,
    pub expected: Rejection,
}

impl Negative {
    pub fn instance(&self) -> Result<Instance, BridgeError> {
        Instance::from_edges(self.host.clone(), self.bridges.clone())
    }
}

/// Two examples where the length bound fails without a tree overlap graph.
///
/// The first is the hexagon `1..6` with bridges `1-7-3` and `4-8-6`, which
/// do not overlap and have total length 4 against a bound of 3. The second is
/// the Petersen graph around the 9-cycle `1..9` missing vertex 0: the claw at
/// 0 and the chords `{2,6}`, `{3,8}` overlap pairwise, with total length 5
/// against a bound of 4.
pub fn gen_negatives() -> Vec<Negative> {
    let v = VertexId;
    let e = |a: u32, b: u32| Edge::new(v(a), v(b));
    let ring = |n: u32| (1..=n).map(move |i| e(i, i % n + 1));

    let hex = HostCycle::from_ids(1..=6).expect("valid host");
    let b1 = vec![e(1, 7), e(7, 3)];
    let b2 = vec![e(4, 8), e(8, 6)];
    let mut g1: Vec<Edge> = ring(6).collect();
    g1.extend(b1.iter().chain(&b2).copied());

    let nine = HostCycle::from_ids(1..=9).expect("valid host");
    let claw = vec![e(0, 1), e(0, 4), e(0, 7)];
    let mut petersen: Vec<Edge> = ring(9).collect();
    petersen.extend(claw.iter().copied());
    petersen.extend([e(2, 6), e(3, 8), e(5, 9)]);

    vec![
        Negative {
            name: "separated-bridges",
            graph: g1,
            host: hex,
            bridges: vec![b1, b2],
            expected: Rejection::OverlapDisconnected,
        },
        Negative {
            name: "petersen",
            graph: petersen,
            host: nine,
            bridges: vec![claw, vec![e(2, 6)], vec![e(3, 8)]],
            expected: Rejection::OverlapCycle,
        },
    ]
}

/// Instance of every bridge of `graph` with respect to `host`, each taken as
/// given; fails when a bridge is not a tree with leaves on the host.
pub fn instance_of_graph(graph: &[Edge], host: &HostCycle) -> Result<Instance, BridgeError> {
    let raw = decompose_bridges(graph, host)?;
    Instance::from_edges(host.clone(), raw.into_iter().map(|b| b.edges).collect())
}
