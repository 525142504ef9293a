//! The auxiliary 2-in/2-out multidigraph built from a composition of `n`.
//!
//! Vertices are `v(i, j)` for part `i` and position `j` inside the part (both
//! zero-based here). With a single part the digraph is a bidirected `n`-cycle.
//! With `k >= 2` parts each part is a bidirected path, and two directed rings
//! run through the parts: one through the first vertices, one through the last.
//! Ring arcs carry key 0 (first-vertex ring) and key 1 (last-vertex ring), so
//! the two rings stay distinct when consecutive parts have size one.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Arc, Dicycle, VertexId};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AuxError {
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("arc {0} is not in the digraph")]
    ArcAbsent(Arc),
    #[error("{n} vertices exceeds the exhaustive cut bound {cap}")]
    TooLarge { n: usize, cap: usize },
    #[error("cut needs at least two vertices")]
    TooSmall,
}

/// An ordered composition `(p_1, ..., p_k)` of `n` into positive parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Partition(Vec<usize>);

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self, AuxError> {
        if parts.is_empty() {
            return Err(AuxError::InvalidPartition("no parts".into()));
        }
        if parts.contains(&0) {
            return Err(AuxError::InvalidPartition("parts must be positive".into()));
        }
        if parts.iter().sum::<usize>() < 2 {
            // a single vertex would need a loop
            return Err(AuxError::InvalidPartition("n must be at least 2".into()));
        }
        Ok(Partition(parts))
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn k(&self) -> usize {
        self.0.len()
    }

    pub fn n(&self) -> usize {
        self.0.iter().sum()
    }
}

impl TryFrom<Vec<usize>> for Partition {
    type Error = AuxError;
    fn try_from(v: Vec<usize>) -> Result<Self, AuxError> {
        Partition::new(v)
    }
}

impl From<Partition> for Vec<usize> {
    fn from(p: Partition) -> Vec<usize> {
        p.0
    }
}

impl std::str::FromStr for Partition {
    type Err = AuxError;
    fn from_str(s: &str) -> Result<Self, AuxError> {
        let parts = s
            .split(',')
            .map(|t| t.trim().parse::<usize>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| AuxError::InvalidPartition(e.to_string()))?;
        Partition::new(parts)
    }
}

impl std::fmt::Display for Partition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", s.join(","))
    }
}

/// All compositions of `n` (there are `2^(n-1)`).
pub fn compositions(n: usize) -> Vec<Partition> {
    if n < 2 {
        return Vec::new();
    }
    (0u64..1 << (n - 1))
        .map(|cuts| {
            let mut parts = Vec::new();
            let mut run = 1;
            for bit in 0..n - 1 {
                if cuts >> bit & 1 == 1 {
                    parts.push(run);
                    run = 1;
                } else {
                    run += 1;
                }
            }
            parts.push(run);
            Partition(parts)
        })
        .collect()
}

/// Which construction rule produced an arc.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Role {
    /// `v(i, j) -> v(i, j+1)`, wrapping when there is a single part.
    Forward(usize, usize),
    /// `v(i, j+1) -> v(i, j)`.
    Backward(usize, usize),
    /// `v(i, 0) -> v(i+1, 0)`.
    FirstRing(usize),
    /// `v(i, last) -> v(i+1, last)`.
    LastRing(usize),
}

#[derive(Clone, Debug)]
pub struct AuxDigraph {
    partition: Partition,
    offsets: Vec<u32>,
    arcs: Vec<Arc>,
    roles: BTreeMap<Arc, Role>,
}

pub fn build_aux(eta: &Partition) -> AuxDigraph {
    let parts = eta.parts();
    let mut offsets = Vec::with_capacity(parts.len());
    let mut acc = 0u32;
    for &p in parts {
        offsets.push(acc);
        acc += p as u32;
    }
    let mut d = AuxDigraph { partition: eta.clone(), offsets, arcs: Vec::new(), roles: BTreeMap::new() };
    let k = parts.len();
    let mut roles = Vec::new();
    if k == 1 {
        for j in 0..parts[0] {
            roles.push(Role::Forward(0, j));
            roles.push(Role::Backward(0, j));
        }
    } else {
        for (i, &p) in parts.iter().enumerate() {
            for j in 0..p - 1 {
                roles.push(Role::Forward(i, j));
                roles.push(Role::Backward(i, j));
            }
        }
        for i in 0..k {
            roles.push(Role::FirstRing(i));
            roles.push(Role::LastRing(i));
        }
    }
    for r in roles {
        let a = d.arc_of(r);
        let prev = d.roles.insert(a, r);
        debug_assert!(prev.is_none(), "duplicate arc {a}");
        d.arcs.push(a);
    }
    d
}

impl AuxDigraph {
    pub fn partition(&self) -> &Partition {
        &self.partition
    }

    pub fn vertex_count(&self) -> usize {
        self.partition.n()
    }

    /// Vertex `v(part, index)`, zero-based.
    pub fn vertex(&self, part: usize, index: usize) -> VertexId {
        VertexId(self.offsets[part] + index as u32)
    }

    /// Inverse of [`AuxDigraph::vertex`].
    pub fn locate(&self, v: VertexId) -> Option<(usize, usize)> {
        let part = self.offsets.partition_point(|&o| o <= v.0).checked_sub(1)?;
        let index = (v.0 - self.offsets[part]) as usize;
        (index < self.partition.parts()[part]).then_some((part, index))
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> {
        (0..self.vertex_count() as u32).map(VertexId)
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    pub fn contains_arc(&self, a: Arc) -> bool {
        self.roles.contains_key(&a)
    }

    pub fn in_degree(&self, v: VertexId) -> usize {
        self.arcs.iter().filter(|a| a.head == v).count()
    }

    pub fn out_degree(&self, v: VertexId) -> usize {
        self.arcs.iter().filter(|a| a.tail == v).count()
    }

    fn part_len(&self, i: usize) -> usize {
        self.partition.parts()[i]
    }

    fn arc_of(&self, r: Role) -> Arc {
        let k = self.partition.k();
        match r {
            Role::Forward(_, j) if k == 1 => {
                let n = self.part_len(0);
                Arc::keyed(self.vertex(0, j), self.vertex(0, (j + 1) % n), self.single_ring_key(j))
            }
            Role::Backward(_, j) if k == 1 => {
                let n = self.part_len(0);
                Arc::keyed(self.vertex(0, (j + 1) % n), self.vertex(0, j), self.single_ring_key(j))
            }
            Role::Forward(i, j) => Arc::new(self.vertex(i, j), self.vertex(i, j + 1)),
            Role::Backward(i, j) => Arc::new(self.vertex(i, j + 1), self.vertex(i, j)),
            Role::FirstRing(i) => Arc::keyed(self.vertex(i, 0), self.vertex((i + 1) % k, 0), 0),
            Role::LastRing(i) => {
                let i1 = (i + 1) % k;
                Arc::keyed(self.vertex(i, self.part_len(i) - 1), self.vertex(i1, self.part_len(i1) - 1), 1)
            }
        }
    }

    // with n = 2 the two ring steps join the same pair, so the wrap step gets key 1
    fn single_ring_key(&self, j: usize) -> u8 {
        u8::from(self.part_len(0) == 2 && j == 1)
    }

    /// Reverses positions inside every part; swaps the two rings.
    fn mirror(&self, r: Role) -> Role {
        match r {
            Role::Forward(i, j) if self.partition.k() > 1 => Role::Backward(i, self.part_len(i) - 2 - j),
            Role::Backward(i, j) if self.partition.k() > 1 => Role::Forward(i, self.part_len(i) - 2 - j),
            Role::FirstRing(i) => Role::LastRing(i),
            Role::LastRing(i) => Role::FirstRing(i),
            other => other,
        }
    }

    /// Two dicycles through `arc` that share nothing but `arc`.
    pub fn two_dicycles(&self, arc: Arc) -> Result<(Dicycle, Dicycle), AuxError> {
        let role = *self.roles.get(&arc).ok_or(AuxError::ArcAbsent(arc))?;
        let (c1, c2) = match role {
            Role::Backward(..) | Role::LastRing(..) if self.partition.k() > 1 => {
                let (m1, m2) = self.role_chains(self.mirror(role));
                let back = |rs: Vec<Role>| rs.into_iter().map(|r| self.mirror(r)).collect::<Vec<_>>();
                (back(m1), back(m2))
            }
            _ => self.role_chains(role),
        };
        let to_cycle = |rs: Vec<Role>| {
            Dicycle::new(rs.into_iter().map(|r| self.arc_of(r)).collect()).expect("construction yields a dicycle")
        };
        Ok((to_cycle(c1), to_cycle(c2)))
    }

    fn role_chains(&self, role: Role) -> (Vec<Role>, Vec<Role>) {
        let k = self.partition.k();
        let next = |i: usize, s: usize| (i + s) % k;
        match role {
            Role::Forward(_, j) if k == 1 => {
                let n = self.part_len(0);
                let long = (0..n).map(|s| Role::Forward(0, (j + s) % n)).collect();
                (vec![role, Role::Backward(0, j)], long)
            }
            Role::Backward(_, j) if k == 1 => {
                let n = self.part_len(0);
                let long = (0..n).map(|s| Role::Backward(0, (j + n - s) % n)).collect();
                (vec![role, Role::Forward(0, j)], long)
            }
            Role::Forward(i, j) => {
                let mut long = Vec::new();
                long.extend((j..self.part_len(i) - 1).map(|t| Role::Forward(i, t)));
                long.push(Role::LastRing(i));
                let i1 = next(i, 1);
                long.extend((0..self.part_len(i1) - 1).rev().map(|t| Role::Backward(i1, t)));
                long.extend((1..k).map(|s| Role::FirstRing(next(i, s))));
                long.extend((0..j).map(|t| Role::Forward(i, t)));
                (vec![role, Role::Backward(i, j)], long)
            }
            Role::FirstRing(i) => {
                let short = (0..k).map(|s| Role::FirstRing(next(i, s))).collect();
                let i1 = next(i, 1);
                let mut long = vec![role];
                long.extend((0..self.part_len(i1) - 1).map(|t| Role::Forward(i1, t)));
                long.extend((1..k).map(|s| Role::LastRing(next(i, s))));
                long.extend((0..self.part_len(i) - 1).rev().map(|t| Role::Backward(i, t)));
                (short, long)
            }
            Role::Backward(..) | Role::LastRing(..) => unreachable!("mirrored by the caller"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CutMode {
    /// Every vertex subset; fails above [`EXHAUSTIVE_CUT_CAP`] vertices.
    Exhaustive,
    /// Repeated random contraction; an upper bound that is exact with high probability.
    Randomized { trials: usize, seed: u64 },
}

pub const EXHAUSTIVE_CUT_CAP: usize = 16;

/// Minimum number of underlying edges between `X` and its complement.
pub fn min_undirected_cut(d: &AuxDigraph, mode: CutMode) -> Result<usize, AuxError> {
    let n = d.vertex_count();
    if n < 2 {
        return Err(AuxError::TooSmall);
    }
    match mode {
        CutMode::Exhaustive => {
            if n > EXHAUSTIVE_CUT_CAP {
                return Err(AuxError::TooLarge { n, cap: EXHAUSTIVE_CUT_CAP });
            }
            let full = (1u32 << n) - 1;
            // fix vertex 0 inside X; complements give the same cut
            let best = (0..1u32 << (n - 1))
                .map(|rest| (rest << 1) | 1)
                .filter(|&x| x != full)
                .map(|x| cut_size(d, x))
                .min()
                .expect("n >= 2 leaves a proper subset");
            Ok(best)
        }
        CutMode::Randomized { trials, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut best = usize::MAX;
            for _ in 0..trials.max(1) {
                best = best.min(contract_once(d, &mut rng));
            }
            Ok(best)
        }
    }
}

fn cut_size(d: &AuxDigraph, x: u32) -> usize {
    d.arcs().iter().filter(|a| (x >> a.tail.0 & 1) != (x >> a.head.0 & 1)).count()
}

fn contract_once(d: &AuxDigraph, rng: &mut ChaCha8Rng) -> usize {
    let n = d.vertex_count();
    let mut label: Vec<usize> = (0..n).collect();
    let mut edges: Vec<(usize, usize)> = d.arcs().iter().map(|a| (a.tail.0 as usize, a.head.0 as usize)).collect();
    edges.shuffle(rng);
    let mut groups = n;
    let find = |label: &mut Vec<usize>, mut x: usize| {
        while label[x] != x {
            label[x] = label[label[x]];
            x = label[x];
        }
        x
    };
    while groups > 2 {
        let live: Vec<(usize, usize)> =
            edges.iter().copied().filter(|&(a, b)| find(&mut label, a) != find(&mut label, b)).collect();
        if live.is_empty() {
            break;
        }
        let (a, b) = live[rng.gen_range(0..live.len())];
        let (ra, rb) = (find(&mut label, a), find(&mut label, b));
        label[ra] = rb;
        groups -= 1;
        edges = live;
    }
    edges.iter().filter(|&&(a, b)| find(&mut label, a) != find(&mut label, b)).count()
}
