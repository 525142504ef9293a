//! Independent checks of a dicycle family, and small exhaustive oracles.
//!
//! Nothing here trusts the construction: counts, cycle shapes and type tags are
//! recomputed from the instance and the family alone.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;
use thiserror::Error;

use crate::bridges::Instance;
use crate::family::CycleFamily;
use crate::graph::{symdiff_with_host, type_tag, Edge, TypeTag, VertexId};

/// Default vertex bound for [`longest_cycle_len`].
pub const LONGEST_CYCLE_CAP: usize = 18;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error("graph has {vertices} vertices, above the exhaustive bound {cap}")]
    TooLarge { vertices: usize, cap: usize },
    #[error("the host has not been certified as a longest cycle")]
    NotCertified,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EdgeCount {
    pub edge: Edge,
    pub on_host: bool,
    pub count: usize,
    pub ok: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TagCount {
    pub attachment: VertexId,
    pub tag: TypeTag,
    pub count: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FeasibilityReport {
    /// Every instance edge with its dicycle count: 2 required on the host, at least 4 elsewhere.
    pub c1: Vec<EdgeCount>,
    pub c1_pass: bool,
    /// Per dicycle: is its symmetric difference with the host a single cycle.
    pub c2: Vec<bool>,
    pub c2_pass: bool,
    /// `c3[i][j]`: attachments of bridge `j` on dicycle `i`; must be 0 or 2.
    pub c3: Vec<Vec<usize>>,
    pub c3_pass: bool,
    /// Every attachment and tag with the number of dicycles of that type there; must be 1.
    pub c4: Vec<TagCount>,
    pub c4_pass: bool,
    /// Dicycle edges that are not edges of the instance.
    pub foreign_edges: Vec<Edge>,
    pub pass: bool,
}

impl FeasibilityReport {
    /// Names of the failed conditions, e.g. `["C1", "C4"]`.
    pub fn failed(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        for (ok, name) in [
            (self.c1_pass, "C1"),
            (self.c2_pass, "C2"),
            (self.c3_pass, "C3"),
            (self.c4_pass, "C4"),
            (self.foreign_edges.is_empty(), "edges"),
        ] {
            if !ok {
                out.push(name);
            }
        }
        out
    }
}

pub fn verify_feasible(inst: &Instance, fam: &CycleFamily) -> FeasibilityReport {
    let host = inst.host();
    let instance_edges = inst.edge_set();

    let mut counts: BTreeMap<Edge, usize> = instance_edges.iter().map(|&e| (e, 0)).collect();
    let mut foreign = BTreeSet::new();
    for c in fam {
        for e in c.edges() {
            match counts.get_mut(&e) {
                Some(n) => *n += 1,
                None => {
                    foreign.insert(e);
                }
            }
        }
    }
    let c1: Vec<EdgeCount> = counts
        .into_iter()
        .map(|(edge, count)| {
            let on_host = host.has_edge(edge);
            let ok = if on_host { count == 2 } else { count >= 4 };
            EdgeCount { edge, on_host, count, ok }
        })
        .collect();
    let c1_pass = c1.iter().all(|x| x.ok);

    let c2: Vec<bool> = fam.iter().map(|c| symdiff_with_host(host, c).1).collect();
    let c2_pass = c2.iter().all(|&ok| ok);

    let c3: Vec<Vec<usize>> = fam
        .iter()
        .map(|c| {
            inst.bridges().iter().map(|t| t.attachments().iter().filter(|&&a| c.contains_vertex(a)).count()).collect()
        })
        .collect();
    let c3_pass = c3.iter().flatten().all(|&n| n == 0 || n == 2);

    let mut c4 = Vec::new();
    for (a, _) in inst.attachment_cycle() {
        let nbrs = inst.bridge_neighbors(a);
        for tag in TypeTag::ALL {
            let count = fam.iter().filter(|c| type_tag(c, a, host, nbrs) == Some(tag)).count();
            c4.push(TagCount { attachment: a, tag, count });
        }
    }
    let c4_pass = c4.iter().all(|t| t.count == 1);

    let foreign_edges: Vec<Edge> = foreign.into_iter().collect();
    let pass = c1_pass && c2_pass && c3_pass && c4_pass && foreign_edges.is_empty();
    FeasibilityReport { c1, c1_pass, c2, c2_pass, c3, c3_pass, c4, c4_pass, foreign_edges, pass }
}

/// Length of a longest cycle, by exhaustive search; 0 for a forest.
pub fn longest_cycle_len(edges: &[Edge], cap: usize) -> Result<usize, VerifyError> {
    let mut index: BTreeMap<VertexId, usize> = BTreeMap::new();
    for e in edges {
        let (a, b) = e.ends();
        let next = index.len();
        index.entry(a).or_insert(next);
        let next = index.len();
        index.entry(b).or_insert(next);
    }
    let n = index.len();
    if n > cap {
        return Err(VerifyError::TooLarge { vertices: n, cap });
    }
    let mut adj = vec![Vec::new(); n];
    for e in edges.iter().collect::<BTreeSet<_>>() {
        let (a, b) = e.ends();
        let (i, j) = (index[&a], index[&b]);
        adj[i].push(j);
        adj[j].push(i);
    }
    let mut best = 0;
    for start in 0..n {
        // cycles whose smallest vertex is `start`
        let mut on_path = vec![false; n];
        on_path[start] = true;
        longest_from(&adj, start, start, 1, &mut on_path, &mut best);
        if best == n {
            break;
        }
    }
    Ok(best)
}

fn longest_from(adj: &[Vec<usize>], start: usize, cur: usize, len: usize, on_path: &mut [bool], best: &mut usize) {
    for &next in &adj[cur] {
        if next == start && len >= 3 {
            *best = (*best).max(len);
        } else if next > start && !on_path[next] {
            on_path[next] = true;
            longest_from(adj, start, next, len + 1, on_path, best);
            on_path[next] = false;
        }
    }
}

/// Proof that the host of an instance is a longest cycle of its graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LongestCertificate {
    host_len: usize,
}

impl LongestCertificate {
    pub fn host_len(&self) -> usize {
        self.host_len
    }
}

/// `Some` when no cycle of the instance is longer than its host.
pub fn certify_longest(inst: &Instance, cap: usize) -> Result<Option<LongestCertificate>, VerifyError> {
    let longest = longest_cycle_len(&inst.edges(), cap)?;
    let host_len = inst.host().len();
    Ok((longest == host_len).then_some(LongestCertificate { host_len }))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DicycleSplit {
    pub off_host: usize,
    pub on_host: usize,
    pub ok: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VossReport {
    /// Per dicycle: edges off the host must not outnumber edges on it.
    pub per_dicycle: Vec<DicycleSplit>,
    /// Sum over dicycles of host edges used, against twice the host length.
    pub host_edge_uses: usize,
    pub twice_host_len: usize,
    /// Total bridge length against half the host length, rounded down.
    pub lambda_sum: usize,
    pub half_host_len: usize,
    pub pass: bool,
}

/// Total bridge length of `inst` and whether it is at most half the host length.
///
/// Every bridge is a tree whose leaves are its attachments, so its length is
/// its edge count.
pub fn lambda_bound(inst: &Instance) -> (usize, usize, bool) {
    let sum = inst.total_length();
    let half = inst.host().len() / 2;
    (sum, half, sum <= half)
}

/// The counting behind the length bound, valid once the host is known to be longest.
pub fn verify_voss(
    inst: &Instance,
    fam: &CycleFamily,
    cert: Option<&LongestCertificate>,
) -> Result<VossReport, VerifyError> {
    let cert = cert.ok_or(VerifyError::NotCertified)?;
    if cert.host_len != inst.host().len() {
        return Err(VerifyError::NotCertified);
    }
    let host = inst.host();
    let per_dicycle: Vec<DicycleSplit> = fam
        .iter()
        .map(|c| {
            let on_host = c.edges().filter(|&e| host.has_edge(e)).count();
            let off_host = c.len() - on_host;
            DicycleSplit { off_host, on_host, ok: off_host <= on_host }
        })
        .collect();
    let host_edge_uses = per_dicycle.iter().map(|d| d.on_host).sum();
    let twice_host_len = 2 * host.len();
    let (lambda_sum, half_host_len, bound) = lambda_bound(inst);
    let pass = per_dicycle.iter().all(|d| d.ok) && host_edge_uses == twice_host_len && bound;
    Ok(VossReport { per_dicycle, host_edge_uses, twice_host_len, lambda_sum, half_host_len, pass })
}
