use std::collections::BTreeSet;

use crate::bridges::Instance;
use crate::graph::VertexId;

use super::ConstructError;

/// A leaf of the overlap tree and the shortest host segment holding all of
/// its attachments, which starts and ends at the leaf's own attachments.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeafSegment {
    pub leaf: usize,
    /// The only bridge overlapping `leaf`.
    pub neighbor: usize,
    pub u: VertexId,
    pub v: VertexId,
}

/// Picks the shortest segment over all leaves and gaps whose interior carries
/// attachments of the leaf and its neighbour only.
///
/// Ties go to the smaller bridge index, then to the smaller start vertex id.
pub fn choose_leaf_segment(inst: &Instance) -> Result<LeafSegment, ConstructError> {
    let og = inst.overlap_graph();
    let host = inst.host();
    let mut best: Option<(usize, usize, VertexId, LeafSegment)> = None;
    for leaf in 0..inst.bridge_count() {
        let nbrs = og.neighbors(leaf);
        let [neighbor] = nbrs[..] else { continue };
        let atts = inst.bridges()[leaf].attachments();
        let m = atts.len();
        for g in 0..m {
            let (u, v) = (atts[(g + 1) % m], atts[g]);
            let len = host.distance(u, v)?;
            let clean =
                host.segment_vertices(u, v)?.iter().filter_map(|&x| inst.owner(x)).all(|o| o == leaf || o == neighbor);
            if !clean {
                continue;
            }
            let key = (len, leaf, u);
            if best.as_ref().is_none_or(|(l, i, s, _)| key < (*l, *i, *s)) {
                best = Some((len, leaf, u, LeafSegment { leaf, neighbor, u, v }));
            }
        }
    }
    best.map(|(_, _, _, s)| s).ok_or(ConstructError::NoLeafSegment)
}

/// How the ends of the leaf segment sit next to the remaining bridges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WitnessCase {
    /// Both ends are flanked by the neighbour. `a` precedes `u`; `b` is the
    /// first neighbour attachment after `v` followed by a third bridge.
    Neither { a: VertexId, b: VertexId },
    /// Only `u` is flanked by a third bridge, at `w`. `x` is the tree
    /// neighbour of `b` inside the neighbour bridge.
    First { w: VertexId, b: VertexId, x: VertexId },
    /// Only `v` is flanked by a third bridge; handled by reflecting the host.
    Last,
    /// `w` precedes `u` and `z` follows `v`, both on third bridges; `x` is the
    /// branch vertex for the two gadget edges.
    Both { w: VertexId, z: VertexId, x: VertexId },
}

pub(crate) fn pred_attachment(inst: &Instance, v: VertexId) -> Result<VertexId, ConstructError> {
    let host = inst.host();
    let mut cur = host.predecessor(v)?;
    while !inst.is_attachment(cur) {
        cur = host.predecessor(cur)?;
    }
    Ok(cur)
}

pub(crate) fn succ_attachment(inst: &Instance, v: VertexId) -> Result<VertexId, ConstructError> {
    let host = inst.host();
    let mut cur = host.successor(v)?;
    while !inst.is_attachment(cur) {
        cur = host.successor(cur)?;
    }
    Ok(cur)
}

/// Runs of neighbour attachments strictly inside the segment, clockwise.
pub(crate) fn inner_blocks(inst: &Instance, seg: &LeafSegment) -> Result<Vec<Vec<VertexId>>, ConstructError> {
    let mut runs: Vec<Vec<VertexId>> = Vec::new();
    let mut open = false;
    for x in inst.host().segment_vertices(seg.u, seg.v)? {
        match inst.owner(x) {
            Some(o) if o == seg.neighbor => {
                if open {
                    runs.last_mut().expect("open run").push(x);
                } else {
                    runs.push(vec![x]);
                    open = true;
                }
            }
            Some(_) => open = false,
            None => {}
        }
    }
    Ok(runs)
}

pub fn classify_witness_case(inst: &Instance, seg: &LeafSegment) -> Result<WitnessCase, ConstructError> {
    let third = |x: VertexId| inst.owner(x).is_some_and(|o| o != seg.leaf && o != seg.neighbor);
    let w = pred_attachment(inst, seg.u)?;
    let z = succ_attachment(inst, seg.v)?;
    match (third(w), third(z)) {
        (false, false) => {
            if inst.owner(w) != Some(seg.neighbor) {
                return Err(ConstructError::WitnessScanFailed(format!(
                    "attachment {w} before the segment is not on the neighbour bridge"
                )));
            }
            Ok(WitnessCase::Neither { a: w, b: scan_b(inst, seg)? })
        }
        (true, false) => {
            let b = scan_b(inst, seg)?;
            let x = match inst.bridges()[seg.neighbor].neighbors(b) {
                [x] if !inst.host().contains(*x) => *x,
                _ => return Err(ConstructError::XChoiceInvalid),
            };
            Ok(WitnessCase::First { w, b, x })
        }
        (false, true) => Ok(WitnessCase::Last),
        (true, true) => Ok(WitnessCase::Both { w, z, x: choose_x(inst, seg)? }),
    }
}

/// First neighbour attachment after `v` whose clockwise successor attachment
/// is on a third bridge.
fn scan_b(inst: &Instance, seg: &LeafSegment) -> Result<VertexId, ConstructError> {
    let third = |x: VertexId| inst.owner(x).is_some_and(|o| o != seg.leaf && o != seg.neighbor);
    let mut cur = succ_attachment(inst, seg.v)?;
    while cur != seg.u {
        let next = succ_attachment(inst, cur)?;
        if inst.owner(cur) == Some(seg.neighbor) && third(next) {
            return Ok(cur);
        }
        cur = next;
    }
    Err(ConstructError::WitnessScanFailed(format!("no neighbour attachment after {} borders a third bridge", seg.v)))
}

/// The branch vertex for the two-gadget case.
///
/// With corner attachments `f1, l1` (first and last of the first inner run)
/// and `f2, l2` (of the last inner run): if all four coincide, the tree
/// neighbour of that attachment. Otherwise the vertex of maximum degree in the
/// subtree spanned by the corners, among its non-leaves, restricted to the
/// tree path `l1..l2` when `l1 != l2`; ties go to the smaller id.
fn choose_x(inst: &Instance, seg: &LeafSegment) -> Result<VertexId, ConstructError> {
    let t = &inst.bridges()[seg.neighbor];
    let runs = inner_blocks(inst, seg)?;
    let (Some(first), Some(last)) = (runs.first(), runs.last()) else {
        return Err(ConstructError::XChoiceInvalid);
    };
    let corners = [first[0], *first.last().expect("nonempty"), last[0], *last.last().expect("nonempty")];
    let distinct: BTreeSet<VertexId> = corners.iter().copied().collect();
    let x = if distinct.len() == 1 {
        match t.neighbors(corners[0]) {
            [x] => Some(*x),
            _ => None,
        }
    } else {
        let sub = t.spanning_subtree(&distinct);
        let mut deg = std::collections::BTreeMap::<VertexId, usize>::new();
        for e in &sub {
            let (p, q) = e.ends();
            *deg.entry(p).or_default() += 1;
            *deg.entry(q).or_default() += 1;
        }
        let on_path: Option<BTreeSet<VertexId>> = (corners[1] != corners[3])
            .then(|| t.path(corners[1], corners[3]))
            .transpose()?
            .map(|p| p.into_iter().collect());
        deg.iter()
            .filter(|(_, &d)| d >= 2)
            .filter(|(v, _)| on_path.as_ref().is_none_or(|p| p.contains(v)))
            .max_by(|(va, da), (vb, db)| da.cmp(db).then(vb.cmp(va)))
            .map(|(v, _)| *v)
    };
    match x {
        Some(x) if !inst.host().contains(x) => Ok(x),
        _ => Err(ConstructError::XChoiceInvalid),
    }
}
