use std::collections::BTreeSet;

use crate::bridges::{BridgeTree, Instance};
use crate::graph::{
    contract_path2, dicycle_symdiff, Arc, Dicycle, Direction, Edge, GraphError, HostCycle, TypeTag, VertexId,
};

use super::segment::{choose_leaf_segment, classify_witness_case, LeafSegment, WitnessCase};
use super::{closed, host_arcs, tree_arcs, unique_with_tag, Builder, ConstructError};

pub(crate) fn step(b: &mut Builder, inst: &Instance) -> Result<Vec<Dicycle>, ConstructError> {
    let seg = choose_leaf_segment(inst)?;
    match classify_witness_case(inst, &seg)? {
        WitnessCase::Neither { a, b: bb } => {
            b.stats.case_one += 1;
            case_one(b, inst, &seg, a, bb)
        }
        WitnessCase::First { w, b: bb, x } => {
            b.stats.case_two += 1;
            case_two(b, inst, &seg, w, bb, x)
        }
        WitnessCase::Last => {
            // Mirror the host so the flanked end comes first. Feasibility does
            // not depend on the orientation of the host, so the family built
            // for the mirror is returned as is.
            b.stats.case_two += 1;
            b.stats.reflections += 1;
            let mirror = inst.reflected();
            let mseg = LeafSegment { u: seg.v, v: seg.u, ..seg };
            match classify_witness_case(&mirror, &mseg)? {
                WitnessCase::First { w, b: bb, x } => case_two(b, &mirror, &mseg, w, bb, x),
                other => Err(ConstructError::WitnessScanFailed(format!(
                    "reflection produced {other:?} instead of a flanked first end"
                ))),
            }
        }
        WitnessCase::Both { w, z, x } => {
            b.stats.case_three += 1;
            case_three(b, inst, &seg, w, z, x)
        }
    }
}

/// Attachments of `t` on the clockwise segment `from..to`.
fn attachments_on(
    t: &BridgeTree,
    host: &HostCycle,
    from: VertexId,
    to: VertexId,
) -> Result<BTreeSet<VertexId>, ConstructError> {
    Ok(host.segment_vertices(from, to)?.into_iter().filter(|&x| t.is_attachment(x)).collect())
}

/// The two sub-instances: the neighbour's part on `b..a` with the third
/// bridges, and its part on `a..b` with the leaf (the leaf first, so that it
/// plays the first tree in the two-bridge step).
fn split(
    inst_host: &HostCycle,
    bridges: &[BridgeTree],
    seg: &LeafSegment,
    neighbor: &BridgeTree,
    a: VertexId,
    b: VertexId,
) -> Result<(Instance, Instance), ConstructError> {
    let part = |from, to| -> Result<BridgeTree, ConstructError> {
        let keep = attachments_on(neighbor, inst_host, from, to)?;
        Ok(BridgeTree::new(neighbor.spanning_subtree(&keep), inst_host)?)
    };
    let rebuild = |t: &BridgeTree| BridgeTree::new(t.edges().iter().copied(), inst_host);
    let mut first = vec![part(b, a)?];
    for (i, t) in bridges.iter().enumerate() {
        if i != seg.leaf && i != seg.neighbor {
            first.push(rebuild(t)?);
        }
    }
    let second = vec![rebuild(&bridges[seg.leaf])?, part(a, b)?];
    Ok((Instance::new(inst_host.clone(), first)?, Instance::new(inst_host.clone(), second)?))
}

fn expect_same(found: &Dicycle, expected: &Dicycle, what: &str) -> Result<(), ConstructError> {
    if found == expected {
        Ok(())
    } else {
        Err(ConstructError::ForcedCycleNotFound(format!("{what}: expected {expected}, found {found}")))
    }
}

/// No third bridge next to the segment: split the neighbour at `a` and `b`
/// and drop the four dicycles that run along the split.
fn case_one(
    bld: &mut Builder,
    inst: &Instance,
    seg: &LeafSegment,
    a: VertexId,
    b: VertexId,
) -> Result<Vec<Dicycle>, ConstructError> {
    let host = inst.host();
    let t2 = &inst.bridges()[seg.neighbor];
    let (g1, g2) = split(host, inst.bridges(), seg, t2, a, b)?;
    let fam1 = bld.recurse(&g1)?;
    let fam2 = bld.recurse(&g2)?;

    let expected = [
        (&fam1, &g1, TypeTag::T00, closed([tree_arcs(t2, b, a)?, host_arcs(host, a, b, Direction::Forward)?])?),
        (&fam1, &g1, TypeTag::T01, closed([tree_arcs(t2, a, b)?, host_arcs(host, a, b, Direction::Reverse)?])?),
        (&fam2, &g2, TypeTag::T11, closed([tree_arcs(t2, a, b)?, host_arcs(host, b, a, Direction::Forward)?])?),
        (&fam2, &g2, TypeTag::T10, closed([tree_arcs(t2, b, a)?, host_arcs(host, b, a, Direction::Reverse)?])?),
    ];
    let mut drop1 = Vec::new();
    let mut drop2 = Vec::new();
    for (i, (fam, g, tag, want)) in expected.into_iter().enumerate() {
        let found = unique_with_tag(fam, g, a, tag)?;
        expect_same(found, &want, &format!("type {tag} at {a}"))?;
        if i < 2 {
            drop1.push(want);
        } else {
            drop2.push(want);
        }
    }
    Ok(without(fam1, &drop1).into_iter().chain(without(fam2, &drop2)).collect())
}

/// `fam` minus one occurrence of each dicycle in `drop`.
fn without(mut fam: Vec<Dicycle>, drop: &[Dicycle]) -> Vec<Dicycle> {
    for d in drop {
        if let Some(i) = fam.iter().position(|c| c == d) {
            fam.remove(i);
        }
    }
    fam
}

/// A subdivided host together with the neighbour tree grown by gadget edges.
struct Gadget {
    host: HostCycle,
    neighbor: BridgeTree,
    bridges: Vec<BridgeTree>,
}

impl Gadget {
    /// Splices each `(fresh, after)` into the host after `after` and joins
    /// `fresh` to `x` inside the neighbour tree.
    fn new(
        inst: &Instance,
        seg: &LeafSegment,
        x: VertexId,
        splices: &[(VertexId, VertexId)],
    ) -> Result<Self, ConstructError> {
        let mut host = inst.host().clone();
        for &(fresh, after) in splices {
            host = host.subdivide_after(after, fresh)?;
        }
        let t2 = &inst.bridges()[seg.neighbor];
        let mut edges: Vec<Edge> = t2.edges().to_vec();
        edges.extend(splices.iter().map(|&(fresh, _)| Edge::new(x, fresh)));
        let neighbor = BridgeTree::new(edges, &host)?;
        let mut bridges: Vec<BridgeTree> = inst.bridges().to_vec();
        bridges[seg.neighbor] = neighbor.clone();
        Ok(Gadget { host, neighbor, bridges })
    }
}

/// `other -> x -> fresh` (or the reverse pair) closed up by `host_part`.
fn fan(
    x: VertexId,
    fresh: VertexId,
    other: VertexId,
    into_fresh: bool,
    host_part: Vec<Arc>,
) -> Result<Dicycle, ConstructError> {
    let tree_part = if into_fresh {
        vec![Arc::new(other, x), Arc::new(x, fresh)]
    } else {
        vec![Arc::new(fresh, x), Arc::new(x, other)]
    };
    closed([tree_part, host_part])
}

/// Merges two dicycles along their shared tree path and removes `fresh`.
fn merge(c1: &Dicycle, c2: &Dicycle, fresh: VertexId) -> Result<Dicycle, ConstructError> {
    let joined = dicycle_symdiff(c1, c2).map_err(|e| match e {
        GraphError::OrientationConflict => ConstructError::GadgetOrientationConflict(fresh),
        other => ConstructError::InternalRecursionInvariantBroken(format!("combining at {fresh}: {other}")),
    })?;
    Ok(contract_path2(&joined, fresh)?)
}

/// Checks the four dicycles through the gadget edge at `fresh` whose shape is
/// forced, where `other` is the attachment at the far end of the segment.
fn check_forced(
    g1: (&[Dicycle], &Instance),
    g2: (&[Dicycle], &Instance),
    host: &HostCycle,
    x: VertexId,
    fresh: VertexId,
    other: VertexId,
) -> Result<(), ConstructError> {
    let forced = [
        (g1, TypeTag::T00, fan(x, fresh, other, true, host_arcs(host, fresh, other, Direction::Forward)?)?),
        (g1, TypeTag::T01, fan(x, fresh, other, false, host_arcs(host, fresh, other, Direction::Reverse)?)?),
        (g2, TypeTag::T10, fan(x, fresh, other, true, host_arcs(host, other, fresh, Direction::Reverse)?)?),
        (g2, TypeTag::T11, fan(x, fresh, other, false, host_arcs(host, other, fresh, Direction::Forward)?)?),
    ];
    for ((fam, g), tag, want) in forced {
        let found = unique_with_tag(fam, g, fresh, tag)?;
        expect_same(found, &want, &format!("type {tag} at {fresh}"))?;
    }
    Ok(())
}

/// The flanked end `u` borders a third bridge at `w`: a fresh attachment `a`
/// after `w`, joined to `x`, splits the neighbour tree so that both halves
/// reach past the segment.
fn case_two(
    bld: &mut Builder,
    inst: &Instance,
    seg: &LeafSegment,
    w: VertexId,
    b: VertexId,
    x: VertexId,
) -> Result<Vec<Dicycle>, ConstructError> {
    let a = bld.fresh();
    let gadget = Gadget::new(inst, seg, x, &[(a, w)])?;
    let (g1, g2) = split(&gadget.host, &gadget.bridges, seg, &gadget.neighbor, a, b)?;
    let fam1 = bld.recurse(&g1)?;
    let fam2 = bld.recurse(&g2)?;
    check_forced((&fam1, &g1), (&fam2, &g2), &gadget.host, x, a, b)?;
    for tag in [TypeTag::T11, TypeTag::T10] {
        if unique_with_tag(&fam1, &g1, a, tag)?.contains_vertex(b) {
            return Err(ConstructError::ForcedCycleNotFound(format!("type {tag} dicycle at {a} passes {b}")));
        }
    }
    let new1 = merge(unique_with_tag(&fam1, &g1, a, TypeTag::T11)?, unique_with_tag(&fam2, &g2, a, TypeTag::T00)?, a)?;
    let new2 = merge(unique_with_tag(&fam1, &g1, a, TypeTag::T10)?, unique_with_tag(&fam2, &g2, a, TypeTag::T01)?, a)?;
    let mut out: Vec<Dicycle> = fam1.into_iter().chain(fam2).filter(|c| !c.contains_vertex(a)).collect();
    out.push(new1);
    out.push(new2);
    Ok(out)
}

/// Both ends border third bridges, at `w` before `u` and `z` after `v`: fresh
/// attachments `a` after `w` and `b` before `z`, both joined to `x`.
fn case_three(
    bld: &mut Builder,
    inst: &Instance,
    seg: &LeafSegment,
    w: VertexId,
    z: VertexId,
    x: VertexId,
) -> Result<Vec<Dicycle>, ConstructError> {
    let a = bld.fresh();
    let b = bld.fresh();
    let before_z = inst.host().predecessor(z)?;
    let gadget = Gadget::new(inst, seg, x, &[(a, w), (b, before_z)])?;
    let (g1, g2) = split(&gadget.host, &gadget.bridges, seg, &gadget.neighbor, a, b)?;
    let fam1 = bld.recurse(&g1)?;
    let fam2 = bld.recurse(&g2)?;
    check_forced((&fam1, &g1), (&fam2, &g2), &gadget.host, x, a, b)?;
    let tag = |fam: &[Dicycle], g: &Instance, v: VertexId, t: TypeTag| unique_with_tag(fam, g, v, t).cloned();
    let new1 = merge(&tag(&fam1, &g1, a, TypeTag::T11)?, &tag(&fam2, &g2, a, TypeTag::T00)?, a)?;
    let new2 = merge(&tag(&fam1, &g1, a, TypeTag::T10)?, &tag(&fam2, &g2, a, TypeTag::T01)?, a)?;
    let new3 = merge(&tag(&fam1, &g1, b, TypeTag::T00)?, &tag(&fam2, &g2, b, TypeTag::T11)?, b)?;
    let new4 = merge(&tag(&fam1, &g1, b, TypeTag::T01)?, &tag(&fam2, &g2, b, TypeTag::T10)?, b)?;
    let mut out: Vec<Dicycle> =
        fam1.into_iter().chain(fam2).filter(|c| !c.contains_vertex(a) && !c.contains_vertex(b)).collect();
    out.extend([new1, new2, new3, new4]);
    Ok(out)
}
