use crate::bridges::Instance;
use crate::graph::{Direction, VertexId};

use super::{closed, host_arcs, tree_arcs, ConstructError, CycleFamily};

/// Two dicycles per pair of clockwise-consecutive attachments of the only bridge.
pub fn base_one(inst: &Instance) -> Result<CycleFamily, ConstructError> {
    let [t] = inst.bridges() else {
        return Err(ConstructError::InternalRecursionInvariantBroken(format!(
            "single-bridge step called with {} bridges",
            inst.bridge_count()
        )));
    };
    let host = inst.host();
    let leaves = t.attachments();
    let n = leaves.len();
    let mut fam = CycleFamily::default();
    for i in 0..n {
        let (x, y) = (leaves[i], leaves[(i + 1) % n]);
        fam.push(closed([tree_arcs(t, x, y)?, host_arcs(host, x, y, Direction::Reverse)?])?);
        fam.push(closed([tree_arcs(t, y, x)?, host_arcs(host, x, y, Direction::Forward)?])?);
    }
    Ok(fam)
}

/// Maximal runs of each bridge's attachments, starting with a run of bridge 0.
///
/// Returns `(U, V)` where `U[i]` and `V[i]` are the `i`-th runs of bridge 0
/// and bridge 1 in clockwise order, `U[i]` directly before `V[i]`.
type Runs = Vec<Vec<VertexId>>;

pub(crate) fn blocks(inst: &Instance) -> Result<(Runs, Runs), ConstructError> {
    let cyc = inst.attachment_cycle();
    let n = cyc.len();
    let start =
        (0..n).find(|&i| cyc[i].1 == 0 && cyc[(i + n - 1) % n].1 == 1).ok_or(ConstructError::BlockStructureNotFound)?;
    let mut runs: Vec<(usize, Vec<VertexId>)> = Vec::new();
    for s in 0..n {
        let (v, owner) = cyc[(start + s) % n];
        match runs.last_mut() {
            Some((o, run)) if *o == owner => run.push(v),
            _ => runs.push((owner, vec![v])),
        }
    }
    if runs.len() < 4 {
        return Err(ConstructError::BlockStructureNotFound);
    }
    let (mut us, mut vs) = (Vec::new(), Vec::new());
    for (owner, run) in runs {
        if owner == 0 {
            us.push(run);
        } else {
            vs.push(run);
        }
    }
    Ok((us, vs))
}

/// The two-bridge family: bridge 0 plays the first tree, bridge 1 the second.
///
/// Within each run, consecutive attachments get the two single-bridge
/// dicycles. Across runs, every `i` gets one dicycle joining the first
/// attachments of the second tree's runs `i` and `i+1` through the last
/// attachments of the first tree's runs, and one joining the last attachments
/// of the second tree's runs `i-1` and `i` through the first attachments of
/// the first tree's runs.
pub fn base_two(inst: &Instance) -> Result<CycleFamily, ConstructError> {
    let [t1, t2] = inst.bridges() else {
        return Err(ConstructError::InternalRecursionInvariantBroken(format!(
            "two-bridge step called with {} bridges",
            inst.bridge_count()
        )));
    };
    let host = inst.host();
    let (us, vs) = blocks(inst)?;
    let k = us.len();
    let mut fam = CycleFamily::default();
    for (runs, t) in [(&us, t1), (&vs, t2)] {
        for run in runs.iter() {
            for w in run.windows(2) {
                let (x, y) = (w[0], w[1]);
                fam.push(closed([tree_arcs(t, x, y)?, host_arcs(host, x, y, Direction::Reverse)?])?);
                fam.push(closed([tree_arcs(t, y, x)?, host_arcs(host, x, y, Direction::Forward)?])?);
            }
        }
    }
    let first = |run: &Vec<VertexId>| run[0];
    let last = |run: &Vec<VertexId>| *run.last().expect("runs are nonempty");
    for i in 0..k {
        let next = (i + 1) % k;
        let prev = (i + k - 1) % k;
        fam.push(closed([
            tree_arcs(t2, first(&vs[i]), first(&vs[next]))?,
            host_arcs(host, last(&us[next]), first(&vs[next]), Direction::Reverse)?,
            tree_arcs(t1, last(&us[next]), last(&us[i]))?,
            host_arcs(host, last(&us[i]), first(&vs[i]), Direction::Forward)?,
        ])?);
        fam.push(closed([
            tree_arcs(t2, last(&vs[prev]), last(&vs[i]))?,
            host_arcs(host, last(&vs[i]), first(&us[next]), Direction::Forward)?,
            tree_arcs(t1, first(&us[next]), first(&us[i]))?,
            host_arcs(host, last(&vs[prev]), first(&us[i]), Direction::Reverse)?,
        ])?);
    }
    Ok(fam)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::aux::{build_aux, Partition};
    use crate::graph::{Dicycle, Edge, HostCycle};
    use crate::tree_cover::{path_family, Labeling};
    use crate::verify::verify_feasible;

    fn v(x: u32) -> VertexId {
        VertexId(x)
    }

    fn e(a: u32, b: u32) -> Edge {
        Edge::new(v(a), v(b))
    }

    fn inst(host: std::ops::RangeInclusive<u32>, bridges: Vec<Vec<Edge>>) -> Instance {
        Instance::from_edges(HostCycle::from_ids(host).unwrap(), bridges).unwrap()
    }

    fn k23() -> Instance {
        inst(1..=4, vec![vec![e(1, 5), e(5, 3)]])
    }

    #[test]
    fn k23_family() {
        let g = k23();
        let fam = base_one(&g).unwrap();
        assert_eq!(fam.len(), 4);
        let walk = |ids: &[u32]| Dicycle::from_walk(&ids.iter().map(|&x| v(x)).collect::<Vec<_>>()).unwrap();
        let mut expected = vec![walk(&[1, 5, 3, 2]), walk(&[3, 5, 1, 2]), walk(&[3, 5, 1, 4]), walk(&[1, 5, 3, 4])];
        expected.sort();
        assert_eq!(fam.clone().sorted().into_vec(), expected);
        let counts = fam.edge_counts();
        for h in [e(1, 2), e(2, 3), e(3, 4), e(4, 1)] {
            assert_eq!(counts[&h], 2);
        }
        assert_eq!(counts[&e(1, 5)], 4);
        assert_eq!(counts[&e(3, 5)], 4);
        assert!(verify_feasible(&g, &fam).pass);
    }

    #[test]
    fn star_on_hexagon() {
        let g = inst(1..=6, vec![vec![e(1, 10), e(3, 10), e(5, 10)]]);
        let fam = base_one(&g).unwrap();
        assert_eq!(fam.len(), 6);
        let counts = fam.edge_counts();
        for leaf in [1, 3, 5] {
            assert_eq!(counts[&e(leaf, 10)], 4);
        }
        assert!(verify_feasible(&g, &fam).pass);
    }

    #[test]
    fn tree_side_matches_path_family() {
        let g = inst(1..=10, vec![vec![e(1, 20), e(20, 21), e(21, 4), e(21, 6), e(20, 9)]]);
        let t = &g.bridges()[0];
        let fam = base_one(&g).unwrap();
        let mut from_cycles: Vec<Vec<VertexId>> = fam
            .iter()
            .map(|c| {
                let start = c.arcs().iter().position(|a| t.is_attachment(a.tail) && t.contains(a.head)).unwrap();
                let mut path = vec![c.arcs()[start].tail];
                for a in c.arcs().iter().cycle().skip(start) {
                    path.push(a.head);
                    if t.is_attachment(a.head) {
                        break;
                    }
                }
                path
            })
            .collect();
        let eta = Partition::new(vec![t.attachments().len()]).unwrap();
        let lab = Labeling::in_order(t.attachments(), &build_aux(&eta)).unwrap();
        let mut from_paths = path_family(t, &eta, &lab).unwrap();
        from_cycles.sort();
        from_paths.sort();
        assert_eq!(from_cycles, from_paths);
    }

    #[test]
    fn crossing_chords() {
        // chords 1-3 and 2-4 subdivided so both bridges are proper trees
        let g = inst(1..=4, vec![vec![e(1, 5), e(5, 3)], vec![e(2, 6), e(6, 4)]]);
        let fam = base_two(&g).unwrap();
        assert_eq!(fam.len(), 4);
        assert!(verify_feasible(&g, &fam).pass);
    }

    #[test]
    fn two_stars_on_octagon() {
        let t1 = vec![e(1, 20), e(2, 20), e(5, 20), e(6, 20)];
        let t2 = vec![e(3, 21), e(4, 21), e(7, 21), e(8, 21)];
        let g = inst(1..=8, vec![t1, t2]);
        let (us, vs) = blocks(&g).unwrap();
        assert_eq!(us, vec![vec![v(1), v(2)], vec![v(5), v(6)]]);
        assert_eq!(vs, vec![vec![v(3), v(4)], vec![v(7), v(8)]]);
        let fam = base_two(&g).unwrap();
        assert_eq!(fam.len(), 2 * 4 + 2 * 2);
        let report = verify_feasible(&g, &fam);
        assert!(report.pass, "{report:?}");
    }

    #[test]
    fn rotation_does_not_change_the_family() {
        let t1 = vec![e(1, 20), e(2, 20), e(6, 20)];
        let t2 = vec![e(4, 21), e(8, 21), e(9, 21)];
        let a = inst(1..=10, vec![t1.clone(), t2.clone()]);
        let rotated = Instance::from_edges(HostCycle::from_ids((5..=10).chain(1..=4)).unwrap(), vec![t1, t2]).unwrap();
        assert_eq!(base_two(&a).unwrap().sorted(), base_two(&rotated).unwrap().sorted());
        assert!(verify_feasible(&a, &base_two(&a).unwrap()).pass);
    }

    #[test]
    fn separated_bridges_have_no_blocks() {
        let g = inst(1..=6, vec![vec![e(1, 7), e(7, 3)], vec![e(4, 8), e(8, 6)]]);
        assert_eq!(base_two(&g), Err(ConstructError::BlockStructureNotFound));
    }

    #[test]
    fn wrong_bridge_count() {
        assert!(matches!(base_two(&k23()), Err(ConstructError::InternalRecursionInvariantBroken(_))));
    }
}
