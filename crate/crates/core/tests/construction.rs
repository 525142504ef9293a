use bridgecycles::generate::{gen_extremal, gen_k23, gen_negatives, gen_random, GenParams};
use bridgecycles::{construct, construct_traced, verify_feasible, ConstructError, ConstructStats, Instance};
use proptest::prelude::*;

fn params() -> impl Strategy<Value = GenParams> {
    (1usize..=8, 2usize..=5, 0usize..=5, 0usize..12, any::<u64>()).prop_map(
        |(bridges, max_leaves, max_internal, slack, seed)| GenParams {
            host_len: 2 * bridges * max_leaves + slack,
            bridges,
            max_leaves,
            max_internal,
            seed,
        },
    )
}

fn check(inst: &Instance) -> Result<ConstructStats, TestCaseError> {
    let (fam, stats) = construct_traced(inst).map_err(|e| TestCaseError::fail(e.to_string()))?;
    let r = verify_feasible(inst, &fam);
    prop_assert!(r.pass, "failed {:?}", r.failed());
    let known = inst.vertices();
    prop_assert!(fam.iter().all(|c| c.vertices().all(|v| known.contains(&v))));
    Ok(stats)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn generated_instances_get_feasible_families(p in params()) {
        let inst = gen_random(&p).unwrap();
        check(&inst)?;
    }

    #[test]
    fn mirrored_instances_get_feasible_families(p in params()) {
        let inst = gen_random(&p).unwrap().reflected();
        check(&inst)?;
    }
}

#[test]
fn every_step_kind_is_exercised() {
    let mut total = ConstructStats::default();
    for seed in 0..400u64 {
        let bridges = 1 + (seed % 7) as usize;
        let p = GenParams { host_len: 8 * bridges + (seed % 9) as usize, bridges, seed, ..GenParams::default() };
        let inst = gen_random(&p).unwrap();
        let (fam, s) = construct_traced(&inst).unwrap();
        assert!(verify_feasible(&inst, &fam).pass, "seed {seed}");
        total.base_one += s.base_one;
        total.base_two += s.base_two;
        total.case_one += s.case_one;
        total.case_two += s.case_two;
        total.case_three += s.case_three;
        total.reflections += s.reflections;
        total.subdivided_chords += s.subdivided_chords;
    }
    for (name, n) in [
        ("single bridge", total.base_one),
        ("two bridges", total.base_two),
        ("no third bridge at either end", total.case_one),
        ("third bridge at one end", total.case_two),
        ("third bridges at both ends", total.case_three),
        ("mirrored", total.reflections),
        ("chords", total.subdivided_chords),
    ] {
        assert!(n > 0, "{name} never occurred: {total:?}");
    }
}

#[test]
fn extremal_and_k23() {
    let (fam, stats) = construct_traced(&gen_k23()).unwrap();
    assert_eq!(fam.len(), 4);
    assert_eq!(stats.base_one, 1);
    for k in 2..=9 {
        let g = gen_extremal(k).unwrap();
        let (fam, stats) = construct_traced(&g).unwrap();
        assert_eq!(stats.subdivided_chords, k);
        let r = verify_feasible(&g, &fam);
        assert!(r.pass, "k = {k}: {:?}", r.failed());
    }
}

#[test]
fn negatives_are_rejected_up_front() {
    for neg in gen_negatives() {
        let err = construct(&neg.instance().unwrap()).unwrap_err();
        assert!(err.is_precondition(), "{}: {err}", neg.name);
        assert!(matches!(err, ConstructError::PreconditionViolated(p) if p.reason() == "overlap-not-tree"));
    }
}

#[test]
fn large_instances() {
    for seed in 0..5u64 {
        let p = GenParams { host_len: 200, bridges: 20, max_leaves: 5, max_internal: 6, seed };
        let inst = gen_random(&p).unwrap();
        let fam = construct(&inst).unwrap();
        assert!(verify_feasible(&inst, &fam).pass, "seed {seed}");
    }
}
