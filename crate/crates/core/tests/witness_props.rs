mod common;

use common::{group_element, rng};
use trigonal::linalg::{rank_of_vectors, ratio};
use trigonal::verifier::{verify_tampered, verify_witness_set};
use trigonal::witnesses::Variant;
use trigonal::{
    schedule_for, tamper, verify_witness, witnesses_for, BiTransvectant, Family, Mutation,
    WitnessSet,
};

fn odd_range(from: i64, to: i64) -> impl Iterator<Item = i64> {
    (from..=to).filter(|b| b % 2 == 1)
}

#[test]
fn witnesses_are_annihilated_and_independent() {
    for b in odd_range(5, 101) {
        let sched = schedule_for(b).unwrap();
        let set = witnesses_for(b).unwrap();
        assert!(set.is_well_formed(&sched), "b={b}");
        assert_eq!(set.ws.len(), sched.c);
        let t = BiTransvectant::new(sched.spec());
        for w in &set.ws {
            assert!(t.apply(&set.v, w).unwrap().is_zero(), "b={b}");
        }
        let vectors: Vec<_> = set.ws.iter().map(|w| w.coeffs().to_vec()).collect();
        assert_eq!(rank_of_vectors(&vectors).unwrap(), sched.c, "b={b}");
        let bad = tamper(&set, Mutation::PerturbV);
        assert!(!t.apply(&bad.v, &set.ws[0]).unwrap().is_zero(), "b={b}");
    }
}

#[test]
fn kernel_is_exactly_the_witness_span() {
    for b in odd_range(5, 61) {
        let rep = verify_witness(b).unwrap();
        assert!(rep.pass(), "b={b} failed {:?}", rep.failed());
        assert_eq!(rep.kernel_dim, rep.schedule.c);
        assert!(rep.kernel_equals_span);
    }
}

#[test]
fn families_and_variants_are_assigned() {
    assert_eq!(witnesses_for(7).unwrap().family, Family::B7);
    assert_eq!(witnesses_for(13).unwrap().variant, Some(Variant::Standard));
    assert_eq!(witnesses_for(23).unwrap().variant, Some(Variant::NFourMod5));
    assert_eq!(witnesses_for(73).unwrap().variant, Some(Variant::NFourMod5));
    assert_eq!(witnesses_for(15).unwrap().variant, None);
    for b in [4, 6, 3, -1] {
        assert!(witnesses_for(b).is_err());
    }
}

fn transformed(set: &WitnessSet, f: impl Fn(&trigonal::BiForm) -> trigonal::BiForm) -> WitnessSet {
    WitnessSet {
        v: f(&set.v),
        ws: set.ws.iter().map(&f).collect(),
        ..set.clone()
    }
}

#[test]
fn verdicts_survive_scaling_and_group_action() {
    let mut r = rng(21);
    for b in [5, 7, 9, 11, 13, 23] {
        let sched = schedule_for(b).unwrap();
        let set = witnesses_for(b).unwrap();
        let base = verify_witness_set(&sched, &set).unwrap();

        let scaled = transformed(&set, |p| p.scale(&ratio(-7, 3)));
        let g = group_element(&mut r);
        let moved = transformed(&set, |p| p.act(&g));
        for other in [scaled, moved] {
            let rep = verify_witness_set(&sched, &other).unwrap();
            assert_eq!(rep.pass(), base.pass());
            assert_eq!(rep.cond_iii.rank, base.cond_iii.rank);
            assert_eq!(rep.cond_iv.rank, base.cond_iv.rank);
            assert_eq!(rep.kernel_dim, base.kernel_dim);
        }

        // Tampered sets stay broken after the same transformations.
        let bad = tamper(&set, Mutation::PerturbV);
        let bad_moved = transformed(&bad, |p| p.act(&g));
        assert!(!verify_witness_set(&sched, &bad_moved).unwrap().pass());
    }
}

#[test]
fn each_mutation_breaks_exactly_its_conditions() {
    for b in [5, 9, 13, 7, 23] {
        for (m, expected) in [
            (Mutation::ZeroW, vec!["i", "iv"]),
            (Mutation::DuplicateW, vec!["i", "iv"]),
            (Mutation::PerturbV, vec!["ii"]),
        ] {
            let rep = verify_tampered(b, m).unwrap();
            assert_eq!(rep.failed(), expected, "b={b} {m:?}");
            assert_eq!(rep.mutation, Some(m));
        }
    }
}
