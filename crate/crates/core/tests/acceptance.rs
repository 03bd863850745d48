//! Acceptance suite: one test per criterion, each printing a PASS line.
//! Run with `cargo test -p oplm-core --test acceptance -- --nocapture`.

use std::time::{Duration, Instant};

use oplm_core::prover::{self, ProofVerdict, Rule};
use oplm_core::{
    build_lemma1_set, build_system, build_theorem1_set, build_theorem2_set, classify_state,
    lower_bound, nullity_exact, nullity_float, nullity_modp, product_basis, prove,
    verify_strongest, Bipartition, CycNum, Dims, Family, Ket, ModeSpec, StateCategory, StateSet,
    Verdict, DEFAULT_FLOAT_TOL, DEFAULT_PRIMES,
};

type Amp = ((u32, u32, u32), CycNum);

fn one(idx: (u32, u32, u32)) -> Amp {
    (idx, CycNum::one())
}

fn minus(idx: (u32, u32, u32)) -> Amp {
    (idx, CycNum::from_int(-1))
}

fn w(idx: (u32, u32, u32)) -> Amp {
    (idx, CycNum::omega())
}

fn w2(idx: (u32, u32, u32)) -> Amp {
    (idx, CycNum::omega_pow(2))
}

/// The ten printed states of the (3,3,3) set, amplitude for amplitude.
fn lemma1_fixture() -> Vec<(&'static str, Vec<Amp>)> {
    vec![
        ("φ22", vec![one((2, 2, 2)), minus((1, 1, 1))]),
        ("φ20", vec![one((2, 2, 0)), minus((1, 0, 2))]),
        ("φ21", vec![one((2, 2, 1)), minus((0, 1, 2))]),
        ("φ02", vec![one((2, 0, 2)), minus((0, 2, 1))]),
        ("φ12", vec![one((2, 1, 2)), minus((1, 2, 0))]),
        ("φ10", vec![one((2, 1, 0)), minus((0, 2, 2))]),
        ("φ01", vec![one((2, 0, 1)), minus((1, 2, 2))]),
        ("φ00", vec![one((2, 0, 0)), w((0, 0, 2)), w2((0, 2, 0))]),
        ("φ11", vec![one((2, 1, 1)), w((1, 1, 2)), w2((1, 2, 1))]),
    ]
}

/// The eleven additional printed states of the (3,4,5) set.
fn lemma2_extension_fixture() -> Vec<(&'static str, Vec<Amp>)> {
    vec![
        ("φ03", vec![one((2, 0, 3)), minus((0, 2, 3))]),
        ("φ13", vec![one((2, 1, 3)), minus((1, 2, 3))]),
        ("φ04", vec![one((2, 0, 4)), minus((0, 2, 4))]),
        ("φ14", vec![one((2, 1, 4)), minus((1, 2, 4))]),
        ("φ23", vec![one((2, 2, 3)), minus((0, 0, 1))]),
        ("φ24", vec![one((2, 2, 4)), minus((0, 0, 3))]),
        ("φ30", vec![one((2, 3, 0)), minus((0, 3, 2))]),
        ("φ31", vec![one((2, 3, 1)), minus((1, 3, 2))]),
        ("φ32", vec![one((2, 3, 2)), minus((0, 1, 0))]),
        ("φ33", vec![one((2, 3, 3)), minus((0, 1, 3))]),
        ("φ34", vec![one((2, 3, 4)), minus((0, 1, 4))]),
    ]
}

fn fixture_set(dims: Dims, states: &[(&str, Vec<Amp>)], stopper: &str) -> StateSet {
    let mut set = StateSet::new(dims);
    for (label, amps) in states {
        set.push(*label, Ket::from_terms(dims, amps.iter().cloned()).unwrap())
            .unwrap();
    }
    let mut full = Ket::new(dims);
    for i in 0..dims.d1 {
        for j in 0..dims.d2 {
            for k in 0..dims.d3 {
                full.add_term((i, j, k), CycNum::one()).unwrap();
            }
        }
    }
    set.push_stopper(stopper, full).unwrap();
    set
}

fn assert_ket_matches(label: &str, ket: &Ket, amps: &[Amp]) {
    assert_eq!(ket.term_count(), amps.len(), "term count of {label}");
    for (idx, expected) in amps {
        assert_eq!(
            ket.amp_at(*idx),
            Some(expected),
            "amplitude of {label} at {idx:?}"
        );
    }
}

fn exact_nullities(set: &StateSet) -> Vec<usize> {
    Bipartition::ALL
        .iter()
        .map(|b| nullity_exact(&build_system(set, *b).unwrap()).nullity)
        .collect()
}

#[test]
fn criterion_1_lemma1_reproduction() {
    let t = Instant::now();
    let set = build_lemma1_set();
    assert_eq!(set.len(), 10);
    for (label, amps) in lemma1_fixture() {
        assert_ket_matches(label, set.by_label(label).unwrap(), &amps);
    }
    let stopper = set.by_label("S1").unwrap();
    assert_eq!(stopper.term_count(), 27);
    assert!(stopper.amps().all(|(_, a)| *a == CycNum::one()));

    let report = verify_strongest(&set, &ModeSpec::Exact).unwrap();
    assert_eq!(report.overall, Verdict::Trivial);
    for (b, r) in &report.per_cut {
        assert_eq!(r.nullity, 1, "nullity on {b}");
        assert!(r.identity_in_kernel);
    }
    assert!(
        t.elapsed() < Duration::from_secs(5),
        "took {:?}",
        t.elapsed()
    );
    println!("ACCEPTANCE C1 lemma1 reproduction: PASS");
}

#[test]
fn criterion_2_theorem1_desk_scale() {
    for d in [3u32, 4, 5] {
        let t = Instant::now();
        let set = build_theorem1_set(d).unwrap();
        assert_eq!(set.len(), (d * d + 1) as usize);
        assert!(set.is_pairwise_orthogonal());
        let report = verify_strongest(&set, &ModeSpec::Exact).unwrap();
        assert_eq!(report.overall, Verdict::Trivial, "d={d}");
        for (b, r) in &report.per_cut {
            assert_eq!(r.nullity, 1, "d={d} cut {b}");
        }
        assert!(
            t.elapsed() < Duration::from_secs(60),
            "d={d} took {:?}",
            t.elapsed()
        );
    }
    // d = 6: modular certificate on all three cuts (exact run optional)
    let t = Instant::now();
    let set = build_theorem1_set(6).unwrap();
    let report = verify_strongest(&set, &ModeSpec::Modp(DEFAULT_PRIMES.to_vec())).unwrap();
    assert_eq!(report.overall, Verdict::Trivial);
    for (b, r) in &report.per_cut {
        assert_eq!(r.nullity, 1, "d=6 cut {b}");
        assert_eq!(r.verdict, Verdict::Trivial);
    }
    assert!(
        t.elapsed() < Duration::from_secs(60),
        "d=6 took {:?}",
        t.elapsed()
    );
    println!("ACCEPTANCE C2 theorem1 d=3,4,5 exact + d=6 mod-p certificate: PASS");
}

#[test]
fn criterion_3_theorem2_and_lemma2() {
    let t = Instant::now();
    let set = build_theorem2_set(3, 4, 5).unwrap();
    assert_eq!(set.len(), 21);
    let mut fixture_states = lemma1_fixture();
    fixture_states.extend(lemma2_extension_fixture());
    let fixture = fixture_set(Dims::new(3, 4, 5).unwrap(), &fixture_states, "S3");
    assert!(set.structurally_equal(&fixture));
    assert!(fixture.structurally_equal(&set));

    let expected_joint = [20usize, 15, 12];
    for (i, b) in Bipartition::ALL.iter().enumerate() {
        let cs = build_system(&set, *b).unwrap();
        assert_eq!(cs.n, expected_joint[i], "joint dim on {b}");
        let r = nullity_exact(&cs);
        assert_eq!(r.nullity, 1, "nullity on {b}");
    }
    assert!(
        t.elapsed() < Duration::from_secs(120),
        "(3,4,5) took {:?}",
        t.elapsed()
    );

    for dims in [(3u32, 3u32, 4u32), (3, 4, 4), (4, 4, 5)] {
        let t = Instant::now();
        let set = build_theorem2_set(dims.0, dims.1, dims.2).unwrap();
        let report = verify_strongest(&set, &ModeSpec::Exact).unwrap();
        assert_eq!(report.overall, Verdict::Trivial, "{dims:?}");
        assert!(
            t.elapsed() < Duration::from_secs(120),
            "{dims:?} took {:?}",
            t.elapsed()
        );
    }
    println!("ACCEPTANCE C3 theorem2 constructions verify trivial: PASS");
}

#[test]
fn criterion_4_bound_attainment() {
    let cases: [(StateSet, u64); 4] = [
        (build_lemma1_set(), 10),
        (build_theorem1_set(4).unwrap(), 17),
        (build_theorem2_set(3, 4, 5).unwrap(), 21),
        (build_theorem2_set(3, 3, 4).unwrap(), 13),
    ];
    for (set, expected) in cases {
        assert_eq!(lower_bound(set.dims()), expected, "bound at {}", set.dims());
        assert_eq!(set.len() as u64, expected, "size at {}", set.dims());
    }
    println!("ACCEPTANCE C4 every construction meets the cardinality bound: PASS");
}

/// The printed deduction table for the (3,3,3) set on A|BC: 20 entries from
/// the single-matched-cell rule and 16 from known-zero elimination.
const OBS1_TABLE: [((u32, u32), (u32, u32)); 20] = [
    ((0, 2), (1, 1)),
    ((0, 2), (1, 2)),
    ((0, 2), (2, 0)),
    ((0, 2), (2, 2)),
    ((1, 1), (2, 1)),
    ((1, 2), (2, 1)),
    ((2, 0), (2, 1)),
    ((2, 1), (2, 2)),
    ((0, 0), (1, 1)),
    ((0, 0), (0, 1)),
    ((0, 0), (1, 2)),
    ((0, 0), (2, 0)),
    ((0, 0), (2, 2)),
    ((1, 1), (1, 0)),
    ((0, 1), (0, 2)),
    ((0, 1), (1, 0)),
    ((0, 1), (2, 1)),
    ((1, 0), (1, 2)),
    ((1, 0), (2, 0)),
    ((1, 0), (2, 2)),
];

const OBS2_TABLE: [((u32, u32), (u32, u32)); 16] = [
    ((0, 2), (2, 1)),
    ((1, 2), (2, 0)),
    ((2, 0), (2, 2)),
    ((1, 1), (1, 2)),
    ((1, 1), (2, 0)),
    ((1, 1), (2, 2)),
    ((1, 2), (2, 2)),
    ((0, 1), (1, 2)),
    ((0, 1), (2, 0)),
    ((0, 1), (2, 2)),
    ((1, 0), (0, 2)),
    ((1, 0), (2, 1)),
    ((0, 0), (0, 2)),
    ((0, 0), (1, 0)),
    ((0, 0), (2, 1)),
    ((1, 1), (0, 1)),
];

fn canon(p: (u32, u32), q: (u32, u32)) -> ((u32, u32), (u32, u32)) {
    if p <= q {
        (p, q)
    } else {
        (q, p)
    }
}

#[test]
fn criterion_5_prover_golden_traces() {
    let set = build_lemma1_set();
    let trace = prove(&set, Bipartition::A).unwrap();
    assert_eq!(trace.verdict, ProofVerdict::TrivialProven);

    let obs1 = trace.zeros_by_rule(Rule::Obs1);
    let obs2 = trace.zeros_by_rule(Rule::Obs2);
    for (p, q) in OBS1_TABLE {
        assert!(obs1.contains(&canon(p, q)), "Obs1 missing m[{p:?},{q:?}]");
    }
    for (p, q) in OBS2_TABLE {
        assert!(obs2.contains(&canon(p, q)), "Obs2 missing m[{p:?},{q:?}]");
    }
    assert_eq!(obs1.len(), 20);
    assert_eq!(obs2.len(), 16);

    // diagonal merge facts: two-branch merges for the seven two-branch
    // states, three-branch merges for φ00 and φ11, closing to one class
    let obs3_steps: Vec<_> = trace
        .steps
        .iter()
        .filter(|s| s.rule == Rule::Obs3)
        .collect();
    let obs4_steps: Vec<_> = trace
        .steps
        .iter()
        .filter(|s| s.rule == Rule::Obs4)
        .collect();
    assert!(!obs3_steps.is_empty());
    assert_eq!(obs4_steps.len(), 2);
    for step in &obs4_steps {
        assert!(step.states.0 == "S1" && (step.states.1 == "φ00" || step.states.1 == "φ11"));
    }
    assert_eq!(trace.diagonal_classes, 1);

    // even-d path: fires exactly once per bipartition at d = 4
    let set4 = build_theorem1_set(4).unwrap();
    for b in Bipartition::ALL {
        let trace = prove(&set4, b).unwrap();
        assert_eq!(trace.verdict, ProofVerdict::TrivialProven, "cut {b}");
        assert_eq!(trace.zeros_by_rule(Rule::EvenD).len(), 1, "cut {b}");
        let anti_steps = trace
            .steps
            .iter()
            .filter(|s| {
                s.rule == Rule::EvenD
                    && s.facts
                        .iter()
                        .any(|f| matches!(f, prover::Fact::AntihermitianPair { .. }))
            })
            .count();
        assert_eq!(anti_steps, 1, "cut {b}");
    }
    println!("ACCEPTANCE C5 prover golden traces match the deduction tables: PASS");
}

#[test]
fn criterion_6_negative_controls_with_oracle() {
    // full product bases and the stopperless set; the independent oracle is
    // the floating SVD kernel dimension, which must agree exactly
    let controls: Vec<(StateSet, usize, &str)> = vec![
        (
            product_basis(Dims::new(2, 2, 2).unwrap()),
            4,
            "product basis (2,2,2)",
        ),
        (
            product_basis(Dims::new(3, 3, 3).unwrap()),
            9,
            "product basis (3,3,3)",
        ),
        (stopperless_lemma1(), 9, "stopperless (3,3,3) set"),
    ];
    for (set, expected, name) in controls {
        let cs = build_system(&set, Bipartition::A).unwrap();
        let exact = nullity_exact(&cs);
        let float = nullity_float(&cs, DEFAULT_FLOAT_TOL);
        assert_eq!(exact.nullity, expected, "{name}");
        assert_eq!(float.nullity, expected, "{name} (oracle)");
        assert_eq!(exact.verdict, Verdict::Nontrivial, "{name}");
        assert_eq!(float.verdict, Verdict::Nontrivial, "{name} (oracle)");
    }
    // the qutrit product basis is nontrivial on every cut, and the modular
    // path alone may only say inconclusive there
    let basis = product_basis(Dims::new(3, 3, 3).unwrap());
    let report = verify_strongest(&basis, &ModeSpec::Exact).unwrap();
    assert_eq!(report.overall, Verdict::Nontrivial);
    for (b, r) in &report.per_cut {
        assert_eq!(r.verdict, Verdict::Nontrivial, "{b}");
        assert_eq!(r.nullity, 9, "{b}");
    }
    let cs = build_system(&basis, Bipartition::A).unwrap();
    let modp = nullity_modp(&cs, &DEFAULT_PRIMES).unwrap();
    assert_eq!(modp.nullity, 9);
    assert_eq!(modp.verdict, Verdict::Inconclusive);
    println!("ACCEPTANCE C6 negative controls nontrivial, oracle agrees: PASS");
}

fn stopperless_lemma1() -> StateSet {
    let full = build_lemma1_set();
    let mut set = StateSet::new(full.dims());
    for (label, ket) in full.iter() {
        if Some(label) != full.stopper_label() {
            set.push(label, ket.clone()).unwrap();
        }
    }
    set
}

#[test]
fn criterion_7_mode_agreement() {
    let mut cases: Vec<(String, StateSet)> = vec![
        ("lemma1".into(), build_lemma1_set()),
        (
            "product(2,2,2)".into(),
            product_basis(Dims::new(2, 2, 2).unwrap()),
        ),
        (
            "product(3,3,3)".into(),
            product_basis(Dims::new(3, 3, 3).unwrap()),
        ),
        ("stopperless".into(), stopperless_lemma1()),
    ];
    for d in [3u32, 4, 5] {
        cases.push((format!("theorem1({d})"), build_theorem1_set(d).unwrap()));
    }
    for dims in [(3u32, 4u32, 5u32), (3, 3, 4), (3, 4, 4), (4, 4, 5)] {
        cases.push((
            format!("theorem2{dims:?}"),
            build_theorem2_set(dims.0, dims.1, dims.2).unwrap(),
        ));
    }
    for (name, set) in cases {
        for b in Bipartition::ALL {
            let cs = build_system(&set, b).unwrap();
            let exact = nullity_exact(&cs).nullity;
            let modp = nullity_modp(&cs, &DEFAULT_PRIMES).unwrap().nullity;
            let float = nullity_float(&cs, DEFAULT_FLOAT_TOL).nullity;
            assert_eq!(exact, modp, "{name} on {b}: exact vs modp");
            assert_eq!(exact, float, "{name} on {b}: exact vs float");
        }
    }
    println!("ACCEPTANCE C7 exact, mod-p, and float nullities agree everywhere: PASS");
}

#[test]
fn criterion_8_classification() {
    for d in [3u32, 4, 5] {
        let set = build_theorem1_set(d).unwrap();
        for (label, ket) in set.iter() {
            let class = classify_state(ket).unwrap();
            if Some(label) == set.stopper_label() {
                assert_eq!(class.category, StateCategory::Product);
            } else {
                assert_eq!(
                    class.category,
                    StateCategory::GenuinelyEntangled,
                    "{label} at d={d} has ranks {:?}",
                    class.ranks
                );
            }
        }
    }

    // nothing except the stopper is product, and the states with a rank-1
    // cut are exactly the shared-coordinate families A6, A9, A12, A13; the
    // second dims case has a nonempty A13
    // expected counts: |A6|+|A9|+|A12|+|A13| = 4+2+2+0 at (3,4,5), 4+4+2+2 at (3,5,5)
    for (dims_in, expected_count) in [((3u32, 4u32, 5u32), 8), ((3, 5, 5), 12)] {
        let set = build_theorem2_set(dims_in.0, dims_in.1, dims_in.2).unwrap();
        let dims = set.dims();
        let mut rank1_states = Vec::new();
        for (label, ket) in set.iter() {
            if Some(label) == set.stopper_label() {
                continue;
            }
            let class = classify_state(ket).unwrap();
            assert_ne!(class.category, StateCategory::Product, "{label}");
            if class.ranks.contains(&1) {
                rank1_states.push(label.to_owned());
            }
        }
        let mut expected = Vec::new();
        let mut a13_seen = false;
        for (label, _) in set.iter() {
            if Some(label) == set.stopper_label() {
                continue;
            }
            let digits: Vec<u32> = label.chars().filter_map(|c| c.to_digit(10)).collect();
            let family = oplm_core::states::family_of_label(dims, digits[0], digits[1]);
            a13_seen |= family == Some(Family::A13);
            if matches!(
                family,
                Some(Family::A6) | Some(Family::A9) | Some(Family::A12) | Some(Family::A13)
            ) {
                expected.push(label.to_owned());
            }
        }
        rank1_states.sort();
        expected.sort();
        assert_eq!(rank1_states, expected, "{dims_in:?}");
        assert_eq!(rank1_states.len(), expected_count, "{dims_in:?}");
        assert_eq!(a13_seen, dims_in == (3, 5, 5));
    }
    println!("ACCEPTANCE C8 classification matches the entanglement claims: PASS");
}

#[test]
fn criterion_9_invariance_suite() {
    use rand::seq::SliceRandom;
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x5eed);

    let mut permutation = |n: u32| -> Vec<u32> {
        let mut v: Vec<u32> = (0..n).collect();
        v.shuffle(&mut rng);
        v
    };

    for (set, label) in [
        (build_lemma1_set(), "(3,3,3)"),
        (build_theorem2_set(3, 4, 5).unwrap(), "(3,4,5)"),
    ] {
        let dims = set.dims();
        let baseline: Vec<usize> = exact_nullities(&set);
        for trial in 0..20 {
            let (pa, pb, pc) = (
                permutation(dims.d1),
                permutation(dims.d2),
                permutation(dims.d3),
            );
            let permuted = set.relabeled(&pa, &pb, &pc);
            assert!(permuted.is_pairwise_orthogonal());
            for (i, b) in Bipartition::ALL.iter().enumerate() {
                let cs = build_system(&permuted, *b).unwrap();
                assert!(cs.identity_in_kernel(), "{label} trial {trial} {b}");
                let r = nullity_exact(&cs);
                assert_eq!(r.nullity, baseline[i], "{label} trial {trial} {b}");
            }
        }
    }
    println!("ACCEPTANCE C9 verdicts invariant under local relabelings: PASS");
}
