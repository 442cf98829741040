mod common;

use common::*;
use fairxos::{
    alg_det, alg_det_traced, alg_rand, alg_rand_traced, expected_value, ex_post_min, mms, Instance,
    Limits, Rational,
};
use proptest::prelude::*;

fn suite() -> impl Strategy<Value = Instance> {
    instance(2..=3, 0..=7, 3, 8)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn deterministic_guarantee(inst in suite()) {
        let a = alg_det(&inst, &Limits::default()).unwrap();
        for i in 0..inst.agents() {
            let share = mms(&inst, i, &Limits::default()).unwrap().value;
            prop_assert!(inst.valuation(i).eval(&a.bundle(i)).unwrap() >= ratio(3, 13) * share);
        }
    }

    #[test]
    fn randomized_guarantees(inst in suite()) {
        let r = alg_rand(&inst, &Limits::default()).unwrap();
        prop_assert!(r.len() <= 2);
        for (_, p) in r.support() {
            prop_assert!(*p == int(1) || *p == ratio(1, 2));
        }
        for i in 0..inst.agents() {
            let share = mms(&inst, i, &Limits::default()).unwrap().value;
            let v = inst.valuation(i);
            prop_assert!(ex_post_min(&r, v, i).unwrap() >= ratio(1, 8) * &share);
            prop_assert!(expected_value(&r, v, i).unwrap() >= ratio(1, 4) * share);
        }
    }

    #[test]
    fn phase_postconditions(inst in suite()) {
        let run = alg_det_traced(&inst, &Limits::default()).unwrap();
        let v = run.normalization.instance.valuations();
        let t = ratio(3, 13);
        let after = &run.after_phases;
        let mut taken: Vec<usize> = run.trace.events.iter().flat_map(|e| e.items.clone()).collect();
        let agents: Vec<usize> = run.trace.events.iter().map(|e| e.agent).collect();
        for e in &run.trace.events {
            prop_assert_eq!(e.items.len(), e.step);
            prop_assert!(e.value >= t);
            prop_assert!(!run.normalization.is_zero_mms(e.agent));
        }
        prop_assert!(run.trace.events.windows(2).all(|w| w[0].step <= w[1].step));
        taken.sort();
        taken.dedup();
        prop_assert_eq!(taken.len(), run.trace.events.iter().map(|e| e.step).sum::<usize>());
        prop_assert!(agents.iter().all(|a| !after.agents.contains(a)));
        for &i in after.agents.iter().filter(|&&i| !run.normalization.is_zero_mms(i)) {
            for pick in subsets(&after.items).into_iter().filter(|s| (1..=3).contains(&s.len())) {
                prop_assert!(v[i].eval(&pick).unwrap() < t);
            }
        }
    }

    #[test]
    fn bundle_class_accounting(inst in suite()) {
        let run = alg_det_traced(&inst, &Limits::default()).unwrap();
        let normalized = &run.normalization.instance;
        let step1: Vec<_> = run.trace.events.iter().filter(|e| e.step == 1).collect();
        let agents: Vec<usize> = (0..inst.agents()).filter(|i| step1.iter().all(|e| e.agent != *i)).collect();
        let items: Vec<usize> = (0..inst.items()).filter(|j| step1.iter().all(|e| !e.items.contains(j))).collect();
        if agents.is_empty() {
            return Ok(());
        }
        let lost: Vec<usize> = run.trace.events.iter().filter(|e| e.step > 1).flat_map(|e| e.items.clone()).collect();
        let sub = normalized.sub_instance(&agents, &items).unwrap();
        let remaining = run.after_phases.agents.len();
        for (k, &i) in agents.iter().enumerate() {
            if !run.after_phases.agents.contains(&i) || run.normalization.is_zero_mms(i) {
                continue;
            }
            let cert = mms(&sub, k, &Limits::default()).unwrap();
            prop_assert!(cert.value >= int(1));
            let mut classes = [0i64; 3];
            for bundle in &cert.partition {
                let count = bundle.iter().filter(|&&j| lost.contains(&items[j])).count();
                if count < 3 {
                    classes[count] += 1;
                }
            }
            let bound = int(classes[0]) + ratio(2, 3) * int(classes[1]) + ratio(1, 3) * int(classes[2]);
            prop_assert!(int(remaining as i64) <= bound);
        }
    }
}

#[test]
fn single_agent_takes_everything() {
    let inst = Instance::new(4, vec![xos(vec![vec![1, 0, 2, 3]])]).unwrap();
    let a = alg_det(&inst, &Limits::default()).unwrap();
    assert_eq!(a.owners(), &[0, 0, 0, 0]);
    let r = alg_rand_traced(&inst, &Limits::default()).unwrap();
    assert_eq!(r.result.support()[0].0.owners(), &[0, 0, 0, 0]);
}

#[test]
fn lemma1_runs() {
    let inst = lemma1();
    let a = alg_det(&inst, &Limits::default()).unwrap();
    assert_eq!(a.owners(), &[0, 1, 0, 0]);
    let r = alg_rand(&inst, &Limits::default()).unwrap();
    for i in 0..2 {
        let value: Rational = expected_value(&r, inst.valuation(i), i).unwrap();
        assert!(value >= ratio(1, 2));
    }
}
