mod common;

use common::*;
use fairxos::{
    contribution_alloc, contribution_set, witness_mass, Allocation, FractionalSet, Rational,
    SetValuation,
};
use num_traits::Zero;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn values_are_monotone(v in valuation(6, 3, 8), a in 0u32..64, b in 0u32..64) {
        let small: Vec<usize> = (0..6).filter(|j| (a & b) >> j & 1 == 1).collect();
        let large: Vec<usize> = (0..6).filter(|j| a >> j & 1 == 1).collect();
        prop_assert!(v.eval(&small).unwrap() <= v.eval(&large).unwrap());
    }

    #[test]
    fn witness_attains_the_max(v in valuation(5, 3, 8), mask in 0u32..32) {
        let set: Vec<usize> = (0..5).filter(|j| mask >> j & 1 == 1).collect();
        let w = v.witness_index(&set).unwrap();
        let value = v.eval(&set).unwrap();
        prop_assert_eq!(fairxos::eval_additive(v.function(w), &set).unwrap(), value.clone());
        for (k, u) in v.functions().iter().enumerate() {
            let other = fairxos::eval_additive(u, &set).unwrap();
            prop_assert!(other <= value);
            if k < w {
                prop_assert!(other < value);
            }
        }
    }

    #[test]
    fn indicator_shares_match_sets(v in valuation(5, 3, 8), mask in 0u32..32) {
        let set: Vec<usize> = (0..5).filter(|j| mask >> j & 1 == 1).collect();
        let frac = FractionalSet::from_items(5, &set).unwrap();
        prop_assert_eq!(v.eval_fractional(&frac).unwrap(), v.eval(&set).unwrap());
    }

    #[test]
    fn truncation_caps_values(v in valuation(5, 3, 8), mask in 0u32..32, cap in 0i64..20) {
        let set: Vec<usize> = (0..5).filter(|j| mask >> j & 1 == 1).collect();
        let t = v.truncate(int(cap)).unwrap();
        let raw = v.eval(&set).unwrap();
        prop_assert_eq!(t.eval(&set).unwrap(), if raw < int(cap) { raw } else { int(cap) });
    }

    #[test]
    fn contribution_lies_between_zero_and_witness(
        v in valuation(5, 3, 8),
        t_mask in 0u32..32,
        s_mask in 0u32..32,
    ) {
        let t: Vec<usize> = (0..5).filter(|j| t_mask >> j & 1 == 1).collect();
        let s: Vec<usize> = (0..5).filter(|j| (s_mask & t_mask) >> j & 1 == 1).collect();
        let c = contribution_set(&v, &t, &s).unwrap();
        prop_assert!(c >= Rational::zero());
        let u = v.function(v.witness_index(&t).unwrap());
        prop_assert!(c <= fairxos::eval_additive(u, &s).unwrap());
    }

    #[test]
    fn removing_everything_loses_the_welfare(
        inst in instance(1..=3, 0..=6, 3, 8),
        seed in prop::collection::vec(0usize..3, 6),
    ) {
        let n = inst.agents();
        let owners: Vec<usize> = seed[..inst.items()].iter().map(|&a| a % n).collect();
        let a = Allocation::new(n, owners).unwrap();
        let all: Vec<usize> = (0..inst.items()).collect();
        let total: Rational = (0..n)
            .map(|i| inst.valuation(i).eval(&a.bundle(i)).unwrap())
            .sum();
        prop_assert_eq!(contribution_alloc(inst.valuations(), &a, &all).unwrap(), total);
    }

    #[test]
    fn contribution_below_witness_mass(
        inst in instance(1..=3, 0..=6, 3, 8),
        seed in prop::collection::vec(0usize..3, 6),
        mask in 0u32..64,
    ) {
        let (n, m) = (inst.agents(), inst.items());
        let owners: Vec<usize> = seed[..m].iter().map(|&a| a % n).collect();
        let a = Allocation::new(n, owners).unwrap();
        let f = fairxos::FractionalAllocation::from_allocation(&a);
        let s: Vec<usize> = (0..m).filter(|j| mask >> j & 1 == 1).collect();
        let mass = witness_mass(inst.valuations(), &f, &FractionalSet::from_items(m, &s).unwrap()).unwrap();
        prop_assert!(contribution_alloc(inst.valuations(), &a, &s).unwrap() <= mass);
    }

    #[test]
    fn truncated_valuations_implement_the_trait(v in valuation(4, 2, 8), cap in 0i64..10) {
        let t = v.truncate(int(cap)).unwrap();
        let all = [0, 1, 2, 3];
        prop_assert_eq!(SetValuation::items(&t), 4);
        prop_assert!(SetValuation::value(&t, &all).unwrap() <= int(cap));
    }
}

#[test]
fn worked_example() {
    let v = xos(vec![vec![2, 8, 4, 5, 1], vec![5, 1, 9, 4, 5]]);
    let all = [0, 1, 2, 3, 4];
    assert_eq!(v.eval(&all).unwrap(), int(24));
    assert_eq!(contribution_set(&v, &all, &[2]).unwrap(), int(8));
}
