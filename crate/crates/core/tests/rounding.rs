mod common;

use common::*;
use fairxos::{
    decompose_two_regular, expected_value, ex_post_min, independent_rounding, round_half_integral,
    uniform_fractional, FractionalAllocation, Instance, Limits, Rational, RoundingGraph,
};
use num_traits::{One, Zero};
use proptest::prelude::*;

fn with_half_integral() -> impl Strategy<Value = (Instance, FractionalAllocation)> {
    instance(1..=3, 0..=6, 3, 8).prop_flat_map(|inst| {
        let f = half_integral(inst.agents(), inst.items());
        (Just(inst), f)
    })
}

fn with_fractional() -> impl Strategy<Value = (Instance, FractionalAllocation)> {
    instance(1..=3, 0..=5, 3, 8).prop_flat_map(|inst| {
        let f = complete_fractional(inst.agents(), inst.items());
        (Just(inst), f)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn half_integral_rounding_keeps_marginals((inst, f) in with_half_integral()) {
        let r = round_half_integral(&f, &inst).unwrap();
        prop_assert!(r.len() <= 2);
        for (_, p) in r.support() {
            prop_assert!(p.is_one() || *p == ratio(1, 2));
        }
        for i in 0..inst.agents() {
            for j in 0..inst.items() {
                prop_assert_eq!(&r.marginal(i, j), f.share(i, j));
            }
        }
    }

    #[test]
    fn half_integral_rounding_loses_at_most_half_an_item((inst, f) in with_half_integral()) {
        let r = round_half_integral(&f, &inst).unwrap();
        for i in 0..inst.agents() {
            let v = inst.valuation(i);
            let u = v.function(v.witness_index_fractional(&f.row(i)).unwrap());
            let fractional: Rational = (0..inst.items()).map(|j| u.value(j) * f.share(i, j)).sum();
            let largest_half = (0..inst.items())
                .filter(|&j| *f.share(i, j) == ratio(1, 2))
                .map(|j| u.value(j).clone())
                .max()
                .unwrap_or_else(Rational::zero);
            for (a, _) in r.support() {
                let got: Rational = a.bundle(i).iter().map(|&j| u.value(j).clone()).sum();
                prop_assert!(got >= &fractional - &largest_half / int(2));
            }
            prop_assert_eq!(expected_value(&r, v, i).unwrap() >= f.value(v, i).unwrap(), true);
            prop_assert!(ex_post_min(&r, v, i).unwrap() <= expected_value(&r, v, i).unwrap());
        }
    }

    #[test]
    fn product_rounding_dominates((inst, f) in with_fractional()) {
        let r = independent_rounding(&f, &Limits::default()).unwrap();
        let total: Rational = r.support().iter().map(|(_, p)| p.clone()).sum();
        prop_assert!(total.is_one());
        for i in 0..inst.agents() {
            let v = inst.valuation(i);
            prop_assert!(expected_value(&r, v, i).unwrap() >= f.value(v, i).unwrap());
            for j in 0..inst.items() {
                prop_assert_eq!(&r.marginal(i, j), f.share(i, j));
            }
        }
    }

    #[test]
    fn uniform_shares_reach_proportionality(inst in instance(1..=3, 0..=5, 3, 8)) {
        let f = uniform_fractional(&inst);
        for i in 0..inst.agents() {
            let v = inst.valuation(i);
            let all: Vec<usize> = (0..inst.items()).collect();
            let share = v.eval(&all).unwrap() / int(inst.agents() as i64);
            prop_assert_eq!(f.value(v, i).unwrap(), share.clone());
            let r = independent_rounding(&f, &Limits::default()).unwrap();
            prop_assert!(expected_value(&r, v, i).unwrap() >= share);
        }
    }

    #[test]
    fn cycle_decomposition_is_perfect(len in 2usize..8, shift in 0usize..8) {
        let edges: Vec<(usize, usize)> = (0..len)
            .flat_map(|k| [(k, (k + shift) % len), (k, (k + shift + 1) % len)])
            .collect();
        let g = RoundingGraph::from_edges(len, len, &edges).unwrap();
        let (m1, m2) = decompose_two_regular(&g).unwrap();
        for m in [&m1, &m2] {
            let mut xs: Vec<usize> = m.iter().map(|e| e.0).collect();
            let mut ys: Vec<usize> = m.iter().map(|e| e.1).collect();
            xs.sort();
            ys.sort();
            prop_assert_eq!(&xs, &(0..len).collect::<Vec<_>>());
            prop_assert_eq!(&ys, &(0..len).collect::<Vec<_>>());
        }
        let mut all: Vec<_> = m1.iter().chain(&m2).copied().collect();
        all.sort();
        let mut expected = edges.clone();
        expected.sort();
        prop_assert_eq!(all, expected);
    }
}

#[test]
fn product_rounding_respects_capacity() {
    let inst = Instance::new(13, vec![xos(vec![vec![1; 13]]), xos(vec![vec![1; 13]])]).unwrap();
    let f = uniform_fractional(&inst);
    assert!(independent_rounding(&f, &Limits::new(4096)).is_err());
}
