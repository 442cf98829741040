//! Strategies and brute-force oracles shared by the property tests.
//!
//! The oracles enumerate every owner sequence directly and share no code
//! with the library's pruned searches.

#![allow(dead_code)]

use fairxos::{Allocation, FractionalAllocation, Instance, Rational, XosValuation};
use num_traits::Zero;
use proptest::prelude::*;

pub fn int(v: i64) -> Rational {
    Rational::from_integer(v.into())
}

pub fn ratio(p: i64, q: i64) -> Rational {
    Rational::new(p.into(), q.into())
}

pub fn xos(rows: Vec<Vec<i64>>) -> XosValuation {
    XosValuation::from_rows(rows.into_iter().map(|r| r.into_iter().map(int).collect()).collect())
        .unwrap()
}

pub fn lemma1() -> Instance {
    let a = xos(vec![vec![1, 1, 0, 0], vec![0, 0, 1, 1]]);
    let b = xos(vec![vec![1, 0, 0, 1], vec![0, 1, 1, 0]]);
    Instance::new(4, vec![a, b]).unwrap()
}

pub fn valuation(items: usize, max_functions: usize, max_value: i64) -> impl Strategy<Value = XosValuation> {
    prop::collection::vec(prop::collection::vec(0..=max_value, items), 1..=max_functions).prop_map(xos)
}

/// Random XOS instances with integer entries.
pub fn instance(
    agents: std::ops::RangeInclusive<usize>,
    items: std::ops::RangeInclusive<usize>,
    max_functions: usize,
    max_value: i64,
) -> impl Strategy<Value = Instance> {
    (agents, items).prop_flat_map(move |(n, m)| {
        prop::collection::vec(valuation(m, max_functions, max_value), n)
            .prop_map(move |vals| Instance::new(m, vals).unwrap())
    })
}

/// Two agents over 10 to 12 items whose entries all lie in 2..=4, so no
/// single item is large next to the maximin share.
pub fn flat_pair() -> impl Strategy<Value = Instance> {
    (10usize..=12).prop_flat_map(|m| {
        let v = prop::collection::vec(prop::collection::vec(2i64..=4, m), 1..=3).prop_map(xos);
        (v.clone(), v).prop_map(move |(a, b)| Instance::new(m, vec![a, b]).unwrap())
    })
}

/// Random complete half-integral allocations: each item goes whole to one
/// agent or half to each of two.
pub fn half_integral(agents: usize, items: usize) -> impl Strategy<Value = FractionalAllocation> {
    prop::collection::vec((0..agents, 0..agents), items).prop_map(move |choices| {
        let mut shares = vec![vec![Rational::zero(); items]; agents];
        for (j, (a, b)) in choices.into_iter().enumerate() {
            if a == b {
                shares[a][j] = int(1);
            } else {
                shares[a][j] = ratio(1, 2);
                shares[b][j] = ratio(1, 2);
            }
        }
        FractionalAllocation::new(items, shares).unwrap()
    })
}

/// Random complete fractional allocations with denominators up to 6.
pub fn complete_fractional(agents: usize, items: usize) -> impl Strategy<Value = FractionalAllocation> {
    prop::collection::vec(prop::collection::vec(0..=6i64, agents), items).prop_map(move |weights| {
        let mut shares = vec![vec![Rational::zero(); items]; agents];
        for (j, w) in weights.into_iter().enumerate() {
            let total: i64 = w.iter().sum();
            for (i, &x) in w.iter().enumerate() {
                shares[i][j] = if total == 0 {
                    if i == 0 { int(1) } else { int(0) }
                } else {
                    ratio(x, total)
                };
            }
        }
        FractionalAllocation::new(items, shares).unwrap()
    })
}

/// Every owner sequence in `0..agents`, lexicographically.
pub fn all_owner_sequences(agents: usize, items: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for _ in 0..items {
        out = out
            .into_iter()
            .flat_map(|seq| {
                (0..agents).map(move |a| {
                    let mut s = seq.clone();
                    s.push(a);
                    s
                })
            })
            .collect();
    }
    out
}

pub fn bundles_of(owners: &[usize], agents: usize) -> Vec<Vec<usize>> {
    let mut bundles = vec![vec![]; agents];
    for (j, &a) in owners.iter().enumerate() {
        bundles[a].push(j);
    }
    bundles
}

pub fn subsets(items: &[usize]) -> Vec<Vec<usize>> {
    (0..1u32 << items.len())
        .map(|mask| {
            items
                .iter()
                .enumerate()
                .filter(|(k, _)| mask >> k & 1 == 1)
                .map(|(_, &j)| j)
                .collect()
        })
        .collect()
}

/// Maximin share by trying every labeling.
pub fn brute_mms(v: &XosValuation, bundles: usize) -> Rational {
    all_owner_sequences(bundles, v.items())
        .iter()
        .map(|owners| {
            bundles_of(owners, bundles)
                .iter()
                .map(|b| v.eval(b).unwrap())
                .min()
                .unwrap()
        })
        .max()
        .unwrap()
}

fn capped(value: Rational, cap: &Rational) -> Rational {
    if value < *cap { value } else { cap.clone() }
}

/// Best capped welfare over every integral allocation.
pub fn brute_welfare_integral(instance: &Instance, caps: &[Rational]) -> Rational {
    let n = instance.agents();
    all_owner_sequences(n, instance.items())
        .iter()
        .map(|owners| {
            bundles_of(owners, n)
                .iter()
                .zip(caps)
                .enumerate()
                .map(|(i, (b, cap))| capped(instance.valuation(i).eval(b).unwrap(), cap))
                .sum::<Rational>()
        })
        .max()
        .unwrap()
}

/// Best capped fractional welfare over every complete half-integral
/// allocation.
pub fn brute_welfare_half_integral(instance: &Instance, caps: &[Rational]) -> Rational {
    let (n, m) = (instance.agents(), instance.items());
    all_owner_sequences(n * n, m)
        .iter()
        .map(|codes| {
            let mut shares = vec![vec![Rational::zero(); m]; n];
            for (j, &c) in codes.iter().enumerate() {
                let (a, b) = (c / n, c % n);
                if a == b {
                    shares[a][j] = int(1);
                } else {
                    shares[a][j] += ratio(1, 2);
                    shares[b][j] += ratio(1, 2);
                }
            }
            let f = FractionalAllocation::new(m, shares).unwrap();
            (0..n)
                .map(|i| capped(f.value(instance.valuation(i), i).unwrap(), &caps[i]))
                .sum::<Rational>()
        })
        .max()
        .unwrap()
}

pub fn capped_welfare(instance: &Instance, allocation: &Allocation, caps: &[Rational]) -> Rational {
    allocation
        .bundles()
        .iter()
        .zip(caps)
        .enumerate()
        .map(|(i, (b, cap))| capped(instance.valuation(i).eval(b).unwrap(), cap))
        .sum()
}
