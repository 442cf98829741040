//! Exact maximization of capped social welfare by exhaustive search.
//!
//! Both searches maximize `sum_i min(cap_i, v_i(bundle_i))` and return the
//! optimum whose per-item choice sequence comes first. A branch is pruned
//! once even handing every remaining item to every agent at once cannot
//! beat the incumbent strictly, which keeps the first optimum intact.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::allocation::{Allocation, FractionalAllocation};
use crate::error::{Error, Result};
use crate::instance::{Instance, Limits};
use crate::rational::{ratio, Rational};
use crate::scalar::Scalar;

/// Integral allocation maximizing capped welfare. Ties go to the
/// lexicographically smallest owner sequence.
pub fn max_welfare_integral(
    instance: &Instance,
    caps: &[Rational],
    limits: &Limits,
) -> Result<Allocation> {
    check_caps(instance, caps)?;
    limits.check_power(instance.agents(), instance.items())?;
    let choices = search(instance, caps, false);
    let owners = choices
        .into_iter()
        .map(|c| match c {
            Choice::Whole(a) => a,
            Choice::Split(..) => unreachable!("splits are disabled"),
        })
        .collect();
    Allocation::new(instance.agents(), owners)
}

/// Complete half-integral allocation maximizing capped fractional welfare.
///
/// Each item either goes whole to one agent or is split half/half between
/// two. Per item, the choices are ordered whole-to-agent-0, ...,
/// whole-to-agent-(n-1), then the splits `(a, b)`, `a < b`, in
/// lexicographic order; ties go to the first choice sequence.
pub fn max_welfare_half_integral(
    instance: &Instance,
    caps: &[Rational],
    limits: &Limits,
) -> Result<FractionalAllocation> {
    check_caps(instance, caps)?;
    let n = instance.agents();
    limits.check_power(n + n * (n - 1) / 2, instance.items())?;
    let choices = search(instance, caps, true);

    let half = ratio(1, 2);
    let mut shares = vec![vec![Rational::zero(); instance.items()]; n];
    for (j, c) in choices.into_iter().enumerate() {
        match c {
            Choice::Whole(a) => shares[a][j] = Rational::one(),
            Choice::Split(a, b) => {
                shares[a][j] = half.clone();
                shares[b][j] = half.clone();
            }
        }
    }
    FractionalAllocation::new(instance.items(), shares)
}

fn check_caps(instance: &Instance, caps: &[Rational]) -> Result<()> {
    if caps.len() != instance.agents() {
        return Err(Error::LengthMismatch {
            expected: instance.agents(),
            found: caps.len(),
        });
    }
    if let Some(c) = caps.iter().find(|c| crate::rational::is_negative(c)) {
        return Err(Error::Precondition(alloc::format!("negative cap {c}")));
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Choice {
    Whole(usize),
    Split(usize, usize),
}

fn search(instance: &Instance, caps: &[Rational], splits: bool) -> Vec<Choice> {
    let n = instance.agents();
    let mut choices: Vec<Choice> = (0..n).map(Choice::Whole).collect();
    if splits {
        for a in 0..n {
            for b in a + 1..n {
                choices.push(Choice::Split(a, b));
            }
        }
    }

    // caps first, then values[a][k][j] flattened agent by agent
    let mut flat: Vec<Rational> = caps.to_vec();
    for v in instance.valuations() {
        for f in v.functions() {
            flat.extend(f.values().iter().cloned());
        }
    }
    let picked = match i128::convert(&flat) {
        Some(scaled) => WelfareSearch::new(instance, scaled, &choices).run(),
        None => {
            let exact = Rational::convert(&flat).expect("rationals always convert");
            WelfareSearch::new(instance, exact, &choices).run()
        }
    };
    picked.into_iter().map(|c| choices[c]).collect()
}

/// All sums are kept doubled so half shares stay in the scalar domain.
struct WelfareSearch<'a, T> {
    choices: &'a [Choice],
    items: usize,
    /// First `(agent, function)` row of each agent, plus a final sentinel.
    rows_of: Vec<usize>,
    /// `values[row * items + j]`
    values: Vec<T>,
    /// Doubled caps.
    caps: Vec<T>,
    /// `suffix[j * rows + row]`: doubled value of items `j..`.
    suffix: Vec<T>,
    /// Doubled running sums per row.
    sums: Vec<T>,
    picked: Vec<usize>,
    best: Option<(T, Vec<usize>)>,
}

impl<'a, T: Scalar> WelfareSearch<'a, T> {
    fn new(instance: &Instance, flat: Vec<T>, choices: &'a [Choice]) -> Self {
        let n = instance.agents();
        let m = instance.items();
        let mut rows_of = Vec::with_capacity(n + 1);
        let mut rows = 0;
        for v in instance.valuations() {
            rows_of.push(rows);
            rows += v.functions().len();
        }
        rows_of.push(rows);

        let double = |x: &T| {
            let mut d = x.clone();
            d.add_assign(x);
            d
        };
        let caps: Vec<T> = flat[..n].iter().map(double).collect();
        let values = flat[n..].to_vec();
        let mut suffix = vec![T::zero_value(); (m + 1) * rows];
        for j in (0..m).rev() {
            for r in 0..rows {
                let mut s = suffix[(j + 1) * rows + r].clone();
                s.add_assign(&double(&values[r * m + j]));
                suffix[j * rows + r] = s;
            }
        }
        Self {
            choices,
            items: m,
            rows_of,
            values,
            caps,
            suffix,
            sums: vec![T::zero_value(); rows],
            picked: Vec::with_capacity(m),
            best: None,
        }
    }

    fn rows(&self) -> usize {
        self.sums.len()
    }

    fn run(mut self) -> Vec<usize> {
        self.visit(0);
        self.best.map(|(_, p)| p).unwrap_or_default()
    }

    /// Capped welfare, optionally with every item from `j` on added to
    /// every agent.
    fn welfare(&self, rest: Option<usize>) -> T {
        let rows = self.rows();
        let mut total = T::zero_value();
        for (a, cap) in self.caps.iter().enumerate() {
            let best = (self.rows_of[a]..self.rows_of[a + 1])
                .map(|r| {
                    let mut s = self.sums[r].clone();
                    if let Some(j) = rest {
                        s.add_assign(&self.suffix[j * rows + r]);
                    }
                    s
                })
                .max()
                .unwrap_or_else(T::zero_value);
            total.add_assign(if best < *cap { &best } else { cap });
        }
        total
    }

    fn apply(&mut self, j: usize, choice: Choice, undo: bool) {
        let m = self.items;
        let mut step = |agent: usize, times: usize| {
            for r in self.rows_of[agent]..self.rows_of[agent + 1] {
                let v = self.values[r * m + j].clone();
                for _ in 0..times {
                    if undo {
                        self.sums[r].sub_assign(&v);
                    } else {
                        self.sums[r].add_assign(&v);
                    }
                }
            }
        };
        match choice {
            Choice::Whole(a) => step(a, 2),
            Choice::Split(a, b) => {
                step(a, 1);
                step(b, 1);
            }
        }
    }

    fn visit(&mut self, j: usize) {
        if let Some((best, _)) = &self.best {
            if self.welfare(Some(j)) <= *best {
                return;
            }
        }
        if j == self.items {
            let value = self.welfare(None);
            if self.best.as_ref().is_none_or(|(b, _)| value > *b) {
                self.best = Some((value, self.picked.clone()));
            }
            return;
        }
        for c in 0..self.choices.len() {
            let choice = self.choices[c];
            self.apply(j, choice, false);
            self.picked.push(c);
            self.visit(j + 1);
            self.picked.pop();
            self.apply(j, choice, true);
        }
    }
}
