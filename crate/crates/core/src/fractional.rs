//! Randomized allocations as explicit finite distributions.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use crate::allocation::{Allocation, FractionalAllocation};
use crate::error::{Error, Result};
use crate::instance::{Instance, Limits};
use crate::rational::Rational;
use crate::valuation::XosValuation;

/// A probability distribution over distinct integral allocations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RandomizedAllocation {
    support: Vec<(Allocation, Rational)>,
}

impl RandomizedAllocation {
    /// Probabilities must be positive and sum to exactly one; allocations
    /// must be distinct and share one shape.
    pub fn new(support: Vec<(Allocation, Rational)>) -> Result<Self> {
        let (first, _) = support
            .first()
            .ok_or_else(|| Error::InvalidDistribution("empty support".into()))?;
        let shape = (first.agents(), first.items());
        let mut total = Rational::zero();
        let mut seen = BTreeSet::new();
        for (a, p) in &support {
            if (a.agents(), a.items()) != shape {
                return Err(Error::InvalidDistribution("allocations differ in shape".into()));
            }
            if !p.is_positive() {
                return Err(Error::InvalidDistribution(format!("probability {p} is not positive")));
            }
            if !seen.insert(a) {
                return Err(Error::InvalidDistribution("repeated allocation".into()));
            }
            total += p;
        }
        if !total.is_one() {
            return Err(Error::InvalidDistribution(format!("probabilities sum to {total}")));
        }
        Ok(Self { support })
    }

    pub fn certain(allocation: Allocation) -> Self {
        Self {
            support: vec![(allocation, Rational::one())],
        }
    }

    pub fn support(&self) -> &[(Allocation, Rational)] {
        &self.support
    }

    pub fn len(&self) -> usize {
        self.support.len()
    }

    pub fn is_empty(&self) -> bool {
        self.support.is_empty()
    }

    pub fn agents(&self) -> usize {
        self.support[0].0.agents()
    }

    pub fn items(&self) -> usize {
        self.support[0].0.items()
    }

    /// The outcome whose cumulative probability interval contains `point`,
    /// for `point` in `[0, 1)`.
    pub fn pick(&self, point: &Rational) -> &Allocation {
        let mut acc = Rational::zero();
        for (a, p) in &self.support {
            acc += p;
            if *point < acc {
                return a;
            }
        }
        &self.support[self.support.len() - 1].0
    }

    /// Probability that `item` goes to `agent`.
    pub fn marginal(&self, agent: usize, item: usize) -> Rational {
        self.support
            .iter()
            .filter(|(a, _)| a.owner(item) == agent)
            .map(|(_, p)| p)
            .sum()
    }

    fn check_agent(&self, v: &XosValuation, agent: usize) -> Result<()> {
        if agent >= self.agents() {
            return Err(Error::AgentOutOfRange {
                agent,
                agents: self.agents(),
            });
        }
        if v.items() != self.items() {
            return Err(Error::LengthMismatch {
                expected: self.items(),
                found: v.items(),
            });
        }
        Ok(())
    }
}

/// Every agent gets `1/n` of every item.
pub fn uniform_fractional(instance: &Instance) -> FractionalAllocation {
    let n = instance.agents();
    let share = Rational::new(1.into(), n.into());
    let shares = vec![vec![share; instance.items()]; n];
    FractionalAllocation::new(instance.items(), shares).expect("uniform shares are valid")
}

/// Rounds every item independently: outcome `A` has probability
/// `prod_j f[owner(j)][j]`. Zero-probability outcomes are dropped.
pub fn independent_rounding(
    fractional: &FractionalAllocation,
    limits: &Limits,
) -> Result<RandomizedAllocation> {
    fractional.check_complete()?;
    let (n, m) = (fractional.agents(), fractional.items());
    limits.check_power(n, m)?;

    let options: Vec<Vec<(usize, &Rational)>> = (0..m)
        .map(|j| {
            (0..n)
                .map(|i| (i, fractional.share(i, j)))
                .filter(|(_, s)| !s.is_zero())
                .collect()
        })
        .collect();

    let mut support = Vec::new();
    let mut owners = Vec::with_capacity(m);
    expand(&options, &mut owners, Rational::one(), n, &mut support);
    RandomizedAllocation::new(support)
}

fn expand(
    options: &[Vec<(usize, &Rational)>],
    owners: &mut Vec<usize>,
    probability: Rational,
    agents: usize,
    out: &mut Vec<(Allocation, Rational)>,
) {
    let j = owners.len();
    if j == options.len() {
        out.push((Allocation::new(agents, owners.clone()).expect("owners in range"), probability));
        return;
    }
    for &(agent, share) in &options[j] {
        owners.push(agent);
        expand(options, owners, &probability * share, agents, out);
        owners.pop();
    }
}

/// Exact expected value of `agent`'s bundle.
pub fn expected_value(
    randomized: &RandomizedAllocation,
    v: &XosValuation,
    agent: usize,
) -> Result<Rational> {
    randomized.check_agent(v, agent)?;
    Ok(randomized
        .support()
        .iter()
        .map(|(a, p)| v.eval_unchecked(&a.bundle(agent)) * p)
        .sum())
}

/// The worst bundle value `agent` can end up with.
pub fn ex_post_min(
    randomized: &RandomizedAllocation,
    v: &XosValuation,
    agent: usize,
) -> Result<Rational> {
    randomized.check_agent(v, agent)?;
    Ok(randomized
        .support()
        .iter()
        .map(|(a, _)| v.eval_unchecked(&a.bundle(agent)))
        .min()
        .expect("support is never empty"))
}
