//! Integral and fractional allocations, and contribution bounds over them.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::{is_negative, ratio, Rational};
use crate::valuation::{check_set, set_minus, FractionalSet, SetValuation, XosValuation};

/// A complete assignment of every item to one agent.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Allocation {
    agents: usize,
    owners: Vec<usize>,
}

impl Allocation {
    pub fn new(agents: usize, owners: Vec<usize>) -> Result<Self> {
        if let Some(&agent) = owners.iter().find(|&&a| a >= agents) {
            return Err(Error::AgentOutOfRange { agent, agents });
        }
        Ok(Self { agents, owners })
    }

    pub fn from_bundles(items: usize, bundles: &[Vec<usize>]) -> Result<Self> {
        let mut owners = vec![usize::MAX; items];
        for (agent, bundle) in bundles.iter().enumerate() {
            check_set(bundle, items)?;
            for &j in bundle {
                if owners[j] != usize::MAX {
                    return Err(Error::DuplicateItem(j));
                }
                owners[j] = agent;
            }
        }
        if let Some(item) = owners.iter().position(|&o| o == usize::MAX) {
            return Err(Error::Precondition(format!("item {item} has no owner")));
        }
        Ok(Self {
            agents: bundles.len(),
            owners,
        })
    }

    pub fn agents(&self) -> usize {
        self.agents
    }

    pub fn items(&self) -> usize {
        self.owners.len()
    }

    pub fn owners(&self) -> &[usize] {
        &self.owners
    }

    pub fn owner(&self, item: usize) -> usize {
        self.owners[item]
    }

    pub fn bundle(&self, agent: usize) -> Vec<usize> {
        self.owners
            .iter()
            .enumerate()
            .filter(|&(_, &o)| o == agent)
            .map(|(j, _)| j)
            .collect()
    }

    pub fn bundles(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.agents];
        for (j, &o) in self.owners.iter().enumerate() {
            out[o].push(j);
        }
        out
    }
}

/// Agent-by-item shares in `[0, 1]` with column sums at most one.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FractionalAllocation {
    shares: Vec<Vec<Rational>>,
    items: usize,
    half_integral: bool,
}

impl FractionalAllocation {
    /// `shares[i][j]` is agent `i`'s fraction of item `j`.
    pub fn new(items: usize, shares: Vec<Vec<Rational>>) -> Result<Self> {
        if shares.is_empty() {
            return Err(Error::NoAgents);
        }
        if let Some(row) = shares.iter().find(|r| r.len() != items) {
            return Err(Error::LengthMismatch {
                expected: items,
                found: row.len(),
            });
        }
        let one = Rational::one();
        let half = ratio(1, 2);
        let mut half_integral = true;
        for j in 0..items {
            let mut column = Rational::zero();
            for row in &shares {
                let s = &row[j];
                if is_negative(s) || *s > one {
                    return Err(Error::InvalidShares(format!("share {s} outside [0, 1]")));
                }
                half_integral &= s.is_zero() || s.is_one() || *s == half;
                column += s;
            }
            if column > one {
                return Err(Error::InvalidShares(format!(
                    "item {j} is allocated {column} times"
                )));
            }
        }
        Ok(Self {
            shares,
            items,
            half_integral,
        })
    }

    pub fn from_allocation(allocation: &Allocation) -> Self {
        let mut shares = vec![vec![Rational::zero(); allocation.items()]; allocation.agents()];
        for (j, &o) in allocation.owners().iter().enumerate() {
            shares[o][j] = Rational::one();
        }
        Self {
            shares,
            items: allocation.items(),
            half_integral: true,
        }
    }

    pub fn agents(&self) -> usize {
        self.shares.len()
    }

    pub fn items(&self) -> usize {
        self.items
    }

    pub fn share(&self, agent: usize, item: usize) -> &Rational {
        &self.shares[agent][item]
    }

    pub fn row_shares(&self, agent: usize) -> &[Rational] {
        &self.shares[agent]
    }

    pub fn row(&self, agent: usize) -> FractionalSet {
        FractionalSet::new(self.shares[agent].clone()).expect("rows hold valid shares")
    }

    /// Every entry is 0, 1/2 or 1.
    pub fn is_half_integral(&self) -> bool {
        self.half_integral
    }

    /// Every item is fully allocated.
    pub fn is_complete(&self) -> bool {
        (0..self.items).all(|j| {
            let column: Rational = self.shares.iter().map(|r| &r[j]).sum();
            column.is_one()
        })
    }

    pub(crate) fn check_complete(&self) -> Result<()> {
        match (0..self.items).find(|&j| {
            let column: Rational = self.shares.iter().map(|r| &r[j]).sum();
            !column.is_one()
        }) {
            Some(j) => Err(Error::InvalidShares(format!("item {j} is not fully allocated"))),
            None => Ok(()),
        }
    }

    /// Fractional value of `agent`'s row.
    pub fn value(&self, v: &XosValuation, agent: usize) -> Result<Rational> {
        if v.items() != self.items {
            return Err(Error::LengthMismatch {
                expected: self.items,
                found: v.items(),
            });
        }
        Ok(v.eval_shares(&self.shares[agent]))
    }
}

fn check_valuations<V: SetValuation>(valuations: &[V], agents: usize, items: usize) -> Result<()> {
    if valuations.len() != agents {
        return Err(Error::LengthMismatch {
            expected: agents,
            found: valuations.len(),
        });
    }
    match valuations.iter().find(|v| v.items() != items) {
        Some(v) => Err(Error::LengthMismatch {
            expected: items,
            found: v.items(),
        }),
        None => Ok(()),
    }
}

/// `sum_i v_i(A_i) - v_i(A_i \ S)`: total value lost if `set` is taken away.
pub fn contribution_alloc<V: SetValuation>(
    valuations: &[V],
    allocation: &Allocation,
    set: &[usize],
) -> Result<Rational> {
    check_valuations(valuations, allocation.agents(), allocation.items())?;
    check_set(set, allocation.items())?;
    let mut total = Rational::zero();
    for (v, bundle) in valuations.iter().zip(allocation.bundles()) {
        let rest = set_minus(&bundle, set);
        if rest.len() != bundle.len() {
            total += v.value(&bundle)? - v.value(&rest)?;
        }
    }
    Ok(total)
}

/// Witness-weighted mass of `set` inside `allocation`:
/// `sum_i sum_j u_i(b_j) * s_j * f_ij`, with `u_i` the witness of row `i`.
///
/// Upper-bounds the welfare lost by removing `set`, and sums to the total
/// fractional welfare over any fractional partition of the items.
pub fn witness_mass(
    valuations: &[XosValuation],
    allocation: &FractionalAllocation,
    set: &FractionalSet,
) -> Result<Rational> {
    check_valuations(valuations, allocation.agents(), allocation.items())?;
    if set.items() != allocation.items() {
        return Err(Error::LengthMismatch {
            expected: allocation.items(),
            found: set.items(),
        });
    }
    let mut total = Rational::zero();
    for (i, v) in valuations.iter().enumerate() {
        let row = allocation.row_shares(i);
        let u = v.function(v.witness_shares(row));
        for ((value, f), s) in u.values().iter().zip(row).zip(set.shares()) {
            if !f.is_zero() && !s.is_zero() && !value.is_zero() {
                total += value * f * s;
            }
        }
    }
    Ok(total)
}
