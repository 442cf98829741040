//! Rounding a complete half-integral allocation into two integral ones.
//!
//! Every agent's half-owned items are sorted by the agent's witness value
//! (descending) and grouped into consecutive pairs; each pair becomes a
//! slot vertex joined to its two items. Agents owning an odd number of
//! halves are paired up and share a zero-value dummy item. The resulting
//! bipartite graph is 2-regular, so its edges split into two perfect
//! matchings; matching `r` decides who gets each half-owned item in
//! outcome `r`. Each slot's two items land in different outcomes, which
//! bounds every agent's loss by half her most valuable half-owned item.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::allocation::{Allocation, FractionalAllocation};
use crate::error::{Error, Result};
use crate::fractional::RandomizedAllocation;
use crate::instance::Instance;
use crate::rational::{ratio, Rational};

/// A bipartite graph between slot vertices (`X`) and item vertices (`Y`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RoundingGraph {
    x_adj: Vec<Vec<usize>>,
    y_adj: Vec<Vec<usize>>,
    /// Agent owning each slot, when built from an allocation.
    slot_agent: Vec<usize>,
    /// Item behind each `Y` vertex; indices `>= m` are dummies.
    y_item: Vec<usize>,
}

impl RoundingGraph {
    /// A bare graph from `(x, y)` edges; `Y` vertex `y` stands for item `y`.
    pub fn from_edges(x_count: usize, y_count: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut x_adj = vec![Vec::new(); x_count];
        let mut y_adj = vec![Vec::new(); y_count];
        for &(x, y) in edges {
            if x >= x_count || y >= y_count {
                return Err(Error::Structural(format!("edge ({x}, {y}) out of range")));
            }
            x_adj[x].push(y);
            y_adj[y].push(x);
        }
        Ok(Self {
            x_adj,
            y_adj,
            slot_agent: (0..x_count).collect(),
            y_item: (0..y_count).collect(),
        })
    }

    /// The slot graph of a complete half-integral allocation.
    pub fn from_half_integral(fractional: &FractionalAllocation, instance: &Instance) -> Result<Self> {
        let plan = SlotPlan::new(fractional, instance)?;
        Ok(plan.graph)
    }

    pub fn x_count(&self) -> usize {
        self.x_adj.len()
    }

    pub fn y_count(&self) -> usize {
        self.y_adj.len()
    }

    pub fn x_neighbors(&self, x: usize) -> &[usize] {
        &self.x_adj[x]
    }

    pub fn y_neighbors(&self, y: usize) -> &[usize] {
        &self.y_adj[y]
    }

    pub fn slot_agent(&self, x: usize) -> usize {
        self.slot_agent[x]
    }

    pub fn y_item(&self, y: usize) -> usize {
        self.y_item[y]
    }

    pub fn edge_count(&self) -> usize {
        self.x_adj.iter().map(Vec::len).sum()
    }
}

pub type Matching = Vec<(usize, usize)>;

/// Splits a 2-regular bipartite graph into two perfect matchings.
///
/// Cycles are walked from the lowest unvisited `X` vertex; its edge to the
/// lower `Y` vertex goes to the first matching, and labels alternate.
pub fn decompose_two_regular(graph: &RoundingGraph) -> Result<(Matching, Matching)> {
    for (x, adj) in graph.x_adj.iter().enumerate() {
        if adj.len() != 2 {
            return Err(Error::Structural(format!("slot {x} has degree {}", adj.len())));
        }
        if adj[0] == adj[1] {
            return Err(Error::Structural(format!("slot {x} has a parallel edge")));
        }
    }
    for (y, adj) in graph.y_adj.iter().enumerate() {
        if adj.len() != 2 {
            return Err(Error::Structural(format!("item vertex {y} has degree {}", adj.len())));
        }
    }

    let other = |pair: &[usize], from: usize| if pair[0] == from { pair[1] } else { pair[0] };
    let mut visited = vec![false; graph.x_count()];
    let mut first = Vec::with_capacity(graph.y_count());
    let mut second = Vec::with_capacity(graph.y_count());
    for start in 0..graph.x_count() {
        if visited[start] {
            continue;
        }
        let (mut x, mut y) = (start, graph.x_adj[start][0].min(graph.x_adj[start][1]));
        loop {
            visited[x] = true;
            first.push((x, y));
            let next = other(&graph.y_adj[y], x);
            second.push((next, y));
            if next == start {
                break;
            }
            x = next;
            y = other(&graph.x_adj[x], y);
        }
    }
    Ok((first, second))
}

struct SlotPlan {
    graph: RoundingGraph,
}

impl SlotPlan {
    fn new(fractional: &FractionalAllocation, instance: &Instance) -> Result<Self> {
        let (n, m) = (fractional.agents(), fractional.items());
        if (n, m) != (instance.agents(), instance.items()) {
            return Err(Error::LengthMismatch {
                expected: instance.agents() * instance.items(),
                found: n * m,
            });
        }
        fractional.check_complete()?;
        if !fractional.is_half_integral() {
            return Err(Error::InvalidShares("allocation is not half-integral".into()));
        }

        let half = ratio(1, 2);
        let mut owners_of_half = vec![0usize; m];
        let mut halves: Vec<Vec<(Rational, usize)>> = Vec::with_capacity(n);
        for i in 0..n {
            let v = instance.valuation(i);
            let row = fractional.row_shares(i);
            let witness = v.function(v.witness_shares(row));
            let mine = (0..m)
                .filter(|&j| row[j] == half)
                .map(|j| {
                    owners_of_half[j] += 1;
                    (witness.value(j).clone(), j)
                })
                .collect();
            halves.push(mine);
        }
        debug_assert!(owners_of_half.iter().all(|&c| c == 0 || c == 2));

        let odd: Vec<usize> = (0..n).filter(|&i| halves[i].len() % 2 == 1).collect();
        if odd.len() % 2 == 1 {
            return Err(Error::Structural("odd number of agents with half-integral totals".into()));
        }
        for (p, pair) in odd.chunks(2).enumerate() {
            for &i in pair {
                halves[i].push((Rational::zero(), m + p));
            }
        }

        let mut y_item: Vec<usize> = (0..m).filter(|&j| owners_of_half[j] == 2).collect();
        y_item.extend((0..odd.len() / 2).map(|p| m + p));
        let y_of = |item: usize| {
            if item >= m {
                y_item.len() - odd.len() / 2 + (item - m)
            } else {
                y_item.binary_search(&item).expect("half item has a vertex")
            }
        };

        let mut x_adj = Vec::new();
        let mut slot_agent = Vec::new();
        let mut y_adj = vec![Vec::new(); y_item.len()];
        for (i, mine) in halves.iter_mut().enumerate() {
            mine.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
            for pair in mine.chunks(2) {
                let x = x_adj.len();
                let ys = vec![y_of(pair[0].1), y_of(pair[1].1)];
                for &y in &ys {
                    y_adj[y].push(x);
                }
                x_adj.push(ys);
                slot_agent.push(i);
            }
        }
        Ok(Self {
            graph: RoundingGraph {
                x_adj,
                y_adj,
                slot_agent,
                y_item,
            },
        })
    }
}

/// Rounds a complete half-integral allocation into at most two equally
/// likely integral allocations.
///
/// Wholly owned items stay with their owner in both outcomes; each
/// half-shared item goes to a different half-owner in each outcome. With
/// `u` the witness of agent `i`'s row, both outcomes give `i` at least
/// `u(F_i) - max{u(b_j) : f_ij = 1/2} / 2`. Identical outcomes collapse.
pub fn round_half_integral(
    fractional: &FractionalAllocation,
    instance: &Instance,
) -> Result<RandomizedAllocation> {
    let plan = SlotPlan::new(fractional, instance)?;
    let (first, second) = decompose_two_regular(&plan.graph)?;

    let (n, m) = (fractional.agents(), fractional.items());
    let mut base = vec![usize::MAX; m];
    for (j, owner) in base.iter_mut().enumerate() {
        if let Some(i) = (0..n).find(|&i| fractional.share(i, j).is_one()) {
            *owner = i;
        }
    }
    let outcome = |matching: &Matching| {
        let mut owners = base.clone();
        for &(x, y) in matching {
            let item = plan.graph.y_item(y);
            if item < m {
                owners[item] = plan.graph.slot_agent(x);
            }
        }
        Allocation::new(n, owners).expect("every item is assigned")
    };
    let (a1, a2) = (outcome(&first), outcome(&second));
    if a1 == a2 {
        return Ok(RandomizedAllocation::certain(a1));
    }
    let half = ratio(1, 2);
    RandomizedAllocation::new(vec![(a1, half.clone()), (a2, half)])
}
