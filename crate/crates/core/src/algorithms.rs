//! The randomized and deterministic MMS allocation algorithms.
//!
//! Both normalize every agent to MMS 1 once, hand out small high-value
//! bundles greedily, and finish with an exact capped-welfare optimum on
//! whatever is left. Scans run over agents in ascending order and, for each
//! agent, over remaining item tuples in lexicographic order; the first
//! qualifying `(agent, tuple)` is assigned and the scan restarts.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::Zero;

use crate::allocation::{Allocation, FractionalAllocation};
use crate::error::{Error, Result};
use crate::fractional::RandomizedAllocation;
use crate::instance::{Instance, Limits};
use crate::mms::{normalize, Normalization};
use crate::rational::{ratio, Rational};
use crate::rounding::round_half_integral;
use crate::welfare::{max_welfare_half_integral, max_welfare_integral};

/// Removal-loop state, in original agent and item indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartialInstance {
    /// Agents still waiting for a bundle, ascending.
    pub agents: Vec<usize>,
    /// Items not yet assigned, ascending.
    pub items: Vec<usize>,
    /// Bundles handed out so far, in order.
    pub fixed: Vec<(usize, Vec<usize>)>,
}

impl PartialInstance {
    pub fn new(instance: &Instance) -> Self {
        Self {
            agents: (0..instance.agents()).collect(),
            items: (0..instance.items()).collect(),
            fixed: Vec::new(),
        }
    }

    fn assign(&mut self, agent: usize, bundle: Vec<usize>) {
        self.agents.retain(|&i| i != agent);
        self.items.retain(|j| !bundle.contains(j));
        self.fixed.push((agent, bundle));
    }

    /// Owners of the fixed items; everything else is `None`.
    fn owners(&self, items: usize) -> Vec<Option<usize>> {
        let mut owners = vec![None; items];
        for (agent, bundle) in &self.fixed {
            for &j in bundle {
                owners[j] = Some(*agent);
            }
        }
        owners
    }
}

/// One bundle handed out by a removal loop.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PhaseEvent {
    /// 1 for single items, 2 for pairs, 3 for triples.
    pub step: usize,
    pub agent: usize,
    pub items: Vec<usize>,
    /// The agent's normalized value for `items`.
    pub value: Rational,
}

/// The welfare optimization that closes a run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WelfareCall {
    pub agents: Vec<usize>,
    pub items: Vec<usize>,
    pub caps: Vec<Rational>,
    /// Optimal capped welfare in normalized units.
    pub welfare: Rational,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PhaseTrace {
    pub events: Vec<PhaseEvent>,
    pub welfare: Option<WelfareCall>,
}

/// Assigns single items: an agent takes the first remaining item she values
/// at least her threshold. Agents with no threshold never take anything.
pub fn large_item_phase(
    state: &mut PartialInstance,
    instance: &Instance,
    thresholds: &[Option<Rational>],
) -> Result<Vec<PhaseEvent>> {
    removal_loop(state, instance, 1, thresholds)
}

/// Like [`large_item_phase`] for pairs (`size == 2`) or triples (`size == 3`).
pub fn tuple_phase(
    state: &mut PartialInstance,
    instance: &Instance,
    size: usize,
    thresholds: &[Option<Rational>],
) -> Result<Vec<PhaseEvent>> {
    if !(2..=3).contains(&size) {
        return Err(Error::Precondition(format!("tuple size {size} is not 2 or 3")));
    }
    removal_loop(state, instance, size, thresholds)
}

fn removal_loop(
    state: &mut PartialInstance,
    instance: &Instance,
    size: usize,
    thresholds: &[Option<Rational>],
) -> Result<Vec<PhaseEvent>> {
    if thresholds.len() != instance.agents() {
        return Err(Error::LengthMismatch {
            expected: instance.agents(),
            found: thresholds.len(),
        });
    }
    let mut events = Vec::new();
    while let Some(event) = first_qualifying(state, instance, size, thresholds) {
        state.assign(event.agent, event.items.clone());
        events.push(event);
    }
    Ok(events)
}

fn first_qualifying(
    state: &PartialInstance,
    instance: &Instance,
    size: usize,
    thresholds: &[Option<Rational>],
) -> Option<PhaseEvent> {
    let remaining = &state.items;
    if remaining.len() < size {
        return None;
    }
    state.agents.iter().find_map(|&agent| {
        let threshold = thresholds[agent].as_ref()?;
        let v = instance.valuation(agent);
        let mut idx: Vec<usize> = (0..size).collect();
        loop {
            let tuple: Vec<usize> = idx.iter().map(|&k| remaining[k]).collect();
            let value = v.eval_unchecked(&tuple);
            if value >= *threshold {
                return Some(PhaseEvent {
                    step: size,
                    agent,
                    items: tuple,
                    value,
                });
            }
            if !next_combination(&mut idx, remaining.len()) {
                return None;
            }
        }
    })
}

/// Advances `idx` to the next `idx.len()`-subset of `0..n` in lexicographic
/// order.
fn next_combination(idx: &mut [usize], n: usize) -> bool {
    let k = idx.len();
    for pos in (0..k).rev() {
        if idx[pos] < n - k + pos {
            idx[pos] += 1;
            for later in pos + 1..k {
                idx[later] = idx[later - 1] + 1;
            }
            return true;
        }
    }
    false
}

fn thresholds_for(norm: &Normalization, threshold: &Rational) -> Vec<Option<Rational>> {
    norm.zero_mms
        .iter()
        .map(|&z| (!z).then(|| threshold.clone()))
        .collect()
}

fn caps_for(norm: &Normalization, agents: &[usize], cap: &Rational) -> Vec<Rational> {
    agents
        .iter()
        .map(|&i| if norm.is_zero_mms(i) { Rational::zero() } else { cap.clone() })
        .collect()
}

/// Fills in the fixed items and, if the welfare step ran, the items it
/// assigned; anything still open goes to agent 0.
fn merge(state: &PartialInstance, agents: usize, items: usize, sub: Option<&Allocation>) -> Allocation {
    let mut owners = state.owners(items);
    if let Some(sub) = sub {
        for (k, &item) in state.items.iter().enumerate() {
            owners[item] = Some(state.agents[sub.owner(k)]);
        }
    }
    let owners = owners.into_iter().map(|o| o.unwrap_or(0)).collect();
    Allocation::new(agents, owners).expect("owners are in range")
}

/// Everything a randomized run computed along the way.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RandRun {
    pub normalization: Normalization,
    pub trace: PhaseTrace,
    /// State after the single-item loop.
    pub after_phases: PartialInstance,
    /// Optimal half-integral allocation of the remaining items among the
    /// remaining agents, indexed like `after_phases`.
    pub fractional: Option<FractionalAllocation>,
    pub result: RandomizedAllocation,
}

/// Randomized allocation guaranteeing every agent 1/4 of her MMS in
/// expectation and 1/8 in every outcome. The support has at most two
/// allocations.
pub fn alg_rand(instance: &Instance, limits: &Limits) -> Result<RandomizedAllocation> {
    Ok(alg_rand_traced(instance, limits)?.result)
}

pub fn alg_rand_traced(instance: &Instance, limits: &Limits) -> Result<RandRun> {
    let norm = normalize(instance, limits)?;
    let normalized = &norm.instance;
    let (n, m) = (instance.agents(), instance.items());

    let mut state = PartialInstance::new(normalized);
    let mut trace = PhaseTrace {
        events: large_item_phase(&mut state, normalized, &thresholds_for(&norm, &ratio(1, 4)))?,
        welfare: None,
    };

    if state.agents.is_empty() {
        let result = RandomizedAllocation::certain(merge(&state, n, m, None));
        return Ok(RandRun {
            normalization: norm,
            trace,
            after_phases: state,
            fractional: None,
            result,
        });
    }

    let sub = normalized.restricted(&state.agents, &state.items);
    let caps = caps_for(&norm, &state.agents, &ratio(1, 2));
    let fractional = max_welfare_half_integral(&sub, &caps, limits)?;
    let mut welfare = Rational::zero();
    for (k, cap) in caps.iter().enumerate() {
        let value = fractional.value(sub.valuation(k), k)?;
        welfare += if value < *cap { value } else { cap.clone() };
    }
    trace.welfare = Some(WelfareCall {
        agents: state.agents.clone(),
        items: state.items.clone(),
        caps,
        welfare,
    });

    let rounded = round_half_integral(&fractional, &sub)?;
    let support = rounded
        .support()
        .iter()
        .map(|(a, p)| (merge(&state, n, m, Some(a)), p.clone()))
        .collect();
    let result = RandomizedAllocation::new(support)?;
    Ok(RandRun {
        normalization: norm,
        trace,
        after_phases: state,
        fractional: Some(fractional),
        result,
    })
}

/// Everything a deterministic run computed along the way.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DetRun {
    pub normalization: Normalization,
    pub trace: PhaseTrace,
    /// State after the single, pair and triple loops.
    pub after_phases: PartialInstance,
    /// Welfare optimum over `after_phases`, indexed like it.
    pub welfare: Option<Allocation>,
    pub result: Allocation,
}

/// Deterministic allocation giving every agent at least 3/13 of her MMS.
pub fn alg_det(instance: &Instance, limits: &Limits) -> Result<Allocation> {
    Ok(alg_det_traced(instance, limits)?.result)
}

pub fn alg_det_traced(instance: &Instance, limits: &Limits) -> Result<DetRun> {
    let norm = normalize(instance, limits)?;
    let normalized = &norm.instance;
    let (n, m) = (instance.agents(), instance.items());
    let thresholds = thresholds_for(&norm, &ratio(3, 13));

    let mut state = PartialInstance::new(normalized);
    let mut trace = PhaseTrace {
        events: large_item_phase(&mut state, normalized, &thresholds)?,
        welfare: None,
    };
    for size in [2, 3] {
        let events = tuple_phase(&mut state, normalized, size, &thresholds)?;
        trace.events.extend(events);
    }

    if state.agents.is_empty() {
        let result = merge(&state, n, m, None);
        return Ok(DetRun {
            normalization: norm,
            trace,
            after_phases: state,
            welfare: None,
            result,
        });
    }

    let sub = normalized.restricted(&state.agents, &state.items);
    let caps = caps_for(&norm, &state.agents, &ratio(6, 13));
    let optimum = max_welfare_integral(&sub, &caps, limits)?;
    let welfare = optimum
        .bundles()
        .iter()
        .zip(&caps)
        .enumerate()
        .map(|(k, (bundle, cap))| {
            let value = sub.valuation(k).eval_unchecked(bundle);
            if value < *cap { value } else { cap.clone() }
        })
        .sum();
    trace.welfare = Some(WelfareCall {
        agents: state.agents.clone(),
        items: state.items.clone(),
        caps,
        welfare,
    });

    let result = merge(&state, n, m, Some(&optimum));
    Ok(DetRun {
        normalization: norm,
        trace,
        after_phases: state,
        welfare: Some(optimum),
        result,
    })
}
