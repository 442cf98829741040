//! Maximin shares by exhaustive search, and the operations built on them.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::instance::{Instance, Limits};
use crate::rational::{ratio, Rational};
use crate::scalar::Scalar;
use crate::valuation::{FractionalSet, XosValuation};

/// An agent's maximin share with a partition attaining it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MmsCertificate {
    pub value: Rational,
    /// Exactly `n` disjoint bundles covering every item; some may be empty.
    pub partition: Vec<Vec<usize>>,
}

/// Maximin share of `agent`: the best worst bundle over all partitions of
/// the items into `n` (possibly empty) bundles.
///
/// The witness is the optimal partition whose item-to-bundle label string
/// is lexicographically smallest.
pub fn mms(instance: &Instance, agent: usize, limits: &Limits) -> Result<MmsCertificate> {
    instance.check_agent(agent)?;
    mms_of(instance.valuation(agent), instance.agents(), limits)
}

/// [`mms`] for a bare valuation split into `bundles` parts.
pub fn mms_of(v: &XosValuation, bundles: usize, limits: &Limits) -> Result<MmsCertificate> {
    if bundles == 0 {
        return Err(Error::NoAgents);
    }
    let m = v.items();
    limits.check_power(bundles, m)?;

    let flat: Vec<Rational> = v
        .functions()
        .iter()
        .flat_map(|f| f.values().iter().cloned())
        .collect();
    let labels = match i128::convert(&flat) {
        Some(scaled) => MmsSearch::new(scaled, v.functions().len(), m, bundles).run(),
        None => {
            let exact = Rational::convert(&flat).expect("rationals always convert");
            MmsSearch::new(exact, v.functions().len(), m, bundles).run()
        }
    };

    let mut partition = vec![Vec::new(); bundles];
    for (item, &label) in labels.iter().enumerate() {
        partition[label].push(item);
    }
    let value = partition
        .iter()
        .map(|b| v.eval_unchecked(b))
        .min()
        .expect("at least one bundle");
    Ok(MmsCertificate { value, partition })
}

struct MmsSearch<T> {
    /// `values[k * m + j]`
    values: Vec<T>,
    functions: usize,
    items: usize,
    bundles: usize,
    /// `suffix[j * functions + k]`: value of items `j..` under function `k`.
    suffix: Vec<T>,
    /// `sums[b * functions + k]`
    sums: Vec<T>,
    labels: Vec<usize>,
    best: Option<(T, Vec<usize>)>,
}

impl<T: Scalar> MmsSearch<T> {
    fn new(values: Vec<T>, functions: usize, items: usize, bundles: usize) -> Self {
        let mut suffix = vec![T::zero_value(); (items + 1) * functions];
        for j in (0..items).rev() {
            for k in 0..functions {
                let mut s = suffix[(j + 1) * functions + k].clone();
                s.add_assign(&values[k * items + j]);
                suffix[j * functions + k] = s;
            }
        }
        Self {
            values,
            functions,
            items,
            bundles,
            suffix,
            sums: vec![T::zero_value(); bundles * functions],
            labels: Vec::with_capacity(items),
            best: None,
        }
    }

    fn run(mut self) -> Vec<usize> {
        self.visit(0, 0);
        self.best.map(|(_, labels)| labels).unwrap_or_default()
    }

    fn bundle_value(&self, b: usize, extra: Option<usize>) -> T {
        let f = self.functions;
        (0..f)
            .map(|k| {
                let mut s = self.sums[b * f + k].clone();
                if let Some(j) = extra {
                    s.add_assign(&self.suffix[j * f + k]);
                }
                s
            })
            .max()
            .unwrap_or_else(T::zero_value)
    }

    /// Labels are restricted-growth: item `j` may open at most one new bundle.
    fn visit(&mut self, j: usize, used: usize) {
        if let Some((best, _)) = &self.best {
            if self.bundles - used > self.items - j {
                // some bundle stays empty, so this branch is worth zero at best
                return;
            }
            let bound = (0..self.bundles)
                .map(|b| self.bundle_value(b, Some(j)))
                .min()
                .unwrap_or_else(T::zero_value);
            if bound <= *best {
                return;
            }
        }
        if j == self.items {
            let value = (0..self.bundles)
                .map(|b| self.bundle_value(b, None))
                .min()
                .unwrap_or_else(T::zero_value);
            if self.best.as_ref().is_none_or(|(b, _)| value > *b) {
                self.best = Some((value, self.labels.clone()));
            }
            return;
        }
        let f = self.functions;
        for label in 0..(used + 1).min(self.bundles) {
            for k in 0..f {
                let v = self.values[k * self.items + j].clone();
                self.sums[label * f + k].add_assign(&v);
            }
            self.labels.push(label);
            self.visit(j + 1, used.max(label + 1));
            self.labels.pop();
            for k in 0..f {
                let v = self.values[k * self.items + j].clone();
                self.sums[label * f + k].sub_assign(&v);
            }
        }
    }
}

/// `v_i(M) / n`.
pub fn proportional_share(instance: &Instance, agent: usize) -> Result<Rational> {
    instance.check_agent(agent)?;
    let all: Vec<usize> = (0..instance.items()).collect();
    let total = instance.valuation(agent).eval_unchecked(&all);
    Ok(total / Rational::from_integer(instance.agents().into()))
}

/// An instance rescaled so every agent with positive MMS has MMS exactly 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Normalization {
    pub instance: Instance,
    /// Each agent's MMS in the original units.
    pub mms: Vec<Rational>,
    /// What each agent's entries were divided by (1 for zero-MMS agents).
    pub factors: Vec<Rational>,
    /// Agents whose MMS is zero; they are left unscaled.
    pub zero_mms: Vec<bool>,
}

impl Normalization {
    pub fn is_zero_mms(&self, agent: usize) -> bool {
        self.zero_mms[agent]
    }
}

/// Divides each positive-MMS agent's valuation by her MMS.
pub fn normalize(instance: &Instance, limits: &Limits) -> Result<Normalization> {
    let n = instance.agents();
    let mut mms_values = Vec::with_capacity(n);
    let mut factors = Vec::with_capacity(n);
    let mut zero_mms = Vec::with_capacity(n);
    let mut valuations = Vec::with_capacity(n);
    for agent in 0..n {
        let cert = mms(instance, agent, limits)?;
        let v = instance.valuation(agent);
        if cert.value.is_zero() {
            factors.push(Rational::one());
            zero_mms.push(true);
            valuations.push(v.clone());
        } else {
            let inverse = cert.value.recip();
            valuations.push(if inverse.is_one() { v.clone() } else { v.scaled(&inverse) });
            factors.push(cert.value.clone());
            zero_mms.push(false);
        }
        mms_values.push(cert.value);
    }
    let normalized = Instance::new(instance.items(), valuations)?.with_normalized(true);
    Ok(Normalization {
        instance: normalized,
        mms: mms_values,
        factors,
        zero_mms,
    })
}

/// Removes `agent` and `item`; survivors keep their relative order.
///
/// Returns `None` when the removed agent was the last one.
pub fn reduce(instance: &Instance, agent: usize, item: usize) -> Result<Option<Instance>> {
    instance.check_agent(agent)?;
    if item >= instance.items() {
        return Err(Error::ItemOutOfRange {
            item,
            items: instance.items(),
        });
    }
    let agents: Vec<usize> = (0..instance.agents()).filter(|&i| i != agent).collect();
    if agents.is_empty() {
        return Ok(None);
    }
    let items: Vec<usize> = (0..instance.items()).filter(|&j| j != item).collect();
    Ok(Some(instance.restricted(&agents, &items)))
}

/// Splits every bundle of a normalized certificate into two halves, each
/// holding half of every item of the bundle. Yields `2n` fractional sets
/// whose shares of each item sum to one.
pub fn halving_split(v: &XosValuation, certificate: &MmsCertificate) -> Result<Vec<FractionalSet>> {
    let one = Rational::one();
    if certificate.value < one {
        return Err(Error::Precondition(format!(
            "certificate value {} is below 1",
            certificate.value
        )));
    }
    let m = v.items();
    let mut seen = vec![false; m];
    for bundle in &certificate.partition {
        crate::valuation::check_set(bundle, m)?;
        for &j in bundle {
            if core::mem::replace(&mut seen[j], true) {
                return Err(Error::DuplicateItem(j));
            }
        }
        if v.eval_unchecked(bundle) < certificate.value {
            return Err(Error::Precondition(
                "certificate does not match the valuation".into(),
            ));
        }
    }
    if let Some(item) = seen.iter().position(|s| !s) {
        return Err(Error::Precondition(format!("item {item} missing from partition")));
    }

    let half = ratio(1, 2);
    let mut out = Vec::with_capacity(2 * certificate.partition.len());
    for bundle in &certificate.partition {
        let mut shares = vec![Rational::zero(); m];
        for &j in bundle {
            shares[j] = half.clone();
        }
        let set = FractionalSet::new(shares)?;
        out.push(set.clone());
        out.push(set);
    }
    Ok(out)
}
