//! Additive and XOS valuations over item-index sets.
//!
//! An item set is a slice of item indices. Order does not matter, but every
//! index must be in range and appear at most once.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::{is_negative, Rational};

pub(crate) fn check_set(set: &[usize], items: usize) -> Result<()> {
    if let Some(&item) = set.iter().find(|&&j| j >= items) {
        return Err(Error::ItemOutOfRange { item, items });
    }
    if set.windows(2).all(|w| w[0] < w[1]) {
        return Ok(());
    }
    let mut sorted = set.to_vec();
    sorted.sort_unstable();
    match sorted.windows(2).find(|w| w[0] == w[1]) {
        Some(w) => Err(Error::DuplicateItem(w[0])),
        None => Ok(()),
    }
}

/// Items of `set` that are not in `removed`.
pub(crate) fn set_minus(set: &[usize], removed: &[usize]) -> Vec<usize> {
    set.iter().copied().filter(|j| !removed.contains(j)).collect()
}

/// An additive set function given by one non-negative value per item.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AdditiveFunction {
    values: Vec<Rational>,
}

impl AdditiveFunction {
    pub fn new(values: Vec<Rational>) -> Result<Self> {
        if let Some(v) = values.iter().find(|v| is_negative(v)) {
            return Err(Error::NegativeValue(format!("{v}")));
        }
        Ok(Self { values })
    }

    pub fn items(&self) -> usize {
        self.values.len()
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn value(&self, item: usize) -> &Rational {
        &self.values[item]
    }

    pub(crate) fn eval_unchecked(&self, set: &[usize]) -> Rational {
        let mut total = Rational::zero();
        for &j in set {
            total += &self.values[j];
        }
        total
    }

    pub(crate) fn eval_shares(&self, shares: &[Rational]) -> Rational {
        let mut total = Rational::zero();
        for (value, share) in self.values.iter().zip(shares) {
            if !share.is_zero() && !value.is_zero() {
                total += value * share;
            }
        }
        total
    }

    pub(crate) fn scaled(&self, factor: &Rational) -> Self {
        Self {
            values: self.values.iter().map(|v| v * factor).collect(),
        }
    }
}

/// Value of `set` under the additive function `u`.
pub fn eval_additive(u: &AdditiveFunction, set: &[usize]) -> Result<Rational> {
    check_set(set, u.items())?;
    Ok(u.eval_unchecked(set))
}

/// A fractional bundle: the share of every item it holds, each in `[0, 1]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FractionalSet {
    shares: Vec<Rational>,
}

impl FractionalSet {
    pub fn new(shares: Vec<Rational>) -> Result<Self> {
        let one = Rational::one();
        if let Some(s) = shares.iter().find(|s| is_negative(s) || **s > one) {
            return Err(Error::InvalidShares(format!("share {s} outside [0, 1]")));
        }
        Ok(Self { shares })
    }

    /// The indicator of an integral item set.
    pub fn from_items(items: usize, set: &[usize]) -> Result<Self> {
        check_set(set, items)?;
        let mut shares = vec![Rational::zero(); items];
        for &j in set {
            shares[j] = Rational::one();
        }
        Ok(Self { shares })
    }

    pub fn items(&self) -> usize {
        self.shares.len()
    }

    pub fn shares(&self) -> &[Rational] {
        &self.shares
    }

    pub fn share(&self, item: usize) -> &Rational {
        &self.shares[item]
    }
}

/// Anything that assigns a value to integral and fractional bundles.
pub trait SetValuation {
    fn items(&self) -> usize;

    fn value(&self, set: &[usize]) -> Result<Rational>;

    fn fractional_value(&self, set: &FractionalSet) -> Result<Rational>;
}

/// The pointwise maximum of a non-empty family of additive functions.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct XosValuation {
    functions: Vec<AdditiveFunction>,
    items: usize,
}

impl XosValuation {
    pub fn new(functions: Vec<AdditiveFunction>) -> Result<Self> {
        let first = functions.first().ok_or(Error::EmptyFamily)?;
        let items = first.items();
        if let Some(f) = functions.iter().find(|f| f.items() != items) {
            return Err(Error::LengthMismatch {
                expected: items,
                found: f.items(),
            });
        }
        Ok(Self { functions, items })
    }

    /// Convenience constructor from raw rows of values.
    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let functions = rows
            .into_iter()
            .map(AdditiveFunction::new)
            .collect::<Result<Vec<_>>>()?;
        Self::new(functions)
    }

    /// A single-function (additive) valuation.
    pub fn additive(values: Vec<Rational>) -> Result<Self> {
        Self::new(vec![AdditiveFunction::new(values)?])
    }

    pub fn items(&self) -> usize {
        self.items
    }

    pub fn functions(&self) -> &[AdditiveFunction] {
        &self.functions
    }

    pub fn function(&self, index: usize) -> &AdditiveFunction {
        &self.functions[index]
    }

    pub fn eval(&self, set: &[usize]) -> Result<Rational> {
        check_set(set, self.items)?;
        Ok(self.eval_unchecked(set))
    }

    pub(crate) fn eval_unchecked(&self, set: &[usize]) -> Rational {
        let k = self.witness_unchecked(set);
        self.functions[k].eval_unchecked(set)
    }

    /// Smallest index of a family member attaining `eval(set)`.
    pub fn witness_index(&self, set: &[usize]) -> Result<usize> {
        check_set(set, self.items)?;
        Ok(self.witness_unchecked(set))
    }

    fn witness_unchecked(&self, set: &[usize]) -> usize {
        argmax_first(self.functions.iter().map(|f| f.eval_unchecked(set)))
    }

    pub fn eval_fractional(&self, set: &FractionalSet) -> Result<Rational> {
        let k = self.witness_index_fractional(set)?;
        Ok(self.functions[k].eval_shares(set.shares()))
    }

    /// Smallest index of a family member attaining the fractional value.
    pub fn witness_index_fractional(&self, set: &FractionalSet) -> Result<usize> {
        if set.items() != self.items {
            return Err(Error::LengthMismatch {
                expected: self.items,
                found: set.items(),
            });
        }
        Ok(self.witness_shares(set.shares()))
    }

    pub(crate) fn witness_shares(&self, shares: &[Rational]) -> usize {
        argmax_first(self.functions.iter().map(|f| f.eval_shares(shares)))
    }

    pub(crate) fn eval_shares(&self, shares: &[Rational]) -> Rational {
        self.functions[self.witness_shares(shares)].eval_shares(shares)
    }

    /// Value of a single item: the largest entry for it across the family.
    pub fn item_value(&self, item: usize) -> &Rational {
        self.functions
            .iter()
            .map(|f| f.value(item))
            .max()
            .expect("non-empty family")
    }

    /// `min(cap, v(.))`, evaluated lazily.
    pub fn truncate(&self, cap: Rational) -> Result<Truncated<'_>> {
        if is_negative(&cap) {
            return Err(Error::Precondition(format!("negative cap {cap}")));
        }
        Ok(Truncated {
            valuation: self,
            cap,
        })
    }

    /// Every entry multiplied by `factor`.
    pub fn scaled(&self, factor: &Rational) -> Self {
        Self {
            functions: self.functions.iter().map(|f| f.scaled(factor)).collect(),
            items: self.items,
        }
    }

    /// The valuation restricted to `kept` items, re-indexed in that order.
    pub(crate) fn restricted(&self, kept: &[usize]) -> Self {
        let functions = self
            .functions
            .iter()
            .map(|f| AdditiveFunction {
                values: kept.iter().map(|&j| f.values[j].clone()).collect(),
            })
            .collect();
        Self {
            functions,
            items: kept.len(),
        }
    }
}

fn argmax_first(values: impl Iterator<Item = Rational>) -> usize {
    let mut best: Option<(usize, Rational)> = None;
    for (k, v) in values.enumerate() {
        match &best {
            Some((_, b)) if v <= *b => {}
            _ => best = Some((k, v)),
        }
    }
    best.map_or(0, |(k, _)| k)
}

impl SetValuation for XosValuation {
    fn items(&self) -> usize {
        self.items
    }

    fn value(&self, set: &[usize]) -> Result<Rational> {
        self.eval(set)
    }

    fn fractional_value(&self, set: &FractionalSet) -> Result<Rational> {
        self.eval_fractional(set)
    }
}

/// An XOS valuation capped at a fixed level.
#[derive(Debug, Clone)]
pub struct Truncated<'a> {
    valuation: &'a XosValuation,
    cap: Rational,
}

impl Truncated<'_> {
    pub fn cap(&self) -> &Rational {
        &self.cap
    }

    pub fn eval(&self, set: &[usize]) -> Result<Rational> {
        let raw = self.valuation.eval(set)?;
        Ok(raw.min(self.cap.clone()))
    }

    pub fn eval_fractional(&self, set: &FractionalSet) -> Result<Rational> {
        let raw = self.valuation.eval_fractional(set)?;
        Ok(raw.min(self.cap.clone()))
    }
}

impl SetValuation for Truncated<'_> {
    fn items(&self) -> usize {
        self.valuation.items()
    }

    fn value(&self, set: &[usize]) -> Result<Rational> {
        self.eval(set)
    }

    fn fractional_value(&self, set: &FractionalSet) -> Result<Rational> {
        self.eval_fractional(set)
    }
}

/// Marginal contribution `v(T) - v(T \ S)` of `subset` to `set`.
pub fn contribution_set<V: SetValuation + ?Sized>(
    v: &V,
    set: &[usize],
    subset: &[usize],
) -> Result<Rational> {
    check_set(set, v.items())?;
    check_set(subset, v.items())?;
    if subset.iter().any(|j| !set.contains(j)) {
        return Err(Error::NotSubset);
    }
    let rest = set_minus(set, subset);
    Ok(v.value(set)? - v.value(&rest)?)
}
