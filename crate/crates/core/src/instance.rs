use alloc::format;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::valuation::XosValuation;

/// A fair-division instance: one XOS valuation per agent over `items` goods.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    items: usize,
    valuations: Vec<XosValuation>,
    normalized: bool,
}

impl Instance {
    pub fn new(items: usize, valuations: Vec<XosValuation>) -> Result<Self> {
        if valuations.is_empty() {
            return Err(Error::NoAgents);
        }
        if let Some(v) = valuations.iter().find(|v| v.items() != items) {
            return Err(Error::LengthMismatch {
                expected: items,
                found: v.items(),
            });
        }
        Ok(Self {
            items,
            valuations,
            normalized: false,
        })
    }

    pub fn agents(&self) -> usize {
        self.valuations.len()
    }

    pub fn items(&self) -> usize {
        self.items
    }

    pub fn valuations(&self) -> &[XosValuation] {
        &self.valuations
    }

    pub fn valuation(&self, agent: usize) -> &XosValuation {
        &self.valuations[agent]
    }

    /// True once every positive-MMS agent has been divided by her MMS.
    pub fn is_normalized(&self) -> bool {
        self.normalized
    }

    pub(crate) fn with_normalized(mut self, normalized: bool) -> Self {
        self.normalized = normalized;
        self
    }

    pub(crate) fn check_agent(&self, agent: usize) -> Result<()> {
        if agent >= self.agents() {
            return Err(Error::AgentOutOfRange {
                agent,
                agents: self.agents(),
            });
        }
        Ok(())
    }

    /// The sub-instance over the given agents and items, both re-indexed in
    /// the order given.
    pub fn sub_instance(&self, agents: &[usize], items: &[usize]) -> Result<Self> {
        if agents.is_empty() {
            return Err(Error::NoAgents);
        }
        for &agent in agents {
            self.check_agent(agent)?;
        }
        if let Some(&item) = items.iter().find(|&&j| j >= self.items) {
            return Err(Error::ItemOutOfRange {
                item,
                items: self.items,
            });
        }
        Ok(self.restricted(agents, items))
    }

    pub(crate) fn restricted(&self, agents: &[usize], items: &[usize]) -> Self {
        Self {
            items: items.len(),
            valuations: agents
                .iter()
                .map(|&i| self.valuations[i].restricted(items))
                .collect(),
            normalized: self.normalized,
        }
    }
}

/// Budgets for the exhaustive searches.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Largest number of candidates any single enumeration may visit.
    pub max_enum: u64,
}

impl Limits {
    pub const DEFAULT_MAX_ENUM: u64 = 10_000_000;

    pub fn new(max_enum: u64) -> Self {
        Self { max_enum }
    }

    /// Fails unless `base^exp` candidates fit the budget.
    pub fn check_power(&self, base: usize, exp: usize) -> Result<()> {
        let required = u32::try_from(exp)
            .ok()
            .and_then(|e| (base as u128).checked_pow(e));
        match required {
            Some(r) if r <= u128::from(self.max_enum) => Ok(()),
            _ => Err(Error::Capacity {
                required: format!("{base}^{exp}"),
                limit: self.max_enum,
            }),
        }
    }
}

impl Default for Limits {
    fn default() -> Self {
        Self::new(Self::DEFAULT_MAX_ENUM)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;
    use alloc::vec;

    #[test]
    fn validates_shape() {
        let v = XosValuation::additive(vec![int(1), int(2)]).unwrap();
        assert_eq!(Instance::new(2, vec![]), Err(Error::NoAgents));
        assert!(matches!(
            Instance::new(3, vec![v.clone()]),
            Err(Error::LengthMismatch { expected: 3, found: 2 })
        ));
        let inst = Instance::new(2, vec![v.clone(), v]).unwrap();
        assert_eq!((inst.agents(), inst.items()), (2, 2));
        assert!(!inst.is_normalized());
    }

    #[test]
    fn limits() {
        let limits = Limits::default();
        assert!(limits.check_power(10, 7).is_ok());
        assert!(limits.check_power(10, 8).is_err());
        assert!(limits.check_power(3, 1000).is_err());
        assert!(limits.check_power(0, 0).is_ok());
        assert!(Limits::new(8).check_power(2, 3).is_ok());
    }
}
