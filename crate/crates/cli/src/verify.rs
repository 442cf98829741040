//! Exact checks of maximin-share guarantees, in the instance's own units.

use std::fmt;

use fairxos::{ex_post_min, expected_value, mms, Instance, Limits, RandomizedAllocation, Rational};
use num_traits::{One, Zero};
use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AgentReport {
    pub agent: usize,
    pub mms: Rational,
    /// Worst bundle value over the support.
    pub ex_post: Rational,
    /// Expected bundle value.
    pub ex_ante: Rational,
    /// `ex_post / mms`, absent when the MMS is zero.
    pub ex_post_ratio: Option<Rational>,
    pub ex_ante_ratio: Option<Rational>,
    pub ex_post_ok: bool,
    pub ex_ante_ok: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Failure {
    pub agent: usize,
    pub check: &'static str,
    pub achieved: Rational,
    pub required: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    pub alpha: Rational,
    pub ex_ante_target: Option<Rational>,
    pub outcomes: usize,
    pub agents: Vec<AgentReport>,
    pub failures: Vec<Failure>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    /// Each agent's MMS, which is also the factor her values are divided by
    /// when normalizing (1 when the MMS is zero).
    pub fn normalization_factors(&self) -> Vec<Rational> {
        self.agents
            .iter()
            .map(|a| if a.mms.is_zero() { Rational::one() } else { a.mms.clone() })
            .collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        #[derive(Serialize)]
        struct AgentJson {
            agent: usize,
            mms: String,
            ex_post: String,
            ex_ante: String,
            ex_post_ratio: Option<String>,
            ex_ante_ratio: Option<String>,
            ex_post_ok: bool,
            ex_ante_ok: bool,
        }
        #[derive(Serialize)]
        struct FailureJson {
            agent: usize,
            check: &'static str,
            achieved: String,
            required: String,
        }
        #[derive(Serialize)]
        struct ReportJson {
            passed: bool,
            alpha: String,
            ex_ante_target: Option<String>,
            outcomes: usize,
            normalization_factors: Vec<String>,
            agents: Vec<AgentJson>,
            failures: Vec<FailureJson>,
        }
        let s = |r: &Rational| r.to_string();
        let doc = ReportJson {
            passed: self.passed(),
            alpha: s(&self.alpha),
            ex_ante_target: self.ex_ante_target.as_ref().map(s),
            outcomes: self.outcomes,
            normalization_factors: self.normalization_factors().iter().map(s).collect(),
            agents: self
                .agents
                .iter()
                .map(|a| AgentJson {
                    agent: a.agent,
                    mms: s(&a.mms),
                    ex_post: s(&a.ex_post),
                    ex_ante: s(&a.ex_ante),
                    ex_post_ratio: a.ex_post_ratio.as_ref().map(s),
                    ex_ante_ratio: a.ex_ante_ratio.as_ref().map(s),
                    ex_post_ok: a.ex_post_ok,
                    ex_ante_ok: a.ex_ante_ok,
                })
                .collect(),
            failures: self
                .failures
                .iter()
                .map(|f| FailureJson {
                    agent: f.agent,
                    check: f.check,
                    achieved: s(&f.achieved),
                    required: s(&f.required),
                })
                .collect(),
        };
        serde_json::to_value(doc).expect("plain data serializes")
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ex-post target {} x MMS", self.alpha)?;
        if let Some(t) = &self.ex_ante_target {
            write!(f, ", ex-ante target {t} x MMS")?;
        }
        writeln!(f, " ({} outcome(s))", self.outcomes)?;
        let ratio = |r: &Option<Rational>| r.as_ref().map_or("-".to_string(), |r| r.to_string());
        for a in &self.agents {
            writeln!(
                f,
                "  agent {}: mms {}  ex-post {} (ratio {})  ex-ante {} (ratio {})",
                a.agent,
                a.mms,
                a.ex_post,
                ratio(&a.ex_post_ratio),
                a.ex_ante,
                ratio(&a.ex_ante_ratio)
            )?;
        }
        if self.passed() {
            writeln!(f, "PASS")
        } else {
            writeln!(f, "FAIL")?;
            for x in &self.failures {
                writeln!(f, "  agent {} {}: {} < {}", x.agent, x.check, x.achieved, x.required)?;
            }
            Ok(())
        }
    }
}

/// Checks that every outcome gives every agent at least `alpha` times her
/// MMS and, when `ex_ante` is given, that every expected value reaches
/// `ex_ante` times her MMS.
pub fn verify(
    instance: &Instance,
    result: &RandomizedAllocation,
    alpha: &Rational,
    ex_ante: Option<&Rational>,
    limits: &Limits,
) -> fairxos::Result<VerificationReport> {
    if (result.agents(), result.items()) != (instance.agents(), instance.items()) {
        return Err(fairxos::Error::LengthMismatch {
            expected: instance.agents(),
            found: result.agents(),
        });
    }
    let mut agents = Vec::with_capacity(instance.agents());
    let mut failures = Vec::new();
    for i in 0..instance.agents() {
        let share = mms(instance, i, limits)?.value;
        let v = instance.valuation(i);
        let post = ex_post_min(result, v, i)?;
        let ante = expected_value(result, v, i)?;
        let ratio = |x: &Rational| (!share.is_zero()).then(|| x / &share);

        let post_needed = alpha * &share;
        let ex_post_ok = post >= post_needed;
        if !ex_post_ok {
            failures.push(Failure {
                agent: i,
                check: "ex-post",
                achieved: post.clone(),
                required: post_needed,
            });
        }
        let ex_ante_ok = match ex_ante {
            Some(target) => {
                let needed = target * &share;
                let ok = ante >= needed;
                if !ok {
                    failures.push(Failure {
                        agent: i,
                        check: "ex-ante",
                        achieved: ante.clone(),
                        required: needed,
                    });
                }
                ok
            }
            None => true,
        };
        agents.push(AgentReport {
            agent: i,
            ex_post_ratio: ratio(&post),
            ex_ante_ratio: ratio(&ante),
            mms: share,
            ex_post: post,
            ex_ante: ante,
            ex_post_ok,
            ex_ante_ok,
        });
    }
    Ok(VerificationReport {
        alpha: alpha.clone(),
        ex_ante_target: ex_ante.cloned(),
        outcomes: result.len(),
        agents,
        failures,
    })
}
