//! Upper bound on what any lottery can promise two agents simultaneously.

use fairxos::{Error, Instance, Limits, Rational, Result};

/// `max_S v_0(S) + v_1(M \ S)` with a maximizing `S`, the first one found
/// when subsets are scanned by increasing bit mask.
///
/// Any randomized allocation giving both agents at least `x` in
/// expectation has `2x` at most this value.
pub fn best_two_agent_split(instance: &Instance, limits: &Limits) -> Result<(Rational, Vec<usize>)> {
    if instance.agents() != 2 {
        return Err(Error::Precondition(format!(
            "two agents required, found {}",
            instance.agents()
        )));
    }
    let m = instance.items();
    limits.check_power(2, m)?;
    let (first, second) = (instance.valuation(0), instance.valuation(1));
    let mut best: Option<(Rational, Vec<usize>)> = None;
    for mask in 0u64..1 << m {
        let (mine, theirs): (Vec<usize>, Vec<usize>) = (0..m).partition(|j| mask >> j & 1 == 1);
        let value = first.eval(&mine)? + second.eval(&theirs)?;
        if best.as_ref().is_none_or(|(b, _)| value > *b) {
            best = Some((value, mine));
        }
    }
    Ok(best.expect("at least the empty set"))
}
