//! Instance families: the two hand-built hard cases and seeded random ones.

use fairxos::{Instance, Rational, XosValuation};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::format::InstanceFile;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Family {
    /// Two agents, four items; MMS 2 each, yet no split gives both more than 3/2 in total.
    Lemma1,
    /// `n` identical agents over `n^2` items in `n` blocks.
    Grid,
    /// `l` additive functions per agent, integer values in `0..=maxval`.
    RandomXos,
    /// One additive function per agent, integer values in `0..=maxval`.
    Additive,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::Lemma1 => "lemma1",
            Family::Grid => "grid",
            Family::RandomXos => "random-xos",
            Family::Additive => "additive",
        }
    }
}

fn int(v: u64) -> Rational {
    Rational::from_integer(v.into())
}

fn xos(rows: &[[u64; 4]]) -> XosValuation {
    XosValuation::from_rows(rows.iter().map(|r| r.iter().map(|&v| int(v)).collect()).collect())
        .expect("rows are well formed")
}

/// Agent 0 wants `{b0, b1}` or `{b2, b3}`; agent 1 wants `{b0, b3}` or
/// `{b1, b2}`.
pub fn lemma1() -> InstanceFile {
    let a = xos(&[[1, 1, 0, 0], [0, 0, 1, 1]]);
    let b = xos(&[[1, 0, 0, 1], [0, 1, 1, 0]]);
    let mut file = InstanceFile::new(Instance::new(4, vec![a, b]).expect("valid"));
    file.name = Some("lemma1".into());
    file.family = Some("lemma1".into());
    file
}

/// `n` agents, `n^2` items split into `n` consecutive blocks; function `k`
/// values each item of block `k` at `1/n`.
pub fn grid(n: usize) -> InstanceFile {
    assert!(n >= 1, "grid needs at least one agent");
    let share = Rational::new(1.into(), n.into());
    let rows: Vec<Vec<Rational>> = (0..n)
        .map(|k| {
            (0..n * n)
                .map(|j| if j / n == k { share.clone() } else { Rational::from_integer(0.into()) })
                .collect()
        })
        .collect();
    let v = XosValuation::from_rows(rows).expect("valid");
    let mut file = InstanceFile::new(Instance::new(n * n, vec![v; n]).expect("valid"));
    file.name = Some(format!("grid-{n}"));
    file.family = Some("grid".into());
    file
}

/// Every entry drawn uniformly from `0..=maxval`, agent by agent, function
/// by function, item by item.
pub fn random_xos(n: usize, m: usize, l: usize, maxval: u64, seed: u64) -> InstanceFile {
    assert!(n >= 1 && l >= 1, "need at least one agent and one function");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let valuations = (0..n)
        .map(|_| {
            let rows = (0..l)
                .map(|_| (0..m).map(|_| int(rng.gen_range(0..=maxval))).collect())
                .collect();
            XosValuation::from_rows(rows).expect("valid")
        })
        .collect();
    let mut file = InstanceFile::new(Instance::new(m, valuations).expect("valid"));
    file.name = Some(format!("random-xos-n{n}-m{m}-l{l}-v{maxval}"));
    file.family = Some("random-xos".into());
    file.seed = Some(seed);
    file
}

pub fn additive(n: usize, m: usize, maxval: u64, seed: u64) -> InstanceFile {
    let mut file = random_xos(n, m, 1, maxval, seed);
    file.name = Some(format!("additive-n{n}-m{m}-v{maxval}"));
    file.family = Some("additive".into());
    file
}
