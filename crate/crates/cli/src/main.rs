use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use fairxos::{alg_det, alg_rand, mms, Limits, RandomizedAllocation, Rational};
use fairxos_cli::format::{parse_rational, InstanceFile, ResultFile};
use fairxos_cli::generate::{self, Family};
use fairxos_cli::{best_two_agent_split, verify, VerificationReport};
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

#[derive(Parser)]
#[command(name = "fairxos", version, about = "Exact maximin-share allocation for XOS valuations")]
struct Cli {
    /// Largest number of candidates any exhaustive search may visit.
    #[arg(long, global = true, default_value_t = Limits::DEFAULT_MAX_ENUM)]
    max_enum: u64,
    /// Print machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Algorithm {
    /// Deterministic, 3/13 of MMS.
    Det,
    /// Randomized, 1/4 of MMS ex-ante and 1/8 ex-post.
    Rand,
}

#[derive(Subcommand)]
enum Command {
    /// Maximin share and a witness partition for every agent.
    Mms { instance: PathBuf },
    /// Run an algorithm and verify its guarantee.
    Solve {
        #[arg(long, value_enum)]
        algorithm: Algorithm,
        instance: PathBuf,
        /// Write the allocation here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check a result file against MMS targets.
    Verify {
        /// Ex-post target as a fraction of MMS, e.g. 3/13.
        #[arg(long, value_parser = rational_arg)]
        alpha: Rational,
        /// Ex-ante target as a fraction of MMS.
        #[arg(long, value_parser = rational_arg)]
        ex_ante: Option<Rational>,
        instance: PathBuf,
        result: PathBuf,
    },
    /// Write an instance from one of the built-in families.
    Gen {
        #[arg(long, value_enum)]
        family: Family,
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long, default_value_t = 4)]
        m: usize,
        /// Additive functions per agent.
        #[arg(long, default_value_t = 2)]
        l: usize,
        #[arg(long, default_value_t = 8)]
        maxval: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Defaults to standard output.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Best total `v_0(S) + v_1(M \ S)` for a two-agent instance.
    Bound2 { instance: PathBuf },
    /// Draw one outcome of a randomized result.
    Sample {
        #[arg(long)]
        seed: u64,
        instance: PathBuf,
        /// A result file; without it the randomized algorithm is run.
        #[arg(long)]
        result: Option<PathBuf>,
    },
}

fn rational_arg(text: &str) -> Result<Rational, String> {
    parse_rational(text)
}

fn read_instance(path: &Path) -> Result<InstanceFile> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    InstanceFile::parse(&text).with_context(|| format!("parsing {}", path.display()))
}

fn read_result(path: &Path) -> Result<ResultFile> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    ResultFile::parse(&text).with_context(|| format!("parsing {}", path.display()))
}

fn print_json(value: &serde_json::Value) {
    println!("{}", serde_json::to_string_pretty(value).expect("JSON values serialize"));
}

fn bundles_json(owners: &[usize], agents: usize) -> Vec<Vec<usize>> {
    let mut bundles = vec![Vec::new(); agents];
    for (j, &a) in owners.iter().enumerate() {
        bundles[a].push(j);
    }
    bundles
}

fn result_json(result: &ResultFile) -> serde_json::Value {
    let r = result.as_randomized();
    let outcomes: Vec<_> = r
        .support()
        .iter()
        .map(|(a, p)| json!({ "probability": p.to_string(), "bundles": bundles_json(a.owners(), a.agents()) }))
        .collect();
    json!({ "randomized": result.is_randomized(), "support": outcomes })
}

fn print_result(result: &ResultFile) {
    for (a, p) in result.as_randomized().support() {
        if result.is_randomized() {
            println!("with probability {p}:");
        }
        for (i, bundle) in bundles_json(a.owners(), a.agents()).iter().enumerate() {
            println!("  agent {i}: {bundle:?}");
        }
    }
}

fn report(cli: &Cli, result: Option<&ResultFile>, report: &VerificationReport) -> ExitCode {
    if cli.json {
        let mut doc = json!({ "verification": report.to_json() });
        if let Some(r) = result {
            doc["result"] = result_json(r);
        }
        print_json(&doc);
    } else {
        if let Some(r) = result {
            print_result(r);
        }
        print!("{report}");
    }
    if report.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

fn run(cli: &Cli) -> Result<ExitCode> {
    let limits = Limits::new(cli.max_enum);
    match &cli.command {
        Command::Mms { instance } => {
            let file = read_instance(instance)?;
            let inst = &file.instance;
            let certs = (0..inst.agents())
                .map(|i| mms(inst, i, &limits))
                .collect::<fairxos::Result<Vec<_>>>()?;
            if cli.json {
                let agents: Vec<_> = certs
                    .iter()
                    .enumerate()
                    .map(|(i, c)| json!({ "agent": i, "mms": c.value.to_string(), "partition": c.partition }))
                    .collect();
                print_json(&json!({ "agents": agents }));
            } else {
                for (i, c) in certs.iter().enumerate() {
                    println!("agent {i}: mms {}  partition {:?}", c.value, c.partition);
                }
            }
        }
        Command::Solve { algorithm, instance, out } => {
            let file = read_instance(instance)?;
            let inst = &file.instance;
            let (result, alpha, ex_ante) = match algorithm {
                Algorithm::Det => (
                    ResultFile::Deterministic(alg_det(inst, &limits)?),
                    Rational::new(3.into(), 13.into()),
                    None,
                ),
                Algorithm::Rand => (
                    ResultFile::Randomized(alg_rand(inst, &limits)?),
                    Rational::new(1.into(), 8.into()),
                    Some(Rational::new(1.into(), 4.into())),
                ),
            };
            if let Some(path) = out {
                fs::write(path, result.to_text()).with_context(|| format!("writing {}", path.display()))?;
            }
            let checked = verify(inst, &result.as_randomized(), &alpha, ex_ante.as_ref(), &limits)?;
            return Ok(report(cli, Some(&result), &checked));
        }
        Command::Verify { alpha, ex_ante, instance, result } => {
            let file = read_instance(instance)?;
            let result = read_result(result)?;
            let checked = verify(&file.instance, &result.as_randomized(), alpha, ex_ante.as_ref(), &limits)?;
            return Ok(report(cli, None, &checked));
        }
        Command::Gen { family, n, m, l, maxval, seed, out } => {
            if *n == 0 || *l == 0 {
                bail!("--n and --l must be positive");
            }
            let file = match family {
                Family::Lemma1 => generate::lemma1(),
                Family::Grid => generate::grid(*n),
                Family::RandomXos => generate::random_xos(*n, *m, *l, *maxval, *seed),
                Family::Additive => generate::additive(*n, *m, *maxval, *seed),
            };
            match out {
                Some(path) => fs::write(path, file.to_text()).with_context(|| format!("writing {}", path.display()))?,
                None => print!("{}", file.to_text()),
            }
        }
        Command::Bound2 { instance } => {
            let file = read_instance(instance)?;
            let (value, set) = best_two_agent_split(&file.instance, &limits)?;
            if cli.json {
                print_json(&json!({ "bound": value.to_string(), "first_agent_items": set }));
            } else {
                println!("best split total {value} with agent 0 taking {set:?}");
            }
        }
        Command::Sample { seed, instance, result } => {
            let file = read_instance(instance)?;
            let lottery: RandomizedAllocation = match result {
                Some(path) => read_result(path)?.as_randomized(),
                None => alg_rand(&file.instance, &limits)?,
            };
            // every cumulative probability is a multiple of 1/scale
            let scale = lottery
                .support()
                .iter()
                .map(|(_, p)| Rational::from_integer(p.denom().clone()))
                .product::<Rational>()
                .to_integer()
                .to_u64()
                .context("probability denominators are too large to sample")?;
            let mut rng = ChaCha8Rng::seed_from_u64(*seed);
            let point = Rational::new(rng.gen_range(0..scale).into(), scale.into());
            let drawn = lottery.pick(&point);
            if cli.json {
                print_json(&json!({ "seed": seed, "bundles": bundles_json(drawn.owners(), drawn.agents()) }));
            } else {
                for (i, bundle) in bundles_json(drawn.owners(), drawn.agents()).iter().enumerate() {
                    println!("agent {i}: {bundle:?}");
                }
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(err) => {
            if cli.json {
                print_json(&json!({ "error": format!("{err:#}") }));
            } else {
                eprintln!("error: {err:#}");
            }
            ExitCode::from(2)
        }
    }
}
