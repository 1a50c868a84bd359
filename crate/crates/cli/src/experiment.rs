use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, ValueEnum};

use loosetile::almost::{almost_perfect_matching, AlmostOutcome};
use loosetile::construct::{regenerate, GeneratorParams};
use loosetile::extremal::{extremal_solve, ExtremalOptions};
use loosetile::factor::{find_factor, find_t_disjoint, verify_tiling};
use loosetile::{Budget, Hypergraph3, SearchOutcome};

use crate::{Family, Global, Status};

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Check {
    Factor,
    TDisjoint,
    Certificate,
}

impl Check {
    fn name(self) -> &'static str {
        match self {
            Check::Factor => "factor",
            Check::TDisjoint => "t-disjoint",
            Check::Certificate => "certificate",
        }
    }
}

#[derive(Args)]
pub struct ExperimentArgs {
    #[arg(long)]
    family: Family,
    /// A single order or an inclusive range `a..b`, stepped by `--step`.
    #[arg(long)]
    n: String,
    #[arg(long, default_value_t = 6)]
    step: usize,
    #[arg(long, default_value_t = 10)]
    trials: usize,
    /// Repeat to run several checks; one CSV row per (n, check).
    #[arg(long, required = true)]
    check: Vec<Check>,
    /// Copies required by the t-disjoint check.
    #[arg(long, default_value_t = 1)]
    t: usize,
    /// |X| - n/3 for covered-extremal.
    #[arg(long, default_value_t = 0)]
    x_offset: usize,
    #[arg(long, default_value_t = 0.0)]
    noise: f64,
    #[arg(long, default_value_t = 0.0)]
    rho: f64,
    #[arg(long, default_value_t = 0.5)]
    p: f64,
    /// Node budget per exact search, used when --budget-ms is absent.
    #[arg(long, default_value_t = 2_000_000)]
    search_nodes: u64,
}

fn parse_range(s: &str, step: usize) -> Result<Vec<usize>, String> {
    let bad = || format!("bad --n value {s:?}; expected N or A..B");
    let (a, b) = match s.split_once("..") {
        Some((a, b)) => (a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?),
        None => {
            let v = s.trim().parse().map_err(|_| bad())?;
            (v, v)
        }
    };
    if a > b || step == 0 {
        return Err(bad());
    }
    Ok((a..=b).step_by(step).collect())
}

fn params(args: &ExperimentArgs, n: usize, seed: u64) -> GeneratorParams {
    match args.family {
        Family::SpaceBarrier => GeneratorParams::SpaceBarrier { n },
        Family::CoveredExtremal => GeneratorParams::CoveredExtremal {
            n,
            x_size: n / 3 + args.x_offset,
            noise: args.noise,
            seed,
        },
        Family::IdealCase => GeneratorParams::IdealCase { n, rho: args.rho, seed },
        Family::Random => GeneratorParams::Random { n, p: args.p, seed },
    }
}

fn param_text(args: &ExperimentArgs, check: Check) -> String {
    let mut out = vec![format!("check={}", check.name())];
    match args.family {
        Family::SpaceBarrier => {}
        Family::CoveredExtremal => {
            out.push(format!("x_offset={}", args.x_offset));
            out.push(format!("noise={}", args.noise));
        }
        Family::IdealCase => out.push(format!("rho={}", args.rho)),
        Family::Random => out.push(format!("p={}", args.p)),
    }
    if check == Check::TDisjoint {
        out.push(format!("t={}", args.t));
    }
    out.join(";")
}

/// `Some(true/false)` when decided, `None` when every method ran out of budget.
fn run_check(h: &Hypergraph3, check: Check, args: &ExperimentArgs, budget: Budget, seed: u64) -> Option<bool> {
    match check {
        Check::Factor => match find_factor(h, budget) {
            SearchOutcome::Found(t) => Some(verify_tiling(h, &t, true).ok),
            SearchOutcome::Absent(_) => Some(false),
            SearchOutcome::Indeterminate { .. } => {
                let opts = ExtremalOptions {
                    seed,
                    ..Default::default()
                };
                let sol = extremal_solve(h, &opts).ok()?;
                Some(verify_tiling(h, &sol.tiling, true).ok)
            }
        },
        Check::TDisjoint => match find_t_disjoint(h, args.t, budget) {
            Ok(SearchOutcome::Found(t)) => Some(verify_tiling(h, &t, false).ok && t.len() == args.t),
            Ok(SearchOutcome::Absent(_)) | Err(_) => Some(false),
            Ok(SearchOutcome::Indeterminate { .. }) => None,
        },
        Check::Certificate => match almost_perfect_matching(h, 0.1, 0.2, budget) {
            AlmostOutcome::Certificate { certificate, .. } => Some(certificate.check(h)),
            AlmostOutcome::Matching { .. } => Some(false),
            AlmostOutcome::Indeterminate { .. } => None,
        },
    }
}

pub fn run(args: &ExperimentArgs, g: &Global) -> ExitCode {
    let ns = match parse_range(&args.n, args.step) {
        Ok(ns) => ns,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(Status::Usage as u8);
        }
    };
    if args.trials == 0 {
        eprintln!("error: --trials must be at least 1");
        return ExitCode::from(Status::Usage as u8);
    }
    let budget = g.budget_ms.map_or(Budget::nodes(args.search_nodes), Budget::millis);
    let family = match args.family {
        Family::SpaceBarrier => "space-barrier",
        Family::CoveredExtremal => "covered-extremal",
        Family::IdealCase => "ideal-case",
        Family::Random => "random",
    };
    println!("family,n,params,trials,successes,mean_runtime_ms,seed");
    let mut undecided_total = 0;
    for &n in &ns {
        for &check in &args.check {
            let mut successes = 0;
            let mut undecided = 0;
            let mut total_ms = 0.0;
            for trial in 0..args.trials {
                let seed = g.seed.wrapping_add(trial as u64);
                let inst = match regenerate(&params(args, n, seed)) {
                    Ok(i) => i,
                    Err(e) => {
                        eprintln!("error: n = {n}: {e}");
                        return ExitCode::from(Status::Usage as u8);
                    }
                };
                let start = Instant::now();
                match run_check(&inst.hypergraph, check, args, budget, seed) {
                    Some(true) => successes += 1,
                    Some(false) => {}
                    None => undecided += 1,
                }
                total_ms += start.elapsed().as_secs_f64() * 1000.0;
            }
            if undecided > 0 {
                eprintln!("n = {n}, {}: {undecided} trials undecided within budget", check.name());
            }
            undecided_total += undecided;
            println!(
                "{family},{n},{},{},{successes},{:.3},{}",
                param_text(args, check),
                args.trials,
                total_ms / args.trials as f64,
                g.seed
            );
        }
    }
    if undecided_total > 0 {
        ExitCode::from(Status::Budget as u8)
    } else {
        ExitCode::SUCCESS
    }
}
