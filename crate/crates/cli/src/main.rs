use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use loosetile::absorb::{absorb, build_absorbing_family, AbsorbConfig};
use loosetile::almost::{almost_perfect_matching, AlmostOutcome};
use loosetile::construct::{regenerate, GeneratorParams};
use loosetile::extremal::{extremal_solve, ExtremalError, ExtremalOptions};
use loosetile::factor::{find_factor, find_t_disjoint, max_tiling, verify_tiling, AbsentReason};
use loosetile::io::{parse_h3, parse_part, write_h3};
use loosetile::lattice::{closed_partition, find_transferral, reachable_5sets, robust_vectors, ReachParams};
use loosetile::rng::{rng, sample_distinct};
use loosetile::{Budget, Hypergraph3, Partition, SearchOutcome, Tiling, VertexSet};

mod experiment;

/// Loose 6-cycle tilings of 3-uniform hypergraphs.
#[derive(Parser)]
#[command(name = "loosetile", version)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Copy)]
pub struct Global {
    /// Wall-clock limit for searches (unlimited if omitted).
    #[arg(long, global = true)]
    budget_ms: Option<u64>,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Worker threads. Every command runs single-threaded; other values are rejected.
    #[arg(long, global = true, default_value_t = 1)]
    threads: usize,
    /// Spaces per indent level; 0 prints compact JSON.
    #[arg(long, global = true, default_value_t = 2)]
    json_indent: usize,
}

impl Global {
    pub fn budget(&self) -> Budget {
        self.budget_ms.map_or(Budget::UNLIMITED, Budget::millis)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Generate an instance (.h3 plus a .json sidecar).
    Gen(GenArgs),
    /// Order, size and degree statistics.
    Stats { input: PathBuf },
    /// Exact search for a factor (or `--copies t` disjoint copies).
    FindFactor {
        input: PathBuf,
        #[arg(long)]
        copies: Option<usize>,
    },
    /// Largest set of disjoint copies.
    MaxTiling { input: PathBuf },
    /// Constructive factor for hosts close to the space barrier.
    ExtremalSolve {
        input: PathBuf,
        /// Partition file whose first part is the sparse set B.
        #[arg(long)]
        part: Option<PathBuf>,
        #[arg(long, default_value_t = 1e-3)]
        eps: f64,
        #[arg(long, default_value_t = 64)]
        max_attempts: usize,
        #[arg(long)]
        strict_eps: bool,
    },
    /// Robust index vectors and transferrals for a partition.
    Lattice {
        input: PathBuf,
        /// Partition file; the reachability partition is used if omitted.
        #[arg(long)]
        part: Option<PathBuf>,
        #[arg(long, default_value_t = 3)]
        arity: usize,
        /// Robustness threshold (default scales with n).
        #[arg(long)]
        threshold: Option<u64>,
        /// Node budget for cycle enumeration before sampling.
        #[arg(long, default_value_t = 2_000_000)]
        enum_nodes: u64,
    },
    /// Reachable 5-sets for a pair of vertices.
    Reach {
        input: PathBuf,
        x: usize,
        y: usize,
        #[arg(long, default_value_t = 1000)]
        cap: u64,
    },
    /// Build an absorbing family and absorb a 6-set.
    AbsorbSim {
        input: PathBuf,
        #[arg(long)]
        part: Option<PathBuf>,
        #[arg(long, default_value_t = 1)]
        t: usize,
        /// Vertices to absorb, comma separated; a random free 6-set if omitted.
        #[arg(long, value_delimiter = ',')]
        u: Vec<usize>,
    },
    /// Almost-perfect matching or an extremality certificate.
    AlmostMatch {
        input: PathBuf,
        #[arg(long, default_value_t = 0.1)]
        gamma: f64,
        #[arg(long, default_value_t = 0.2)]
        alpha: f64,
    },
    /// Success rates over a sweep of generated instances, as CSV.
    Experiment(experiment::ExperimentArgs),
    /// Check a tiling JSON (from any subcommand) against a host.
    Verify {
        input: PathBuf,
        tiling: PathBuf,
        /// Require every vertex to be covered.
        #[arg(long)]
        perfect: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    SpaceBarrier,
    CoveredExtremal,
    IdealCase,
    Random,
}

#[derive(Args)]
struct GenArgs {
    family: Family,
    #[arg(long)]
    n: usize,
    /// |X| for covered-extremal (default n/3).
    #[arg(long)]
    x_size: Option<usize>,
    #[arg(long, default_value_t = 0.0)]
    noise: f64,
    #[arg(long, default_value_t = 0.0)]
    rho: f64,
    #[arg(long, default_value_t = 0.5)]
    p: f64,
    /// Output path for the .h3 file; the sidecar goes next to it. Prints the
    /// .h3 text to stdout when omitted.
    #[arg(long, short)]
    out: Option<PathBuf>,
}

/// Exit statuses shared by every subcommand.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Success = 0,
    None = 1,
    Usage = 2,
    Budget = 3,
}

pub struct Fail(String);

impl<E: std::fmt::Display> From<E> for Fail {
    fn from(e: E) -> Self {
        Fail(e.to_string())
    }
}

type Run = Result<(Value, Status), Fail>;

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::new().filter_or("LOOSETILE_LOG", "warn")).init();
    let cli = Cli::parse();
    let g = cli.global;
    if g.threads != 1 {
        eprintln!("error: only --threads 1 is supported");
        return ExitCode::from(Status::Usage as u8);
    }
    let result = match cli.command {
        Command::Gen(args) => return gen(&args, &g),
        Command::Experiment(args) => return experiment::run(&args, &g),
        other => dispatch(other, &g),
    };
    match result {
        Ok((value, status)) => {
            print_json(&value, g.json_indent);
            ExitCode::from(status as u8)
        }
        Err(Fail(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(Status::Usage as u8)
        }
    }
}

pub fn print_json(value: &impl Serialize, indent: usize) {
    println!("{}", to_json(value, indent));
}

fn to_json(value: &impl Serialize, indent: usize) -> String {
    if indent == 0 {
        return serde_json::to_string(value).expect("serializable");
    }
    let pad = vec![b' '; indent];
    let mut out = Vec::new();
    let fmt = serde_json::ser::PrettyFormatter::with_indent(&pad);
    let mut ser = serde_json::Serializer::with_formatter(&mut out, fmt);
    value.serialize(&mut ser).expect("serializable");
    String::from_utf8(out).expect("utf-8")
}

fn read_h3(path: &Path) -> Result<Hypergraph3, Fail> {
    let text = fs::read_to_string(path).map_err(|e| Fail(format!("{}: {e}", path.display())))?;
    parse_h3(&text).map_err(|e| Fail(format!("{}: {e}", path.display())))
}

fn read_part(path: &Path, n: usize) -> Result<Partition, Fail> {
    let text = fs::read_to_string(path).map_err(|e| Fail(format!("{}: {e}", path.display())))?;
    let p = parse_part(&text).map_err(|e| Fail(format!("{}: {e}", path.display())))?;
    if p.n() != n {
        return Err(Fail(format!("partition covers {} vertices, host has {n}", p.n())));
    }
    Ok(p)
}

fn gen(args: &GenArgs, g: &Global) -> ExitCode {
    let params = match args.family {
        Family::SpaceBarrier => GeneratorParams::SpaceBarrier { n: args.n },
        Family::CoveredExtremal => GeneratorParams::CoveredExtremal {
            n: args.n,
            x_size: args.x_size.unwrap_or(args.n / 3),
            noise: args.noise,
            seed: g.seed,
        },
        Family::IdealCase => GeneratorParams::IdealCase {
            n: args.n,
            rho: args.rho,
            seed: g.seed,
        },
        Family::Random => GeneratorParams::Random {
            n: args.n,
            p: args.p,
            seed: g.seed,
        },
    };
    let inst = match regenerate(&params) {
        Ok(i) => i,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(Status::Usage as u8);
        }
    };
    let h3 = write_h3(&inst.hypergraph);
    let sidecar = json!({
        "params": inst.params,
        "designated_sets": inst.sets,
        "realized": inst.realized,
        "edges": inst.hypergraph.edge_count(),
    });
    match &args.out {
        None => print!("{h3}"),
        Some(path) => {
            let side = path.with_extension("json");
            let written = fs::write(path, &h3).and_then(|_| fs::write(&side, to_json(&sidecar, g.json_indent) + "\n"));
            if let Err(e) = written {
                eprintln!("error: {e}");
                return ExitCode::from(Status::Usage as u8);
            }
            print_json(&json!({ "h3": path, "sidecar": side, "edges": inst.hypergraph.edge_count() }), g.json_indent);
        }
    }
    ExitCode::SUCCESS
}

fn search_json(out: SearchOutcome<Tiling>) -> (Value, Status) {
    match out {
        SearchOutcome::Found(t) => (json!({ "result": "found", "tiling": t }), Status::Success),
        SearchOutcome::Absent(AbsentReason::Exhaustive) => (json!({ "result": "none", "exhaustive": true }), Status::None),
        SearchOutcome::Absent(AbsentReason::Divisibility) => (
            json!({ "result": "none", "exhaustive": true, "reason": "n is not a multiple of 6" }),
            Status::None,
        ),
        SearchOutcome::Indeterminate { nodes } => (
            json!({ "result": "unknown", "exhaustive": false, "nodes": nodes }),
            Status::Budget,
        ),
    }
}

fn dispatch(cmd: Command, g: &Global) -> Run {
    match cmd {
        Command::Stats { input } => {
            let h = read_h3(&input)?;
            let n = h.n();
            let (codeg, deg) = match (h.min_codegree(), h.min_vertex_degree()) {
                (Ok(c), Ok(d)) => (Some(c), Some(d)),
                _ => (None, None),
            };
            let value = json!({
                "n": n,
                "edges": h.edge_count(),
                "min_codegree": codeg,
                "min_vertex_degree": deg,
                "n_over_3": n as f64 / 3.0,
                "divisible_by_6": n % 6 == 0,
                "codegree_at_least_n_over_3": codeg.as_ref().is_some_and(|c| 3 * c.value >= n),
            });
            Ok((value, Status::Success))
        }
        Command::FindFactor { input, copies } => {
            let h = read_h3(&input)?;
            let out = match copies {
                Some(t) => find_t_disjoint(&h, t, g.budget())?,
                None => find_factor(&h, g.budget()),
            };
            Ok(search_json(out))
        }
        Command::MaxTiling { input } => {
            let h = read_h3(&input)?;
            let best = max_tiling(&h, g.budget());
            let status = if best.optimal { Status::Success } else { Status::Budget };
            let value = json!({
                "size": best.value.len(),
                "optimal": best.optimal,
                "nodes": best.nodes,
                "tiling": best.value,
            });
            Ok((value, status))
        }
        Command::ExtremalSolve {
            input,
            part,
            eps,
            max_attempts,
            strict_eps,
        } => {
            let h = read_h3(&input)?;
            let b = match part {
                Some(p) => Some(read_part(&p, h.n())?.part(0).to_vec()),
                None => None,
            };
            let opts = ExtremalOptions {
                eps,
                seed: g.seed,
                max_attempts,
                b,
                strict_eps,
                ..Default::default()
            };
            match extremal_solve(&h, &opts) {
                Ok(sol) => Ok((json!({ "result": "found", "tiling": sol.tiling, "trace": sol.trace }), Status::Success)),
                Err(e @ (ExtremalError::Order(_) | ExtremalError::BSize { .. } | ExtremalError::Eps { .. })) => Err(e.into()),
                Err(e) => Ok((json!({ "result": "failed", "error": e.to_string() }), Status::None)),
            }
        }
        Command::Lattice {
            input,
            part,
            arity,
            threshold,
            enum_nodes,
        } => {
            let h = read_h3(&input)?;
            let n = h.n() as f64;
            let (partition, closed) = match part {
                Some(p) => (read_part(&p, h.n())?, None),
                None => {
                    let c = closed_partition(&h, ReachParams::default())?;
                    (c.partition.clone(), Some(c))
                }
            };
            let threshold = threshold.unwrap_or(match arity {
                3 => (0.001 * n.powi(3)).ceil().max(1.0) as u64,
                _ => (0.0001 * n.powi(6)).ceil().max(1.0) as u64,
            });
            let report = robust_vectors(&h, &partition, arity, threshold, Budget::nodes(enum_nodes), g.seed)?;
            let transferral = if arity == 6 { find_transferral(&report)? } else { None };
            let value = json!({
                "partition": partition,
                "reachability": closed,
                "threshold": threshold,
                "report": report,
                "robust": report.robust(),
                "transferral": transferral,
            });
            Ok((value, Status::Success))
        }
        Command::Reach { input, x, y, cap } => {
            let h = read_h3(&input)?;
            let rep = reachable_5sets(&h, x, y, cap)?;
            let status = if rep.count == 0 { Status::None } else { Status::Success };
            Ok((json!(rep), status))
        }
        Command::AbsorbSim { input, part, t, u } => {
            let h = read_h3(&input)?;
            let n = h.n();
            let p = match part {
                Some(path) => read_part(&path, n)?,
                None => Partition::trivial(n),
            };
            let cfg = AbsorbConfig::new(t, g.seed);
            let fam = match build_absorbing_family(&h, &p, &cfg) {
                Ok(f) => f,
                Err(e) => return Ok((json!({ "result": "failed", "stage": "family", "error": e.to_string() }), Status::None)),
            };
            let free: Vec<usize> = VertexSet::from_slice(n, &fam.w).complement().to_vec();
            let u = if u.is_empty() {
                if free.len() < 6 {
                    return Err(Fail(format!("only {} vertices outside W", free.len())));
                }
                let mut r = rng(g.seed);
                let mut pick: Vec<usize> = sample_distinct(&mut r, free.len(), 6).into_iter().map(|i| free[i]).collect();
                pick.sort_unstable();
                pick
            } else {
                u
            };
            let summary = json!({
                "m": fam.m,
                "w": fam.w,
                "msets": fam.msets.len(),
                "exceptional": fam.exceptional,
                "stats": fam.stats,
                "capacity": fam.capacity,
            });
            match absorb(&h, &fam, &u) {
                Ok(tiling) => Ok((json!({ "result": "found", "family": summary, "u": u, "tiling": tiling }), Status::Success)),
                Err(e) => Ok((
                    json!({ "result": "failed", "stage": "absorb", "family": summary, "u": u, "error": e.to_string() }),
                    Status::None,
                )),
            }
        }
        Command::AlmostMatch { input, gamma, alpha } => {
            let h = read_h3(&input)?;
            let budget = g.budget();
            let out = almost_perfect_matching(&h, gamma, alpha, budget);
            let status = match out {
                AlmostOutcome::Indeterminate { .. } => Status::Budget,
                _ => Status::Success,
            };
            Ok((json!(out), status))
        }
        Command::Verify { input, tiling, perfect } => {
            let h = read_h3(&input)?;
            let text = fs::read_to_string(&tiling).map_err(|e| Fail(format!("{}: {e}", tiling.display())))?;
            let doc: Value = serde_json::from_str(&text)?;
            let found = find_tiling(&doc).ok_or_else(|| Fail("no tiling object in the JSON".into()))?;
            let t: Tiling = serde_json::from_value(found.clone())?;
            if t.n != h.n() {
                return Ok((
                    json!({ "ok": false, "diagnostic": format!("tiling is for n = {}, host has {}", t.n, h.n()) }),
                    Status::None,
                ));
            }
            let verdict = verify_tiling(&h, &t, perfect);
            let status = if verdict.ok { Status::Success } else { Status::None };
            Ok((json!(verdict), status))
        }
        Command::Gen(_) | Command::Experiment(_) => unreachable!("handled in main"),
    }
}

/// The first object with `n` and `copies` fields, searched depth first.
fn find_tiling(v: &Value) -> Option<&Value> {
    match v {
        Value::Object(map) => {
            if map.contains_key("n") && map.get("copies").is_some_and(Value::is_array) {
                return Some(v);
            }
            ["tiling", "factor"]
                .iter()
                .filter_map(|k| map.get(*k))
                .chain(map.values())
                .find_map(find_tiling)
        }
        Value::Array(items) => items.iter().find_map(find_tiling),
        _ => None,
    }
}
