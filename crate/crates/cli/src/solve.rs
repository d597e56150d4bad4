use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, ValueEnum};
use serde_json::{json, Value};

use bincover::aptas::{aptas_solve, AptasParams};
use bincover::exact::{exact_opt_infinite, exact_opt_unit};
use bincover::format::parse_instance;
use bincover::gbc::gbc5;
use bincover::nfd::nfd;
use bincover::report::bin_entries;
use bincover::{Instance, Rat, Supply};

use crate::{oracle_caps, write_output, CmdResult, Failure};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Alg {
    Nfd,
    Gbc5,
    Aptas,
    Exact,
}

impl Alg {
    pub fn name(self) -> &'static str {
        match self {
            Alg::Nfd => "nfd",
            Alg::Gbc5 => "gbc5",
            Alg::Aptas => "aptas",
            Alg::Exact => "exact",
        }
    }
}

#[derive(Args)]
pub struct SolveArgs {
    #[arg(long, value_enum)]
    alg: Alg,
    /// Instance file.
    #[arg(long)]
    input: PathBuf,
    /// Solution file; stdout when omitted.
    #[arg(long)]
    output: Option<PathBuf>,
    /// Include the per-bin trace of next fit decreasing.
    #[arg(long)]
    trace: bool,
    /// Include every intermediate stage (gbc5, aptas).
    #[arg(long)]
    dump_stages: bool,
    #[command(flatten)]
    aptas: AptasArgs,
}

#[derive(Args, Clone)]
pub struct AptasArgs {
    /// Accuracy for aptas, e.g. 1/10.
    #[arg(long)]
    eps: Option<String>,
    /// Number of large-item groups for aptas; eps defaults to 1/10.
    #[arg(long)]
    k: Option<usize>,
    /// Maximum number of configurations aptas may enumerate.
    #[arg(long)]
    budget: Option<usize>,
}

impl AptasArgs {
    pub fn params(&self) -> Result<AptasParams, Failure> {
        let eps = match &self.eps {
            Some(s) => s
                .parse::<Rat>()
                .map_err(|_| Failure::usage(format!("invalid --eps `{s}`")))?,
            None => Rat::new(1, 10),
        };
        let mut p = match self.k {
            Some(k) => AptasParams::with_k(eps, k),
            None => AptasParams::guarantee(eps),
        };
        if let Some(b) = self.budget {
            p.budget = b;
        }
        p.groups()?;
        Ok(p)
    }
}

pub fn read_instance(path: &std::path::Path) -> Result<Instance, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::usage(format!("cannot read {}: {e}", path.display())))?;
    parse_instance(&text).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

pub fn run(args: SolveArgs) -> CmdResult {
    let inst = read_instance(&args.input)?;
    let start = Instant::now();
    let mut extra = serde_json::Map::new();
    let (assignment, profit) = match args.alg {
        Alg::Nfd => {
            let (a, trace) = nfd(&inst)?;
            if args.trace {
                extra.insert("trace".into(), to_value(&trace));
            }
            let p = bincover::profit(&inst, &a)?;
            (a, p)
        }
        Alg::Gbc5 => {
            let res = gbc5(&inst)?;
            if args.dump_stages {
                extra.insert("stages".into(), to_value(&res));
            }
            (res.assignment, res.profit)
        }
        Alg::Aptas => {
            let res = aptas_solve(&inst, &args.aptas.params()?)?;
            extra.insert("stats".into(), to_value(&res.stats));
            if args.dump_stages {
                extra.insert(
                    "stages".into(),
                    json!({
                        "committed_profit": res.committed_profit,
                        "grouping": res.grouping,
                        "lp_values": res.lp.as_ref().map(|s| &s.values),
                    }),
                );
            }
            (res.assignment, res.profit)
        }
        Alg::Exact => {
            let caps = oracle_caps()?;
            match inst.supply() {
                Supply::Unit => {
                    let (p, a) = exact_opt_unit(&inst, &caps)?;
                    (a, p)
                }
                Supply::Infinite => {
                    let (p, a) = exact_opt_infinite(&inst, &caps)?;
                    (a, p)
                }
            }
        }
    };
    let wall_ns = start.elapsed().as_nanos();
    let mut out = json!({
        "instance": args.input.display().to_string(),
        "algorithm": args.alg.name(),
        "profit": profit,
        "bins": bin_entries(&inst, &assignment),
        "wall_ns": wall_ns as u64,
    });
    if let Value::Object(map) = &mut out {
        map.extend(extra);
    }
    let mut text = serde_json::to_string_pretty(&out).expect("json");
    text.push('\n');
    write_output(args.output.as_deref(), &text)
}

fn to_value<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("json")
}
