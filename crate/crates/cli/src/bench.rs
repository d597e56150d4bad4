use std::collections::BTreeMap;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;

use bincover::aptas::{aptas_solve, AptasParams};
use bincover::exact::{exact_opt_infinite, exact_opt_unit, OracleCaps};
use bincover::gbc::gbc5;
use bincover::nfd::nfd;
use bincover::report::RatioReport;
use bincover::{Error, Instance, Rat, Supply};

use crate::gen::{build, parse_params, Family, Params};
use crate::solve::{Alg, AptasArgs};
use crate::{oracle_caps, CmdResult, Failure};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OracleKind {
    Exact,
    None,
}

#[derive(Args)]
pub struct BenchArgs {
    /// Comma-separated algorithms.
    #[arg(long, value_delimiter = ',', value_enum, required = true)]
    algs: Vec<Alg>,
    #[arg(long, value_enum, default_value = "uniform")]
    family: Family,
    /// Fixed family parameters, as for `gen`.
    #[arg(long, default_value = "")]
    params: String,
    /// Integer ranges such as `n=4..8,m=2..4`; single values are allowed.
    #[arg(long, default_value = "")]
    grid: String,
    /// Instances per grid point.
    #[arg(long, default_value_t = 10)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value = "none")]
    oracle: OracleKind,
    /// CSV file; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    #[command(flatten)]
    aptas: AptasArgs,
}

type Grid = Vec<(String, Vec<u64>)>;

fn parse_grid(text: &str) -> Result<Grid, Failure> {
    let mut out = Grid::new();
    for part in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let bad = || Failure::usage(format!("grid entry `{part}` is not key=a..b or key=a"));
        let (k, v) = part.split_once('=').ok_or_else(bad)?;
        let values = match v.split_once("..") {
            Some((a, b)) => {
                let a: u64 = a.trim().parse().map_err(|_| bad())?;
                let b: u64 = b.trim().parse().map_err(|_| bad())?;
                (a..=b).collect()
            }
            None => vec![v.trim().parse().map_err(|_| bad())?],
        };
        out.push((k.trim().to_string(), values));
    }
    Ok(out)
}

/// Every assignment of grid values, in lexicographic order of the ranges.
fn grid_points(grid: &Grid) -> Vec<Vec<(String, u64)>> {
    let mut points = vec![Vec::new()];
    for (key, values) in grid {
        points = points
            .into_iter()
            .flat_map(|p| {
                values.iter().map(move |&v| {
                    let mut q = p.clone();
                    q.push((key.clone(), v));
                    q
                })
            })
            .collect();
    }
    points
}

/// SplitMix64 step, used to derive independent per-instance seeds.
fn mix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

#[derive(Serialize)]
struct Row {
    instance_id: String,
    family: String,
    params: String,
    algorithm: String,
    profit: String,
    oracle: String,
    ratio: String,
    wall_ns: u128,
}

fn na(v: &Option<Rat>) -> String {
    v.as_ref().map_or_else(|| "NA".to_string(), Rat::to_string)
}

struct Job {
    id: String,
    params: Params,
    label: String,
    seed: u64,
}

fn run_alg(
    alg: Alg,
    inst: &Instance,
    aptas: &AptasParams,
    caps: &OracleCaps,
) -> Result<Rat, Error> {
    match alg {
        Alg::Nfd => nfd(inst).and_then(|(a, _)| bincover::profit(inst, &a)),
        Alg::Gbc5 => gbc5(inst).map(|r| r.profit),
        Alg::Aptas => aptas_solve(inst, aptas).map(|r| r.profit),
        Alg::Exact => oracle(inst, caps),
    }
}

fn oracle(inst: &Instance, caps: &OracleCaps) -> Result<Rat, Error> {
    match inst.supply() {
        Supply::Unit => exact_opt_unit(inst, caps).map(|r| r.0),
        Supply::Infinite => exact_opt_infinite(inst, caps).map(|r| r.0),
    }
}

pub fn run(args: BenchArgs) -> CmdResult {
    let fixed = parse_params(&args.params)?;
    let grid = parse_grid(&args.grid)?;
    let caps = oracle_caps()?;
    let needs_aptas = args.algs.contains(&Alg::Aptas);
    let aptas = if needs_aptas {
        args.aptas.params()?
    } else {
        AptasParams::with_k(Rat::new(1, 10), 1)
    };

    let mut jobs = Vec::new();
    for point in grid_points(&grid) {
        let mut params = fixed.clone();
        for (k, v) in &point {
            params.insert(k.clone(), v.to_string());
        }
        let label = params
            .iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect::<Vec<_>>()
            .join(";");
        for _ in 0..args.trials {
            let idx = jobs.len() as u64;
            jobs.push(Job {
                id: format!("{}-{idx:06}", args.family.name()),
                params: params.clone(),
                label: label.clone(),
                seed: mix(args.seed ^ mix(idx)),
            });
        }
    }

    let results: Vec<Result<(Vec<Row>, bool), Failure>> = jobs
        .par_iter()
        .map(|job| {
            let inst = build(args.family, &job.params, job.seed)?;
            let (opt, over_cap) = match args.oracle {
                OracleKind::None => (None, false),
                OracleKind::Exact => match oracle(&inst, &caps) {
                    Ok(v) => (Some(v), false),
                    Err(Error::Refused(_)) => (None, true),
                    Err(e) => return Err(e.into()),
                },
            };
            let mut rows = Vec::new();
            for &alg in &args.algs {
                let start = Instant::now();
                let profit = run_alg(alg, &inst, &aptas, &caps)
                    .map_err(|e| Failure::from(e).context(&job.id, alg.name()))?;
                let wall = start.elapsed().as_nanos();
                let rep = RatioReport::new(job.id.clone(), alg.name(), profit, opt.clone(), wall);
                rows.push(Row {
                    instance_id: rep.instance_id,
                    family: args.family.name().to_string(),
                    params: job.label.clone(),
                    algorithm: rep.algorithm,
                    profit: rep.profit.to_string(),
                    oracle: na(&rep.oracle),
                    ratio: na(&rep.ratio),
                    wall_ns: rep.wall_ns,
                });
            }
            Ok((rows, over_cap))
        })
        .collect();

    let mut rows = Vec::new();
    let mut over_cap = 0usize;
    for r in results {
        let (rs, over) = r?;
        rows.extend(rs);
        over_cap += over as usize;
    }
    rows.sort_by(|a, b| (&a.instance_id, &a.algorithm).cmp(&(&b.instance_id, &b.algorithm)));

    let mut max_ratio: BTreeMap<&str, Option<Rat>> =
        args.algs.iter().map(|a| (a.name(), None)).collect();
    for row in &rows {
        if let Ok(r) = row.ratio.parse::<Rat>() {
            let slot = max_ratio
                .get_mut(row.algorithm.as_str())
                .expect("known algorithm");
            if slot.as_ref().map_or(true, |m| r > *m) {
                *slot = Some(r);
            }
        }
    }

    let mut w = csv::Writer::from_writer(Vec::new());
    if rows.is_empty() {
        w.write_record([
            "instance_id",
            "family",
            "params",
            "algorithm",
            "profit",
            "oracle",
            "ratio",
            "wall_ns",
        ])
        .map_err(csv_err)?;
    }
    for row in &rows {
        w.serialize(row).map_err(csv_err)?;
    }
    let bytes = w.into_inner().map_err(|e| Failure::usage(e.to_string()))?;
    match &args.out {
        Some(p) => std::fs::write(p, &bytes)
            .map_err(|e| Failure::usage(format!("cannot write {}: {e}", p.display())))?,
        None => print!("{}", String::from_utf8_lossy(&bytes)),
    }

    if over_cap > 0 {
        eprintln!(
            "warning: {over_cap} instance(s) exceed the oracle caps; their oracle column is NA"
        );
    }
    for (alg, m) in &max_ratio {
        match m {
            Some(r) => eprintln!("max ratio {alg}: {r} ({:.4})", r.to_f64()),
            None => eprintln!("max ratio {alg}: NA"),
        }
    }
    Ok(())
}

fn csv_err(e: csv::Error) -> Failure {
    Failure::usage(format!("csv: {e}"))
}
