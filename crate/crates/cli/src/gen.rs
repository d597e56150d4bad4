use std::collections::BTreeMap;
use std::path::PathBuf;

use clap::{Args, ValueEnum};

use bincover::format::serialize_instance;
use bincover::generate::{gen_example1, gen_partition_reduction, gen_random, RandomSpec};
use bincover::{Instance, ProblemClass, Rat, Supply};

use crate::{write_output, CmdResult, Failure};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Family {
    Example1,
    Partition,
    Uniform,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::Example1 => "example1",
            Family::Partition => "partition",
            Family::Uniform => "uniform",
        }
    }
}

#[derive(Args)]
pub struct GenArgs {
    #[arg(long, value_enum)]
    family: Family,
    /// `key=value` pairs separated by `;`.
    ///
    /// example1: eps. partition: sizes (comma list), m. uniform: n, m,
    /// supply (unit|infinite), class (variable|generalized), dmin, dmax, smin,
    /// smax, pmin, pmax, den.
    #[arg(long, default_value = "")]
    params: String,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Instance file; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

pub type Params = BTreeMap<String, String>;

pub fn parse_params(text: &str) -> Result<Params, Failure> {
    let mut out = Params::new();
    for part in text.split(';').map(str::trim).filter(|p| !p.is_empty()) {
        let (k, v) = part
            .split_once('=')
            .ok_or_else(|| Failure::usage(format!("parameter `{part}` is not key=value")))?;
        out.insert(k.trim().to_string(), v.trim().to_string());
    }
    Ok(out)
}

struct Reader<'a> {
    params: &'a Params,
    allowed: &'static [&'static str],
}

impl Reader<'_> {
    fn check(&self) -> Result<(), Failure> {
        match self
            .params
            .keys()
            .find(|k| !self.allowed.contains(&k.as_str()))
        {
            Some(k) => Err(Failure::usage(format!(
                "unknown parameter `{k}`; expected one of {}",
                self.allowed.join(", ")
            ))),
            None => Ok(()),
        }
    }

    fn get<T: std::str::FromStr>(&self, key: &str, default: Option<T>) -> Result<T, Failure> {
        match self.params.get(key) {
            Some(v) => v
                .parse()
                .map_err(|_| Failure::usage(format!("invalid value `{v}` for `{key}`"))),
            None => default.ok_or_else(|| Failure::usage(format!("missing parameter `{key}`"))),
        }
    }

    fn rat(&self, key: &str, default: Rat) -> Result<Rat, Failure> {
        self.get(key, Some(default))
    }
}

pub fn build(family: Family, params: &Params, seed: u64) -> Result<Instance, Failure> {
    match family {
        Family::Example1 => {
            let r = Reader {
                params,
                allowed: &["eps"],
            };
            r.check()?;
            Ok(gen_example1(&r.rat("eps", Rat::new(1, 10))?)?)
        }
        Family::Partition => {
            let r = Reader {
                params,
                allowed: &["sizes", "m"],
            };
            r.check()?;
            let text: String = r.get("sizes", None)?;
            let sizes = text
                .split(',')
                .map(|s| s.trim().parse::<u64>())
                .collect::<Result<Vec<_>, _>>()
                .map_err(|_| Failure::usage(format!("invalid sizes `{text}`")))?;
            Ok(gen_partition_reduction(&sizes, r.get("m", None)?)?)
        }
        Family::Uniform => {
            let r = Reader {
                params,
                allowed: &[
                    "n", "m", "supply", "class", "dmin", "dmax", "smin", "smax", "pmin", "pmax",
                    "den",
                ],
            };
            r.check()?;
            let supply = match r.get::<String>("supply", Some("unit".into()))?.as_str() {
                "unit" => Supply::Unit,
                "infinite" => Supply::Infinite,
                other => return Err(Failure::usage(format!("unknown supply `{other}`"))),
            };
            let class = match r.get::<String>("class", Some("variable".into()))?.as_str() {
                "variable" => ProblemClass::VariableSized,
                "generalized" => ProblemClass::Generalized,
                other => return Err(Failure::usage(format!("unknown class `{other}`"))),
            };
            let spec = RandomSpec {
                n: r.get("n", Some(8))?,
                m: r.get("m", Some(3))?,
                supply,
                class,
                demand: (
                    r.rat("dmin", Rat::new(1, 4))?,
                    r.rat("dmax", Rat::new(3, 2))?,
                ),
                size: (
                    r.rat("smin", Rat::new(1, 4))?,
                    r.rat("smax", Rat::new(3, 2))?,
                ),
                profit: (r.rat("pmin", Rat::zero())?, r.rat("pmax", Rat::integer(2))?),
                denominator: r.get("den", Some(4))?,
                seed,
            };
            Ok(gen_random(&spec)?)
        }
    }
}

pub fn run(args: GenArgs) -> CmdResult {
    let params = parse_params(&args.params)?;
    let inst = build(args.family, &params, args.seed)?;
    write_output(args.out.as_deref(), &serialize_instance(&inst))
}
