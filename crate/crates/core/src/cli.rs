//! The `approx-codec` command line.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::codec::{
    self, cover_open_set, EncodedParameter, EncodedParameterJson, RationalBox, RoundtripConfig,
    TupleSet, TupleSetJson,
};
use crate::engine::{best_both, find_split, splits_between};
use crate::error::{Error, Result};
use crate::numeric::rational::{parse_rational, rational_to_pair};
use crate::numeric::{LinearForm, ParamReal, Rational};
use crate::systems::{self, gap_lengths, nearest, verify_condition_ii, Limits, SystemDescriptor};

pub const CONFIG_ENV: &str = "APPROX_CODEC_CONFIG";

/// Settings shared by every command. Read from the file named by
/// `APPROX_CODEC_CONFIG` when set; flags override it.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub system: SystemDescriptor,
    pub limits: Limits,
    pub seed: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub out: Option<PathBuf>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            system: SystemDescriptor::kronecker_default(),
            limits: Limits::default(),
            seed: 0,
            out: None,
        }
    }
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path)
            .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        let cfg: RunConfig = serde_json::from_str(&text)?;
        cfg.limits.validate()?;
        Ok(cfg)
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        let text = serde_json::to_string_pretty(self)?;
        fs::write(path, text + "\n").map_err(|e| Error::Io(format!("{}: {e}", path.display())))
    }
}

#[derive(Parser, Debug)]
#[command(name = "approx-codec", version, about = "Encode finite relations into three real parameters")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Default)]
pub struct GlobalArgs {
    /// JSON file with a system descriptor.
    #[arg(long, global = true, value_name = "FILE")]
    pub system: Option<PathBuf>,
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    #[arg(long, global = true, value_name = "N")]
    pub depth_cap: Option<u64>,
    #[arg(long, global = true, value_name = "N")]
    pub search_cap: Option<u64>,
    #[arg(long, global = true, value_name = "BITS")]
    pub precision_cap: Option<u32>,
    /// Write the main result here instead of standard output.
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Encode a tuple set file.
    Encode {
        #[arg(long, value_name = "FILE")]
        input: PathBuf,
    },
    /// Decode an encoded parameter file.
    Decode {
        #[arg(long, value_name = "FILE")]
        param: PathBuf,
        /// Number of tuples to read; defaults to the stored count.
        #[arg(long)]
        count: Option<usize>,
    },
    /// Encode and decode random tuple sets.
    Roundtrip {
        #[arg(long, default_value_t = 200)]
        trials: usize,
        #[arg(long, default_value_t = 3)]
        max_m: usize,
        #[arg(long, default_value_t = 6)]
        max_n: usize,
        #[arg(long, default_value_t = 20)]
        max_index: u64,
    },
    #[command(subcommand)]
    Explore(Explore),
    /// Inner cover of a union of rational boxes by f-boxes.
    Cover {
        /// One box as `lo:hi,lo:hi,...`; repeatable.
        #[arg(long = "box", value_name = "BOX", required = true)]
        boxes: Vec<String>,
        #[arg(long)]
        margin: String,
        #[arg(long, default_value_t = 10_000)]
        depth: u64,
    },
}

#[derive(Subcommand, Debug)]
pub enum Explore {
    /// L(c) and R(c) up to a depth.
    BestApprox {
        #[arg(long)]
        c: String,
        #[arg(long)]
        depth: u64,
    },
    /// Least split point after d1, or whether f splits between d1 and d2.
    Split {
        #[arg(long)]
        d1: u64,
        #[arg(long)]
        d2: Option<u64>,
    },
    /// Witness interval on which g(., a, b, d) = e.
    ConditionIi {
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        b: String,
        #[arg(long)]
        d: u64,
        #[arg(long)]
        e: u64,
    },
    /// Distinct gap lengths among the sorted f(1..n).
    Gaps {
        #[arg(long)]
        n: u64,
    },
}

/// Builds the effective configuration: defaults, then the config file from
/// the environment, then flags.
pub fn resolve_config(global: &GlobalArgs, env_path: Option<&Path>) -> Result<RunConfig> {
    let mut cfg = match env_path {
        Some(p) => RunConfig::load(p)?,
        None => RunConfig::default(),
    };
    if let Some(p) = &global.system {
        let text = fs::read_to_string(p).map_err(|e| Error::Io(format!("{}: {e}", p.display())))?;
        cfg.system = serde_json::from_str(&text)?;
    }
    if let Some(s) = global.seed {
        cfg.seed = s;
    }
    if let Some(n) = global.depth_cap {
        cfg.limits.depth_cap = n;
    }
    if let Some(n) = global.search_cap {
        cfg.limits.search_cap = n;
    }
    if let Some(n) = global.precision_cap {
        cfg.limits.precision_cap = n;
    }
    if global.out.is_some() {
        cfg.out = global.out.clone();
    }
    cfg.limits.validate()?;
    Ok(cfg)
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

fn rational_arg(s: &str) -> Result<Rational> {
    parse_rational(s)
}

fn parse_box(s: &str) -> Result<RationalBox> {
    s.split(',')
        .map(|side| {
            let (lo, hi) = side
                .split_once(':')
                .ok_or_else(|| Error::Parse(format!("box side {side:?} is not lo:hi")))?;
            let (lo, hi) = (rational_arg(lo)?, rational_arg(hi)?);
            if lo >= hi {
                return Err(Error::InvalidInput(format!("empty box side {side:?}")));
            }
            Ok((lo, hi))
        })
        .collect()
}

struct Io<'a> {
    out: &'a mut dyn Write,
    err: &'a mut dyn Write,
    path: Option<PathBuf>,
}

impl Io<'_> {
    fn line(&mut self, v: &serde_json::Value) -> Result<()> {
        writeln!(self.out, "{v}").map_err(Error::from)
    }

    /// The command's main result: to `--out` when given, else a line on
    /// standard output.
    fn result(&mut self, v: &serde_json::Value) -> Result<()> {
        match &self.path {
            Some(p) => fs::write(p, format!("{v}\n")).map_err(|e| Error::Io(format!("{}: {e}", p.display()))),
            None => self.line(v),
        }
    }
}

fn to_value<T: Serialize>(t: &T) -> Result<serde_json::Value> {
    serde_json::to_value(t).map_err(Error::from)
}

fn execute(cmd: &Command, cfg: &RunConfig, io: &mut Io<'_>) -> Result<i32> {
    match cmd {
        Command::Encode { input } => {
            let set = TupleSet::from_json(&read_json::<TupleSetJson>(input)?)?;
            let sys = systems::build(&cfg.system, cfg.limits)?;
            let param = codec::encode(sys.as_ref(), &set)?;
            io.result(&to_value(&param.to_json())?)?;
            if io.path.is_some() {
                let widths: Vec<f64> = param
                    .brackets
                    .iter()
                    .map(|(lo, hi)| hi.sub(lo).map(|w| w.to_f64()))
                    .collect::<Result<_>>()?;
                io.line(&json!({
                    "final_depth": param.final_depth.to_string(),
                    "bracket_widths": widths,
                }))?;
            }
            Ok(0)
        }
        Command::Decode { param, count } => {
            let j: EncodedParameterJson = read_json(param)?;
            let (sys, p) = EncodedParameter::from_json(&j, cfg.limits)?;
            let set = codec::decode(sys.as_ref(), &p, count.unwrap_or(p.n_tuples))?;
            io.result(&to_value(&set.to_json())?)?;
            Ok(0)
        }
        Command::Roundtrip {
            trials,
            max_m,
            max_n,
            max_index,
        } => {
            if *max_m == 0 || *max_n == 0 || *max_index == 0 {
                return Err(Error::InvalidInput("roundtrip bounds must be positive".into()));
            }
            let rc = RoundtripConfig {
                system: cfg.system.clone(),
                limits: cfg.limits,
                trials: *trials,
                seed: cfg.seed,
                max_m: *max_m,
                max_n: *max_n,
                max_index: *max_index,
            };
            let start = Instant::now();
            let report = codec::roundtrip(&rc)?;
            let _ = writeln!(
                io.err,
                "roundtrip: {}/{} ok in {:.2?}",
                report.successes, report.trials, start.elapsed()
            );
            io.result(&to_value(&report)?)?;
            Ok(if report.all_ok() { 0 } else { 1 })
        }
        Command::Explore(e) => explore(e, cfg, io),
        Command::Cover { boxes, margin, depth } => {
            let sys = systems::build(&cfg.system, cfg.limits)?;
            let w: Vec<RationalBox> = boxes.iter().map(|b| parse_box(b)).collect::<Result<_>>()?;
            let cover = cover_open_set(sys.as_ref(), &w, &rational_arg(margin)?, *depth)?;
            io.result(&json!({ "boxes": cover }))?;
            Ok(0)
        }
    }
}

fn explore(e: &Explore, cfg: &RunConfig, io: &mut Io<'_>) -> Result<i32> {
    let sys = systems::build(&cfg.system, cfg.limits)?;
    let sys = sys.as_ref();
    let basis = sys.basis();
    let form = |q: Rational| LinearForm::rational(basis, q);
    let v = match e {
        Explore::BestApprox { c, depth } => {
            let c = ParamReal::Exact(form(rational_arg(c)?));
            let (l, r) = best_both(sys, &c, *depth)?;
            json!({ "L": l, "R": r })
        }
        Explore::Split { d1, d2: None } => json!({ "d1": d1, "split": find_split(sys, *d1)? }),
        Explore::Split { d1, d2: Some(d2) } => {
            json!({ "d1": d1, "d2": d2, "splits": splits_between(sys, *d1, *d2)? })
        }
        Explore::ConditionIi { a, b, d, e } => {
            let (a, b) = (form(rational_arg(a)?), form(rational_arg(b)?));
            let iv = verify_condition_ii(sys, &a, &b, *d, *e)?;
            let mid = ParamReal::Exact(form(iv.midpoint()));
            let g = nearest(&mid, &sys.candidates(&a, &b, *d)?)?;
            json!({ "lo": rational_to_pair(&iv.lo), "hi": rational_to_pair(&iv.hi), "g_at_midpoint": g })
        }
        Explore::Gaps { n } => {
            let gaps = gap_lengths(sys, *n)?;
            let forms: Vec<_> = gaps.iter().map(|g| g.to_json()).collect();
            json!({ "n": n, "distinct": gaps.len(), "gaps": forms })
        }
    };
    io.result(&v)?;
    Ok(0)
}

fn error_json(e: &Error) -> serde_json::Value {
    json!({ "error": { "code": e.code(), "message": e.to_string() } })
}

/// Runs the command line `args` (program name first) and returns the exit
/// status.
pub fn run<I, T>(args: I, env_config: Option<PathBuf>, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) if !e.use_stderr() => {
            let _ = write!(out, "{e}");
            return 0;
        }
        Err(e) => {
            let msg = e.to_string();
            let v = json!({ "error": { "code": "usage", "message": msg.trim() } });
            let _ = writeln!(err, "{v}");
            return 2;
        }
    };
    let status = resolve_config(&cli.global, env_config.as_deref()).and_then(|cfg| {
        let mut io = Io {
            out: &mut *out,
            err: &mut *err,
            path: cfg.out.clone(),
        };
        execute(&cli.command, &cfg, &mut io)
    });
    match status {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "{}", error_json(&e));
            e.exit_code()
        }
    }
}
