//! Command-line flags, the key-value config file, and their merge.

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Serialize, Serializer};

#[derive(Debug, Parser)]
#[command(name = "truncgr", version, about = "Exact computations on truncated Grassmannians and their blow-ups")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub opts: Opts,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Table of dim (Λ^d V)_r over ranges of n, d, r.
    Dims,
    /// Terms of the resolution of the ideal sheaf of S_r, with its checks.
    Resolution,
    /// Borel–Weil–Bott cohomology of Σ_a U^* ⊗ Σ_b (V/U)^*.
    Bwb,
    /// Grothendieck-group identity for the Euler characteristic.
    Euler,
    /// Plücker implicitization or vanishing-space interpolation.
    Ideal,
    /// Fiber of a (mixed) blow-up over a point, with a limit probe.
    Fiber,
    /// Jacobian-rank smoothness probe of the complete blow-up.
    Smooth,
    /// Run every acceptance check.
    Verify,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Dims => "dims",
            Command::Resolution => "resolution",
            Command::Bwb => "bwb",
            Command::Euler => "euler",
            Command::Ideal => "ideal",
            Command::Fiber => "fiber",
            Command::Smooth => "smooth",
            Command::Verify => "verify",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Tsv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Implicitize,
    Vanishing,
}

/// A single value, an inclusive range `a..b` (or `a..=b`), or `*` for the
/// full admissible range.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Span {
    One(usize),
    Range(usize, usize),
    All,
}

impl Span {
    pub fn values(self, lo: usize, hi: usize) -> Vec<usize> {
        match self {
            Span::One(v) => vec![v],
            Span::Range(a, b) => (a.max(lo)..=b.min(hi)).collect(),
            Span::All => (lo..=hi).collect(),
        }
    }
}

impl FromStr for Span {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let s = s.trim();
        if s == "*" {
            return Ok(Span::All);
        }
        let num = |t: &str| t.trim().parse::<usize>().map_err(|_| format!("invalid value or range {s:?}"));
        match s.split_once("..") {
            Some((a, b)) => Ok(Span::Range(num(a)?, num(b.strip_prefix('=').unwrap_or(b))?)),
            None => Ok(Span::One(num(s)?)),
        }
    }
}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Span::One(v) => write!(f, "{v}"),
            Span::Range(a, b) => write!(f, "{a}..{b}"),
            Span::All => write!(f, "*"),
        }
    }
}

impl Serialize for Span {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Span::One(v) => s.serialize_u64(*v as u64),
            other => s.collect_str(other),
        }
    }
}

/// Every option, shared by all subcommands; options a subcommand does not
/// use are ignored. Config-file keys are the flag names without dashes.
#[derive(Debug, Clone, Default, Args, Serialize)]
pub struct Opts {
    #[arg(long, global = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<Span>,
    #[arg(long, global = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub d: Option<Span>,
    #[arg(long, global = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r: Option<Span>,
    /// Blow-up levels, comma-separated and strictly increasing.
    #[arg(long = "r-list", global = true, value_delimiter = ',')]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r_list: Option<Vec<usize>>,
    /// Intersection dimension dim(U ∩ V_d) of the base point.
    #[arg(long, global = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m: Option<usize>,
    /// Weight on U^*, comma-separated, length d.
    #[arg(long, global = true, value_delimiter = ',', allow_negative_numbers = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub a: Option<Vec<i64>>,
    /// Weight on (V/U)^*, comma-separated, length n-d.
    #[arg(long, global = true, value_delimiter = ',', allow_negative_numbers = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub b: Option<Vec<i64>>,
    /// RNG seeds; repeatable or comma-separated.
    #[arg(long = "seed", global = true, value_delimiter = ',')]
    #[serde(rename = "seeds", skip_serializing_if = "Option::is_none")]
    pub seeds: Option<Vec<u64>>,
    #[arg(long, global = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub samples: Option<usize>,
    /// Gröbner reduction-step budget.
    #[arg(long, global = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub budget: Option<u64>,
    /// Maximum number of variables for elimination.
    #[arg(long = "var-cap", global = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub var_cap: Option<usize>,
    /// Test curves per limit probe.
    #[arg(long, global = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub curves: Option<usize>,
    /// Interpolation degree for `ideal --mode vanishing`.
    #[arg(long, global = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub degree: Option<u32>,
    #[arg(long, global = true, value_enum)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mode: Option<Mode>,
    #[arg(long, global = true, value_enum)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub format: Option<Format>,
    /// Write the report here (atomically) instead of to stdout.
    #[arg(long, global = true)]
    #[serde(skip)]
    pub out: Option<PathBuf>,
    /// Key-value config file; command-line flags take precedence.
    #[arg(long, global = true)]
    #[serde(skip)]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Parser)]
#[command(name = "config", no_binary_name = true, disable_help_flag = true, disable_version_flag = true)]
struct FileArgs {
    #[command(flatten)]
    opts: Opts,
}

/// Reads `key = value` lines (`#` starts a comment). Keys are flag names,
/// with `_` and `-` interchangeable; values are parsed exactly as on the
/// command line.
pub fn load_config(path: &Path) -> Result<Opts, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("cannot read config {}: {e}", path.display()))?;
    let mut argv = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| format!("{}:{}: expected key = value", path.display(), lineno + 1))?;
        let key = key.trim().replace('_', "-");
        if key == "config" || key.is_empty() || key.starts_with('-') {
            return Err(format!("{}:{}: invalid key {key:?}", path.display(), lineno + 1));
        }
        argv.push(format!("--{key}"));
        argv.push(value.trim().to_string());
    }
    FileArgs::try_parse_from(argv)
        .map(|f| f.opts)
        .map_err(|e| format!("{}: {}", path.display(), e.render().to_string().lines().next().unwrap_or("invalid config")))
}

impl Opts {
    /// Fills every unset option from `file`.
    pub fn or(self, file: Opts) -> Opts {
        Opts {
            n: self.n.or(file.n),
            d: self.d.or(file.d),
            r: self.r.or(file.r),
            r_list: self.r_list.or(file.r_list),
            m: self.m.or(file.m),
            a: self.a.or(file.a),
            b: self.b.or(file.b),
            seeds: self.seeds.or(file.seeds),
            samples: self.samples.or(file.samples),
            budget: self.budget.or(file.budget),
            var_cap: self.var_cap.or(file.var_cap),
            curves: self.curves.or(file.curves),
            degree: self.degree.or(file.degree),
            mode: self.mode.or(file.mode),
            format: self.format.or(file.format),
            out: self.out.or(file.out),
            config: self.config,
        }
    }
}
