use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use gridclass::{Chirality, CoilType, Perm};

#[derive(Debug, Parser)]
#[command(name = "gridclass", version, about = "Monotone grid classes of permutations")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Print a JSON report instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Worker threads for partitioned searches.
    #[arg(long, global = true, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    pub jobs: u64,
    /// Wall-clock limit; exceeding it exits with code 3.
    #[arg(long, global = true, value_parser = positive_seconds)]
    pub budget_seconds: Option<f64>,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Cycle census of the row-column graph.
    Classify { matrix: PathBuf },
    /// Column and row sign sequences, or a negative cycle.
    Pmm { matrix: PathBuf },
    /// The doubled matrix.
    Double { matrix: PathBuf },
    /// Exit 0 with a gridding if the permutation is in the class, 1 otherwise.
    Member { matrix: PathBuf, perm: String },
    /// All griddings of a permutation.
    Griddings {
        matrix: PathBuf,
        perm: String,
        #[arg(long)]
        count: bool,
    },
    /// Split a gridded permutation into indivisible parts.
    Decompose {
        matrix: PathBuf,
        perm: String,
        /// Cut positions, e.g. "v:5,10;h:4,10". Defaults to the first gridding found.
        #[arg(long)]
        gridding: Option<String>,
    },
    /// Build a coil around the cycle of a cyclic matrix.
    Coil {
        matrix: PathBuf,
        #[command(flatten)]
        coil: CoilArgs,
    },
    /// Build a coil and inflate its first and last points.
    Inflate {
        matrix: PathBuf,
        #[command(flatten)]
        coil: CoilArgs,
    },
    /// Longest coil of the matrix contained in a permutation.
    LongestCoil { matrix: PathBuf, perm: String },
    /// Encode an indivisible as a body with leading and trailing coil lengths.
    Encode {
        matrix: PathBuf,
        perm: String,
        #[arg(long)]
        gridding: Option<String>,
    },
    /// Decide whether Grid(M) ∩ Av(basis) is labelled well quasi-ordered.
    DecideLwqo { matrix: PathBuf, basis: Vec<String> },
    /// Basis elements of Grid(M) up to a length.
    Basis {
        matrix: PathBuf,
        #[arg(long, default_value_t = 5)]
        max_len: usize,
    },
    /// An end-inflated coil family (--type) or a labelled coil antichain check (--lengths).
    Antichain {
        matrix: PathBuf,
        /// Cycle labels of the first, second and last cells, e.g. "1,2,1".
        #[arg(long = "type")]
        coil_type: Option<String>,
        /// Number of family members.
        #[arg(long, default_value_t = 3)]
        k: usize,
        /// Coil lengths, "a..b" or "a,b,c".
        #[arg(long)]
        lengths: Option<String>,
        #[arg(long, default_value_t = 1)]
        start: usize,
        #[arg(long, value_enum, default_value_t = ChiralityArg::A)]
        chirality: ChiralityArg,
    },
    /// The k-th member of the bicyclic non-finitely-based family.
    Counterexample {
        #[arg(long, default_value_t = 1)]
        k: usize,
        /// Also check that it is a basis element of both classes.
        #[arg(long)]
        verify: bool,
    },
    /// Gridding counts of every coil of the given lengths.
    ProbeUnique {
        matrix: PathBuf,
        #[arg(long)]
        lengths: String,
    },
    /// Bounded table of end-inflated coil types avoiding a basis.
    Survey {
        matrix: PathBuf,
        basis: Vec<String>,
        #[arg(long, default_value_t = 100)]
        max_len: usize,
    },
}

#[derive(Debug, Clone, Args)]
pub struct CoilArgs {
    /// Cycle label (1-based) of the cell holding the first point.
    #[arg(long, default_value_t = 1)]
    pub start: usize,
    #[arg(long, value_enum, default_value_t = ChiralityArg::A)]
    pub chirality: ChiralityArg,
    #[arg(long)]
    pub length: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ChiralityArg {
    #[value(name = "A", alias = "a")]
    A,
    #[value(name = "B", alias = "b")]
    B,
}

impl From<ChiralityArg> for Chirality {
    fn from(c: ChiralityArg) -> Self {
        match c {
            ChiralityArg::A => Chirality::A,
            ChiralityArg::B => Chirality::B,
        }
    }
}

fn positive_seconds(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(x) if x > 0.0 && x.is_finite() => Ok(x),
        _ => Err(format!("expected a positive number of seconds, got {s:?}")),
    }
}

pub fn parse_perm(s: &str) -> Result<Perm> {
    let tokens: Vec<&str> = s.split_whitespace().collect();
    if tokens.len() == 1 && tokens[0].len() > 1 {
        bail!("permutation {s:?} must be written with spaces between entries");
    }
    s.parse::<Perm>().with_context(|| format!("bad permutation {s:?}"))
}

/// `"v:5,10;h:4,10"`, parts separated by `;` or whitespace.
pub fn parse_gridding(s: &str) -> Result<(Vec<usize>, Vec<usize>)> {
    let mut v = None;
    let mut h = None;
    for part in s.split(|c: char| c == ';' || c.is_whitespace()).filter(|t| !t.is_empty()) {
        let (key, list) = part.split_once(':').with_context(|| format!("bad gridding part {part:?}"))?;
        let cuts = list
            .split(',')
            .filter(|t| !t.is_empty())
            .map(|t| t.parse::<usize>().with_context(|| format!("bad cut {t:?}")))
            .collect::<Result<Vec<_>>>()?;
        match key {
            "v" if v.is_none() => v = Some(cuts),
            "h" if h.is_none() => h = Some(cuts),
            _ => bail!("bad gridding part {part:?}"),
        }
    }
    match (v, h) {
        (Some(v), Some(h)) => Ok((v, h)),
        _ => bail!("gridding needs both v: and h: parts"),
    }
}

/// `"a..b"` inclusive, or a comma list.
pub fn parse_lengths(s: &str) -> Result<Vec<usize>> {
    if let Some((a, b)) = s.split_once("..") {
        let a: usize = a.trim().parse().with_context(|| format!("bad range {s:?}"))?;
        let b: usize = b.trim().parse().with_context(|| format!("bad range {s:?}"))?;
        if a > b {
            bail!("empty range {s:?}");
        }
        return Ok((a..=b).collect());
    }
    s.split(',').map(|t| t.trim().parse::<usize>().with_context(|| format!("bad length {t:?}"))).collect()
}

/// One-based labels `"s1,s2,f"` to a 0-based coil type.
pub fn parse_type(s: &str) -> Result<CoilType> {
    let labels = s
        .split(',')
        .map(|t| match t.trim().parse::<usize>() {
            Ok(x) if x >= 1 => Ok(x - 1),
            _ => bail!("bad cycle label {t:?}"),
        })
        .collect::<Result<Vec<_>>>()?;
    match labels[..] {
        [first, second, last] => Ok(CoilType { first, second, last }),
        _ => bail!("coil type needs three labels, got {s:?}"),
    }
}
