//! Job configuration: a JSON file merged under command-line flags.

use std::path::{Path, PathBuf};
use std::sync::Arc;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, ValueEnum};
use parahoric::bedard::DiagramAut;
use parahoric::{CartanSpec, Exec, NodeSet};
use serde::Deserialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Json,
    Csv,
}

/// Flags shared by every subcommand. Each one overrides the same key in
/// the `--config` file.
#[derive(Debug, Clone, Default, Args)]
pub struct JobArgs {
    /// JSON config file with any of the keys below (flags win).
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Affine type: a family letter (with --rank) or e.g. `C2`.
    #[arg(long = "type")]
    pub family: Option<String>,
    /// Rank of the family given by --type.
    #[arg(long)]
    pub rank: Option<usize>,
    /// JSON file holding `{"cartan": [[..]]}` or a bare matrix.
    #[arg(long)]
    pub cartan_file: Option<PathBuf>,
    /// Node set J, e.g. `0,2`; empty string for the empty set.
    #[arg(long = "J", allow_hyphen_values = true)]
    pub nodes: Option<String>,
    /// Diagram automorphism as images of 0..n, e.g. `1,2,0`.
    #[arg(long)]
    pub delta: Option<String>,
    /// Length bound L.
    #[arg(long)]
    pub length: Option<usize>,
    /// Field sizes, comma separated.
    #[arg(long = "q")]
    pub q: Option<String>,
    /// Largest lattice level n in the SL2 census.
    #[arg(long)]
    pub nmax: Option<usize>,
    /// Output format (default json).
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Write the report here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Reductive rank used in point counts (default |I| - 1).
    #[arg(long)]
    pub reductive_rank: Option<usize>,
    /// Run the enumeration kernels on one thread.
    #[arg(long)]
    pub sequential: bool,
}

/// The config file; same keys as the flags.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    #[serde(rename = "type")]
    pub family: Option<String>,
    pub rank: Option<usize>,
    pub cartan_file: Option<PathBuf>,
    pub cartan: Option<Vec<Vec<i64>>>,
    #[serde(rename = "J")]
    pub nodes: Option<Vec<usize>>,
    pub delta: Option<Vec<usize>>,
    pub length: Option<usize>,
    pub q: Option<Vec<u32>>,
    pub nmax: Option<usize>,
    pub format: Option<Format>,
    pub out: Option<PathBuf>,
    pub reductive_rank: Option<usize>,
    pub sequential: Option<bool>,
    pub orbits: Option<bool>,
    pub precision: Option<usize>,
    pub group_file: Option<PathBuf>,
}

/// Flags and file merged.
#[derive(Debug, Clone, Default)]
pub struct JobConfig {
    pub family: Option<String>,
    pub rank: Option<usize>,
    pub cartan_file: Option<PathBuf>,
    pub cartan: Option<Vec<Vec<i64>>>,
    pub nodes: Option<Vec<usize>>,
    pub delta: Option<Vec<usize>>,
    pub length: Option<usize>,
    pub q: Option<Vec<u32>>,
    pub nmax: Option<usize>,
    pub format: Format,
    pub out: Option<PathBuf>,
    pub reductive_rank: Option<usize>,
    pub exec: Exec,
    pub file: FileConfig,
}

fn parse_list<T: std::str::FromStr>(s: &str, what: &str) -> Result<Vec<T>> {
    let s = s.trim().trim_start_matches(['{', '[']).trim_end_matches(['}', ']']);
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',').map(|x| x.trim().parse::<T>().map_err(|_| anyhow!("invalid {what} entry `{}`", x.trim()))).collect()
}

impl JobConfig {
    pub fn load(args: &JobArgs) -> Result<Self> {
        let file: FileConfig = match &args.config {
            Some(p) => {
                let text = std::fs::read_to_string(p).with_context(|| format!("reading config {}", p.display()))?;
                serde_json::from_str(&text).with_context(|| format!("parsing config {}", p.display()))?
            }
            None => FileConfig::default(),
        };
        let nodes = match &args.nodes {
            Some(s) => Some(parse_list(s, "J")?),
            None => file.nodes.clone(),
        };
        let delta = match &args.delta {
            Some(s) => Some(parse_list(s, "delta")?),
            None => file.delta.clone(),
        };
        let q = match &args.q {
            Some(s) => Some(parse_list(s, "q")?),
            None => file.q.clone(),
        };
        let sequential = args.sequential || file.sequential.unwrap_or(false);
        let cartan_file = args.cartan_file.clone().or_else(|| file.cartan_file.clone());
        Ok(JobConfig {
            family: args.family.clone().or_else(|| file.family.clone()),
            rank: args.rank.or(file.rank),
            // an explicit --cartan-file replaces an inline matrix from the file
            cartan: if args.cartan_file.is_some() { None } else { file.cartan.clone() },
            cartan_file,
            nodes,
            delta,
            length: args.length.or(file.length),
            q,
            nmax: args.nmax.or(file.nmax),
            format: args.format.or(file.format).unwrap_or_default(),
            out: args.out.clone().or_else(|| file.out.clone()),
            reductive_rank: args.reductive_rank.or(file.reductive_rank),
            exec: if sequential { Exec::Sequential } else { Exec::default() },
            file,
        })
    }

    pub fn spec(&self) -> Result<Arc<CartanSpec>> {
        if let Some(m) = &self.cartan {
            return Ok(Arc::new(CartanSpec::from_matrix(m.clone())?));
        }
        if let Some(p) = &self.cartan_file {
            return Ok(Arc::new(read_cartan_file(p)?));
        }
        let Some(family) = &self.family else {
            bail!("no Cartan data: pass --type (and --rank) or --cartan-file");
        };
        let (letter, digits) = family.split_at(family.find(|c: char| c.is_ascii_digit()).unwrap_or(family.len()));
        let letter = letter.trim_end_matches('~');
        let rank = match (digits.trim_end_matches('~'), self.rank) {
            ("", Some(r)) => r,
            ("", None) => bail!("--type {family} needs --rank"),
            (d, r) => {
                let d: usize = d.parse().map_err(|_| anyhow!("cannot read a rank from `{family}`"))?;
                if r.is_some_and(|r| r != d) {
                    bail!("--type {family} conflicts with --rank {}", r.unwrap());
                }
                d
            }
        };
        Ok(Arc::new(CartanSpec::affine(letter, rank)?))
    }

    pub fn node_set(&self, spec: &CartanSpec) -> Result<NodeSet> {
        let Some(nodes) = &self.nodes else { bail!("--J is required") };
        for &i in nodes {
            spec.check_node(i)?;
        }
        Ok(nodes.iter().copied().collect())
    }

    pub fn automorphism(&self, spec: &CartanSpec) -> Result<DiagramAut> {
        match &self.delta {
            None => Ok(DiagramAut::identity(spec.size())),
            Some(p) => Ok(DiagramAut::new(spec, p.clone())?),
        }
    }

    pub fn length(&self) -> Result<usize> {
        self.length.ok_or_else(|| anyhow!("--length is required"))
    }

    pub fn fields(&self, default: &[u32]) -> Vec<u32> {
        self.q.clone().unwrap_or_else(|| default.to_vec())
    }
}

fn read_cartan_file(p: &Path) -> Result<CartanSpec> {
    let text = std::fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?;
    let value: serde_json::Value = serde_json::from_str(&text).with_context(|| format!("parsing {}", p.display()))?;
    let spec = if value.is_array() {
        let m: Vec<Vec<i64>> = serde_json::from_value(value)?;
        CartanSpec::from_matrix(m)?
    } else {
        serde_json::from_value(value).with_context(|| format!("{} is not a Cartan matrix", p.display()))?
    };
    Ok(spec)
}
