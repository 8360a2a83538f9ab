use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use framelab::enumeration::NormBound;
use framelab::{CoeffRing, RingId};

#[derive(Debug, Parser)]
#[command(name = "framelab", version, about = "Partial-frame complexes, buildings and Steinberg coinvariants")]
pub struct Cli {
    /// Worker threads; FRAMELAB_THREADS takes precedence.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Seed for sampled checks.
    #[arg(long, global = true, default_value_t = 2024)]
    pub seed: u64,
    /// Output file; defaults to the artifact name in the working directory.
    #[arg(long, short, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a complex, poset or enumeration and write it as JSON.
    Build(BuildArgs),
    /// Reduced homology of a complex.json or poset.json.
    Homology(HomologyArgs),
    /// Coinvariants of a top homology module under its fixing group.
    Coinvariants(CoinvariantsArgs),
    /// Chain-level sign witnesses g·c = -c.
    Witnesses(WitnessArgs),
    /// The algebraic identity suite.
    Identities(IdentityArgs),
    /// Run the acceptance suite and write acceptance.json.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    /// Partial frames.
    #[value(name = "B", alias = "b")]
    B,
    /// Augmented partial frames.
    #[value(name = "BA", alias = "ba")]
    Ba,
    /// Tits building (relative to the first m coordinates when m > 0).
    #[value(name = "T", alias = "t")]
    T,
    /// E₁-splitting poset.
    #[value(name = "S", alias = "s")]
    S,
    /// Canonical lines.
    Lines,
    /// Subspaces of rank m.
    Subspaces,
}

#[derive(Debug, Clone, Args)]
pub struct RingArgs {
    /// z, zi, zw or fq.
    #[arg(long, default_value = "fq")]
    pub ring: String,
    /// Field order for fq.
    #[arg(long)]
    pub q: Option<u64>,
    /// Norm bound, required for the infinite rings.
    #[arg(long)]
    pub bound: Option<u64>,
}

#[derive(Debug, Args)]
pub struct BuildArgs {
    #[command(flatten)]
    pub ring: RingArgs,
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value_t = 0)]
    pub m: usize,
    #[arg(long, value_enum, default_value_t = Kind::B)]
    pub kind: Kind,
    /// Also write a CSV of the reduced homology.
    #[arg(long)]
    pub csv: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct HomologyArgs {
    /// A complex.json or poset.json.
    #[arg(long = "in", required = true, num_args = 1..)]
    pub input: Vec<PathBuf>,
    #[arg(long, default_value = "Z")]
    pub coeff: String,
    /// Also write a CSV with one row per input and degree.
    #[arg(long)]
    pub csv: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModuleKind {
    /// H̃_{n-1}(B_n^m) under GL_fix(m, n+m).
    B,
    /// St(F^n) under GL_n.
    St,
    /// St^{E₁}(F^n) under GL_n.
    StE1,
}

#[derive(Debug, Args)]
pub struct CoinvariantsArgs {
    #[command(flatten)]
    pub ring: RingArgs,
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value_t = 0)]
    pub m: usize,
    #[arg(long, value_enum, default_value_t = ModuleKind::B)]
    pub module: ModuleKind,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum WitnessCase {
    /// 2d = n: swap of v_1 and v_2.
    Internal,
    /// 2d < n: v_n ↦ -v_n - a.
    Last,
    /// B_1^1 over ℤ with g = [[1,-r],[0,-1]].
    Bpid,
    /// The acceptance set of witnesses.
    All,
}

#[derive(Debug, Args)]
pub struct WitnessArgs {
    #[arg(long, value_enum, default_value_t = WitnessCase::All)]
    pub case: WitnessCase,
    /// Ring of the frame (z, zi, zw or fq with --q).
    #[arg(long, default_value = "z")]
    pub ring: String,
    #[arg(long)]
    pub q: Option<u64>,
    #[arg(long)]
    pub bound: Option<u64>,
    #[arg(long, default_value_t = 0)]
    pub m: usize,
    /// Frame vectors v_1..v_n as `;`-separated rows of `,`-separated entries;
    /// `a:b` is a + b·i or a + b·ω.
    #[arg(long)]
    pub frame: Option<String>,
    /// Number of three-vertex blocks for the last-block case.
    #[arg(long, default_value_t = 0)]
    pub d: usize,
    /// Partners of u_{2d+1}..u_n, e.g. `e1,v1`.
    #[arg(long)]
    pub partners: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub r: Option<i64>,
}

#[derive(Debug, Args)]
pub struct IdentityArgs {
    /// Random samples per ring for the elementary-matrix relations.
    #[arg(long, default_value_t = 50)]
    pub samples: usize,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// `all` or a criterion number 1..10.
    #[arg(long, default_value = "all")]
    pub suite: String,
}

/// Configuration errors map to exit code 2.
#[derive(Debug)]
pub struct ConfigError(pub String);

impl std::fmt::Display for ConfigError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "invalid configuration: {}", self.0)
    }
}

impl std::error::Error for ConfigError {}

fn invalid(msg: impl Into<String>) -> anyhow::Error {
    ConfigError(msg.into()).into()
}

/// A validated ring choice.
#[derive(Debug, Clone, Copy)]
pub struct RingChoice {
    pub id: RingId,
    pub bound: Option<NormBound>,
}

impl RingArgs {
    pub fn resolve(&self) -> anyhow::Result<RingChoice> {
        resolve_ring(&self.ring, self.q, self.bound, true)
    }
}

impl WitnessArgs {
    pub fn resolve(&self) -> anyhow::Result<RingChoice> {
        resolve_ring(&self.ring, self.q, self.bound, false)
    }
}

/// Infinite rings need a bound when `bound_required`; fields need a prime `q <= 13`.
pub fn resolve_ring(ring: &str, q: Option<u64>, bound: Option<u64>, bound_required: bool) -> anyhow::Result<RingChoice> {
    let id = match ring {
        "fq" | "Fq" => {
            let q = q.ok_or_else(|| invalid("--ring fq needs --q"))?;
            RingId::prime_field(q).map_err(|_| invalid(format!("q = {q} is not a prime <= 13")))?
        }
        other => {
            let id: RingId = other.parse().map_err(|_| invalid(format!("unknown ring {other}")))?;
            if q.is_some() && !id.is_finite() {
                return Err(invalid(format!("--q given for the infinite ring {id}")));
            }
            id
        }
    };
    let bound = match (id.is_finite(), bound) {
        (true, _) => None,
        (false, Some(b)) => Some(NormBound::new(b).map_err(|e| invalid(e.to_string()))?),
        (false, None) if bound_required => return Err(invalid(format!("the infinite ring {id} needs --bound"))),
        (false, None) => None,
    };
    Ok(RingChoice { id, bound })
}

pub fn parse_coeff(s: &str) -> anyhow::Result<CoeffRing> {
    s.parse().map_err(|_| invalid(format!("unknown coefficient ring {s}")))
}

/// Rows `1,0;0,1`; an entry `a:b` is the pair (a, b).
pub fn parse_frame(s: &str) -> anyhow::Result<Vec<Vec<(i64, i64)>>> {
    s.split(';')
        .map(|row| {
            row.split(',')
                .map(|x| {
                    let x = x.trim();
                    let (a, b) = x.split_once(':').unwrap_or((x, "0"));
                    Ok((
                        a.trim().parse().map_err(|_| invalid(format!("bad frame entry {x}")))?,
                        b.trim().parse().map_err(|_| invalid(format!("bad frame entry {x}")))?,
                    ))
                })
                .collect()
        })
        .collect()
}

pub fn parse_partners(s: &str) -> anyhow::Result<Vec<framelab::actions::Partner>> {
    use framelab::actions::Partner;
    s.split(',')
        .map(|p| {
            let p = p.trim();
            let idx = |t: &str| t.parse::<usize>().map_err(|_| invalid(format!("bad partner {p}")));
            match p.split_at(1.min(p.len())) {
                ("e", i) => Ok(Partner::E(idx(i)?)),
                ("v", i) => Ok(Partner::V(idx(i)?)),
                _ => Err(invalid(format!("bad partner {p}"))),
            }
        })
        .collect()
}

/// FRAMELAB_THREADS overrides `--threads`.
pub fn thread_count(flag: Option<usize>) -> anyhow::Result<Option<usize>> {
    match std::env::var("FRAMELAB_THREADS") {
        Ok(v) if !v.trim().is_empty() => match v.trim().parse::<usize>() {
            Ok(n) if n > 0 => Ok(Some(n)),
            _ => Err(invalid(format!("FRAMELAB_THREADS={v} is not a positive integer"))),
        },
        _ => match flag {
            Some(0) => Err(invalid("--threads must be positive")),
            other => Ok(other),
        },
    }
}
