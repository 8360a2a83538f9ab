mod config;

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Parser, ValueEnum};
use serde_json::Value;

use config::{
    parse_coeff, parse_frame, parse_partners, thread_count, BuildArgs, Cli, CoinvariantsArgs, Command, ConfigError,
    HomologyArgs, IdentityArgs, Kind, ModuleKind, VerifyArgs, WitnessArgs, WitnessCase,
};
use framelab::acceptance::{run_all, run_criterion, AcceptanceReport, CRITERIA};
use framelab::actions::{
    bpid, frame_coinvariants, internal_swap, last_block_swap, split_steinberg_coinvariants, steinberg_coinvariants,
    WitnessOutcome,
};
use framelab::complexes::{
    build_b, build_ba, build_relative_tits, build_splitting_poset, build_tits, Poset, SimplicialComplex,
    SplittingConstraints,
};
use framelab::enumeration::{enumerate_lines, enumerate_subspaces, NormBound};
use framelab::homology::reduced_homology;
use framelab::identities::identity_suite;
use framelab::report::{emit_csv, to_json, CsvRecord};
use framelab::rings::FrameRing;
use framelab::{with_frame_ring, with_prime_field, CoeffRing, Error, RingId};

const EXIT_FAILED: u8 = 1;
const EXIT_CONFIG: u8 = 2;
const EXIT_SIZE: u8 = 3;

fn write(path: &Path, contents: &str) -> anyhow::Result<()> {
    std::fs::write(path, contents).with_context(|| format!("writing {}", path.display()))?;
    eprintln!("wrote {}", path.display());
    Ok(())
}

fn out_path(out: &Option<PathBuf>, default: &str) -> PathBuf {
    out.clone().unwrap_or_else(|| PathBuf::from(default))
}

fn build(args: &BuildArgs, out: &Option<PathBuf>) -> anyhow::Result<()> {
    let ring = args.ring.resolve()?;
    let (n, m) = (args.n, args.m);
    let needs_field = matches!(args.kind, Kind::T | Kind::S | Kind::Subspaces);
    if needs_field && !ring.id.is_finite() {
        return Err(ConfigError(format!("--kind {:?} needs a finite field", args.kind)).into());
    }
    let (json, complex, default): (String, Option<SimplicialComplex>, &str) = match args.kind {
        Kind::B | Kind::Ba => with_frame_ring!(ring.id, R => {
            let fc = if args.kind == Kind::B { build_b::<R>(n, m, ring.bound)? } else { build_ba::<R>(n, m, ring.bound)? };
            Ok::<_, Error>((to_json(&fc)?, Some(fc.complex.clone()), "complex.json"))
        })?,
        Kind::Lines => with_frame_ring!(ring.id, R => {
            let lines = enumerate_lines::<R>(n, ring.bound)?;
            Ok::<_, Error>((to_json(&lines)?, None, "lines.json"))
        })?,
        Kind::Subspaces => with_field(ring.id, |id| {
            with_prime_field!(prime(id), F => Ok((to_json(&enumerate_subspaces::<F>(n, m)?)?, None, "subspaces.json")))
        })?,
        Kind::T => with_field(ring.id, |id| {
            with_prime_field!(prime(id), F => {
                let p = if m == 0 { build_tits::<F>(n)? } else { build_relative_tits::<F>(n, m)? };
                Ok((to_json(&p)?, Some(p.order_complex()), "poset.json"))
            })
        })?,
        Kind::S => with_field(ring.id, |id| {
            with_prime_field!(prime(id), F => {
                let p = build_splitting_poset::<F>(n, &SplittingConstraints::default())?;
                Ok((to_json(&p)?, Some(p.order_complex()), "poset.json"))
            })
        })?,
    };
    write(&out_path(out, default), &json)?;
    if let Some(csv) = &args.csv {
        let k = complex.ok_or_else(|| ConfigError("--csv needs a complex or poset kind".into()))?;
        let kind = args.kind.to_possible_value().expect("named").get_name().to_string();
        let name = format!("{kind}_{n}^{m}({})", ring.id);
        let rec = CsvRecord::Homology {
            complex: name,
            result: reduced_homology(&k, CoeffRing::Z)?,
        };
        write(csv, &emit_csv(&[rec])?)?;
    }
    Ok(())
}

fn prime(id: RingId) -> u64 {
    match id {
        RingId::PrimeField(p) => p,
        _ => unreachable!("checked by with_field"),
    }
}

fn with_field<T>(id: RingId, f: impl FnOnce(RingId) -> Result<T, Error>) -> Result<T, Error> {
    if id.is_finite() {
        f(id)
    } else {
        Err(Error::UnsupportedRing(id.to_string()))
    }
}

/// Reads a complex.json (`vertex_count`, `simplices`) or a poset.json
/// (`elements`, `relations`), the latter as its order complex.
fn read_complex(path: &Path) -> anyhow::Result<SimplicialComplex> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let v: Value = serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
    if v.get("relations").is_some() {
        let len = v["elements"].as_array().map_or(0, Vec::len);
        let rel: BTreeSet<(usize, usize)> = serde_json::from_value(v["relations"].clone())
            .with_context(|| format!("relations in {}", path.display()))?;
        let p = Poset::new((0..len).collect(), |a, b| rel.contains(&(*a, *b)))?;
        Ok(p.order_complex())
    } else {
        Ok(serde_json::from_value(v).with_context(|| format!("complex in {}", path.display()))?)
    }
}

fn homology(args: &HomologyArgs, out: &Option<PathBuf>) -> anyhow::Result<()> {
    let coeff = parse_coeff(&args.coeff)?;
    let mut records = Vec::new();
    for path in &args.input {
        let k = read_complex(path)?;
        let result = reduced_homology(&k, coeff)?;
        records.push((path.display().to_string(), result));
    }
    let json = if records.len() == 1 {
        to_json(&records[0].1)?
    } else {
        to_json(&records.iter().map(|(_, r)| r).collect::<Vec<_>>())?
    };
    write(&out_path(out, "homology.json"), &json)?;
    if let Some(csv) = &args.csv {
        let recs: Vec<CsvRecord> = records
            .into_iter()
            .map(|(complex, result)| CsvRecord::Homology { complex, result })
            .collect();
        write(csv, &emit_csv(&recs)?)?;
    }
    Ok(())
}

fn coinvariants(args: &CoinvariantsArgs, out: &Option<PathBuf>) -> anyhow::Result<()> {
    let ring = args.ring.resolve()?;
    if !ring.id.is_finite() {
        return Err(ConfigError(format!("coinvariants need a finite field, got {}", ring.id)).into());
    }
    let (n, m) = (args.n, args.m);
    if args.module != ModuleKind::B && m != 0 {
        return Err(ConfigError("--m applies only to --module b".into()).into());
    }
    let report = with_prime_field!(prime(ring.id), F => match args.module {
        ModuleKind::B => frame_coinvariants::<F>(n, m),
        ModuleKind::St => steinberg_coinvariants::<F>(n),
        ModuleKind::StE1 => split_steinberg_coinvariants::<F>(n),
    })?;
    write(&out_path(out, "coinvariants.json"), &to_json(&report)?)
}

fn frame_vectors<R: FrameRing>(rows: &[Vec<(i64, i64)>]) -> Vec<Vec<R>> {
    rows.iter().map(|r| r.iter().map(|&(a, b)| R::from_pair(a, b)).collect()).collect()
}

fn witnesses(args: &WitnessArgs, out: &Option<PathBuf>) -> anyhow::Result<()> {
    let ring = args.resolve()?;
    let frame = || -> anyhow::Result<Vec<Vec<(i64, i64)>>> {
        parse_frame(args.frame.as_deref().ok_or_else(|| ConfigError("--frame is required".into()))?)
    };
    let outcomes: Vec<WitnessOutcome> = match args.case {
        WitnessCase::Internal => {
            let rows = frame()?;
            vec![with_frame_ring!(ring.id, R => internal_swap(args.m, &frame_vectors::<R>(&rows), ring.bound))?]
        }
        WitnessCase::Last => {
            let rows = frame()?;
            let partners = parse_partners(args.partners.as_deref().ok_or_else(|| ConfigError("--partners is required".into()))?)?;
            vec![with_frame_ring!(ring.id, R => last_block_swap(args.m, &frame_vectors::<R>(&rows), args.d, &partners, ring.bound))?]
        }
        WitnessCase::Bpid => {
            if ring.id != RingId::Integers {
                return Err(ConfigError("the bpid witness is over z".into()).into());
            }
            let r = args.r.ok_or_else(|| ConfigError("--r is required".into()))?;
            vec![bpid(r, ring.bound)?]
        }
        WitnessCase::All => {
            let z = |rows: &[&[i64]]| rows.iter().map(|r| r.iter().map(|&x| framelab::Z::from(x)).collect()).collect::<Vec<Vec<_>>>();
            let mut v = vec![
                internal_swap(0, &z(&[&[1, 0], &[0, 1]]), None)?,
                last_block_swap(1, &z(&[&[0, 1]]), 0, &[framelab::actions::Partner::E(1)], None)?,
            ];
            for r in 0..=3 {
                v.push(bpid(r, NormBound::new(4).ok())?);
            }
            v
        }
    };
    let json = if outcomes.len() == 1 { to_json(&outcomes[0])? } else { to_json(&outcomes)? };
    write(&out_path(out, "witness.json"), &json)?;
    if outcomes.iter().all(|o| o.holds) {
        Ok(())
    } else {
        Err(anyhow!(Failed("a witness relation failed".into())))
    }
}

fn identities(args: &IdentityArgs, seed: u64, out: &Option<PathBuf>) -> anyhow::Result<()> {
    let cases = identity_suite(args.samples, seed)?;
    write(&out_path(out, "identities.json"), &to_json(&cases)?)?;
    for c in &cases {
        println!("{} {} over {}", if c.holds { "PASS" } else { "FAIL" }, c.name, c.ring);
    }
    if cases.iter().all(|c| c.holds) {
        Ok(())
    } else {
        Err(anyhow!(Failed("an identity failed".into())))
    }
}

fn verify(args: &VerifyArgs, seed: u64, out: &Option<PathBuf>) -> anyhow::Result<()> {
    let report = if args.suite == "all" {
        run_all(seed)
    } else {
        let id: u8 = args
            .suite
            .parse()
            .ok()
            .filter(|i| CRITERIA.iter().any(|c| c.0 == *i))
            .ok_or_else(|| ConfigError(format!("--suite must be all or 1..10, got {}", args.suite)))?;
        let c = run_criterion(id, seed).expect("known criterion");
        AcceptanceReport {
            suite: args.suite.clone(),
            seed,
            all_passed: c.ok(),
            criteria: vec![c],
        }
    };
    for c in &report.criteria {
        println!("{}", c.line());
    }
    write(&out_path(out, "acceptance.json"), &to_json(&report)?)?;
    if report.all_passed {
        Ok(())
    } else {
        Err(anyhow!(Failed("acceptance criteria failed".into())))
    }
}

#[derive(Debug)]
struct Failed(String);

impl std::fmt::Display for Failed {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Failed {}

fn exit_code(e: &anyhow::Error) -> u8 {
    if e.downcast_ref::<ConfigError>().is_some() {
        return EXIT_CONFIG;
    }
    match e.downcast_ref::<Error>() {
        Some(Error::SizeGuard { .. }) => EXIT_SIZE,
        Some(Error::UnsupportedRing(_) | Error::MissingBound(_)) => EXIT_CONFIG,
        _ => EXIT_FAILED,
    }
}

fn run(cli: Cli) -> anyhow::Result<()> {
    if let Some(n) = thread_count(cli.threads)? {
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global()?;
    }
    match &cli.command {
        Command::Build(a) => build(a, &cli.out),
        Command::Homology(a) => homology(a, &cli.out),
        Command::Coinvariants(a) => coinvariants(a, &cli.out),
        Command::Witnesses(a) => witnesses(a, &cli.out),
        Command::Identities(a) => identities(a, cli.seed, &cli.out),
        Command::Verify(a) => verify(a, cli.seed, &cli.out),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}

