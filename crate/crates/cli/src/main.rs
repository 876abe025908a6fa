//! `kpack`: generate instances, run the packing algorithms, verify the
//! built-in tight fixtures and benchmark ratios against the exact oracles.
//!
//! Exit status: 0 success, 1 verification failure, 2 usage or input error.

mod report;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use kpack::audit::{audit_run, run_algorithm, Algorithm, OracleCache, RunConfig};
use kpack::fixtures::{certify_optimum, fixture, verify_fixture, Fixture, FixtureId};
use kpack::io::{format_matching, format_plan, load_instance, parse_matching, parse_plan, save_instance};
use kpack::{
    generate_instance, Distribution, EdgeGroupPlan, Fraction, GeneratorSpec, Graph, PackingKind, RatioReport,
    TspSolver, WeightClass,
};
use rayon::prelude::*;
use serde::Serialize;

use report::{csv_string, decimal, unscale, OracleOut, PackingOut, Row, SolveOut};

#[derive(Parser)]
#[command(name = "kpack", version, about = "k-cycle and k-path packing algorithms with exact oracles")]
struct Cli {
    /// More log output (repeatable).
    #[arg(short, long, action = clap::ArgAction::Count, global = true)]
    verbose: u8,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a random packgraph instance.
    Gen(GenArgs),
    /// Run one algorithm on an instance file or a fixture.
    Solve(SolveArgs),
    /// Write the tight fixtures and verify their expected values.
    Fixtures(FixturesArgs),
    /// Audit algorithms on many random instances.
    Bench(BenchArgs),
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Args)]
struct GenArgs {
    #[arg(long)]
    n: usize,
    /// Reject `n` not divisible by this block length.
    #[arg(long)]
    k: Option<usize>,
    #[arg(long, default_value = "metric")]
    class: WeightClass,
    /// uniform, euclidean, closure or bernoulli; defaults per class.
    #[arg(long)]
    dist: Option<Distribution>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 100)]
    max_weight: i64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SolveArgs {
    /// Instance file, or a fixture id (fig2, fig3, fig4, fig5, fig3_lifted).
    #[arg(long = "in")]
    input: String,
    /// Block length; defaults to the fixture's.
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    algo: Algorithm,
    #[arg(long, default_value = "exact")]
    tsp: TspSolver,
    /// Compare with the exact optimum and run the lemma audits.
    #[arg(long)]
    oracle: bool,
    /// Matching file (`u v` per line), or `fixture` for the fixture's own.
    #[arg(long)]
    override_matching: Option<String>,
    /// Plan file (`a b c d ; z` per group), or `fixture` for the fixture's own.
    #[arg(long)]
    override_plan: Option<String>,
    /// Packing kind solved by reduce12.
    #[arg(long, default_value = "cycle")]
    kind: PackingKind,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct FixturesArgs {
    /// Fixture to build; all of them when absent.
    #[arg(long)]
    id: Option<FixtureId>,
    /// Directory receiving the instance and override files.
    #[arg(long)]
    out_dir: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct BenchArgs {
    #[arg(long)]
    k: usize,
    #[arg(long, default_value = "metric")]
    class: WeightClass,
    /// Vertex counts, used round-robin over the instances.
    #[arg(long, value_delimiter = ',', required = true)]
    n: Vec<usize>,
    #[arg(long, default_value_t = 100)]
    count: u64,
    /// First seed; instance `i` uses `seed + i`.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_delimiter = ',', required = true)]
    algos: Vec<Algorithm>,
    #[arg(long, default_value = "exact")]
    tsp: TspSolver,
    #[arg(long)]
    dist: Option<Distribution>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

/// Outcome of a command that ran to completion.
#[derive(Debug, PartialEq, Eq)]
enum Status {
    Ok,
    VerificationFailed,
}

fn emit(out: Option<&Path>, text: &str) -> anyhow::Result<()> {
    match out {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn json<T: Serialize>(value: &T) -> anyhow::Result<String> {
    Ok(serde_json::to_string_pretty(value)? + "\n")
}

fn cmd_gen(a: GenArgs) -> anyhow::Result<Status> {
    if let Some(k) = a.k {
        if k == 0 || !a.n.is_multiple_of(k) {
            bail!("n not divisible by k (n = {}, k = {k})", a.n);
        }
    }
    let mut spec = GeneratorSpec::new(a.n, a.class, a.seed);
    spec.max_weight = a.max_weight;
    if let Some(d) = a.dist {
        spec = spec.with_distribution(d);
    }
    let g = generate_instance(&spec)?;
    emit(a.out.as_deref(), &save_instance(&g))?;
    Ok(Status::Ok)
}

/// An instance read from disk or built from a fixture.
struct Input {
    name: String,
    graph: Graph,
    fixture: Option<Fixture>,
    warnings: Vec<String>,
}

fn read_input(spec: &str) -> anyhow::Result<Input> {
    let path = Path::new(spec);
    if path.exists() {
        let text = fs::read_to_string(path).with_context(|| format!("reading {spec}"))?;
        let loaded = load_instance(&text).with_context(|| format!("parsing {spec}"))?;
        return Ok(Input { name: spec.to_string(), graph: loaded.graph, fixture: None, warnings: loaded.warnings });
    }
    let id: FixtureId = spec.parse().map_err(|_| anyhow!("'{spec}' is neither a file nor a fixture id"))?;
    let f = fixture(id);
    Ok(Input { name: id.name().to_string(), graph: f.graph.clone(), fixture: Some(f), warnings: Vec::new() })
}

fn override_source<T>(
    flag: &str,
    value: Option<&str>,
    input: &Input,
    from_fixture: impl FnOnce(&Fixture) -> Option<T>,
    from_file: impl FnOnce(&str) -> anyhow::Result<T>,
) -> anyhow::Result<Option<T>> {
    match value {
        None => Ok(None),
        Some("fixture" | "paper") => {
            let f = input.fixture.as_ref().ok_or_else(|| anyhow!("{flag} fixture needs a fixture input"))?;
            Ok(Some(from_fixture(f).ok_or_else(|| anyhow!("fixture {} has no {flag}", f.id))?))
        }
        Some(path) => {
            let text = fs::read_to_string(path).with_context(|| format!("reading {path}"))?;
            from_file(&text).map(Some).with_context(|| format!("parsing {path}"))
        }
    }
}

fn cmd_solve(a: SolveArgs) -> anyhow::Result<Status> {
    let input = read_input(&a.input)?;
    let g = &input.graph;
    let n = g.n();
    let k = a.k.or(input.fixture.as_ref().map(|f| f.k)).ok_or_else(|| anyhow!("--k is required for instance files"))?;
    let matching_override = override_source(
        "--override-matching",
        a.override_matching.as_deref(),
        &input,
        |f| f.matching_override.clone(),
        |t| Ok(parse_matching(t, n)?),
    )?;
    let plan_override = override_source(
        "--override-plan",
        a.override_plan.as_deref(),
        &input,
        |f| f.plan_override.clone(),
        |t| Ok(EdgeGroupPlan::from_lines(parse_plan(t)?)),
    )?;
    let cfg = RunConfig { tsp: a.tsp, matching_override, plan_override, plug: None, reduce_kind: a.kind };
    let denom = g.denom();
    let outcome = run_algorithm(g, k, a.algo, &cfg)?;
    let report = if a.oracle {
        let mut cache = OracleCache::new(g);
        if let Some(f) = input.fixture.as_ref().filter(|f| f.optimum_certified && f.k == k) {
            let (opt, _) = certify_optimum(f)?;
            cache = cache.with_known_optimum(k, f.kind(), opt);
        }
        Some(audit_run(&mut cache, &input.name, k, a.algo, &cfg)?)
    } else {
        None
    };
    let weight = unscale(outcome.weight, denom);
    let text = match a.format {
        Format::Json => json(&SolveOut {
            instance: input.name.clone(),
            n,
            k,
            algorithm: a.algo.to_string(),
            tsp: a.tsp.to_string(),
            weight: weight.to_string(),
            weight_decimal: decimal(&weight),
            packing: PackingOut::from(&outcome.packing),
            oracle: report.as_ref().map(|r| OracleOut::new(r, denom)),
            warnings: input.warnings.clone(),
        })?,
        Format::Csv => {
            let row = match &report {
                Some(r) => Row::instance(r, None, denom),
                None => Row {
                    row_type: "instance",
                    instance: input.name.clone(),
                    seed: None,
                    n: Some(n),
                    k,
                    algorithm: a.algo.to_string(),
                    count: None,
                    weight: Some(weight.to_string()),
                    optimum: None,
                    ratio: None,
                    ratio_decimal: None,
                    mean_ratio_decimal: None,
                    bound: None,
                    bound_holds: true,
                    audits_checked: 0,
                    audits_failed: 0,
                },
            };
            csv_string(&[row])?
        }
    };
    emit(a.out.as_deref(), &text)?;
    Ok(match &report {
        Some(r) if !r.passed() => {
            report_failures(r);
            Status::VerificationFailed
        }
        _ => Status::Ok,
    })
}

fn report_failures(r: &RatioReport) {
    if !r.bound_holds {
        eprintln!(
            "{} {}: ratio {} below bound {}",
            r.instance,
            r.algorithm,
            r.ratio.map_or("-".into(), |q| q.to_string()),
            r.bound.map_or("-".into(), |b| b.to_string())
        );
    }
    for a in r.failed_audits() {
        eprintln!(
            "{} {}: audit '{}' failed: {} vs {}",
            r.instance,
            r.algorithm,
            a.name,
            a.lhs.map_or(a.lhs_decimal.to_string(), |x| x.to_string()),
            a.rhs.map_or(a.rhs_decimal.to_string(), |x| x.to_string())
        );
    }
}

#[derive(Serialize)]
struct FixtureOut {
    id: String,
    algorithm: String,
    k: usize,
    passed: bool,
    checks: Vec<kpack::fixtures::FixtureCheck>,
    oracle: OracleOut,
}

fn write_fixture_files(dir: &Path, f: &Fixture) -> anyhow::Result<()> {
    fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    let name = f.id.name();
    fs::write(dir.join(format!("{name}.pg")), save_instance(&f.graph))?;
    if let Some(m) = &f.matching_override {
        fs::write(dir.join(format!("{name}.matching")), format_matching(m))?;
    }
    if let Some(p) = &f.plan_override {
        fs::write(dir.join(format!("{name}.plan")), format_plan(&p.to_lines()))?;
    }
    Ok(())
}

fn cmd_fixtures(a: FixturesArgs) -> anyhow::Result<Status> {
    let ids = a.id.map_or_else(|| FixtureId::ALL.to_vec(), |id| vec![id]);
    let mut outs = Vec::new();
    let mut rows = Vec::new();
    let mut status = Status::Ok;
    for id in ids {
        let f = fixture(id);
        if let Some(dir) = &a.out_dir {
            write_fixture_files(dir, &f)?;
        }
        let v = verify_fixture(id)?;
        if !v.passed() {
            status = Status::VerificationFailed;
            for c in v.checks.iter().filter(|c| !c.pass) {
                eprintln!("{id}: {} expected {} got {}", c.name, c.expected, c.actual);
            }
            report_failures(&v.report);
        }
        rows.push(Row::instance(&v.report, None, f.graph.denom()));
        outs.push(FixtureOut {
            id: id.name().to_string(),
            algorithm: f.algorithm.to_string(),
            k: f.k,
            passed: v.passed(),
            oracle: OracleOut::new(&v.report, f.graph.denom()),
            checks: v.checks,
        });
    }
    let text = match a.format {
        Format::Json => json(&outs)?,
        Format::Csv => csv_string(&rows)?,
    };
    emit(a.out.as_deref(), &text)?;
    Ok(status)
}

#[derive(Serialize)]
struct BenchOut {
    instances: Vec<Row>,
    summary: Vec<Row>,
}

fn cmd_bench(a: BenchArgs) -> anyhow::Result<Status> {
    if a.n.iter().any(|&n| a.k == 0 || n % a.k != 0) {
        bail!("every n must be divisible by k = {}", a.k);
    }
    let cfg = RunConfig { tsp: a.tsp, ..RunConfig::default() };
    let seeds: Vec<u64> = (a.seed..a.seed + a.count).collect();
    // each instance is independent; collect keeps seed order
    let per_seed: Vec<anyhow::Result<Vec<RatioReport>>> = seeds
        .par_iter()
        .enumerate()
        .map(|(i, &seed)| {
            let n = a.n[i % a.n.len()];
            let mut spec = GeneratorSpec::new(n, a.class, seed);
            if let Some(d) = a.dist {
                spec = spec.with_distribution(d);
            }
            let g = generate_instance(&spec)?;
            let name = format!("{}-n{n}-seed{seed}", a.class);
            Ok(kpack::audit_instance(&g, &name, a.k, &a.algos, &cfg)?)
        })
        .collect();
    let mut instances = Vec::new();
    let mut reports = Vec::new();
    for (seed, r) in seeds.iter().zip(per_seed) {
        for rep in r? {
            instances.push(Row::instance(&rep, Some(*seed), 1));
            reports.push(rep);
        }
    }
    let mut status = Status::Ok;
    let mut summary = Vec::new();
    for &alg in &a.algos {
        let mine: Vec<&RatioReport> = reports.iter().filter(|r| r.algorithm == alg).collect();
        let ratios: Vec<Fraction> = mine.iter().filter_map(|r| r.ratio).collect();
        let min = ratios.iter().min().copied();
        let mean = (!ratios.is_empty()).then(|| ratios.iter().map(decimal).sum::<f64>() / ratios.len() as f64);
        let violations = mine.iter().filter(|r| !r.bound_holds).count();
        let audit_failures: usize = mine.iter().map(|r| r.failed_audits().count()).sum();
        if violations > 0 || audit_failures > 0 {
            status = Status::VerificationFailed;
            mine.iter().filter(|r| !r.passed()).for_each(|r| report_failures(r));
        }
        let bound = mine.first().and_then(|r| r.bound);
        eprintln!(
            "{alg}: {} instances, min ratio {} ({:.4}), mean {:.4}, bound {}, violations {violations}, failed audits {audit_failures}",
            mine.len(),
            min.map_or("-".into(), |m| m.to_string()),
            min.as_ref().map_or(f64::NAN, decimal),
            mean.unwrap_or(f64::NAN),
            bound.map_or("-".into(), |b| b.to_string()),
        );
        summary.push(Row {
            row_type: "summary",
            instance: format!("{}-k{}", a.class, a.k),
            seed: None,
            n: None,
            k: a.k,
            algorithm: alg.to_string(),
            count: Some(mine.len()),
            weight: None,
            optimum: None,
            ratio: min.map(|m| m.to_string()),
            ratio_decimal: min.as_ref().map(decimal),
            mean_ratio_decimal: mean,
            bound: bound.map(|b| b.to_string()),
            bound_holds: violations == 0,
            audits_checked: mine.iter().map(|r| r.audits.len()).sum(),
            audits_failed: audit_failures,
        });
    }
    let text = match a.format {
        Format::Json => json(&BenchOut { instances, summary })?,
        Format::Csv => {
            instances.extend(summary);
            csv_string(&instances)?
        }
    };
    emit(a.out.as_deref(), &text)?;
    Ok(status)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let level = match cli.verbose {
        0 => "warn",
        1 => "info",
        _ => "debug",
    };
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or(level)).init();
    let result = match cli.command {
        Command::Gen(a) => cmd_gen(a),
        Command::Solve(a) => cmd_solve(a),
        Command::Fixtures(a) => cmd_fixtures(a),
        Command::Bench(a) => cmd_bench(a),
    };
    match result {
        Ok(Status::Ok) => ExitCode::SUCCESS,
        Ok(Status::VerificationFailed) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
