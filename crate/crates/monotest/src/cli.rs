//! Command-line front end.
//!
//! Subcommands: `gen` (sample hard instances), `dist` (exact distance),
//! `test` (tester trials with a JSON report), `pairs` (greedy disjoint-pair
//! certificate), `verify` (lemma checks), `grid` (hypergrid view), and
//! `experiment` (acceptance-gap runs). Exit codes: 0 accept/verified,
//! 1 reject/counterexample, 2 usage or parse error.
//!
//! Reports are deterministic: given the same arguments (seed included) the
//! emitted JSON is byte-identical, independent of `--threads`.

use std::fs;
use std::io::BufReader;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use crate::distance::{
    disjoint_violating_pairs_greedy, distance_to_monotone_line, distance_to_monotone_poset,
    violating_pairs,
};
use crate::error::{Error, Result};
use crate::function::{LineFunction, ViolationPair};
use crate::instances::{grid_order, sample, DistributionId, MuParams, ScaledParams};
use crate::report::{ReportDocument, TestBody, TrialRecord};
use crate::stream::{derive_seed, stream};
use crate::testers::{
    find_disjoint_violating_pairs, max_disjoint_violating_pairs, run_tester, Eps, QueryOracle,
    TesterConfig, TesterId, TesterReport, DEFAULT_ITERATION_CONSTANT,
};
use crate::verify::{
    check_claim_bad, check_claim_good, check_cut_lemma, check_goodalpha, check_nonmonotone,
    cut_indices, distinguishing_experiment, random_good_assignment, GapConfig, LemmaCheckResult,
    LemmaId, Outcome,
};

const EXIT_ACCEPT: u8 = 0;
const EXIT_REJECT: u8 = 1;

/// Largest `d*b` for which `grid` computes the exact poset distance.
const EXACT_GRID_BITS: u32 = 12;

#[derive(Parser, Debug)]
#[command(
    name = "monotest",
    version,
    about = "Monotonicity testing on the line and hypergrid: hard instances, \
             sublinear testers, exact distances, and lemma checks"
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Sample a hard-instance function and write it in the function file format
    Gen(GenArgs),
    /// Exact distance to monotonicity of a function file
    Dist(DistArgs),
    /// Run a tester for many trials and write a JSON report
    Test(TestArgs),
    /// Greedy disjoint violating-pair certificate of an eps-far function
    Pairs(PairsArgs),
    /// Machine-check the hard-instance lemmas at chosen parameters
    Verify(VerifyArgs),
    /// View a line function on the hypergrid via bit regrouping
    Grid(GridArgs),
    /// Acceptance-gap experiment between two distributions
    Experiment(ExperimentArgs),
}

/// Entry point used by the `monotest` binary.
pub fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

pub fn run(cli: Cli) -> Result<u8> {
    match cli.command {
        Command::Gen(args) => cmd_gen(args),
        Command::Dist(args) => cmd_dist(args),
        Command::Test(args) => cmd_test(args),
        Command::Pairs(args) => cmd_pairs(args),
        Command::Verify(args) => cmd_verify(args),
        Command::Grid(args) => cmd_grid(args),
        Command::Experiment(args) => cmd_experiment(args),
    }
}

/// Distribution selection shared by the sampling commands.
#[derive(Args, Debug, Clone)]
struct DistSpec {
    /// Distribution: mu | nu | nu-j:<j> | mu-tilde | nu-tilde | nu-tilde:<t>:<j>
    #[arg(long)]
    dist: DistributionId,
    /// Digit levels per block; the block domain is 2^k
    #[arg(long)]
    k: u32,
    /// Digit base (the block range bound is m^k)
    #[arg(long)]
    m: u64,
    /// Block count for the tilde distributions (eps = 1/(2*ell))
    #[arg(long)]
    ell: Option<u64>,
}

impl DistSpec {
    fn resolve(&self) -> Result<(DistributionId, ScaledParams)> {
        let mu = MuParams::new(self.k, self.m)?;
        let ell = match (self.dist.is_tilde(), self.ell) {
            (true, Some(ell)) => ell,
            (true, None) => {
                return Err(Error::invalid(format!("distribution {} needs --ell", self.dist)))
            }
            (false, None) | (false, Some(1)) => 1,
            (false, Some(ell)) => {
                return Err(Error::invalid(format!(
                    "distribution {} lives on a single block, but --ell {ell} was given",
                    self.dist
                )))
            }
        };
        let scaled = ScaledParams::new(ell, mu)?;
        self.dist.validate(&scaled)?;
        Ok((self.dist, scaled))
    }

}

fn read_function(path: &PathBuf) -> Result<LineFunction> {
    let file = fs::File::open(path)?;
    LineFunction::read_from(BufReader::new(file))
}

/// Write the JSON document to `--out` if given, then either dump it to
/// stdout (`--json`) or print the one-line summary.
fn emit<B: Serialize>(
    doc: &ReportDocument<B>,
    out: &Option<PathBuf>,
    json_stdout: bool,
    summary: &str,
) -> Result<()> {
    let text = doc.to_json();
    if let Some(path) = out {
        fs::write(path, &text)?;
    }
    if json_stdout {
        print!("{text}");
    } else {
        println!("{summary}");
    }
    Ok(())
}

// ---------------------------------------------------------------- gen

#[derive(Args, Debug)]
struct GenArgs {
    #[command(flatten)]
    dist: DistSpec,
    /// Base seed of the sampling stream
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Write the function file here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also compute and report the exact distance to monotone
    #[arg(long)]
    with_distance: bool,
}

fn cmd_gen(args: GenArgs) -> Result<u8> {
    let (id, scaled) = args.dist.resolve()?;
    let f = sample(id, &scaled, &mut stream(args.seed, 0))?;
    let mut info = format!("n={} r={}", f.n(), f.range_bound());
    if args.with_distance {
        let d = distance_to_monotone_line(&f);
        info.push_str(&format!(" distance={d} ratio={d}/{}", f.n()));
    }
    match &args.out {
        Some(path) => {
            fs::write(path, f.to_file_string())?;
            println!("{info}");
        }
        None => {
            print!("{}", f.to_file_string());
            eprintln!("{info}");
        }
    }
    Ok(EXIT_ACCEPT)
}

// ---------------------------------------------------------------- dist

#[derive(Args, Debug)]
struct DistArgs {
    /// Function file to analyze
    #[arg(long)]
    input: PathBuf,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Print the full JSON report to stdout
    #[arg(long)]
    json: bool,
}

#[derive(Serialize)]
struct DistBody {
    n: u64,
    distance: u64,
    /// Exact farness ratio distance/n.
    ratio: String,
    ratio_approx: f64,
    /// Greedy disjoint-pair certificate (present when distance > 0).
    certificate: Vec<ViolationPair>,
}

fn cmd_dist(args: DistArgs) -> Result<u8> {
    let f = read_function(&args.input)?;
    let n = f.n();
    let distance = distance_to_monotone_line(&f);
    let certificate = if distance > 0 { max_disjoint_violating_pairs(&f) } else { Vec::new() };
    let body = DistBody {
        n,
        distance,
        ratio: format!("{distance}/{n}"),
        ratio_approx: distance as f64 / n as f64,
        certificate,
    };
    let summary = format!(
        "n={n} distance={distance} ratio={} certificate_pairs={}",
        body.ratio,
        body.certificate.len()
    );
    let spec = json!({ "command": "dist", "input": args.input.display().to_string() });
    emit(&ReportDocument::new(spec, body), &args.out, args.json, &summary)?;
    Ok(EXIT_ACCEPT)
}

// ---------------------------------------------------------------- test

#[derive(Args, Debug)]
struct TestArgs {
    /// Tester: improved | ergun | exhaustive
    #[arg(long)]
    algo: TesterId,
    /// Proximity parameter as an exact rational p/q
    #[arg(long, default_value = "1/2")]
    eps: Eps,
    #[arg(long, default_value_t = 100)]
    trials: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Repetition constant (the tester loops ceil(c/eps) times)
    #[arg(long, default_value_t = DEFAULT_ITERATION_CONSTANT)]
    c: u32,
    /// Test a fixed function read from this file
    #[arg(long, conflicts_with = "dist")]
    input: Option<PathBuf>,
    /// Draw a fresh function per trial from this distribution
    #[arg(long, requires = "k", requires = "m")]
    dist: Option<DistributionId>,
    #[arg(long)]
    k: Option<u32>,
    #[arg(long)]
    m: Option<u64>,
    #[arg(long)]
    ell: Option<u64>,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Worker threads for the trials (the report stays byte-identical)
    #[arg(long, default_value_t = 1)]
    threads: usize,
    /// Print the full JSON report to stdout
    #[arg(long)]
    json: bool,
}

enum TestSource {
    File(LineFunction),
    Dist(DistributionId, ScaledParams),
}

fn cmd_test(args: TestArgs) -> Result<u8> {
    let source = match (&args.input, args.dist) {
        (Some(path), None) => TestSource::File(read_function(path)?),
        (None, Some(dist)) => {
            let spec = DistSpec { dist, k: args.k.unwrap(), m: args.m.unwrap(), ell: args.ell };
            let (id, scaled) = spec.resolve()?;
            TestSource::Dist(id, scaled)
        }
        _ => return Err(Error::invalid("test needs exactly one of --input or --dist")),
    };
    let n = match &source {
        TestSource::File(f) => f.n(),
        TestSource::Dist(_, scaled) => scaled.domain_size(),
    };
    if args.algo == TesterId::Improved && !args.eps.eps_n_at_least(n, 2) {
        return Err(Error::Config(format!(
            "eps*n < 2 for eps = {} and n = {n}; run --algo exhaustive instead",
            args.eps
        )));
    }

    let run_one = |trial: u64| -> Result<TrialRecord> {
        let config =
            TesterConfig { eps: args.eps, c: args.c, seed: derive_seed(args.seed, 2 * trial + 1) };
        let report = match &source {
            TestSource::File(f) => run_tester(args.algo, QueryOracle::new(f), &config)?,
            TestSource::Dist(id, scaled) => {
                let f = sample(*id, scaled, &mut stream(args.seed, 2 * trial))?;
                run_tester(args.algo, QueryOracle::new(&f), &config)?
            }
        };
        Ok(TrialRecord {
            trial,
            verdict: report.verdict,
            queries: report.queries,
            witness: report.witness,
        })
    };

    let trials: Vec<TrialRecord> = if args.threads <= 1 {
        (0..args.trials).map(run_one).collect::<Result<_>>()?
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(args.threads)
            .build()
            .map_err(|e| Error::invalid(e.to_string()))?;
        pool.install(|| (0..args.trials).into_par_iter().map(run_one).collect::<Result<_>>())?
    };

    let body = TestBody::new(trials);
    let rejects = body.aggregates.verdict_counts.reject;
    let spec = json!({
        "command": "test",
        "algo": args.algo,
        "eps": args.eps.to_string(),
        "trials": args.trials,
        "seed": args.seed,
        "c": args.c,
        "input": args.input.as_ref().map(|p| p.display().to_string()),
        "dist": args.dist.map(|d| d.to_string()),
        "k": args.k,
        "m": args.m,
        "ell": args.ell,
    });
    let summary = format!(
        "algo={} eps={} trials={} accept={} reject={} mean_queries={:.2} max_queries={}",
        args.algo,
        args.eps,
        args.trials,
        body.aggregates.verdict_counts.accept,
        rejects,
        body.aggregates.mean_queries,
        body.aggregates.max_queries
    );
    emit(&ReportDocument::new(spec, body), &args.out, args.json, &summary)?;
    Ok(if 2 * rejects > args.trials { EXIT_REJECT } else { EXIT_ACCEPT })
}

// ---------------------------------------------------------------- pairs

#[derive(Args, Debug)]
struct PairsArgs {
    /// Function file to certify
    #[arg(long)]
    input: PathBuf,
    /// Farness parameter as an exact rational p/q
    #[arg(long)]
    eps: Eps,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    json: bool,
}

#[derive(Serialize)]
struct PairsBody {
    n: u64,
    distance: u64,
    target_pairs: u64,
    pairs: Vec<ViolationPair>,
}

fn cmd_pairs(args: PairsArgs) -> Result<u8> {
    let f = read_function(&args.input)?;
    let n = f.n();
    let distance = distance_to_monotone_line(&f);
    let needed = args.eps.ceil_eps_n(n);
    if distance < needed {
        return Err(Error::invalid(format!(
            "input is not eps-far: distance {distance} < ceil(eps*n) = {needed}"
        )));
    }
    let pairs = find_disjoint_violating_pairs(&f, &args.eps)?;
    let body = PairsBody { n, distance, target_pairs: args.eps.floor_half_eps_n(n), pairs };
    let summary = format!(
        "n={n} distance={distance} pairs={} (target {})",
        body.pairs.len(),
        body.target_pairs
    );
    let spec = json!({
        "command": "pairs",
        "input": args.input.display().to_string(),
        "eps": args.eps.to_string(),
    });
    emit(&ReportDocument::new(spec, body), &args.out, args.json, &summary)?;
    Ok(EXIT_ACCEPT)
}

// ---------------------------------------------------------------- verify

#[derive(Args, Debug)]
struct VerifyArgs {
    /// Lemma: cut | goodalpha | claim-good | claim-bad | nonmonotone
    #[arg(long)]
    lemma: LemmaId,
    #[arg(long)]
    k: u32,
    /// Digit base; required by all lemmas except `cut`
    #[arg(long)]
    m: Option<u64>,
    /// Block count for `nonmonotone`
    #[arg(long)]
    ell: Option<u64>,
    /// Assignment weight for `cut` (default: sweep small weights)
    #[arg(long)]
    weight: Option<u64>,
    /// Probe count for `claim-bad` (default: k/2 rounded up)
    #[arg(long)]
    queries: Option<u64>,
    /// Check every case instead of random sampling (small k only)
    #[arg(long)]
    exhaustive: bool,
    #[arg(long, default_value_t = 200)]
    trials: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    json: bool,
}

#[derive(Serialize)]
struct VerifyBody {
    verified: u64,
    counterexamples: u64,
    not_applicable: u64,
    results: Vec<LemmaCheckResult>,
}

impl VerifyBody {
    fn new(results: Vec<LemmaCheckResult>) -> Self {
        let mut body =
            VerifyBody { verified: 0, counterexamples: 0, not_applicable: 0, results: Vec::new() };
        for r in &results {
            match r.outcome {
                Outcome::Verified { .. } => body.verified += 1,
                Outcome::Counterexample { .. } => body.counterexamples += 1,
                Outcome::NotApplicable { .. } => body.not_applicable += 1,
            }
        }
        body.results = results;
        body
    }
}

fn require_m(args: &VerifyArgs) -> Result<MuParams> {
    let m = args
        .m
        .ok_or_else(|| Error::invalid(format!("--lemma {} needs --m", args.lemma)))?;
    MuParams::new(args.k, m)
}

fn cmd_verify(args: VerifyArgs) -> Result<u8> {
    let results = match args.lemma {
        LemmaId::Cut => verify_cut(&args)?,
        LemmaId::Goodalpha => verify_goodalpha(&args)?,
        LemmaId::ClaimGood => verify_claim_good(&args)?,
        LemmaId::ClaimBad => {
            let params = require_m(&args)?;
            let q = args.queries.unwrap_or_else(|| (params.k() as u64).div_ceil(2));
            vec![check_claim_bad(&params, q, args.trials, args.seed)?]
        }
        LemmaId::Nonmonotone => {
            let params = require_m(&args)?;
            let scaled = ScaledParams::new(args.ell.unwrap_or(1), params)?;
            vec![check_nonmonotone(&scaled, args.trials, args.seed)?]
        }
    };

    let body = VerifyBody::new(results);
    let failed = body.counterexamples > 0;
    let spec = json!({
        "command": "verify",
        "lemma": args.lemma,
        "k": args.k,
        "m": args.m,
        "ell": args.ell,
        "weight": args.weight,
        "queries": args.queries,
        "exhaustive": args.exhaustive,
        "trials": args.trials,
        "seed": args.seed,
    });
    let summary = format!(
        "lemma={} verified={} counterexamples={} not_applicable={}",
        args.lemma, body.verified, body.counterexamples, body.not_applicable
    );
    emit(&ReportDocument::new(spec, body), &args.out, args.json, &summary)?;
    Ok(if failed { EXIT_REJECT } else { EXIT_ACCEPT })
}

fn verify_cut(args: &VerifyArgs) -> Result<Vec<LemmaCheckResult>> {
    let n = 1u64 << args.k;
    if args.exhaustive && n > 16 {
        return Err(Error::invalid(
            "exhaustive cut checks enumerate all point sets and need k <= 4; drop --exhaustive",
        ));
    }
    let weights: Vec<u64> = match args.weight {
        Some(w) => vec![w],
        None => (1..=n.min(6)).collect(),
    };
    Ok(weights
        .into_iter()
        .map(|w| check_cut_lemma(args.k, w, args.trials, derive_seed(args.seed, w)))
        .collect())
}

/// All good assignments on a fixed point set, by odometer over the good
/// digits `[1, m-2]` of every point and level.
fn for_each_good_assignment(
    params: &MuParams,
    points: &[u64],
    mut run: impl FnMut(&crate::function::PartialAssignment) -> Result<()>,
) -> Result<()> {
    let span = params.m() - 2;
    let cells = points.len() as u32 * params.k();
    let total = (span as u128).pow(cells);
    for code in 0..total {
        let mut c = code;
        let entries: Result<Vec<_>> = points
            .iter()
            .map(|&p| {
                let digits: Vec<u64> = (0..params.k())
                    .map(|_| {
                        let d = 1 + (c % span as u128) as u64;
                        c /= span as u128;
                        d
                    })
                    .collect();
                Ok((p, crate::value::RankValue::from_digits(params.m(), digits)?))
            })
            .collect();
        let alpha = crate::function::PartialAssignment::new(entries?)?;
        run(&alpha)?;
    }
    Ok(())
}

fn point_subsets(n: u64, max_size: usize) -> Vec<Vec<u64>> {
    let mut out = Vec::new();
    let mut acc = Vec::new();
    fn rec(n: u64, from: u64, left: usize, acc: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if !acc.is_empty() {
            out.push(acc.clone());
        }
        if left == 0 {
            return;
        }
        for p in from..n {
            acc.push(p);
            rec(n, p + 1, left - 1, acc, out);
            acc.pop();
        }
    }
    rec(n, 0, max_size, &mut acc, &mut out);
    out
}

fn verify_goodalpha(args: &VerifyArgs) -> Result<Vec<LemmaCheckResult>> {
    let params = require_m(args)?;
    let mut results = Vec::new();
    if args.exhaustive {
        if params.k() > 2 {
            return Err(Error::invalid(
                "exhaustive goodalpha checks need k <= 2 (the seed spaces get enumerated per \
                 assignment); drop --exhaustive for a random sweep",
            ));
        }
        for points in point_subsets(params.domain_size(), 2) {
            let uncut: Vec<u32> = {
                let cut = crate::verify::cut_indices_of_points(&points, params.k()).cut;
                (0..params.k()).filter(|j| !cut.contains(j)).collect()
            };
            for_each_good_assignment(&params, &points, |alpha| {
                for &j in &uncut {
                    results.push(check_goodalpha(&params, alpha, j)?);
                }
                Ok(())
            })?;
        }
    } else {
        let mut rng = stream(args.seed, 0);
        for _ in 0..args.trials {
            let weight = rng.random_range(1..=3u64.min(params.domain_size()));
            let alpha = random_good_assignment(&params, weight, &mut rng)?;
            let cut = cut_indices(&alpha, params.k()).cut;
            let uncut: Vec<u32> = (0..params.k()).filter(|j| !cut.contains(j)).collect();
            if let Some(&j) = uncut.first() {
                results.push(check_goodalpha(&params, &alpha, j)?);
            }
        }
    }
    Ok(results)
}

fn verify_claim_good(args: &VerifyArgs) -> Result<Vec<LemmaCheckResult>> {
    let params = require_m(args)?;
    let max_weight = params.k() as u64 / 2;
    if max_weight == 0 {
        return Err(Error::invalid("claim-good needs k >= 2 so that weight-1 assignments apply"));
    }
    let mut results = Vec::new();
    if args.exhaustive {
        if params.k() > 3 {
            return Err(Error::invalid(
                "exhaustive claim-good checks need k <= 3; drop --exhaustive for a random sweep",
            ));
        }
        // For k <= 3 the admissible weight is 1: every good singleton.
        for x in 0..params.domain_size() {
            for_each_good_assignment(&params, &[x], |alpha| {
                results.push(check_claim_good(&params, alpha)?);
                Ok(())
            })?;
        }
    } else {
        let mut rng = stream(args.seed, 0);
        for _ in 0..args.trials {
            let weight = rng.random_range(1..=max_weight);
            let alpha = random_good_assignment(&params, weight, &mut rng)?;
            results.push(check_claim_good(&params, &alpha)?);
        }
    }
    Ok(results)
}

// ---------------------------------------------------------------- grid

#[derive(Args, Debug)]
struct GridArgs {
    /// Function file whose domain is [2^(d*b)]
    #[arg(long, conflicts_with = "dist")]
    input: Option<PathBuf>,
    /// Draw the function from this distribution instead
    #[arg(long, requires = "k", requires = "m")]
    dist: Option<DistributionId>,
    #[arg(long)]
    k: Option<u32>,
    #[arg(long)]
    m: Option<u64>,
    #[arg(long)]
    ell: Option<u64>,
    /// Hypergrid dimensions
    #[arg(long)]
    d: u32,
    /// Bits per axis (side 2^b)
    #[arg(long)]
    b: u32,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    json: bool,
}

#[derive(Serialize)]
struct GridBody {
    n: u64,
    d: u32,
    b: u32,
    violating_pairs: u64,
    /// Size of a greedy maximal set of disjoint violating pairs; a lower
    /// bound on the poset distance.
    disjoint_pair_lower_bound: u64,
    /// Exact poset distance, when d*b is small enough.
    exact_distance: Option<u64>,
    line_distance: u64,
}

fn cmd_grid(args: GridArgs) -> Result<u8> {
    let f = match (&args.input, args.dist) {
        (Some(path), None) => read_function(path)?,
        (None, Some(dist)) => {
            let spec = DistSpec { dist, k: args.k.unwrap(), m: args.m.unwrap(), ell: args.ell };
            let (id, scaled) = spec.resolve()?;
            sample(id, &scaled, &mut stream(args.seed, 0))?
        }
        _ => return Err(Error::invalid("grid needs exactly one of --input or --dist")),
    };
    let order = grid_order(args.d, args.b)?;
    let n = order.ground_size()?;
    if f.n() != n {
        return Err(Error::DomainMismatch { expected: n, actual: f.n() });
    }
    let pairs = violating_pairs(&f, &order)?;
    let disjoint = disjoint_violating_pairs_greedy(&f, &order)?;
    let exact = if args.d * args.b <= EXACT_GRID_BITS {
        Some(distance_to_monotone_poset(&f, &order)?)
    } else {
        None
    };
    let body = GridBody {
        n,
        d: args.d,
        b: args.b,
        violating_pairs: pairs.len() as u64,
        disjoint_pair_lower_bound: disjoint.len() as u64,
        exact_distance: exact,
        line_distance: distance_to_monotone_line(&f),
    };
    let summary = format!(
        "n={n} grid=[2^{}]^{} violating_pairs={} disjoint_lower_bound={} exact_distance={}",
        args.b,
        args.d,
        body.violating_pairs,
        body.disjoint_pair_lower_bound,
        body.exact_distance.map_or_else(|| "(skipped: domain too large)".into(), |d| d.to_string()),
    );
    let spec = json!({
        "command": "grid",
        "input": args.input.as_ref().map(|p| p.display().to_string()),
        "dist": args.dist.map(|d| d.to_string()),
        "k": args.k,
        "m": args.m,
        "ell": args.ell,
        "d": args.d,
        "b": args.b,
        "seed": args.seed,
    });
    emit(&ReportDocument::new(spec, body), &args.out, args.json, &summary)?;
    Ok(EXIT_ACCEPT)
}

// ---------------------------------------------------------------- experiment

#[derive(Args, Debug)]
struct ExperimentArgs {
    /// Tester under test: improved | ergun | exhaustive
    #[arg(long, default_value = "improved")]
    tester: TesterId,
    /// Distribution whose draws should be accepted
    #[arg(long, default_value = "mu")]
    dist_a: DistributionId,
    /// Distribution whose draws should be rejected
    #[arg(long, default_value = "nu")]
    dist_b: DistributionId,
    #[arg(long)]
    k: u32,
    #[arg(long)]
    m: u64,
    #[arg(long)]
    ell: Option<u64>,
    #[arg(long, default_value = "1/2")]
    eps: Eps,
    #[arg(long, default_value_t = DEFAULT_ITERATION_CONSTANT)]
    c: u32,
    #[arg(long, default_value_t = 200)]
    trials: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Hard per-run query cap; exhausted runs accept by default
    #[arg(long)]
    budget: Option<u64>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    json: bool,
}

fn cmd_experiment(args: ExperimentArgs) -> Result<u8> {
    let needs_ell = args.dist_a.is_tilde() || args.dist_b.is_tilde();
    let ell = match (needs_ell, args.ell) {
        (true, Some(ell)) => ell,
        (true, None) => return Err(Error::invalid("tilde distributions need --ell")),
        (false, _) => 1,
    };
    let scaled = ScaledParams::new(ell, MuParams::new(args.k, args.m)?)?;
    args.dist_a.validate(&scaled)?;
    args.dist_b.validate(&scaled)?;

    let tester_id = args.tester;
    let (eps, c) = (args.eps, args.c);
    let tester = move |oracle: QueryOracle<'_>, seed: u64| -> Result<TesterReport> {
        run_tester(tester_id, oracle, &TesterConfig { eps, c, seed })
    };
    let config = GapConfig { trials: args.trials, base_seed: args.seed, budget: args.budget };
    let report = distinguishing_experiment(tester, args.dist_a, args.dist_b, &scaled, &config)?;

    let summary = format!(
        "tester={} {} vs {}: accept_a={:.3} accept_b={:.3} gap={:.3} mean_queries=({:.1}, {:.1})",
        args.tester,
        args.dist_a,
        args.dist_b,
        report.side_a.acceptance_rate,
        report.side_b.acceptance_rate,
        report.gap,
        report.side_a.mean_queries,
        report.side_b.mean_queries
    );
    let spec = json!({
        "command": "experiment",
        "tester": args.tester,
        "dist_a": args.dist_a.to_string(),
        "dist_b": args.dist_b.to_string(),
        "k": args.k,
        "m": args.m,
        "ell": args.ell,
        "eps": args.eps.to_string(),
        "c": args.c,
        "trials": args.trials,
        "seed": args.seed,
        "budget": args.budget,
    });
    emit(&ReportDocument::new(spec, report), &args.out, args.json, &summary)?;
    Ok(EXIT_ACCEPT)
}
