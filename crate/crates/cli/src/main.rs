//! Command-line frontend: spectrum and order queries for symmetric
//! functions, exhaustive order-bound verification, prime and certificate
//! queries, stride-reduction checks, moment comparison, and the junta
//! learner on planted or file-based examples. Human-readable text goes to
//! stdout by default; `--format json` (and `csv` where noted) emit
//! machine-readable data. Logs and diagnostics go to stderr.

use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use symjunta_core::learner::{
    full_cube_examples, learn_from_examples, learn_symmetric_junta, plant_instance, Example,
    PlantedOracle,
};
use symjunta_core::moments::{power_moment_report, product_moment_report, MomentMatchReport};
use symjunta_core::numtheory::{
    lucas_row_check, primes_in_ap, primes_in_interval, two_periodicity_certificate, ApQuery,
};
use symjunta_core::structure::{
    enumerate_and_verify_range, shard_range, VerificationReport, DEFAULT_ENUM_CAP,
};
use symjunta_core::{boolfn::SymmetricFunction, Error as CoreError};

/// Environment variable overriding the maximum arity accepted by `verify`.
const ENUM_CAP_VAR: &str = "SYMJUNTA_ENUM_CAP";

#[derive(Parser)]
#[command(name = "symjunta", version, about = "Structure and learning of symmetric juntas")]
struct Cli {
    /// Output encoding for the primary result on stdout.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Level spectrum and minimum nonzero order of a symmetric function
    /// given as its weight-value bit string f0 f1 ... fk.
    MinOrder { function: String },
    /// Enumerate all symmetric functions of arity k and check each
    /// minimum order against a bound; exits 1 if any function violates it.
    Verify {
        #[arg(long)]
        k: usize,
        /// Bound on the minimum order: `Ak/B` (exact rational in k),
        /// `Ck/ln(k)`, or a plain numeric constant.
        #[arg(long, default_value = "2k/3")]
        bound: String,
        /// Split the enumeration into this many shards.
        #[arg(long)]
        shards: Option<u64>,
        /// Which shard to run (0-based; requires --shards).
        #[arg(long)]
        shard_index: Option<u64>,
    },
    /// Learn a symmetric junta, either from a planted instance (--core,
    /// --seed) or from a labeled example file (--examples).
    Learn {
        /// Ambient cube dimension.
        #[arg(long)]
        n: usize,
        /// Upper bound on the junta arity.
        #[arg(long)]
        k_max: usize,
        /// Failure budget for the sampled learner.
        #[arg(long, default_value_t = 0.05)]
        delta: f64,
        /// Plant this core (weight-value bit string) at random positions.
        #[arg(long)]
        core: Option<String>,
        /// Seed for planting and example drawing.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Learn from this file of `point label` lines instead of sampling;
        /// points are n-character 0/1 strings, leftmost = coordinate 0.
        #[arg(long)]
        examples: Option<PathBuf>,
    },
    /// Primes in an interval, optionally restricted to an arithmetic
    /// progression.
    Primes {
        #[arg(long)]
        lo: u64,
        #[arg(long)]
        hi: u64,
        #[arg(long = "mod")]
        modulus: Option<u64>,
        #[arg(long)]
        residue: Option<u64>,
    },
    /// Prime-pair periodicity certificate for difference polynomials of
    /// width at most N over positions 0..=k.
    Certificate {
        #[arg(long = "n")]
        n_param: usize,
        #[arg(long)]
        k: usize,
    },
    /// Check the exact divisibility pattern of Pascal row m*r modulo r;
    /// exits 1 when the pattern fails (composite strides).
    Lucas {
        #[arg(long)]
        m: u64,
        #[arg(long)]
        r: u64,
    },
    /// Compare moments of the positive points of a symmetric function
    /// against the uniform cube (product moments by default).
    Moments {
        function: String,
        /// Compare power moments of the weight instead.
        #[arg(long)]
        power: bool,
    },
}

#[derive(Serialize)]
struct LevelsOut {
    k: usize,
    scale: String,
    levels: Vec<String>,
}

#[derive(Serialize)]
struct VerifyOut {
    k: usize,
    max_min_order: Option<usize>,
    histogram: Vec<u64>,
    argmax_functions: Vec<String>,
    counterexamples: Vec<String>,
}

#[derive(Serialize)]
struct LearnOut {
    class: String,
    relevant: Vec<usize>,
    core: String,
    examples_used: u64,
}

#[derive(Serialize)]
struct CertificateOut {
    #[serde(rename = "N")]
    n_param: usize,
    k: usize,
    q: u64,
    r: u64,
    #[serde(rename = "M")]
    gap: u64,
    t: u64,
    s: u64,
}

#[derive(Serialize)]
struct MismatchOut {
    s: usize,
    nu: String,
    mu: String,
}

#[derive(Serialize)]
struct MomentsOut {
    r: usize,
    matched_up_to: usize,
    first_mismatch: Option<MismatchOut>,
}

#[derive(Serialize)]
struct LucasOut {
    m: u64,
    r: u64,
    ok: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}

/// 2 for usage problems, 3 when a resource cap stops the run, 4 for
/// diagnostic outcomes (certificate unavailable, learner gave up).
fn exit_code_for(e: &anyhow::Error) -> u8 {
    match e.downcast_ref::<CoreError>() {
        Some(CoreError::ResourceCap { .. }) => 3,
        Some(
            CoreError::CertificateUnavailable { .. }
            | CoreError::LearnDiagnostic { .. }
            | CoreError::ClassStarved { .. }
            | CoreError::EmptyMeasure
            | CoreError::FitInconsistent { .. },
        ) => 4,
        _ => 2,
    }
}

fn run(cli: Cli) -> anyhow::Result<ExitCode> {
    match cli.command {
        Command::MinOrder { function } => min_order(&function, cli.format),
        Command::Verify { k, bound, shards, shard_index } => {
            verify(k, &bound, shards, shard_index, cli.format)
        }
        Command::Learn { n, k_max, delta, core, seed, examples } => {
            learn(n, k_max, delta, core, seed, examples, cli.format)
        }
        Command::Primes { lo, hi, modulus, residue } => primes(lo, hi, modulus, residue, cli.format),
        Command::Certificate { n_param, k } => certificate(n_param, k, cli.format),
        Command::Lucas { m, r } => lucas(m, r, cli.format),
        Command::Moments { function, power } => moments(&function, power, cli.format),
    }
}

fn parse_function(s: &str) -> anyhow::Result<SymmetricFunction> {
    s.parse::<SymmetricFunction>()
        .map_err(|e| anyhow!(e).context(format!("invalid weight-value string {s:?}")))
}

fn min_order(function: &str, format: Format) -> anyhow::Result<ExitCode> {
    let f = parse_function(function)?;
    let levels = f.level_spectrum();
    let out = LevelsOut {
        k: f.k(),
        scale: (num_bigint::BigInt::from(1) << f.k()).to_string(),
        levels: levels.iter().map(|c| c.to_string()).collect(),
    };
    match format {
        Format::Json => println!("{}", serde_json::to_string(&out)?),
        _ => {
            match f.min_nonzero_order() {
                Some(order) => println!("min order: {order}"),
                None => println!("min order: none (constant function)"),
            }
            println!("scale: {}", out.scale);
            for (ell, c) in out.levels.iter().enumerate() {
                println!("level {ell}: {c}");
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

/// A bound on the minimum order as a function of k.
enum Bound {
    /// `num·k / den`, compared exactly in integers.
    Rational { num: u64, den: u64 },
    /// `c·k / ln(k)`, compared in floating point.
    OverLog { c: f64 },
    /// A plain constant.
    Const(f64),
}

impl Bound {
    fn parse(s: &str) -> anyhow::Result<Bound> {
        let s = s.trim().replace(' ', "");
        if let Some(prefix) = s.strip_suffix("k/ln(k)") {
            let prefix = prefix.strip_suffix('*').unwrap_or(prefix);
            let c = if prefix.is_empty() { 1.0 } else { prefix.parse::<f64>()? };
            if !(c.is_finite() && c > 0.0) {
                bail!("bound coefficient must be positive and finite");
            }
            return Ok(Bound::OverLog { c });
        }
        if let Some((num, den)) = s.split_once("k/") {
            return Ok(Bound::Rational {
                num: num.parse().context("numerator of rational bound")?,
                den: den.parse().context("denominator of rational bound")?,
            });
        }
        Ok(Bound::Const(s.parse::<f64>().context("numeric bound")?))
    }

    fn admits(&self, order: usize, k: usize) -> bool {
        match *self {
            Bound::Rational { num, den } => (order as u64) * den <= num * (k as u64),
            Bound::OverLog { c } => {
                if k < 2 {
                    true
                } else {
                    (order as f64) <= c * (k as f64) / (k as f64).ln()
                }
            }
            Bound::Const(x) => (order as f64) <= x,
        }
    }
}

fn enum_cap() -> anyhow::Result<usize> {
    match std::env::var(ENUM_CAP_VAR) {
        Ok(v) => v
            .parse::<usize>()
            .with_context(|| format!("{ENUM_CAP_VAR} must be a nonnegative integer, got {v:?}")),
        Err(_) => Ok(DEFAULT_ENUM_CAP),
    }
}

fn verify(
    k: usize,
    bound_text: &str,
    shards: Option<u64>,
    shard_index: Option<u64>,
    format: Format,
) -> anyhow::Result<ExitCode> {
    let bound = Bound::parse(bound_text)?;
    let cap = enum_cap()?;
    if !(1..=62).contains(&k) {
        bail!("arity must lie in 1..=62");
    }
    let total = 1u64 << (k + 1);
    let (start, end) = match (shards, shard_index) {
        (None, None) => (0, total),
        (Some(s), Some(i)) => shard_range(total, s, i).map_err(anyhow::Error::from)?,
        _ => bail!("--shards and --shard-index must be given together"),
    };
    eprintln!(
        "verifying {} symmetric functions of arity {k} against bound {bound_text:?}",
        end - start
    );
    if format == Format::Csv {
        if k > cap {
            return Err(anyhow::Error::from(CoreError::ResourceCap {
                what: "enumeration arity",
                requested: k as u64,
                cap: cap as u64,
            }));
        }
        println!("function,min_order,exceptional");
        let mut violation = false;
        for mask in start..end {
            let f = SymmetricFunction::from_mask(k, mask)?;
            let order = f.min_nonzero_order();
            let order_text = order.map(|o| o.to_string()).unwrap_or_default();
            println!("{f},{order_text},{}", f.is_exceptional());
            if !f.is_exceptional() {
                if let Some(o) = order {
                    violation |= !bound.admits(o, k);
                }
            }
        }
        return Ok(if violation { ExitCode::from(1) } else { ExitCode::SUCCESS });
    }
    let report: VerificationReport =
        enumerate_and_verify_range(k, cap, start, end, |order| bound.admits(order, k))
            .map_err(anyhow::Error::from)?;
    let out = VerifyOut {
        k,
        max_min_order: report.max_min_order,
        histogram: report.histogram.clone(),
        argmax_functions: report.argmax.iter().map(|f| f.to_string()).collect(),
        counterexamples: report.counterexamples.iter().map(|f| f.to_string()).collect(),
    };
    match format {
        Format::Json => println!("{}", serde_json::to_string(&out)?),
        _ => {
            println!("arity: {k}");
            println!("examined: {}", report.examined);
            println!("exceptional: {}", report.exceptional);
            match report.max_min_order {
                Some(max) => println!("max min-order: {max}"),
                None => println!("max min-order: none"),
            }
            println!(
                "histogram: {}",
                report
                    .histogram
                    .iter()
                    .enumerate()
                    .skip(1)
                    .filter(|(_, &c)| c > 0)
                    .map(|(o, c)| format!("{o}:{c}"))
                    .collect::<Vec<_>>()
                    .join(" ")
            );
            println!("argmax functions (first {}): {}", out.argmax_functions.len(), out.argmax_functions.join(" "));
            println!("counterexamples: {}", report.counterexample_count);
            for f in &out.counterexamples {
                println!("counterexample: {f}");
            }
        }
    }
    Ok(if report.counterexample_count > 0 {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    })
}

fn parse_examples(text: &str, n: usize) -> anyhow::Result<Vec<Example>> {
    let mut examples = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (point, label) = line
            .split_once(char::is_whitespace)
            .ok_or_else(|| anyhow!("line {}: expected `point label`", lineno + 1))?;
        if point.len() != n {
            bail!("line {}: point has {} bits, expected {n}", lineno + 1, point.len());
        }
        let mut x = 0u64;
        for (i, ch) in point.chars().enumerate() {
            match ch {
                '0' => {}
                '1' => x |= 1 << i,
                _ => bail!("line {}: invalid bit {ch:?}", lineno + 1),
            }
        }
        let label = match label.trim() {
            "0" => false,
            "1" => true,
            other => bail!("line {}: invalid label {other:?}", lineno + 1),
        };
        examples.push(Example { x, label });
    }
    if examples.is_empty() {
        bail!("no examples in input");
    }
    Ok(examples)
}

fn learn(
    n: usize,
    k_max: usize,
    delta: f64,
    core: Option<String>,
    seed: u64,
    examples_path: Option<PathBuf>,
    format: Format,
) -> anyhow::Result<ExitCode> {
    let result = match (core, examples_path) {
        (Some(core_text), None) => {
            let core = parse_function(&core_text)?;
            let instance = plant_instance(n, core, seed).map_err(anyhow::Error::from)?;
            eprintln!("planted positions: {:?}", instance.relevant());
            if n <= 16 {
                // Small ambients: learn from the full truth table, exactly.
                let cube = full_cube_examples(&instance);
                learn_from_examples(&cube, n, k_max).map_err(anyhow::Error::from)?
            } else {
                let mut oracle = PlantedOracle::new(instance, seed);
                learn_symmetric_junta(&mut oracle, k_max, delta).map_err(anyhow::Error::from)?
            }
        }
        (None, Some(path)) => {
            let mut text = String::new();
            std::fs::File::open(&path)
                .and_then(|mut f| f.read_to_string(&mut text))
                .with_context(|| format!("reading {}", path.display()))?;
            let examples = parse_examples(&text, n)?;
            learn_from_examples(&examples, n, k_max).map_err(anyhow::Error::from)?
        }
        _ => bail!("exactly one of --core or --examples is required"),
    };
    let out = LearnOut {
        class: result.class.as_str().to_string(),
        relevant: result.relevant.clone(),
        core: result.core.to_string(),
        examples_used: result.examples_used,
    };
    match format {
        Format::Json => println!("{}", serde_json::to_string(&out)?),
        _ => {
            println!("class: {}", out.class);
            println!(
                "relevant: {}",
                if out.relevant.is_empty() {
                    "(none)".to_string()
                } else {
                    out.relevant.iter().map(usize::to_string).collect::<Vec<_>>().join(" ")
                }
            );
            println!("core: {}", out.core);
            println!("examples used: {}", out.examples_used);
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn primes(
    lo: u64,
    hi: u64,
    modulus: Option<u64>,
    residue: Option<u64>,
    format: Format,
) -> anyhow::Result<ExitCode> {
    let list = match (modulus, residue) {
        (None, None) => primes_in_interval(lo, hi).map_err(anyhow::Error::from)?,
        (Some(m), Some(a)) => primes_in_ap(ApQuery { modulus: m, residue: a }, lo, hi)
            .map_err(anyhow::Error::from)?,
        _ => bail!("--mod and --residue must be given together"),
    };
    match format {
        Format::Json => println!("{}", serde_json::to_string(&list)?),
        _ => {
            for p in &list {
                println!("{p}");
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn certificate(n_param: usize, k: usize, format: Format) -> anyhow::Result<ExitCode> {
    let cert = two_periodicity_certificate(n_param, k).map_err(anyhow::Error::from)?;
    let out = CertificateOut {
        n_param: cert.n_param,
        k: cert.k,
        q: cert.q,
        r: cert.r,
        gap: cert.gap,
        t: cert.t,
        s: cert.s,
    };
    match format {
        Format::Json => println!("{}", serde_json::to_string(&out)?),
        _ => {
            println!("width bound N: {}", out.n_param);
            println!("positions: 0..={}", out.k);
            println!("closest prime pair: {} {}", out.q, out.r);
            println!("gap M: {}", out.gap);
            println!("period primes: t={} s={}", out.t, out.s);
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn lucas(m: u64, r: u64, format: Format) -> anyhow::Result<ExitCode> {
    let ok = lucas_row_check(m, r).map_err(anyhow::Error::from)?;
    match format {
        Format::Json => println!("{}", serde_json::to_string(&LucasOut { m, r, ok })?),
        _ => println!(
            "row {} mod {r}: {}",
            m * r,
            if ok { "reduces exactly" } else { "pattern violated" }
        ),
    }
    Ok(if ok { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn moments(function: &str, power: bool, format: Format) -> anyhow::Result<ExitCode> {
    let f = parse_function(function)?;
    let report: MomentMatchReport = if power {
        power_moment_report(&f).map_err(anyhow::Error::from)?
    } else {
        product_moment_report(&f).map_err(anyhow::Error::from)?
    };
    let out = MomentsOut {
        r: report.r,
        matched_up_to: report.matched_up_to,
        first_mismatch: report.first_mismatch.map(|m| MismatchOut {
            s: m.s,
            nu: m.nu.to_string(),
            mu: m.mu.to_string(),
        }),
    };
    match format {
        Format::Json => println!("{}", serde_json::to_string(&out)?),
        _ => {
            println!("null order: {}", out.r);
            println!("moments matched up to: {}", out.matched_up_to);
            match &out.first_mismatch {
                Some(m) => println!("first mismatch at order {}: source {} vs uniform {}", m.s, m.nu, m.mu),
                None => println!("no mismatch up to the arity"),
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}
