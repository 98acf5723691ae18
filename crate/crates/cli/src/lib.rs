//! The `mvkit` command line: argument parsing, dispatch to `mvkit-core`, and
//! JSON or text rendering of results.

pub mod schema;

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use mvkit_core::equations::{second_prime, verify_vanishing, EquationFamily, VanishingOptions};
use mvkit_core::field::{PrimeField, MERSENNE_61};
use mvkit_core::moments::{Partition, Scope, VarietySpec};
use mvkit_core::secant::{
    bound_expected, bound_ilp_exhaustive, certify_greedy, conjecture_sweep, dim_secant_numeric,
    greedy_ilp, hypersimplex_expected, tropical_guarantee, IlpInstance, NumericOptions, SweepKind,
    SweepRanges,
};
use mvkit_core::stats::{empirical_moments, hamburger_check, read_samples, test_statistics};
use mvkit_core::toric::{
    default_max_degree, dim_from_a_matrix, dim_toric, dim_toric_stratum, hypersimplex_degree,
    ideal_generators_up_to,
};
use mvkit_core::Error;
use serde_json::{json, Map, Value};

pub const SCHEMA_ID: &str = "mvkit/1";

/// Moment coordinates above which `dim toric` skips the A-matrix rank.
const A_MATRIX_LIMIT: u128 = 5_000;

#[derive(Debug, Parser)]
#[command(name = "mvkit", version, about = "Moment varieties of mixtures of products")]
pub struct Cli {
    /// Seed for every random choice.
    #[arg(long, global = true, env = "MVKIT_SEED", default_value_t = 42)]
    pub seed: u64,

    /// Prime for modular computations.
    #[arg(long, global = true, env = "MVKIT_PRIME", default_value_t = MERSENNE_61)]
    pub prime: u64,

    #[arg(long, global = true, value_enum, default_value_t = Output::Json)]
    pub output: Output,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Output {
    Json,
    Text,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Dimensions of moment varieties and their secants.
    #[command(subcommand)]
    Dim(DimCommand),
    /// Upper bounds for secant dimensions.
    Bound(BoundArgs),
    /// Minimal binomial generators of a toric moment ideal.
    Ideal(IdealArgs),
    /// Degrees of toric moment varieties.
    #[command(subcommand)]
    Degree(DegreeCommand),
    /// Explicit equations, optionally checked on random points.
    Equations(EquationsArgs),
    /// Empirical moments, test statistics and Hankel diagnostics from a CSV.
    Moments(MomentsArgs),
    /// Numeric secant dimensions against their predicted values.
    Sweep(SweepArgs),
}

#[derive(Debug, Subcommand)]
pub enum DimCommand {
    Toric(ScopeArgs),
    Secant(SecantArgs),
}

#[derive(Debug, Args)]
pub struct ScopeArgs {
    #[arg(long)]
    pub n: usize,
    /// Moment degree; implied by --lambda when that is given.
    #[arg(long, required_unless_present = "lambda")]
    pub d: Option<usize>,
    /// Restrict to the stratum of a partition, e.g. 321 or 3,2,1.
    #[arg(long)]
    pub lambda: Option<Partition>,
}

#[derive(Debug, Args)]
pub struct SecantArgs {
    #[command(flatten)]
    pub scope: ScopeArgs,
    #[arg(long)]
    pub r: usize,
    #[arg(long, default_value_t = 3)]
    pub trials: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BoundMethod {
    Expected,
    Ilp,
    Greedy,
    Tropical,
}

#[derive(Debug, Args)]
pub struct BoundArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub d: usize,
    #[arg(long)]
    pub r: usize,
    #[arg(long, value_enum, default_value_t = BoundMethod::Greedy)]
    pub method: BoundMethod,
    /// Attach a dual certificate to the greedy solution.
    #[arg(long)]
    pub certify: bool,
}

#[derive(Debug, Args)]
pub struct IdealArgs {
    #[command(flatten)]
    pub scope: ScopeArgs,
    /// Highest generator degree; defaults to 3 for strata.
    #[arg(long)]
    pub max_degree: Option<usize>,
    /// Also write the generator report to this file.
    #[arg(long)]
    pub json: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum DegreeCommand {
    Hypersimplex {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
    },
}

#[derive(Debug, Args)]
pub struct EquationsArgs {
    #[arg(value_parser = parse_family)]
    pub family: EquationFamily,
    /// Number of coordinates, for pentads.
    #[arg(long, default_value_t = 5)]
    pub n: usize,
    /// Evaluate at random points of the parametrization.
    #[arg(long)]
    pub verify: bool,
    /// Secant rank of the points used by --verify.
    #[arg(long)]
    pub r: Option<usize>,
    #[arg(long, default_value_t = 50)]
    pub trials: usize,
}

#[derive(Debug, Args)]
pub struct MomentsArgs {
    #[arg(long)]
    pub csv: PathBuf,
    #[arg(long, required_unless_present = "lambda", conflicts_with = "lambda")]
    pub d: Option<usize>,
    #[arg(long)]
    pub lambda: Option<Partition>,
    /// Comma-separated equation families to evaluate.
    #[arg(long, value_delimiter = ',', value_parser = parse_family)]
    pub test: Vec<EquationFamily>,
    /// Order of the per-coordinate Hankel check.
    #[arg(long)]
    pub hamburger: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Full,
    Hypersimplex,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[arg(long, value_enum)]
    pub kind: Kind,
    #[arg(long, default_value_t = 1)]
    pub n_min: usize,
    #[arg(long)]
    pub n_max: usize,
    #[arg(long, default_value_t = 1)]
    pub d_min: usize,
    #[arg(long)]
    pub d_max: usize,
    #[arg(long, default_value_t = 1)]
    pub r_min: usize,
    #[arg(long)]
    pub r_max: usize,
    #[arg(long, default_value_t = 3)]
    pub trials: usize,
}

fn parse_family(s: &str) -> Result<EquationFamily, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Dim(DimCommand::Toric(_)) => "dim toric",
            Command::Dim(DimCommand::Secant(_)) => "dim secant",
            Command::Bound(_) => "bound",
            Command::Ideal(_) => "ideal",
            Command::Degree(DegreeCommand::Hypersimplex { .. }) => "degree hypersimplex",
            Command::Equations(_) => "equations",
            Command::Moments(_) => "moments",
            Command::Sweep(_) => "sweep",
        }
    }
}

/// Exit status for a failed command: 3 when an internal invariant broke,
/// 2 for bad input.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::CertificateFailure(_) | Error::MatchingFailure | Error::Overflow(_) => 3,
        _ => 2,
    }
}

impl ScopeArgs {
    fn spec(&self) -> Result<VarietySpec, Error> {
        let spec = match (&self.lambda, self.d) {
            (Some(lam), d) => {
                if let Some(d) = d.filter(|&d| d != lam.sum() as usize) {
                    return Err(Error::PreconditionFailed(format!(
                        "--d {d} disagrees with --lambda {lam} of degree {}",
                        lam.sum()
                    )));
                }
                VarietySpec::stratum(self.n, lam.clone())
            }
            (None, Some(d)) => VarietySpec::full(self.n, d),
            (None, None) => return Err(Error::PreconditionFailed("--d or --lambda is required".into())),
        };
        spec.validate()?;
        Ok(spec)
    }
}

fn scope_json(scope: &Scope) -> Value {
    match scope {
        Scope::Full(d) => json!({ "d": d }),
        Scope::Stratum(lam) => json!({ "d": lam.sum(), "lambda": lam.parts() }),
    }
}

/// Runs one command and returns its `result` document.
pub fn execute(cli: &Cli) -> Result<Value, Error> {
    PrimeField::new(cli.prime)?;
    let numeric = |trials| NumericOptions {
        trials,
        prime: cli.prime,
        seed: cli.seed,
    };
    match &cli.command {
        Command::Dim(DimCommand::Toric(args)) => {
            let spec = args.spec()?;
            let dim = match &spec.scope {
                Scope::Full(d) => dim_toric(spec.n, *d),
                Scope::Stratum(lam) => dim_toric_stratum(spec.n, lam)?,
            };
            let rank_dim = if spec.coordinate_count()? <= A_MATRIX_LIMIT {
                Some(dim_from_a_matrix(&spec)?)
            } else {
                None
            };
            if rank_dim.is_some_and(|r| r as u128 != dim) {
                return Err(Error::PreconditionFailed(format!(
                    "closed form {dim} disagrees with A-matrix rank {rank_dim:?}"
                )));
            }
            Ok(json!({
                "variety": spec.label(),
                "scope": scope_json(&spec.scope),
                "n": spec.n,
                "dim": dim as u64,
                "dim_a_matrix": rank_dim,
            }))
        }
        Command::Dim(DimCommand::Secant(args)) => {
            let spec = args.scope.spec()?.with_rank(args.r);
            let s = dim_secant_numeric(&spec, &numeric(args.trials))?;
            Ok(json!({
                "variety": s.variety,
                "scope": scope_json(&spec.scope),
                "n": spec.n,
                "r": spec.r,
                "dim": s.dim,
                "ranks": s.ranks,
                "primes": s.primes,
                "agree": s.agree,
            }))
        }
        Command::Bound(args) => bound(args),
        Command::Ideal(args) => {
            let spec = args.scope.spec()?;
            let max_degree = args
                .max_degree
                .or_else(|| default_max_degree(&spec))
                .ok_or_else(|| Error::PreconditionFailed("--max-degree is required for full moment varieties".into()))?;
            let report = ideal_generators_up_to(&spec, max_degree)?;
            let generators: Vec<String> = report.generators.iter().map(ToString::to_string).collect();
            let counts: Map<String, Value> = report
                .counts
                .iter()
                .map(|(d, c)| (d.to_string(), json!(c)))
                .collect();
            let result = json!({
                "variety": report.variety,
                "scope": scope_json(&spec.scope),
                "n": spec.n,
                "max_degree": report.max_degree,
                "counts": counts,
                "total": generators.len(),
                "generators": generators,
            });
            if let Some(path) = &args.json {
                let text = serde_json::to_string_pretty(&result).expect("serializable");
                std::fs::write(path, text + "\n")?;
            }
            Ok(result)
        }
        Command::Degree(DegreeCommand::Hypersimplex { n, d }) => {
            let degree = hypersimplex_degree(*n, *d)?;
            let spec = VarietySpec::stratum(*n, Partition::new(vec![1; *d]));
            Ok(json!({
                "variety": spec.label(),
                "n": n,
                "d": d,
                "degree": degree.to_string(),
            }))
        }
        Command::Equations(args) => equations(args, cli),
        Command::Moments(args) => moments(args),
        Command::Sweep(args) => {
            let kind = match args.kind {
                Kind::Full => SweepKind::FullDegree,
                Kind::Hypersimplex => SweepKind::Hypersimplex,
            };
            let ranges = SweepRanges {
                n: args.n_min..=args.n_max,
                d: args.d_min..=args.d_max,
                r: args.r_min..=args.r_max,
            };
            let rows = conjecture_sweep(kind, &ranges, &numeric(args.trials))?;
            let mismatches = rows.iter().filter(|r| !r.matches).count();
            Ok(json!({
                "kind": kind,
                "rows": rows,
                "mismatches": mismatches,
            }))
        }
    }
}

fn bound(args: &BoundArgs) -> Result<Value, Error> {
    let (n, d, r) = (args.n, args.d, args.r);
    let mut out = json!({ "n": n, "d": d, "r": r });
    let fields = out.as_object_mut().expect("object");
    match args.method {
        BoundMethod::Expected => {
            fields.insert("method".into(), json!("expected"));
            fields.insert("bound".into(), json!(bound_expected(n, d, r) as i64));
        }
        BoundMethod::Ilp | BoundMethod::Greedy => {
            let sol = if args.method == BoundMethod::Ilp {
                bound_ilp_exhaustive(n, d, r)?
            } else {
                greedy_ilp(n, d, r)?
            };
            let method = if args.method == BoundMethod::Ilp { "ilp" } else { "greedy" };
            fields.insert("method".into(), json!(method));
            fields.insert("bound".into(), json!(sol.value as i64));
            fields.insert("c".into(), json!(sol.c.iter().map(|&x| x as i64).collect::<Vec<_>>()));
            if args.certify {
                let inst = IlpInstance::new(n, d, r)?;
                let cert = certify_greedy(&inst, &sol.c)?;
                fields.insert(
                    "certificate".into(),
                    json!({
                        "y": cert.y,
                        "z": cert.z,
                        "saturated_set": cert.saturated_set,
                        "primal_objective": cert.primal_objective as i64,
                        "dual_objective": cert.dual_objective as i64,
                    }),
                );
            }
        }
        BoundMethod::Tropical => {
            fields.insert("method".into(), json!("tropical"));
            fields.insert("guarantee".into(), json!(tropical_guarantee(n, d, r)?));
            fields.insert("bound".into(), json!(hypersimplex_expected(n, d, r) as i64));
        }
    }
    Ok(out)
}

fn equations(args: &EquationsArgs, cli: &Cli) -> Result<Value, Error> {
    let mut spec = args.family.variety(args.n);
    if let Some(r) = args.r {
        spec = spec.with_rank(r);
    }
    let second = if cli.prime == MERSENNE_61 { second_prime() } else { MERSENNE_61 };
    let opts = VanishingOptions {
        trials: args.trials,
        primes: vec![cli.prime, second],
        seed: cli.seed,
    };
    let mut polys = Vec::new();
    let mut all_vanish = true;
    for (name, p) in args.family.polynomials(args.n)? {
        let mut entry = json!({
            "name": name,
            "degree": p.degree().unwrap_or(0),
            "terms": p.len(),
            "polynomial": p.to_string(),
        });
        if args.verify {
            let verdict = verify_vanishing(&p, &spec, &opts)?;
            all_vanish &= verdict.vanishes();
            entry["verdict"] = serde_json::to_value(&verdict).expect("serializable");
        }
        polys.push(entry);
    }
    let mut out = json!({
        "family": args.family.name(),
        "variety": spec.label(),
        "count": polys.len(),
        "polynomials": polys,
    });
    if args.verify {
        out["all_vanish"] = json!(all_vanish);
        out["trials"] = json!(opts.trials);
        out["primes"] = json!(opts.primes);
    }
    Ok(out)
}

fn moments(args: &MomentsArgs) -> Result<Value, Error> {
    let data = read_samples(&args.csv)?;
    let scope = match (&args.lambda, args.d) {
        (Some(lam), _) => Scope::Stratum(lam.clone()),
        (None, Some(d)) => Scope::Full(d),
        (None, None) => return Err(Error::PreconditionFailed("--d or --lambda is required".into())),
    };
    let est = empirical_moments(&data, scope)?;
    let moments: Map<String, Value> = est
        .values
        .iter()
        .map(|(k, v)| (k.to_string(), json!(v)))
        .collect();
    let statistics = test_statistics(&est, &args.test)?;
    let mut out = json!({
        "samples": data.t,
        "n": data.n,
        "scope": scope_json(&est.scope),
        "moments": moments,
        "statistics": statistics,
    });
    if let Some(q) = args.hamburger {
        out["hamburger"] = serde_json::to_value(hamburger_check(&data, q)?).expect("serializable");
    }
    Ok(out)
}

pub fn envelope(command: &str, result: Value) -> Value {
    json!({ "schema": SCHEMA_ID, "command": command, "result": result })
}

pub fn error_envelope(command: &str, e: &Error) -> Value {
    json!({
        "schema": SCHEMA_ID,
        "command": command,
        "error": { "code": exit_code(e), "message": e.to_string() },
    })
}

/// Plain `key: value` lines, nested keys joined with dots.
pub fn render_text(v: &Value) -> String {
    let mut out = String::new();
    flatten(v, "", &mut out);
    out
}

fn flatten(v: &Value, prefix: &str, out: &mut String) {
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                flatten(x, &key, out);
            }
        }
        Value::Array(xs) if xs.iter().any(|x| x.is_object() || x.is_array()) => {
            for (i, x) in xs.iter().enumerate() {
                flatten(x, &format!("{prefix}[{i}]"), out);
            }
        }
        Value::String(s) => writeln!(out, "{prefix}: {s}").expect("string write"),
        _ => writeln!(out, "{prefix}: {v}").expect("string write"),
    }
}

/// Renders the outcome of a command and returns the process exit code.
pub fn run(cli: &Cli) -> (String, i32) {
    let name = cli.command.name();
    let (doc, code) = match execute(cli) {
        Ok(result) => (envelope(name, result), 0),
        Err(e) => (error_envelope(name, &e), exit_code(&e)),
    };
    let text = match cli.output {
        Output::Json => serde_json::to_string_pretty(&doc).expect("serializable") + "\n",
        Output::Text => render_text(&doc),
    };
    (text, code)
}
