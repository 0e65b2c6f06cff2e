use std::collections::BTreeMap;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use pfq::decomp::pf_decompose_elimination;
use pfq::rpp::{gf_rpp, gf_rpp_bruteforce, Profile, StrictPartition};
use pfq::scalar::{format_rational, parse_rational};
use pfq::sequences::SequenceKind;
use pfq::verify::{verify, IdentityId, Summary, VerificationReport, VerifyParams};
use pfq::{Error, MatrixJson, PfAlgorithm, RatSkewMatrix, Rational};

#[derive(Parser)]
#[command(name = "pfq", version, about = "Exact verification of Pfaffian and q-series identities")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Verify an identity at seeded random points.
    Verify(VerifyArgs),
    /// Pfaffian of a skew-symmetric matrix read from a JSON file.
    Pf {
        #[arg(long)]
        file: PathBuf,
        #[arg(long, default_value = "elimination")]
        algorithm: String,
        #[arg(long)]
        json: bool,
    },
    /// Pfaffian decomposition `A = V^T T V` of a matrix JSON file.
    Decompose {
        #[arg(long)]
        file: PathBuf,
    },
    /// Shifted plane partitions.
    Rpp {
        #[command(subcommand)]
        command: RppCommand,
    },
    /// First terms of a moment sequence.
    Seq {
        kind: String,
        #[arg(long, default_value_t = 8)]
        n: i64,
        #[command(flatten)]
        scalars: ScalarArgs,
        #[arg(long)]
        json: bool,
    },
    /// List identity ids.
    List {
        #[arg(long)]
        json: bool,
    },
}

#[derive(Subcommand)]
enum RppCommand {
    /// Truncated generating function for one shape and profile.
    Gf {
        #[arg(long)]
        shape: String,
        #[arg(long)]
        profile: String,
        #[arg(long, default_value_t = 8)]
        trunc: usize,
        #[arg(long, value_enum, default_value_t = Method::Det)]
        method: Method,
        #[arg(long)]
        json: bool,
    },
    /// Verify one of the shifted-RPP theorems coefficientwise.
    Verify(Box<VerifyArgs>),
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Brute,
    Det,
}

#[derive(Args, Clone)]
struct ScalarArgs {
    #[arg(long, value_parser = rational)]
    a: Option<Rational>,
    #[arg(long, value_parser = rational)]
    b: Option<Rational>,
    #[arg(long, value_parser = rational)]
    q: Option<Rational>,
    #[arg(long, value_parser = rational)]
    alpha: Option<Rational>,
    #[arg(long, value_parser = rational)]
    beta: Option<Rational>,
}

#[derive(Args, Clone)]
struct VerifyArgs {
    #[arg(long)]
    id: String,
    #[arg(long, allow_hyphen_values = true)]
    n: Option<i64>,
    #[arg(long)]
    max_n: Option<i64>,
    #[arg(long, allow_hyphen_values = true)]
    r: Option<i64>,
    #[arg(long)]
    m: Option<i64>,
    #[arg(long)]
    l: Option<i64>,
    #[arg(long)]
    i: Option<i64>,
    #[arg(long)]
    j: Option<i64>,
    #[arg(long)]
    s: Option<i64>,
    #[arg(long)]
    trunc: Option<usize>,
    #[arg(long, default_value_t = 5)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[command(flatten)]
    scalars: ScalarArgs,
    #[arg(long)]
    json: bool,
    /// Include wall-clock times (makes JSON output run-dependent).
    #[arg(long)]
    timing: bool,
}

fn rational(s: &str) -> Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

#[derive(Serialize)]
struct RunReport<'a> {
    config: BTreeMap<&'static str, String>,
    reports: &'a [VerificationReport],
    summary: Summary,
    #[serde(skip_serializing_if = "Option::is_none")]
    wall_ms: Option<u64>,
}

/// Failure with an exit code: 1 for a computation that fails, 2 for bad input.
struct Failure(u8, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Pole(_) | Error::NotAUnit | Error::ZeroDenominator | Error::Pivot { .. } => 1,
            _ => 2,
        };
        Failure(code, e.to_string())
    }
}

fn config(v: &VerifyArgs) -> BTreeMap<&'static str, String> {
    let mut c = BTreeMap::new();
    c.insert("id", v.id.clone());
    c.insert("seed", v.seed.to_string());
    c.insert("trials", v.trials.to_string());
    let ints = [
        ("n", v.n),
        ("max_n", v.max_n),
        ("r", v.r),
        ("m", v.m),
        ("l", v.l),
        ("i", v.i),
        ("j", v.j),
        ("s", v.s),
        ("trunc", v.trunc.map(|k| k as i64)),
    ];
    for (k, x) in ints {
        if let Some(x) = x {
            c.insert(k, x.to_string());
        }
    }
    let s = &v.scalars;
    for (k, x) in [("a", &s.a), ("b", &s.b), ("q", &s.q), ("alpha", &s.alpha), ("beta", &s.beta)] {
        if let Some(x) = x {
            c.insert(k, format_rational(x));
        }
    }
    c
}

fn to_json<T: Serialize>(v: &T) -> Result<String, Failure> {
    serde_json::to_string_pretty(v).map_err(|e| Failure(2, e.to_string()))
}

fn run_verify(v: VerifyArgs, rpp_only: bool) -> Result<u8, Failure> {
    let id: IdentityId = v.id.parse()?;
    if rpp_only && !v.id.starts_with("rpp-") {
        return Err(Failure(2, format!("{id} is not a shifted-RPP identity")));
    }
    let s = v.scalars.clone();
    let params = VerifyParams {
        n: v.n,
        max_n: v.max_n,
        r: v.r,
        m: v.m,
        l: v.l,
        i: v.i,
        j: v.j,
        s: v.s,
        order: v.trunc,
        a: s.a,
        b: s.b,
        q: s.q,
        alpha: s.alpha,
        beta: s.beta,
        trials: v.trials,
        seed: v.seed,
        timing: v.timing,
    };
    let start = Instant::now();
    let reports = verify(id, &params)?;
    let summary = Summary::of(&reports);
    if v.json {
        let run = RunReport {
            config: config(&v),
            reports: &reports,
            summary,
            wall_ms: v.timing.then(|| start.elapsed().as_millis() as u64),
        };
        println!("{}", to_json(&run)?);
    } else {
        for r in &reports {
            let params: Vec<String> = r.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
            let mut line = format!("{} #{} {} {}", r.id, r.trial, r.outcome, params.join(" "));
            if r.outcome != pfq::verify::Outcome::Pass {
                if let (Some(l), Some(rh)) = (&r.lhs, &r.rhs) {
                    line.push_str(&format!(" lhs={l} rhs={rh}"));
                }
            }
            if let Some(d) = &r.detail {
                line.push_str(&format!(" ({d})"));
            }
            if let Some(ms) = r.elapsed_ms {
                line.push_str(&format!(" {ms}ms"));
            }
            println!("{line}");
        }
        println!(
            "total {} passed {} failed {} skipped {}",
            summary.total, summary.passed, summary.failed, summary.skipped
        );
        if v.timing {
            println!("wall {}ms", start.elapsed().as_millis());
        }
    }
    Ok(u8::from(summary.failed > 0))
}

fn read_matrix(file: &PathBuf) -> Result<RatSkewMatrix, Failure> {
    let text = fs::read_to_string(file).map_err(|e| Failure(2, format!("{}: {e}", file.display())))?;
    let j: MatrixJson = serde_json::from_str(&text).map_err(|e| Failure(2, format!("{}: {e}", file.display())))?;
    Ok(RatSkewMatrix::from_json(&j)?)
}

fn parse_list(s: &str) -> Result<Vec<usize>, Failure> {
    s.split(',')
        .map(|x| x.trim().parse::<usize>().map_err(|e| Failure(2, format!("bad list {s:?}: {e}"))))
        .collect()
}

fn sequence(kind: &str, s: &ScalarArgs) -> Result<SequenceKind<Rational>, Failure> {
    let need = |x: &Option<Rational>, name: &str| {
        x.clone().ok_or_else(|| Failure(2, format!("{kind} needs --{name}")))
    };
    Ok(match kind {
        "little-q-jacobi" => SequenceKind::LittleQJacobi { a: need(&s.a, "a")?, b: need(&s.b, "b")?, q: need(&s.q, "q")? },
        "jacobi" => SequenceKind::Jacobi { alpha: need(&s.alpha, "alpha")?, beta: need(&s.beta, "beta")? },
        "catalan" => SequenceKind::Catalan,
        "central-binomial" => SequenceKind::CentralBinomial,
        "laguerre" => SequenceKind::LaguerreMoment { alpha: need(&s.alpha, "alpha")? },
        "hermite" => SequenceKind::HermiteMoment,
        "motzkin" => SequenceKind::Motzkin,
        "delannoy" => SequenceKind::CentralDelannoy,
        "schroeder" => SequenceKind::Schroeder,
        "narayana" => SequenceKind::NarayanaPoly { a: need(&s.a, "a")? },
        "al-salam-carlitz" => SequenceKind::AlSalamCarlitz { a: need(&s.a, "a")?, q: need(&s.q, "q")? },
        "three-halves-catalan" => SequenceKind::ThreeHalvesCatalan,
        _ => {
            return Err(Failure(
                2,
                format!(
                    "unknown sequence {kind:?}; valid kinds: little-q-jacobi, jacobi, catalan, central-binomial, \
                     laguerre, hermite, motzkin, delannoy, schroeder, narayana, al-salam-carlitz, three-halves-catalan"
                ),
            ))
        }
    })
}

fn run(cli: Cli) -> Result<u8, Failure> {
    match cli.command {
        Command::Verify(v) => run_verify(v, false),
        Command::Rpp { command: RppCommand::Verify(v) } => run_verify(*v, true),
        Command::Pf { file, algorithm, json } => {
            let alg: PfAlgorithm = algorithm.parse()?;
            let pf = read_matrix(&file)?.pf_with(alg)?;
            if json {
                println!("{}", to_json(&format_rational(&pf))?);
            } else {
                println!("{}", format_rational(&pf));
            }
            Ok(0)
        }
        Command::Decompose { file } => {
            let d = pf_decompose_elimination(&read_matrix(&file)?)?;
            #[derive(Serialize)]
            struct Out {
                t: Vec<String>,
                v: MatrixJson,
            }
            let out = Out { t: d.t().iter().map(format_rational).collect(), v: MatrixJson::from_matrix(d.v()) };
            println!("{}", to_json(&out)?);
            Ok(0)
        }
        Command::Rpp { command: RppCommand::Gf { shape, profile, trunc, method, json } } => {
            let shape = StrictPartition::new(parse_list(&shape)?)?;
            let profile = Profile::new(parse_list(&profile)?)?;
            if profile.len() != shape.len() {
                return Err(Failure(2, format!("profile length {} differs from shape length {}", profile.len(), shape.len())));
            }
            let gf = match method {
                Method::Brute => gf_rpp_bruteforce(&shape, &profile, trunc)?,
                Method::Det => gf_rpp(&shape, &profile, trunc)?,
            };
            if json {
                let c: Vec<String> = gf.coeffs().iter().map(format_rational).collect();
                println!("{}", to_json(&c)?);
            } else {
                println!("{}", gf.coeff_list());
            }
            Ok(0)
        }
        Command::Seq { kind, n, scalars, json } => {
            let k = sequence(&kind, &scalars)?;
            let terms: Vec<String> =
                (0..n).map(|i| k.moment(i).map(|x| format_rational(&x))).collect::<pfq::Result<_>>()?;
            if json {
                println!("{}", to_json(&terms)?);
            } else {
                for t in terms {
                    println!("{t}");
                }
            }
            Ok(0)
        }
        Command::List { json } => {
            let ids: Vec<&str> = IdentityId::all().into_iter().map(|i| i.id()).collect();
            if json {
                println!("{}", to_json(&ids)?);
            } else {
                for id in ids {
                    println!("{id}");
                }
            }
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(Failure(code, msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}
