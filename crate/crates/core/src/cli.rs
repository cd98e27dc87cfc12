//! Command-line front end. [`run`] does all the work and returns the rendered
//! output with an exit status, so it can be driven from tests.

use std::fmt::Write as _;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::algebra::{parse_polynomial, parse_polynomial_list, CoefficientField, MonomialOrder, Ring, RingSignature};
use crate::error::Error;
use crate::family::report::*;
use crate::family::verify::*;
use crate::family::{matrix_ideal, quotient_S_ideal, replay_key_lemma_proof, Characteristic, PaperInstance};
use crate::fsing::DEFAULT_E_MAX;
use crate::groebner::{default_order, Engine, Ideal, DEFAULT_BUDGET};
use crate::qdiv::{self, QDivisor};

pub const EXIT_OK: i32 = 0;
pub const EXIT_ENGINE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;
pub const EXIT_REFUTED: i32 = 4;
pub const EXIT_INVALID_INSTANCE: i32 = 5;

#[derive(Parser, Debug)]
#[command(name = "fregcheck", version, about = "Exact checks for a family of rings that is not F-pure but has F-regular hyperplane sections")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Reduction steps allowed per Groebner basis computation
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    pub budget: u64,

    /// Write the report here instead of standard output
    #[arg(long, global = true)]
    pub out: Option<std::path::PathBuf>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Verify one claim (see `list-claims`)
    Verify {
        claim: String,
        #[command(flatten)]
        params: Params,
    },
    /// Not F-pure fibers and F-regular quotients over a list of primes
    Sweep {
        #[command(flatten)]
        params: Params,
    },
    /// Rational divisors on the projective line
    Divisor {
        #[command(subcommand)]
        calc: DivisorCalc,
    },
    /// Groebner-basis calculators
    Gb {
        #[command(subcommand)]
        calc: GbCalc,
    },
    /// Print every claim id with its statement and parameters
    ListClaims,
}

#[derive(Args, Debug, Default)]
pub struct Params {
    /// Characteristic: a prime (omit for the rationals where allowed)
    #[arg(long)]
    pub p: Option<u64>,
    #[arg(long)]
    pub m: Option<u32>,
    #[arg(long)]
    pub n: Option<u32>,
    #[arg(long)]
    pub k: Option<u32>,
    /// Largest Frobenius exponent searched by the Glassbrenner test
    #[arg(long, default_value_t = DEFAULT_E_MAX)]
    pub e_max: u32,
    /// Largest q = p^e in the tight-closure window
    #[arg(long, default_value_t = DEFAULT_Q_WINDOW)]
    pub q_window: u64,
    /// Largest degree for Hilbert-function comparisons
    #[arg(long, default_value_t = 20)]
    pub up_to: u64,
    /// Comma-separated primes for the sweep
    #[arg(long, value_delimiter = ',')]
    pub primes: Vec<u64>,
}

#[derive(Args, Debug)]
pub struct DivisorArgs {
    /// Divisor such as "1/2@VX, 1/2@VY, 1/4@VXY"
    #[arg(long = "E", short = 'E')]
    pub divisor: String,
}

#[derive(Subcommand, Debug)]
pub enum DivisorCalc {
    /// h0(iE) for i = 0..=up-to
    Dims {
        #[command(flatten)]
        d: DivisorArgs,
        #[arg(long, default_value_t = 20)]
        up_to: u64,
    },
    /// The floor, E', and the cohomology of the floor
    Floor {
        #[command(flatten)]
        d: DivisorArgs,
    },
    /// Checks -[-nE] = [nE + E'] for |n| <= up-to
    Identity {
        #[command(flatten)]
        d: DivisorArgs,
        #[arg(long, default_value_t = 50)]
        up_to: i64,
    },
    /// deg p(K + E') and h1 of its floor
    Heuristic {
        #[command(flatten)]
        d: DivisorArgs,
        #[arg(long)]
        p: u64,
    },
}

#[derive(Args, Debug, Default)]
pub struct RingArgs {
    /// Comma-separated variable names; without it the family ring for --m/--n
    /// (or the quotient ring for --n alone) is used
    #[arg(long)]
    pub vars: Option<String>,
    /// Comma-separated positive weights (default all 1)
    #[arg(long)]
    pub weights: Option<String>,
    /// Comma-separated generators; defaults to the family ideal
    #[arg(long)]
    pub ideal: Option<String>,
    #[arg(long)]
    pub p: Option<u64>,
    #[arg(long)]
    pub m: Option<u32>,
    #[arg(long)]
    pub n: Option<u32>,
    /// lex, grevlex or wgrevlex (weighted, the default)
    #[arg(long, default_value = "wgrevlex")]
    pub order: String,
}

#[derive(Subcommand, Debug)]
pub enum GbCalc {
    /// Reduced Groebner basis
    Basis {
        #[command(flatten)]
        ring: RingArgs,
    },
    /// Ideal membership of --f
    Member {
        #[command(flatten)]
        ring: RingArgs,
        #[arg(long)]
        f: String,
    },
    /// Krull dimension of the quotient
    Dim {
        #[command(flatten)]
        ring: RingArgs,
    },
    /// Hilbert function up to --up-to
    Hilbert {
        #[command(flatten)]
        ring: RingArgs,
        #[arg(long, default_value_t = 20)]
        up_to: u64,
    },
}

/// What a run produced.
#[derive(Debug)]
pub struct Outcome {
    pub output: String,
    pub status: i32,
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Engine(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Engine(e)
    }
}

type Run<T> = std::result::Result<T, Failure>;

/// Exit status for an engine error.
pub fn status_of(e: &Error) -> i32 {
    match e {
        Error::Hypothesis(_) => EXIT_INVALID_INSTANCE,
        Error::BudgetExceeded { .. } => EXIT_BUDGET,
        Error::Refuted(_) => EXIT_REFUTED,
        Error::Syntax { .. }
        | Error::UnknownVariable(_)
        | Error::NotPrime(_)
        | Error::InvalidRing(_)
        | Error::InvalidArgument(_)
        | Error::CharacteristicZero(_) => EXIT_USAGE,
        _ => EXIT_ENGINE,
    }
}

fn need<T: Copy>(v: Option<T>, flag: &str, claim: &str) -> Run<T> {
    v.ok_or_else(|| Failure::Usage(format!("`{claim}` requires --{flag}")))
}

fn characteristic(p: Option<u64>) -> Run<Characteristic> {
    match p {
        Some(p) => {
            CoefficientField::prime(p)?;
            Ok(Characteristic::Prime(p))
        }
        None => Ok(Characteristic::Rational),
    }
}

fn family_instance(params: &Params, claim: &str) -> Run<PaperInstance> {
    let p = need(params.p, "p", claim)?;
    let m = need(params.m, "m", claim)?;
    let n = need(params.n, "n", claim)?;
    Ok(PaperInstance::new(characteristic(Some(p))?, m, n, params.k))
}

fn options(params: &Params) -> VerifyOptions {
    VerifyOptions {
        e_max: params.e_max,
        q_window: params.q_window,
    }
}

fn verify(engine: &Engine, claim: &str, params: &Params) -> Run<Vec<VerificationReport>> {
    let info = claim_info(claim).ok_or_else(|| Failure::Usage(format!("unknown claim `{claim}`; see list-claims")))?;
    let id = info.id;
    let one = |r: crate::Result<VerificationReport>| -> Run<Vec<VerificationReport>> { Ok(vec![r?]) };
    match id {
        LEMMA => {
            need(params.k, "k", id)?;
            one(verify_key_lemma(engine, &family_instance(params, id)?))
        }
        LEMMA_REPLAY => one(replay_key_lemma_proof(
            engine,
            need(params.m, "m", id)?,
            need(params.n, "n", id)?,
            need(params.k, "k", id)?,
        )),
        QUOTIENT_FREGULAR => one(verify_quotient_fregular(
            engine,
            need(params.n, "n", id)?,
            characteristic(Some(need(params.p, "p", id)?))?,
            params.e_max,
        )),
        QUOTIENT_HILBERT => one(qdiv::hilbert_crosscheck(
            engine,
            need(params.n, "n", id)?,
            characteristic(params.p)?,
            params.up_to,
        )),
        NOT_FPURE => one(verify_not_fpure(engine, &family_instance(params, id)?)),
        NOT_FREGULAR => one(verify_not_fregular(engine, &family_instance(params, id)?, params.q_window)),
        HSOP => one(verify_hsop(engine, &family_instance(params, id)?)),
        NZD => one(verify_nzd(engine, &family_instance(params, id)?)),
        SINGULAR_LOCUS => one(verify_singular_locus(engine, &family_instance(params, id)?)),
        BUNDLE => one(verify_main_theorem(engine, &family_instance(params, id)?, options(params))),
        SWEEP => sweep(engine, params),
        _ => unreachable!("catalog and dispatch cover the same ids"),
    }
}

/// Library entry point for `verify`: missing or unknown parameters come back
/// as [`Error::InvalidArgument`].
pub fn verify_claim(engine: &Engine, claim: &str, params: &Params) -> crate::Result<Vec<VerificationReport>> {
    verify(engine, claim, params).map_err(|f| match f {
        Failure::Usage(msg) => Error::InvalidArgument(msg),
        Failure::Engine(e) => e,
    })
}

fn sweep(engine: &Engine, params: &Params) -> Run<Vec<VerificationReport>> {
    let m = need(params.m, "m", SWEEP)?;
    let n = need(params.n, "n", SWEEP)?;
    Ok(prime_sweep(engine, m, n, &params.primes, options(params)))
}

#[derive(Serialize)]
struct Calc {
    calc: String,
    input: Value,
    result: Value,
}

fn calc(name: &str, input: Value, result: Value) -> Calc {
    Calc {
        calc: name.to_string(),
        input,
        result,
    }
}

fn divisor(c: &DivisorCalc) -> Run<Calc> {
    let parse = |d: &DivisorArgs| d.divisor.parse::<QDivisor>();
    Ok(match c {
        DivisorCalc::Dims { d, up_to } => {
            let e = parse(d)?;
            let dims = qdiv::section_dims(&e, *up_to)?;
            calc("divisor dims", json!({"E": e, "up_to": up_to}), json!(dims))
        }
        DivisorCalc::Floor { d } => {
            let e = parse(d)?;
            let result = json!({
                "floor": e.floor(),
                "fractional_part": e.fractional_part_paper(),
                "degree": e.degree().to_string(),
                "class": e.class_data()?,
            });
            calc("divisor floor", json!({"E": e}), result)
        }
        DivisorCalc::Identity { d, up_to } => {
            let e = parse(d)?;
            let holds = qdiv::floor_identity_check(&e, -up_to..=*up_to);
            calc("divisor identity", json!({"E": e, "range": [-up_to, up_to]}), json!(holds))
        }
        DivisorCalc::Heuristic { d, p } => {
            let e = parse(d)?;
            CoefficientField::prime(*p)?;
            let h = qdiv::fpurity_degree_heuristic(&e, *p)?;
            calc("divisor heuristic", json!({"E": e, "p": p}), json!(h))
        }
    })
}

fn split_list(s: &str) -> Vec<&str> {
    s.split(',').map(str::trim).filter(|x| !x.is_empty()).collect()
}

fn gb_ideal(args: &RingArgs) -> Run<Ideal> {
    let field = match args.p {
        Some(p) => CoefficientField::prime(p)?,
        None => CoefficientField::Rationals,
    };
    let ring: Ring = match (&args.vars, args.m, args.n) {
        (Some(vars), _, _) => {
            let names = split_list(vars);
            let weights = match &args.weights {
                Some(w) => split_list(w)
                    .iter()
                    .map(|x| x.parse::<u32>().map_err(|_| Failure::Usage(format!("invalid weight `{x}`"))))
                    .collect::<Run<Vec<_>>>()?,
                None => vec![1; names.len()],
            };
            RingSignature::new(&names, &weights, field)?
        }
        (None, Some(m), Some(n)) => matrix_ideal(m, n, field)?.ring().clone(),
        (None, None, Some(n)) => quotient_S_ideal(n, field)?.ring().clone(),
        _ => return Err(Failure::Usage("give --vars, or --m and --n, or --n".into())),
    };
    match (&args.ideal, args.m, args.n) {
        (Some(text), _, _) => Ok(Ideal::new(&ring, parse_polynomial_list(text, &ring)?)?),
        (None, Some(m), Some(n)) if args.vars.is_none() => Ok(matrix_ideal(m, n, field)?),
        (None, None, Some(n)) if args.vars.is_none() => Ok(quotient_S_ideal(n, field)?),
        _ => Err(Failure::Usage("--ideal is required with --vars".into())),
    }
}

fn gb_order(args: &RingArgs, ring: &Ring) -> Run<MonomialOrder> {
    match args.order.as_str() {
        "lex" => Ok(MonomialOrder::Lex),
        "grevlex" => Ok(MonomialOrder::GrevLex),
        "wgrevlex" => Ok(default_order(ring)),
        o => Err(Failure::Usage(format!("unknown order `{o}`"))),
    }
}

fn ring_input(ideal: &Ideal, args: &RingArgs) -> Value {
    json!({
        "ring": RingDescriptor::of(ideal.ring()),
        "ideal": ideal.generator_strings(),
        "order": args.order,
    })
}

fn gb(engine: &Engine, c: &GbCalc) -> Run<Calc> {
    Ok(match c {
        GbCalc::Basis { ring } => {
            let ideal = gb_ideal(ring)?;
            let order = gb_order(ring, ideal.ring())?;
            let basis = engine.groebner(&ideal, &order)?;
            let strings: Vec<String> = basis.basis().iter().map(ToString::to_string).collect();
            calc("gb basis", ring_input(&ideal, ring), json!(strings))
        }
        GbCalc::Member { ring, f } => {
            let ideal = gb_ideal(ring)?;
            let poly = parse_polynomial(f, ideal.ring())?;
            let member = engine.ideal_member(&poly, &ideal)?;
            let mut input = ring_input(&ideal, ring);
            input["f"] = json!(poly.to_string());
            calc("gb member", input, json!(member))
        }
        GbCalc::Dim { ring } => {
            let ideal = gb_ideal(ring)?;
            let dim = engine.krull_dimension(&ideal)?;
            calc("gb dim", ring_input(&ideal, ring), json!(dim))
        }
        GbCalc::Hilbert { ring, up_to } => {
            let ideal = gb_ideal(ring)?;
            let h = engine.hilbert_function(&ideal, *up_to)?;
            let mut input = ring_input(&ideal, ring);
            input["up_to"] = json!(up_to);
            calc("gb hilbert", input, json!(h))
        }
    })
}

fn render_reports(reports: &[VerificationReport], format: Format, table: bool) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(reports).expect("reports serialize"),
        Format::Text if table => {
            let mut s = format!("{:>6}  {:<14}  {:<22}  {}\n", "p", "not F-pure", "quotient F-regular", "verdict");
            for r in reports {
                let cell = |claim: &str| {
                    r.witnesses
                        .iter()
                        .find_map(|w| match w {
                            Witness::SubReport(s) if s.claim == claim => Some(s.verdict.to_string()),
                            Witness::Skipped { label, .. } if label == claim => Some("skipped".to_string()),
                            Witness::Rejected { .. } => Some("rejected".to_string()),
                            _ => None,
                        })
                        .unwrap_or_else(|| "-".into())
                };
                let _ = writeln!(
                    s,
                    "{:>6}  {:<14}  {:<22}  {}",
                    r.instance.p.to_string(),
                    cell(NOT_FPURE),
                    cell(QUOTIENT_FREGULAR),
                    r.verdict
                );
            }
            s
        }
        Format::Text => {
            let mut s = String::new();
            for r in reports {
                let _ = writeln!(s, "{}  [{}]  {}  ({} ms)", r.claim, r.instance, r.verdict, r.timings.wall_ms);
                for w in &r.witnesses {
                    if let Witness::SubReport(sub) = w {
                        let _ = writeln!(s, "  {}  {}", sub.claim, sub.verdict);
                    }
                }
                for n in &r.notes {
                    let _ = writeln!(s, "  note: {n}");
                }
            }
            s
        }
    }
}

fn render_calc(c: &Calc, format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(&[c]).expect("calculator output serializes"),
        Format::Text => format!("{}: {}\n", c.calc, c.result),
    }
}

fn status_of_reports(reports: &[VerificationReport]) -> i32 {
    if reports.iter().any(|r| r.verdict == Verdict::Refuted) {
        EXIT_REFUTED
    } else {
        EXIT_OK
    }
}

/// Runs a parsed command line.
pub fn run(cli: &Cli) -> Outcome {
    let engine = Engine::new(cli.budget);
    let result: Run<(String, i32)> = (|| match &cli.command {
        Command::Verify { claim, params } => {
            let reports = verify(&engine, claim, params)?;
            let table = claim_info(claim).is_some_and(|c| c.id == SWEEP);
            Ok((render_reports(&reports, cli.format, table), status_of_reports(&reports)))
        }
        Command::Sweep { params } => {
            let reports = sweep(&engine, params)?;
            Ok((render_reports(&reports, cli.format, true), status_of_reports(&reports)))
        }
        Command::Divisor { calc } => Ok((render_calc(&divisor(calc)?, cli.format), EXIT_OK)),
        Command::Gb { calc } => Ok((render_calc(&gb(&engine, calc)?, cli.format), EXIT_OK)),
        Command::ListClaims => {
            let out = match cli.format {
                Format::Json => serde_json::to_string_pretty(CLAIMS).expect("catalog serializes"),
                Format::Text => CLAIMS
                    .iter()
                    .map(|c| format!("{:<28} {}\n{:<28} {}\n", c.id, c.statement, "", c.parameters))
                    .collect(),
            };
            Ok((out, EXIT_OK))
        }
    })();
    match result {
        Ok((output, status)) => Outcome { output, status },
        Err(Failure::Usage(msg)) => Outcome {
            output: format!("error: {msg}\n"),
            status: EXIT_USAGE,
        },
        Err(Failure::Engine(e)) => Outcome {
            output: format!("error: {e}\n"),
            status: status_of(&e),
        },
    }
}
