use std::io::Read;
use std::ops::RangeInclusive;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgGroup, Parser, Subcommand, ValueEnum};
use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::{json, Value};

use recurkit::closedforms::{
    from_closed_form, generating_function, partial_fractions, seq_add, seq_mul, to_closed_form,
};
use recurkit::exppoly::{derivative_determinant_check, derivative_matrix, taylor_coefficient_sequence, vanishing_order};
use recurkit::interpolation::{
    build_matrix, contour_residual, determinant, determinant_formula, hermite_interpolate, newton_interpolate,
    solve_interpolation, ContourParams,
};
use recurkit::nonhomogeneous::{from_nonhomogeneous, to_nonhomogeneous, transition_matrix};
use recurkit::recurrences::minimal_recurrence;
use recurkit::scalars::ApproxScalar;
use recurkit::twisted::{coefficient_spec, duality_bijection, duality_check, form_coefficients, two_block_family};
use recurkit::{Error, ExactScalar, Polynomial, RecurrentSequence};

mod input;

#[derive(Parser)]
#[command(name = "recurkit", version, about = "Exact linear recurrence toolkit over Q(i)")]
struct Cli {
    /// Read the input document from FILE (stdin when neither --input nor --json is given).
    #[arg(long, global = true, value_name = "FILE", conflicts_with = "json")]
    input: Option<PathBuf>,
    /// Inline input document.
    #[arg(long, global = true, value_name = "STRING")]
    json: Option<String>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Terms of a recurrent sequence.
    #[command(group(ArgGroup::new("at").required(true).args(["index", "window"])))]
    Eval {
        #[arg(long, allow_negative_numbers = true)]
        index: Option<i64>,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_window)]
        window: Option<RangeInclusive<i64>>,
    },
    /// Minimal recurrence of a sequence.
    Minorder,
    /// Conversion between recurrences and closed forms.
    Closedform {
        #[command(subcommand)]
        dir: Direction,
    },
    /// Generating function `sum u(a) z^a` of a sequence.
    Genfun,
    /// Partial fractions of `num / den` over the given denominator roots.
    Partfrac,
    /// Termwise sum of `s1` and `s2`.
    Add,
    /// Termwise product of `s1` and `s2`.
    Mul,
    /// Confluent Vandermonde matrix of a node system.
    Vandermonde {
        #[command(subcommand)]
        what: VandermondeCmd,
    },
    /// Hermite interpolation by three methods.
    Interpolate {
        #[command(subcommand)]
        method: Method,
    },
    /// Numerical check of the contour-integral interpolation formula.
    Contour {
        #[arg(long, default_value = "2")]
        radius: String,
        #[arg(long, default_value_t = 256)]
        points: usize,
        /// Mantissa bits; defaults to RECURKIT_PRECISION_BITS or 128.
        #[arg(long)]
        bits: Option<usize>,
    },
    /// Reduction to a non-homogeneous recurrence.
    Nonhomog {
        #[command(subcommand)]
        dir: NonhomogCmd,
    },
    /// Exponential polynomials and their vanishing order.
    Exppoly {
        #[command(subcommand)]
        what: ExppolyCmd,
    },
    /// Coefficients of twisted power-sum forms.
    Twisted {
        #[command(subcommand)]
        what: TwistedCmd,
    },
}

#[derive(Subcommand)]
enum Direction {
    /// Sequence (with optional `roots`) to closed form.
    To,
    /// Closed form to sequence.
    From,
}

#[derive(Subcommand)]
enum VandermondeCmd {
    /// Matrix entries, row by row.
    Matrix,
    /// Exact determinant and the product formula.
    Det,
}

#[derive(Subcommand)]
enum Method {
    /// Lagrange-Hermite basis.
    Hermite,
    /// Divided differences.
    Newton,
    /// Direct linear solve.
    Linear,
}

#[derive(Subcommand)]
enum NonhomogCmd {
    /// `{sequence, q, r_roots}` to the non-homogeneous form.
    To,
    /// Non-homogeneous form to sequence.
    From,
    /// Transition matrix for `{q, r_roots}`.
    Matrix,
}

#[derive(Subcommand)]
enum ExppolyCmd {
    /// Taylor coefficients at `z0`.
    Taylor {
        #[arg(long, default_value_t = 10)]
        count: usize,
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        z0: String,
    },
    /// Vanishing order at `z0` and its upper bound.
    Order {
        #[arg(long, default_value_t = 64)]
        cap: usize,
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        z0: String,
    },
    /// Derivative-matrix determinant against the product formula.
    Detcheck,
}

#[derive(Subcommand)]
enum TwistedCmd {
    /// Coefficients U_h(a) of the form at one index or a window.
    Coeffs {
        #[arg(long, allow_negative_numbers = true, conflicts_with = "window")]
        index: Option<i64>,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_window)]
        window: Option<RangeInclusive<i64>>,
    },
    /// Characteristic polynomial and bounds for U_h.
    Spec {
        #[arg(long)]
        h: usize,
    },
    /// Duality between U_h and U_{d-h} on a window.
    Duality {
        #[arg(long)]
        h: usize,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_window, default_value = "-5..20")]
        window: RangeInclusive<i64>,
    },
    /// Report for a family with two twist values.
    Twoblock,
}

fn parse_window(s: &str) -> Result<RangeInclusive<i64>, String> {
    let (a, b) = s.split_once("..").ok_or_else(|| format!("expected A..B, got {s:?}"))?;
    let a: i64 = a.trim().parse().map_err(|e| format!("{a:?}: {e}"))?;
    let b: i64 = b.trim().parse().map_err(|e| format!("{b:?}: {e}"))?;
    if a > b {
        return Err(format!("empty window {a}..{b}"));
    }
    Ok(a..=b)
}

enum Failure {
    Domain(Error),
    Malformed(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

struct Output {
    json: Value,
    text: String,
}

impl Output {
    fn new(value: impl Serialize, text: impl Into<String>) -> Self {
        Output { json: serde_json::to_value(value).expect("serialisable output"), text: text.into() }
    }
}

fn scalar_list(v: &[ExactScalar]) -> String {
    let parts: Vec<String> = v.iter().map(ToString::to_string).collect();
    format!("[{}]", parts.join(", "))
}

fn sequence_text(s: &RecurrentSequence) -> String {
    format!("c = {}\ninitial = {}", scalar_list(s.recurrence().coefficients()), scalar_list(s.initial()))
}

fn parse_scalar(s: &str) -> Result<ExactScalar, Failure> {
    s.parse().map_err(|e: Error| Failure::Malformed(format!("{s:?}: {e}")))
}

fn read_input(cli: &Cli) -> Result<String, Failure> {
    if let Some(j) = &cli.json {
        return Ok(j.clone());
    }
    if let Some(p) = &cli.input {
        return std::fs::read_to_string(p).map_err(|e| Failure::Malformed(format!("{}: {e}", p.display())));
    }
    let mut s = String::new();
    std::io::stdin().read_to_string(&mut s).map_err(|e| Failure::Malformed(format!("stdin: {e}")))?;
    Ok(s)
}

fn decode<T: DeserializeOwned>(raw: &str) -> Result<T, Failure> {
    serde_json::from_str(raw).map_err(|e| Failure::Malformed(e.to_string()))
}

fn approx_json(x: &ApproxScalar) -> Value {
    json!({ "re": ApproxScalar::decimal(x.re()), "im": ApproxScalar::decimal(x.im()) })
}

fn run(cli: &Cli) -> Result<Output, Failure> {
    let raw = read_input(cli)?;
    let seq = |raw: &str| -> Result<RecurrentSequence, Failure> { Ok(input::sequence(decode(raw)?)?) };
    Ok(match &cli.command {
        Command::Eval { index: Some(a), .. } => {
            let v = seq(&raw)?.eval_at(*a);
            Output::new(json!({ "index": a, "value": v }), v.to_string())
        }
        Command::Eval { window, .. } => {
            let s = seq(&raw)?;
            let w = window.clone().expect("clap requires --index or --window");
            let values: Vec<ExactScalar> = s.terms(w.clone());
            let text = w.clone().zip(&values).map(|(a, v)| format!("{a}: {v}")).collect::<Vec<_>>().join("\n");
            Output::new(json!({ "window": [w.start(), w.end()], "values": values }), text)
        }
        Command::Minorder => {
            let s = seq(&raw)?;
            let (rec, p) = minimal_recurrence(&s);
            let order = rec.order();
            let minimal = RecurrentSequence::new(rec, s.terms(0..=order as i64 - 1))?;
            let text = format!("order {order}\nP(T) = {}", p.pretty("T"));
            Output::new(json!({ "order": order, "char_poly": p, "sequence": minimal }), text)
        }
        Command::Closedform { dir: Direction::To } => {
            let j: input::SequenceWithRoots = decode(&raw)?;
            let s = input::sequence(j.seq)?;
            let cf = to_closed_form(&s, j.roots.as_deref())?;
            let text = cf
                .terms()
                .iter()
                .map(|t| format!("({}) * ({})^a", t.p.pretty("a"), t.gamma))
                .collect::<Vec<_>>()
                .join(" + ");
            Output::new(&cf, if text.is_empty() { "0".into() } else { text })
        }
        Command::Closedform { dir: Direction::From } => {
            let cf = decode::<input::ClosedForm>(&raw)?.build()?;
            let s = from_closed_form(&cf);
            Output::new(&s, sequence_text(&s))
        }
        Command::Genfun => {
            let rf = generating_function(&seq(&raw)?);
            let text = format!("({}) / ({})", rf.num().pretty("z"), rf.den().pretty("z"));
            Output::new(&rf, text)
        }
        Command::Partfrac => {
            let j: input::PartialFractionInput = decode(&raw)?;
            let blocks = partial_fractions(&j.rf.build()?, &j.roots)?;
            let text = blocks
                .iter()
                .flat_map(|b| {
                    b.q.iter().enumerate().map(move |(i, q)| format!("{q} / (1 - ({}) z)^{}", b.gamma, i + 1))
                })
                .collect::<Vec<_>>()
                .join(" + ");
            Output::new(json!({ "blocks": blocks }), text)
        }
        Command::Add | Command::Mul => {
            let j: input::Pair = decode(&raw)?;
            let (s1, s2) = (input::sequence(j.s1)?, input::sequence(j.s2)?);
            let s = if matches!(cli.command, Command::Add) {
                seq_add(&s1, &s2)
            } else {
                seq_mul(&s1, &s2, j.roots1.as_deref(), j.roots2.as_deref())?
            };
            Output::new(&s, sequence_text(&s))
        }
        Command::Vandermonde { what } => {
            let system = decode::<input::Nodes>(&raw)?.build()?;
            match what {
                VandermondeCmd::Matrix => {
                    let m = build_matrix(&system);
                    let text = m.to_rows().iter().map(|r| scalar_list(r)).collect::<Vec<_>>().join("\n");
                    Output::new(&m, text)
                }
                VandermondeCmd::Det => {
                    let det = determinant(&system);
                    let formula = determinant_formula(&system);
                    let text = det.to_string();
                    Output::new(json!({ "det": det, "formula": formula }), text)
                }
            }
        }
        Command::Interpolate { method } => {
            let data = decode::<input::Hermite>(&raw)?.build()?;
            let p: Polynomial = match method {
                Method::Hermite => hermite_interpolate(&data),
                Method::Newton => newton_interpolate(&data),
                Method::Linear => solve_interpolation(&data)?,
            };
            Output::new(&p, p.pretty("z"))
        }
        Command::Contour { radius, points, bits } => {
            let j: input::Contour = decode(&raw)?;
            let f = j.function.build()?;
            let system = input::Nodes { nodes: j.nodes }.build()?;
            let radius = ExactScalar::parse_rational(radius).map_err(|e| Failure::Malformed(e.to_string()))?;
            let params = ContourParams { radius, points: *points, bits: bits.unwrap_or_else(ContourParams::default_bits) };
            let r = contour_residual(&f, &system, &j.z, &params)?;
            let residual = ApproxScalar::decimal(r.residual.re());
            let text = format!("residual {residual} ({} points, {} bits)", r.points, r.bits);
            Output::new(
                json!({
                    "bits": r.bits,
                    "points": r.points,
                    "center": r.center,
                    "residual": residual,
                    "interpolant": approx_json(&r.interpolant),
                    "function": approx_json(&r.function),
                    "integral": approx_json(&r.integral),
                }),
                text,
            )
        }
        Command::Nonhomog { dir: NonhomogCmd::To } => {
            let j: input::ToNonHomogeneous = decode(&raw)?;
            let s = input::sequence(j.sequence)?;
            let form = to_nonhomogeneous(&s, &j.factorization.q, &j.factorization.r_roots)?;
            let text = format!("b = {}\nhead = {}", scalar_list(form.b()), scalar_list(form.head()));
            Output::new(&form, text)
        }
        Command::Nonhomog { dir: NonhomogCmd::From } => {
            let form = decode::<input::Form>(&raw)?.build()?;
            let s = from_nonhomogeneous(&form);
            Output::new(&s, sequence_text(&s))
        }
        Command::Nonhomog { dir: NonhomogCmd::Matrix } => {
            let j: input::Factorization = decode(&raw)?;
            let m = transition_matrix(&j.q, &j.r_roots)?;
            let text = m.to_rows().iter().map(|r| scalar_list(r)).collect::<Vec<_>>().join("\n");
            Output::new(&m, text)
        }
        Command::Exppoly { what: ExppolyCmd::Taylor { count, z0 } } => {
            let f = decode::<input::ExpPoly>(&raw)?.build()?;
            let c = taylor_coefficient_sequence(&f, &parse_scalar(z0)?, *count)?;
            Output::new(json!({ "coefficients": c }), scalar_list(&c))
        }
        Command::Exppoly { what: ExppolyCmd::Order { cap, z0 } } => {
            let f = decode::<input::ExpPoly>(&raw)?.build()?;
            let size = f.size();
            let k = vanishing_order(&f, &parse_scalar(z0)?, *cap)?;
            Output::new(json!({ "order": k, "bound": size - 1 }), format!("order {k} (bound {})", size - 1))
        }
        Command::Exppoly { what: ExppolyCmd::Detcheck } => {
            let system = decode::<input::Nodes>(&raw)?.build()?;
            let det = derivative_matrix(&system).determinant();
            let holds = derivative_determinant_check(&system);
            Output::new(json!({ "det": det, "formula": determinant_formula(&system), "holds": holds }), format!("{det} ({holds})"))
        }
        Command::Twisted { what } => twisted(what, &raw)?,
    })
}

fn twisted(what: &TwistedCmd, raw: &str) -> Result<Output, Failure> {
    if let TwistedCmd::Twoblock = what {
        let j: input::TwoBlock = decode(raw)?;
        let r = two_block_family(&j.eps, &j.eta, j.l, j.d, &j.alpha)?;
        let text = format!("A = {}\nB = {}\nC = {}", r.a, r.b, r.c);
        return Ok(Output::new(&r, text));
    }
    let fam = decode::<input::Family>(raw)?.build()?;
    Ok(match what {
        TwistedCmd::Coeffs { window: Some(w), .. } => {
            let rows: Vec<Value> = w.clone().map(|a| json!({ "a": a, "U": form_coefficients(&fam, a) })).collect();
            let text = w.clone().map(|a| format!("{a}: {}", scalar_list(&form_coefficients(&fam, a)))).collect::<Vec<_>>();
            Output::new(rows, text.join("\n"))
        }
        TwistedCmd::Coeffs { index, .. } => {
            let a = index.unwrap_or(0);
            let u = form_coefficients(&fam, a);
            let text = scalar_list(&u);
            Output::new(json!({ "a": a, "U": u }), text)
        }
        TwistedCmd::Spec { h } => {
            let spec = coefficient_spec(&fam, *h)?;
            let text = format!("E_{h} = {}\nm_{h} = {}\nP(T) = {}", scalar_list(&spec.e_set), spec.m_h, spec.charpoly.pretty("T"));
            Output::new(&spec, text)
        }
        TwistedCmd::Duality { h, window } => {
            let bijection = duality_bijection(&fam, *h)?;
            let holds = duality_check(&fam, *h, window.clone())?;
            let text = format!("bijection {bijection}\nidentity {holds}");
            Output::new(
                json!({ "h": h, "bijection": bijection, "window": [window.start(), window.end()], "holds": holds }),
                text,
            )
        }
        TwistedCmd::Twoblock => unreachable!(),
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            match cli.format {
                Format::Json => println!("{}", serde_json::to_string_pretty(&out.json).expect("valid json")),
                Format::Text => println!("{}", out.text),
            }
            ExitCode::SUCCESS
        }
        Err(Failure::Domain(e)) => {
            eprintln!("{}: {e}", e.name());
            ExitCode::from(1)
        }
        Err(Failure::Malformed(msg)) => {
            eprintln!("MalformedInput: {msg}");
            ExitCode::from(2)
        }
    }
}
