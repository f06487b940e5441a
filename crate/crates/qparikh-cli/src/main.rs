//! Command-line surface for the q-Parikh toolkit.
//!
//! Every subcommand prints a text rendering by default and a machine
//! readable encoding under `--json`. Usage errors exit with 2, domain
//! errors from the library with 1.

mod verify;

use clap::{Args, Parser, Subcommand};
use qparikh::json;
use qparikh::morphism::{check_canonical_reduction, sigma, zc_matrices};
use qparikh::parikh::{
    cancellation_identity, cauchy_dual, cauchy_minor, parikh_inverse, parikh_inverse_closed,
    parikh_inverse_reversal, parikh_matrix, parikh_matrix_closed, reverse_duality_check,
};
use qparikh::qbinom::{qbinom, qbinom_oracle_with_limit, qbinom_reversed, DEFAULT_ORACLE_LIMIT};
use qparikh::series::{
    closed_form_eval, coefficient_recurrence, growth_fit, periodic_closed_form,
    recurrence_integer, recurrence_polynomial, series_coefficients, vanishing_residues,
};
use qparikh::words::{LeftInfiniteWord, Word};
use serde_json::{json as jval, Value};
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "qparikh",
    version,
    about = "Exact q-deformed binomial coefficients of words and q-Parikh matrices"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// q-binomial coefficient of two words
    Qbinom {
        /// Outer word
        u: String,
        /// Subword pattern
        v: String,
        /// Use the occurrence-enumeration oracle instead of the recursion
        #[arg(long)]
        oracle: bool,
        /// Reflect within the degree window (equals the q-binomial of the
        /// reversed words)
        #[arg(long)]
        reversed: bool,
        #[arg(long)]
        json: bool,
    },
    /// q-Parikh matrix of a word induced by z
    Parikh {
        /// Inducing word z
        z: String,
        /// Word the matrix is computed for
        w: String,
        /// Use the closed-form entries instead of the atomic product
        #[arg(long)]
        closed: bool,
        /// Print the inverse matrix instead
        #[arg(long)]
        inverse: bool,
        #[arg(long)]
        json: bool,
    },
    /// Inverse of a q-Parikh matrix
    Inverse {
        z: String,
        u: String,
        /// Force the closed form (z must have no equal adjacent letters)
        #[arg(long)]
        closed: bool,
        /// Compute via the antitranspose of the reversed-z matrix
        #[arg(long, conflicts_with = "closed")]
        via_reversal: bool,
        #[arg(long)]
        json: bool,
    },
    /// Verify algebraic identities on q-binomials
    #[command(subcommand)]
    IdentityCheck(IdentityCheckCommand),
    /// Cauchy-type polynomials with non-negative coefficients
    #[command(subcommand)]
    Cauchy(CauchyCommand),
    /// Coefficients of the limit series of prefix q-binomials
    Series {
        /// Stream: `periodic:<word>` or `thue-morse`
        #[arg(long)]
        stream: String,
        /// Subword pattern
        #[arg(long)]
        z: String,
        /// Truncation order
        #[arg(long, default_value_t = 64)]
        order: usize,
        #[arg(long)]
        json: bool,
        /// Emit an index,coefficient table
        #[arg(long, conflicts_with = "json")]
        csv: bool,
    },
    /// Closed form of n -> qbinom(u^n, z) for a periodic word
    ClosedForm {
        u: String,
        z: String,
        #[arg(long)]
        json: bool,
    },
    /// Linear recurrence satisfied by n -> qbinom(u^n, z)
    Recurrence {
        u: String,
        z: String,
        /// Specialize at q = 1 and list the first terms
        #[arg(long = "at-q1")]
        at_q1: bool,
        /// Constant-coefficient recurrence of the series coefficients
        #[arg(long)]
        coefficients: bool,
        #[arg(long)]
        json: bool,
    },
    /// Residue classes mod |u| where the series coefficients vanish
    Residues {
        u: String,
        z: String,
        #[arg(long)]
        json: bool,
    },
    /// Least-squares growth degree of a coefficient residue class
    GrowthFit {
        u: String,
        z: String,
        /// Residue class mod |u|
        #[arg(long)]
        residue: usize,
        /// Truncation order (default 100·|u|)
        #[arg(long)]
        order: Option<usize>,
        #[arg(long)]
        json: bool,
    },
    /// Position morphism and the canonical-matrix reduction
    #[command(subcommand)]
    Morphism(MorphismCommand),
    /// Run the full property suite
    Verify {
        /// Seed for the randomized properties
        #[arg(long, default_value_t = 20240)]
        seed: u64,
    },
}

#[derive(Subcommand)]
enum IdentityCheckCommand {
    /// Alternating product identity over all factorizations z = xy
    General(IdentityArgs),
    /// Entrywise duality between the matrices of reversed words
    ReverseDuality(IdentityArgs),
}

#[derive(Args)]
struct IdentityArgs {
    #[arg(long)]
    z: String,
    #[arg(long)]
    u: String,
    #[arg(long)]
    json: bool,
}

#[derive(Subcommand)]
enum CauchyCommand {
    /// 2x2 minor polynomial for factors v, w, x
    Minor {
        u: String,
        v: String,
        w: String,
        x: String,
        #[arg(long)]
        json: bool,
    },
    /// Dual inequality polynomial (xy|w)(yz|w) - (xyz|w)(y|w)
    Dual {
        x: String,
        y: String,
        z: String,
        w: String,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Subcommand)]
enum MorphismCommand {
    /// Occurrence-position images of the letters of z
    Sigma {
        z: String,
        #[arg(long)]
        json: bool,
    },
    /// Check both Hadamard identities of the canonical reduction
    Reduce {
        z: String,
        u: String,
        #[arg(long)]
        json: bool,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::FAILURE
        }
    }
}

fn parse_word(text: &str) -> Result<Word, String> {
    Word::parse(text).map_err(|e| e.to_string())
}

fn parse_stream(text: &str) -> Result<LeftInfiniteWord, String> {
    if text == "thue-morse" {
        return Ok(LeftInfiniteWord::thue_morse());
    }
    if let Some(period) = text.strip_prefix("periodic:") {
        let period = parse_word(period)?;
        return LeftInfiniteWord::periodic(period).map_err(|e| e.to_string());
    }
    Err(format!(
        "unknown stream '{text}' (expected 'periodic:<word>' or 'thue-morse')"
    ))
}

fn oracle_limit() -> usize {
    std::env::var("QPARIKH_MAX_ORACLE")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(DEFAULT_ORACLE_LIMIT)
}

fn emit(json_flag: bool, value: Value, text: impl FnOnce() -> String) {
    if json_flag {
        println!("{value}");
    } else {
        println!("{}", text());
    }
}

fn run(command: Command) -> Result<(), String> {
    match command {
        Command::Qbinom { u, v, oracle, reversed, json: json_flag } => {
            let u = parse_word(&u)?;
            let v = parse_word(&v)?;
            let result = if reversed {
                qbinom_reversed(&u, &v)
            } else if oracle {
                qbinom_oracle_with_limit(&u, &v, oracle_limit()).map_err(|e| e.to_string())?
            } else {
                qbinom(&u, &v)
            };
            emit(json_flag, json::poly_to_json(&result), || result.to_string());
        }
        Command::Parikh { z, w, closed, inverse, json: json_flag } => {
            let z = parse_word(&z)?;
            let w = parse_word(&w)?;
            let matrix = match (inverse, closed) {
                (true, true) => parikh_inverse_closed(&z, &w),
                (true, false) => parikh_inverse(&z, &w),
                (false, true) => parikh_matrix_closed(&z, &w),
                (false, false) => parikh_matrix(&z, &w),
            }
            .map_err(|e| e.to_string())?;
            emit(json_flag, json::matrix_to_json(&matrix), || matrix.to_string());
        }
        Command::Inverse { z, u, closed, via_reversal, json: json_flag } => {
            let z = parse_word(&z)?;
            let u = parse_word(&u)?;
            let matrix = if via_reversal {
                parikh_inverse_reversal(&z, &u)
            } else if closed {
                parikh_inverse_closed(&z, &u)
            } else {
                parikh_inverse(&z, &u)
            }
            .map_err(|e| e.to_string())?;
            emit(json_flag, json::matrix_to_json(&matrix), || matrix.to_string());
        }
        Command::IdentityCheck(IdentityCheckCommand::General(args)) => {
            let z = parse_word(&args.z)?;
            let u = parse_word(&args.u)?;
            let value = cancellation_identity(&z, &u).map_err(|e| e.to_string())?;
            let holds = value.is_zero();
            emit(
                args.json,
                jval!({"value": json::poly_to_json(&value), "holds": holds}),
                || format!("sum = {value}\nholds: {holds}"),
            );
            if !holds {
                return Err("cancellation identity violated".into());
            }
        }
        Command::IdentityCheck(IdentityCheckCommand::ReverseDuality(args)) => {
            let z = parse_word(&args.z)?;
            let u = parse_word(&args.u)?;
            let holds = reverse_duality_check(&z, &u).map_err(|e| e.to_string())?;
            emit(args.json, jval!({"holds": holds}), || format!("holds: {holds}"));
            if !holds {
                return Err("reverse duality violated".into());
            }
        }
        Command::Cauchy(CauchyCommand::Minor { u, v, w, x, json: json_flag }) => {
            let result = cauchy_minor(
                &parse_word(&u)?,
                &parse_word(&v)?,
                &parse_word(&w)?,
                &parse_word(&x)?,
            );
            emit(json_flag, json::poly_to_json(&result), || result.to_string());
        }
        Command::Cauchy(CauchyCommand::Dual { x, y, z, w, json: json_flag }) => {
            let result = cauchy_dual(
                &parse_word(&x)?,
                &parse_word(&y)?,
                &parse_word(&z)?,
                &parse_word(&w)?,
            );
            emit(json_flag, json::poly_to_json(&result), || result.to_string());
        }
        Command::Series { stream, z, order, json: json_flag, csv } => {
            let stream = parse_stream(&stream)?;
            let z = parse_word(&z)?;
            let series = series_coefficients(&stream, &z, order);
            if csv {
                let mut out = String::from("index,coefficient\n");
                for (i, c) in series.coeffs().iter().enumerate() {
                    out.push_str(&format!("{i},{c}\n"));
                }
                print!("{out}");
            } else {
                emit(json_flag, json::series_to_json(&series), || series.to_string());
            }
        }
        Command::ClosedForm { u, z, json: json_flag } => {
            let u = parse_word(&u)?;
            let z = parse_word(&z)?;
            let cf = periodic_closed_form(&u, &z).map_err(|e| e.to_string())?;
            emit(json_flag, json::closed_form_to_json(&cf), || {
                let mut out = format!(
                    "prefactor: q^{}\nperiod: {}\n",
                    cf.prefactor_exponent(),
                    cf.period()
                );
                for (k, (r, c)) in cf.terms().iter().enumerate() {
                    out.push_str(&format!(
                        "term {}: c = {} (exponent {}), R = {}\n",
                        k + 1,
                        c,
                        c * cf.period(),
                        r
                    ));
                }
                let check = closed_form_eval(&cf, 1)
                    .map(|p| p.to_string())
                    .unwrap_or_else(|e| e.to_string());
                out.push_str(&format!("value at n = 1: {check}"));
                out
            });
        }
        Command::Recurrence { u, z, at_q1, coefficients, json: json_flag } => {
            let u = parse_word(&u)?;
            let z = parse_word(&z)?;
            if coefficients {
                let cf = periodic_closed_form(&u, &z).map_err(|e| e.to_string())?;
                let rec = coefficient_recurrence(&cf).map_err(|e| e.to_string())?;
                emit(json_flag, json::int_recurrence_to_json(&rec), || {
                    format!("{rec}   (for n >= {})", rec.valid_from())
                });
            } else if at_q1 {
                let (rec, terms) = recurrence_integer(&u, &z).map_err(|e| e.to_string())?;
                emit(
                    json_flag,
                    jval!({
                        "recurrence": json::int_recurrence_to_json(&rec),
                        "terms": json::bigints_to_json(&terms),
                    }),
                    || {
                        let rendered: Vec<String> =
                            terms.iter().map(|t| t.to_string()).collect();
                        format!(
                            "p[n+{}] = {}\nfirst terms: {}",
                            rec.order(),
                            render_int_relation(rec.coeffs()),
                            rendered.join(", ")
                        )
                    },
                );
            } else {
                let cf = periodic_closed_form(&u, &z).map_err(|e| e.to_string())?;
                let rec = recurrence_polynomial(&cf);
                emit(json_flag, json::recurrence_to_json(&rec), || rec.to_string());
            }
        }
        Command::Residues { u, z, json: json_flag } => {
            let u = parse_word(&u)?;
            let z = parse_word(&z)?;
            let vanishing = vanishing_residues(&u, &z).map_err(|e| e.to_string())?;
            let modulus = u.len();
            emit(
                json_flag,
                jval!({"modulus": modulus, "vanishing": vanishing.iter().collect::<Vec<_>>()}),
                || {
                    let listed: Vec<String> = vanishing.iter().map(|r| r.to_string()).collect();
                    format!("vanishing residues mod {modulus}: {{{}}}", listed.join(", "))
                },
            );
        }
        Command::GrowthFit { u, z, residue, order, json: json_flag } => {
            let u = parse_word(&u)?;
            let z = parse_word(&z)?;
            let order = order.unwrap_or(100 * u.len().max(1));
            let slope = growth_fit(&u, &z, residue, order).map_err(|e| e.to_string())?;
            emit(
                json_flag,
                jval!({"residue": residue, "order": order, "degree": slope}),
                || {
                    format!(
                        "estimated growth degree on residue {residue} mod {}: {slope:.3}",
                        u.len()
                    )
                },
            );
        }
        Command::Morphism(MorphismCommand::Sigma { z, json: json_flag }) => {
            let z = parse_word(&z)?;
            let morphism = sigma(&z).map_err(|e| e.to_string())?;
            emit(
                json_flag,
                Value::Object(
                    morphism
                        .domain()
                        .map(|a| {
                            let image = morphism.image(a).unwrap().to_string();
                            (a.to_string(), Value::String(image))
                        })
                        .collect(),
                ),
                || morphism.to_string().replace(", ", "\n"),
            );
        }
        Command::Morphism(MorphismCommand::Reduce { z, u, json: json_flag }) => {
            let z = parse_word(&z)?;
            let u = parse_word(&u)?;
            let holds = check_canonical_reduction(&z, &u).map_err(|e| e.to_string())?;
            let (z_matrix, c_matrix) = zc_matrices(&z).map_err(|e| e.to_string())?;
            emit(
                json_flag,
                jval!({
                    "holds": holds,
                    "Z": json::matrix_to_json(&z_matrix),
                    "C": json::matrix_to_json(&c_matrix),
                }),
                || format!("Z =\n{z_matrix}C =\n{c_matrix}reduction holds: {holds}"),
            );
            if !holds {
                return Err("canonical reduction identity violated".into());
            }
        }
        Command::Verify { seed } => {
            let report = verify::run_all(seed);
            print!("{}", report.rendered);
            if !report.all_passed {
                return Err(format!("{} properties failed", report.failures));
            }
        }
    }
    Ok(())
}

fn render_int_relation(coeffs: &[num_bigint::BigInt]) -> String {
    use num_traits::Signed;
    let s = coeffs.len();
    let mut out = String::new();
    for (k, c) in coeffs.iter().enumerate() {
        let idx = s - 1 - k;
        let term = if idx == 0 { "p[n]".to_string() } else { format!("p[n+{idx}]") };
        if k == 0 {
            out.push_str(&format!("{c}*{term}"));
        } else if c.is_negative() {
            out.push_str(&format!(" - {}*{term}", c.abs()));
        } else {
            out.push_str(&format!(" + {c}*{term}"));
        }
    }
    out
}
