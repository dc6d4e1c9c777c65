//! Command-line front end. The binary is a thin wrapper: every subcommand
//! parses its inputs, calls the library, and prints text, JSON, or CSV.
//!
//! Exit codes: 0 on success, 1 when a verification suite fails, 2 on usage
//! errors (including malformed permutations).

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::coalgebra::{coproduct, stanley_coefficients};
use crate::error::{Result, SchubertError};
use crate::genus::{
    affine_linear_genus, component_evaluate, exp_triangle, klyachko_genus, q_klyachko_genus,
    ComponentSpec,
};
use crate::nilhecke::SchubertVector;
use crate::perm::{comaj, Permutation};
use crate::poly::{structure_constants, MultiPoly};
use crate::qstats::{rectification_witness, table_egg, BarSelect};
use crate::ring::Rat;
use crate::verify::{run_all, run_suite, SweepOptions, VerificationReport};

#[derive(Parser)]
#[command(
    name = "schubert",
    about = "Exact Schubert-symbol computations: reduced words, operator actions, genera, and q-statistics",
    version
)]
struct Cli {
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
    /// Reduced words of a permutation, with comaj of each word.
    Rw {
        perm: String,
        #[arg(long, default_value_t = 1)]
        offset: i64,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Structure constants of a product of two Schubert symbols.
    Mult {
        pi: String,
        rho: String,
        #[arg(long, default_value_t = 1)]
        offset: i64,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// A genus value of a Schubert symbol.
    Genus {
        #[arg(value_parser = ["klyachko", "affine", "q", "component"])]
        kind: String,
        perm: String,
        /// Two-slope component: left edge of the zero plateau.
        #[arg(long)]
        i: Option<i64>,
        /// Two-slope component: right edge of the zero plateau.
        #[arg(long)]
        j: Option<i64>,
        #[arg(long, default_value_t = 1)]
        offset: i64,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Both routes to the affine-linear genus: the exponential of a∇+bξ
    /// against the reduced-word sum.
    Triangle {
        perm: String,
        #[arg(long, default_value_t = 1)]
        offset: i64,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// The coproduct of a Schubert symbol.
    Coproduct {
        perm: String,
        #[arg(long, default_value_t = 1)]
        offset: i64,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Stanley symmetric function coefficients of a Schubert symbol.
    Stanley {
        perm: String,
        #[arg(long, default_value_t = 1)]
        offset: i64,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Run a verification suite (or "all").
    Verify {
        suite: String,
        #[arg(long)]
        max_length: Option<usize>,
        /// Letter window as LO..HI.
        #[arg(long)]
        window: Option<String>,
        /// Worker pool size; affects wall time only.
        #[arg(long)]
        jobs: Option<usize>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// The fully-barred q-statistic table of a product.
    TableEgg {
        #[arg(long, default_value = "12463578")]
        pi: String,
        #[arg(long, default_value = "12463578")]
        rho: String,
        #[arg(long, default_value_t = 1)]
        offset: i64,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
    },
    /// An explicit rectification witness, as JSON.
    Rectify {
        pi: String,
        rho: String,
        /// Total bar count to restrict to, or "all".
        #[arg(long, default_value = "all")]
        bars: String,
        #[arg(long, default_value_t = 1)]
        offset: i64,
    },
}

/// Entry point for the binary; returns the process exit code.
pub fn run() -> i32 {
    let cli = Cli::parse();
    crate::cache::load();
    let code = match dispatch(cli.command) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            2
        }
    };
    crate::cache::save();
    code
}

fn parse_window(text: &str) -> Result<(i64, i64)> {
    let (lo, hi) = text
        .split_once("..")
        .ok_or_else(|| SchubertError::Parse(format!("window must be LO..HI, got {text:?}")))?;
    let lo = lo
        .trim()
        .parse()
        .map_err(|_| SchubertError::Parse(format!("bad window start {lo:?}")))?;
    let hi = hi
        .trim()
        .parse()
        .map_err(|_| SchubertError::Parse(format!("bad window end {hi:?}")))?;
    if lo > hi {
        return Err(SchubertError::Validation(format!("empty window {text:?}")));
    }
    Ok((lo, hi))
}

fn poly_out(f: &MultiPoly, format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(&f.to_json()).expect("serializable"),
        _ => f.to_text(),
    }
}

fn vector_json(v: &SchubertVector<Rat>) -> serde_json::Value {
    let terms: Vec<_> = v
        .iter()
        .map(|(sigma, c)| json!({"sigma": sigma.to_string(), "coefficient": c.to_string()}))
        .collect();
    json!(terms)
}

fn dispatch(command: Command) -> Result<i32> {
    match command {
        Command::Rw { perm, offset, format } => {
            let p = Permutation::parse(&perm, offset)?;
            let words = p.reduced_words();
            match format {
                Format::Json => {
                    let body = json!({
                        "permutation": p.to_string(),
                        "length": p.length(),
                        "words": words.as_ref(),
                        "comaj": words.iter().map(|w| comaj(w)).collect::<Vec<_>>(),
                    });
                    println!("{}", serde_json::to_string_pretty(&body).expect("serializable"));
                }
                _ => {
                    println!("permutation {p} (length {})", p.length());
                    for w in words.iter() {
                        let letters: Vec<String> = w.iter().map(|l| l.to_string()).collect();
                        println!("{} (comaj {})", letters.join(" "), comaj(w));
                    }
                }
            }
            Ok(0)
        }
        Command::Mult { pi, rho, offset, format } => {
            let p = Permutation::parse(&pi, offset)?;
            let r = Permutation::parse(&rho, offset)?;
            let c = structure_constants(&p, &r);
            match format {
                Format::Json => {
                    let body = json!({
                        "pi": p.to_string(),
                        "rho": r.to_string(),
                        "terms": vector_json(&c),
                    });
                    println!("{}", serde_json::to_string_pretty(&body).expect("serializable"));
                }
                _ => println!("{c}"),
            }
            Ok(0)
        }
        Command::Genus { kind, perm, i, j, offset, format } => {
            let p = Permutation::parse(&perm, offset)?;
            match kind.as_str() {
                "klyachko" => println!("{}", poly_out(&klyachko_genus(&p), format)),
                "affine" => println!("{}", poly_out(&affine_linear_genus(&p), format)),
                "component" => {
                    let (i, j) = match (i, j) {
                        (Some(i), Some(j)) => (i, j),
                        _ => {
                            return Err(SchubertError::Validation(
                                "component genus needs --i and --j".into(),
                            ))
                        }
                    };
                    let spec = ComponentSpec::two_slope(i, j)?;
                    println!("{}", poly_out(&component_evaluate(&spec, &p), format));
                }
                "q" => {
                    let value = q_klyachko_genus(&p);
                    match format {
                        Format::Json => {
                            let body = json!({
                                "numerator": value.numerator.to_json(),
                                "denom_length": value.denom_length,
                                "denominator": value.denominator().to_json(),
                            });
                            println!(
                                "{}",
                                serde_json::to_string_pretty(&body).expect("serializable")
                            );
                        }
                        _ => println!("{value}"),
                    }
                }
                _ => unreachable!("clap restricts the genus kind"),
            }
            Ok(0)
        }
        Command::Triangle { perm, offset, format } => {
            let p = Permutation::parse(&perm, offset)?;
            let exponential = exp_triangle(&p);
            let genus = affine_linear_genus(&p);
            let equal = exponential == genus;
            match format {
                Format::Json => {
                    let body = json!({
                        "permutation": p.to_string(),
                        "exponential": exponential.to_json(),
                        "genus": genus.to_json(),
                        "equal": equal,
                    });
                    println!("{}", serde_json::to_string_pretty(&body).expect("serializable"));
                }
                _ => {
                    println!("exp route:   {exponential}");
                    println!("genus route: {genus}");
                    println!("equal: {equal}");
                }
            }
            Ok(if equal { 0 } else { 1 })
        }
        Command::Coproduct { perm, offset, format } => {
            let p = Permutation::parse(&perm, offset)?;
            let delta = coproduct(&SchubertVector::basis(p));
            match format {
                Format::Json => {
                    let terms: Vec<_> = delta
                        .iter()
                        .map(|((a, b), c)| {
                            json!({
                                "left": a.to_string(),
                                "right": b.to_string(),
                                "coefficient": c.to_string(),
                            })
                        })
                        .collect();
                    println!(
                        "{}",
                        serde_json::to_string_pretty(&json!(terms)).expect("serializable")
                    );
                }
                _ => println!("{delta}"),
            }
            Ok(0)
        }
        Command::Stanley { perm, offset, format } => {
            let p = Permutation::parse(&perm, offset)?;
            let st = stanley_coefficients(&p);
            match format {
                Format::Json => {
                    let terms: Vec<_> = st
                        .iter()
                        .map(|(shape, a)| {
                            json!({"partition": shape.parts(), "coefficient": a.to_string()})
                        })
                        .collect();
                    println!(
                        "{}",
                        serde_json::to_string_pretty(&json!(terms)).expect("serializable")
                    );
                }
                _ => {
                    for (shape, a) in st.iter() {
                        println!("{a} * Schur{shape}");
                    }
                }
            }
            Ok(0)
        }
        Command::Verify { suite, max_length, window, jobs, format } => {
            let window = window.as_deref().map(parse_window).transpose()?;
            let opts = SweepOptions { max_length, window, jobs };
            let reports: Vec<VerificationReport> = if suite == "all" {
                run_all(&opts)?
            } else {
                vec![run_suite(&suite, &opts)?]
            };
            match format {
                Format::Json => println!(
                    "{}",
                    serde_json::to_string_pretty(&reports).expect("serializable")
                ),
                _ => {
                    for report in &reports {
                        println!("{}", report.to_text());
                    }
                }
            }
            Ok(if reports.iter().all(|r| r.pass) { 0 } else { 1 })
        }
        Command::TableEgg { pi, rho, offset, format } => {
            let p = Permutation::parse(&pi, offset)?;
            let r = Permutation::parse(&rho, offset)?;
            let table = table_egg(&p, &r)?;
            match format {
                Format::Json => println!(
                    "{}",
                    serde_json::to_string_pretty(&table).expect("serializable")
                ),
                _ => print!("{}", table.to_csv()),
            }
            Ok(0)
        }
        Command::Rectify { pi, rho, bars, offset } => {
            let p = Permutation::parse(&pi, offset)?;
            let r = Permutation::parse(&rho, offset)?;
            let select = if bars == "all" {
                BarSelect::All
            } else {
                let k: usize = bars.parse().map_err(|_| {
                    SchubertError::Parse(format!("--bars takes a count or \"all\", got {bars:?}"))
                })?;
                BarSelect::Exactly(k)
            };
            let witness = rectification_witness(&p, &r, select)?;
            println!(
                "{}",
                serde_json::to_string_pretty(&witness).expect("serializable")
            );
            Ok(0)
        }
    }
}
