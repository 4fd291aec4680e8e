//! `waring` — exact debordering of border Waring rank decompositions.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or input error,
//! 3 computation error (for example a limit that does not exist), each with
//! a structured reason on stderr (or in the JSON output with --json).

use std::io::Read;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use num_integer::Integer;
use serde_json::{json, Value};

use waring_cli::format::{self, DEFAULT_MAX_CONDUCTOR};
use waring_core::apolarity::hilbert_function;
use waring_core::border::BorderDecomposition;
use waring_core::cyclotomic::Scalar;
use waring_core::error::Error as CoreError;
use waring_core::fixtures;
use waring_core::gad::{extract_gad, verify_gad_detailed, Gad};
use waring_core::oracles::{classify_small_border, NormalFormTag};
use waring_core::poly::Poly;
use waring_core::synthesis::{bounds, deborder, BoundReport, WaringDecomposition};

#[derive(Parser)]
#[command(
    name = "waring",
    version,
    about = "Exact debordering of border Waring rank decompositions",
    max_term_width = 100
)]
struct Cli {
    /// Emit machine-readable JSON mirroring the text formats
    #[arg(long, global = true)]
    json: bool,

    /// Reject computations that need a cyclotomic field of larger conductor
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_CONDUCTOR)]
    max_conductor: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Turn a border decomposition into a verified Waring decomposition
    Deborder {
        /// border file, or - for stdin
        input: String,
    },
    /// Extract the generalized additive decomposition of a border decomposition
    Gad {
        /// border file, or - for stdin
        input: String,
    },
    /// Exit 0 iff the border decomposition's limit equals the polynomial
    VerifyBorder { poly: String, border: String },
    /// Exit 0 iff the Waring decomposition expands to the polynomial
    VerifyWaring { poly: String, waring: String },
    /// Exit 0 iff the generalized additive decomposition sums to the polynomial
    VerifyGad { poly: String, gad: String },
    /// Print the debordering bound values for rank r, degree d, n variables
    RankBounds { r: usize, d: u32, n: usize },
    /// Classify small border rank and print a certificate
    Classify {
        /// poly file, or - for stdin
        input: String,
    },
    /// Print the Hilbert function of the apolar algebra
    Hilbert {
        /// poly file, or - for stdin
        input: String,
    },
    /// Emit the built-in example families
    Fixtures {
        #[command(subcommand)]
        which: Fixture,
    },
}

#[derive(Subcommand)]
enum Fixture {
    /// x^{d-1}y as a two-summand limit (border rank 2, rank d)
    IntroTangent {
        #[arg(long)]
        d: u32,
    },
    /// x0^{d-1}y0 + x1^{d-1}y1 + 2(x0+x1)^{d-1}y2 as a six-summand limit
    Eq1Fd {
        #[arg(long)]
        d: u32,
    },
    /// the wild cubic: five summands whose classes have no individual limits
    Eq2Wild,
    /// a pseudo-random member of a small-border-rank normal form family
    NormalForm {
        /// POWER, SUM2, TANGENT, SUM3, SUM1_TANGENT or BWR3_LOCAL
        #[arg(long)]
        tag: String,
        #[arg(long)]
        d: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

/// A failed run: exit code plus a structured reason.
struct Failure {
    code: u8,
    reason: String,
}

fn usage(reason: impl Into<String>) -> Failure {
    Failure {
        code: 2,
        reason: reason.into(),
    }
}

fn computation(err: CoreError) -> Failure {
    Failure {
        code: 3,
        reason: err.to_string(),
    }
}

fn verification(reason: impl Into<String>) -> Failure {
    Failure {
        code: 1,
        reason: reason.into(),
    }
}

impl From<format::ParseError> for Failure {
    fn from(e: format::ParseError) -> Self {
        usage(e.to_string())
    }
}

fn read_input(path: &str) -> Result<String, Failure> {
    if path == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| usage(format!("cannot read stdin: {e}")))?;
        Ok(buf)
    } else {
        std::fs::read_to_string(path).map_err(|e| usage(format!("cannot read {path}: {e}")))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(output) => {
            print!("{output}");
            ExitCode::SUCCESS
        }
        Err(failure) => {
            if cli.json {
                let doc = json!({ "error": { "code": failure.code, "reason": failure.reason } });
                println!("{doc:#}");
            } else {
                eprintln!("error: {}", failure.reason);
            }
            ExitCode::from(failure.code)
        }
    }
}

fn run(cli: &Cli) -> Result<String, Failure> {
    let limit = cli.max_conductor;
    match &cli.command {
        Command::Deborder { input } => {
            let b = format::parse_border(&read_input(input)?, limit)?;
            guard_synthesis_conductor(&b, limit)?;
            let out = deborder(&b).map_err(computation)?;
            let report = bound_report(&b);
            if cli.json {
                let mut doc = json!({ "waring": waring_json(&out) });
                if let Some(report) = &report {
                    doc["bounds"] = bounds_json(report, b.nvars());
                }
                Ok(format!("{doc:#}\n"))
            } else {
                let mut text = format::print_waring(&out);
                if let Some(report) = &report {
                    text.push_str(&format!(
                        "# bounds: r={} d={} binom_bound={} bt_bound={} fp_bound={} generic_rank={}\n",
                        report.rank,
                        report.degree,
                        report.binom_bound,
                        report.bt_bound,
                        report.fp_bound,
                        report.generic_rank
                    ));
                }
                Ok(text)
            }
        }
        Command::Gad { input } => {
            let b = format::parse_border(&read_input(input)?, limit)?;
            let extraction = extract_gad(&b).map_err(computation)?;
            if cli.json {
                Ok(format!(
                    "{:#}\n",
                    json!({ "gad": gad_json(&extraction.gad) })
                ))
            } else {
                Ok(format::print_gad(&extraction.gad))
            }
        }
        Command::VerifyBorder { poly, border } => {
            let f = format::parse_poly(&read_input(poly)?, limit)?;
            let b = format::parse_border(&read_input(border)?, limit)?;
            let limit_poly = b
                .limit()
                .map_err(|e| verification(format!("limit does not exist: {e}")))?;
            if !format::polys_equal(&f, &limit_poly) {
                return Err(verification("the limit differs from the polynomial"));
            }
            verified_output(cli, "border decomposition converges to the polynomial")
        }
        Command::VerifyWaring { poly, waring } => {
            let f = format::parse_poly(&read_input(poly)?, limit)?;
            let w = format::parse_waring(&read_input(waring)?, limit)?;
            if !format::polys_equal(&f, &w.expand()) {
                return Err(verification("the expansion differs from the polynomial"));
            }
            verified_output(cli, "waring decomposition expands to the polynomial")
        }
        Command::VerifyGad { poly, gad } => {
            let f = format::parse_poly(&read_input(poly)?, limit)?;
            let g = format::parse_gad(&read_input(gad)?, limit)?;
            let embedded = embed_into_common(&f, &g)?;
            if let Err(defect) = verify_gad_detailed(&g, &embedded) {
                return Err(verification(format!("invalid decomposition: {defect}")));
            }
            verified_output(
                cli,
                "generalized additive decomposition sums to the polynomial",
            )
        }
        Command::RankBounds { r, d, n } => {
            if *r == 0 || *d == 0 || *n == 0 {
                return Err(usage("r, d and n must be positive"));
            }
            let report = bounds(*r, *d, *n);
            if cli.json {
                Ok(format!("{:#}\n", bounds_json(&report, *n)))
            } else {
                Ok(format!(
                    "r={} d={} n={} binom_bound={} bt_bound={} fp_bound={} generic_rank={}\n",
                    report.rank,
                    report.degree,
                    n,
                    report.binom_bound,
                    report.bt_bound,
                    report.fp_bound,
                    report.generic_rank
                ))
            }
        }
        Command::Classify { input } => {
            let f = format::parse_poly(&read_input(input)?, limit)?;
            let cert = classify_small_border(&f).map_err(computation)?;
            let tag = cert.tag.map_or("UNKNOWN", NormalFormTag::name);
            if cli.json {
                let witnesses: Vec<Value> = cert
                    .witness_forms
                    .iter()
                    .map(|w| {
                        Value::Array(
                            w.coeffs()
                                .iter()
                                .map(|c| Value::String(c.to_string()))
                                .collect(),
                        )
                    })
                    .collect();
                let doc = json!({
                    "certificate": {
                        "kind": cert.kind.name(),
                        "value": cert.value,
                        "tag": tag,
                        "witness_forms": witnesses,
                        "kernel_operator": cert.kernel_element.as_ref().map(|k| k.to_string()),
                    }
                });
                Ok(format!("{doc:#}\n"))
            } else {
                let mut out = format!(
                    "certificate kind={} value={} tag={}\n",
                    cert.kind.name(),
                    cert.value,
                    tag
                );
                for w in &cert.witness_forms {
                    let coeffs: Vec<String> = w.coeffs().iter().map(Scalar::to_string).collect();
                    out.push_str(&format!("witness-form= {}\n", coeffs.join(" ")));
                }
                if let Some(op) = &cert.kernel_element {
                    out.push_str(&format!("kernel-operator= {op}\n"));
                    out.push_str("# x1..xn in kernel-operator denote the dual partial derivative operators;\n");
                    out.push_str("# re-verify: applying it to the input polynomial yields zero\n");
                }
                out.push_str(
                    "# re-verify witness forms: expand the tagged normal form built from them\n",
                );
                Ok(out)
            }
        }
        Command::Hilbert { input } => {
            let f = format::parse_poly(&read_input(input)?, limit)?;
            let profile = hilbert_function(&f).map_err(computation)?;
            let values: Vec<String> = profile.values().iter().map(usize::to_string).collect();
            if cli.json {
                Ok(format!("{:#}\n", json!({ "hilbert": profile.values() })))
            } else {
                Ok(format!("{}\n", values.join(" ")))
            }
        }
        Command::Fixtures { which } => {
            let doc = match which {
                Fixture::IntroTangent { d } => {
                    if *d < 2 {
                        return Err(usage("intro-tangent requires --d at least 2"));
                    }
                    FixtureOutput::Border(fixtures::intro_tangent(*d))
                }
                Fixture::Eq1Fd { d } => {
                    if *d <= 3 {
                        return Err(usage("eq1-fd requires --d at least 4"));
                    }
                    FixtureOutput::Border(fixtures::eq1_fd(*d))
                }
                Fixture::Eq2Wild => FixtureOutput::Border(fixtures::eq2_wild()),
                Fixture::NormalForm { tag, d, seed } => {
                    let tag = NormalFormTag::from_name(tag)
                        .ok_or_else(|| usage(format!("unknown tag {tag}")))?;
                    let f = waring_core::oracles::normal_form_sample(tag, *d, *seed)
                        .map_err(computation)?;
                    FixtureOutput::Poly(f)
                }
            };
            match doc {
                FixtureOutput::Border(b) => {
                    if cli.json {
                        Ok(format!("{:#}\n", json!({ "border": border_json(&b) })))
                    } else {
                        Ok(format::print_border(&b))
                    }
                }
                FixtureOutput::Poly(f) => {
                    if cli.json {
                        Ok(format!("{:#}\n", json!({ "poly": poly_json(&f) })))
                    } else {
                        Ok(format::print_poly(&f))
                    }
                }
            }
        }
    }
}

enum FixtureOutput {
    Border(BorderDecomposition),
    Poly(Poly<Scalar>),
}

fn verified_output(cli: &Cli, message: &str) -> Result<String, Failure> {
    if cli.json {
        Ok(format!("{:#}\n", json!({ "ok": true, "reason": message })))
    } else {
        Ok(format!("ok: {message}\n"))
    }
}

fn bound_report(b: &BorderDecomposition) -> Option<BoundReport> {
    if b.rank() == 0 || b.degree() == 0 {
        return None;
    }
    Some(bounds(b.rank(), b.degree(), b.nvars()))
}

/// Conservative bound on the conductor synthesize may pick: the lcm of the
/// input conductor with every root-of-unity order the parts can request.
fn guard_synthesis_conductor(b: &BorderDecomposition, limit: u64) -> Result<(), Failure> {
    let d = b.degree();
    let r = b.rank();
    if (d as i64) < r as i64 - 1 {
        return Ok(()); // fallback path introduces no new roots of unity
    }
    let extraction = extract_gad(b).map_err(computation)?;
    let mut needed = format::gad_conductor(&extraction.gad);
    for part in extraction.gad.parts() {
        let r_k = part.multiplicity as u32;
        if r_k >= 2 && d + 1 - r_k >= 1 {
            let order = (d + 2 - r_k).max(r_k) as u64;
            needed = needed.lcm(&order);
        }
    }
    if needed > limit {
        return Err(Failure {
            code: 3,
            reason: format!(
                "synthesis may need zeta({needed}), beyond the --max-conductor limit {limit}"
            ),
        });
    }
    Ok(())
}

fn embed_into_common(f: &Poly<Scalar>, g: &Gad) -> Result<Poly<Scalar>, Failure> {
    let cond = format::poly_conductor(f).lcm(&format::gad_conductor(g));
    let ctx = waring_core::cyclotomic::make_context(cond);
    f.try_map_coeffs(|c| c.embed(&ctx)).map_err(computation)
}

fn poly_json(f: &Poly<Scalar>) -> Value {
    let cond = format::poly_conductor(f);
    let ctx = waring_core::cyclotomic::make_context(cond);
    let terms: Vec<Value> = f
        .terms()
        .collect::<Vec<_>>()
        .into_iter()
        .rev()
        .map(|(m, c)| {
            json!({
                "coeff": c.embed(&ctx).unwrap().to_string(),
                "exps": m.exps(),
            })
        })
        .collect();
    json!({
        "n": f.nvars(),
        "d": f.degree(),
        "N": cond,
        "terms": terms,
    })
}

fn border_json(b: &BorderDecomposition) -> Value {
    let cond = format::border_conductor(b);
    let ctx = waring_core::cyclotomic::make_context(cond);
    let summands: Vec<Value> = b
        .summands()
        .iter()
        .map(|(w, form)| {
            let coeffs: Vec<String> = form
                .coeffs()
                .iter()
                .map(|c| c.embed(&ctx).unwrap().to_string())
                .collect();
            json!({
                "weight": w.embed(&ctx).unwrap().to_string(),
                "coeffs": coeffs,
            })
        })
        .collect();
    json!({
        "n": b.nvars(),
        "d": b.degree(),
        "N": cond,
        "r": b.rank(),
        "summands": summands,
    })
}

fn waring_json(w: &WaringDecomposition) -> Value {
    let cond = format::waring_conductor(w);
    let ctx = waring_core::cyclotomic::make_context(cond);
    let summands: Vec<Value> = w
        .summands()
        .iter()
        .map(|(c, form)| {
            let coeffs: Vec<String> = form
                .coeffs()
                .iter()
                .map(|c| c.embed(&ctx).unwrap().to_string())
                .collect();
            json!({
                "weight": c.embed(&ctx).unwrap().to_string(),
                "coeffs": coeffs,
            })
        })
        .collect();
    json!({
        "n": w.nvars(),
        "d": w.degree(),
        "N": cond,
        "r": w.rank(),
        "summands": summands,
    })
}

fn gad_json(g: &Gad) -> Value {
    let cond = format::gad_conductor(g);
    let ctx = waring_core::cyclotomic::make_context(cond);
    let parts: Vec<Value> = g
        .parts()
        .iter()
        .map(|part| {
            let coeffs: Vec<String> = part
                .form
                .coeffs()
                .iter()
                .map(|c| c.embed(&ctx).unwrap().to_string())
                .collect();
            json!({
                "form": coeffs,
                "r": part.multiplicity,
                "cofactor": poly_json(&part.cofactor),
            })
        })
        .collect();
    json!({
        "n": g.nvars(),
        "d": g.degree(),
        "N": cond,
        "m": g.parts().len(),
        "parts": parts,
    })
}

fn bounds_json(report: &BoundReport, n: usize) -> Value {
    json!({
        "r": report.rank,
        "d": report.degree,
        "n": n,
        "binom_bound": report.binom_bound.to_string(),
        "bt_bound": report.bt_bound.to_string(),
        "fp_bound": report.fp_bound.to_string(),
        "generic_rank": report.generic_rank.to_string(),
    })
}
