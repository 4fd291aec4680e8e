//! Text formats for polynomials, border decompositions, generalized additive
//! decompositions and Waring decompositions.
//!
//! Lines starting with `#` and blank lines are ignored. Headers carry the
//! variable count, degree and conductor; printing embeds every coefficient
//! into the header conductor so that `parse(print(v)) = v` and printed
//! output is canonical byte for byte.

use std::fmt;
use std::sync::Arc;

use num_integer::Integer;

use waring_core::border::BorderDecomposition;
use waring_core::cyclotomic::{make_context, FieldContext, Scalar};
use waring_core::eps::EpsScalar;
use waring_core::gad::{Gad, GadPart};
use waring_core::poly::{LinForm, Monomial, Poly};
use waring_core::synthesis::WaringDecomposition;

use crate::expr::{parse_eps, parse_scalar};

pub const DEFAULT_MAX_CONDUCTOR: u64 = 512;

#[derive(Clone, Debug, PartialEq)]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub msg: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "line {}, column {}: {}",
            self.line,
            self.col + 1,
            self.msg
        )
    }
}

impl std::error::Error for ParseError {}

fn err<T>(line: usize, col: usize, msg: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError {
        line,
        col,
        msg: msg.into(),
    })
}

/// Numbered content lines with comments and blanks stripped.
fn content_lines(src: &str) -> Vec<(usize, &str)> {
    src.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
        .collect()
}

fn parse_header(
    line: &str,
    lineno: usize,
    kind: &str,
    keys: &[&str],
) -> Result<Vec<u64>, ParseError> {
    let mut tokens = line.split_whitespace();
    match tokens.next() {
        Some(k) if k == kind => {}
        _ => return err(lineno, 0, format!("expected a '{kind}' header")),
    }
    let mut values = Vec::with_capacity(keys.len());
    for key in keys {
        let Some(token) = tokens.next() else {
            return err(lineno, 0, format!("missing {key}= in header"));
        };
        let Some(value) = token.strip_prefix(&format!("{key}=")) else {
            return err(
                lineno,
                0,
                format!("expected {key}=<integer>, found '{token}'"),
            );
        };
        match value.parse::<u64>() {
            Ok(v) => values.push(v),
            Err(_) => return err(lineno, 0, format!("invalid integer in {key}=")),
        }
    }
    if let Some(extra) = tokens.next() {
        return err(lineno, 0, format!("unexpected header token '{extra}'"));
    }
    Ok(values)
}

fn check_conductor(n: u64, limit: u64, lineno: usize) -> Result<Arc<FieldContext>, ParseError> {
    if n == 0 {
        return err(lineno, 0, "conductor must be positive");
    }
    if n > limit {
        return err(
            lineno,
            0,
            format!("conductor {n} exceeds the --max-conductor limit {limit}"),
        );
    }
    Ok(make_context(n))
}

fn scalar_conductor(s: &Scalar) -> u64 {
    s.context().map_or(1, |c| c.conductor())
}

fn eps_conductor(x: &EpsScalar) -> u64 {
    let mut n = 1;
    for c in x.num().coeffs().iter().chain(x.den().coeffs()) {
        n = n.lcm(&scalar_conductor(c));
    }
    n
}

pub fn poly_conductor(f: &Poly<Scalar>) -> u64 {
    f.terms()
        .fold(1u64, |n, (_, c)| n.lcm(&scalar_conductor(c)))
}

pub fn border_conductor(b: &BorderDecomposition) -> u64 {
    b.summands().iter().fold(1u64, |n, (w, form)| {
        let n = n.lcm(&eps_conductor(w));
        form.coeffs()
            .iter()
            .fold(n, |n, c| n.lcm(&eps_conductor(c)))
    })
}

pub fn waring_conductor(w: &WaringDecomposition) -> u64 {
    w.summands().iter().fold(1u64, |n, (c, form)| {
        let n = n.lcm(&scalar_conductor(c));
        form.coeffs()
            .iter()
            .fold(n, |n, c| n.lcm(&scalar_conductor(c)))
    })
}

pub fn gad_conductor(g: &Gad) -> u64 {
    g.parts().iter().fold(1u64, |n, part| {
        let n = part
            .form
            .coeffs()
            .iter()
            .fold(n, |n, c| n.lcm(&scalar_conductor(c)));
        n.lcm(&poly_conductor(&part.cofactor))
    })
}

// ---------------------------------------------------------------------------
// poly files
// ---------------------------------------------------------------------------

pub fn parse_poly(src: &str, limit: u64) -> Result<Poly<Scalar>, ParseError> {
    let lines = content_lines(src);
    let Some(&(lineno, header)) = lines.first() else {
        return err(0, 0, "empty input");
    };
    let values = parse_header(header, lineno, "poly", &["n", "d", "N"])?;
    let (n, d, cond) = (values[0] as usize, values[1] as u32, values[2]);
    if n == 0 {
        return err(lineno, 0, "n must be positive");
    }
    let ctx = check_conductor(cond, limit, lineno)?;
    let mut poly = Poly::zero(n, d);
    for &(lineno, line) in &lines[1..] {
        let Some((coeff_src, exps_src)) = line.split_once(';') else {
            return err(lineno, 0, "expected '<scalar> ; <exponents>'");
        };
        let coeff = parse_scalar(coeff_src.trim(), &ctx)
            .map_err(|e| ParseError {
                line: lineno,
                col: e.col,
                msg: e.msg,
            })?
            .embed(&ctx)
            .expect("parsed in this context");
        let exps: Result<Vec<u32>, _> = exps_src.split_whitespace().map(str::parse).collect();
        let Ok(exps) = exps else {
            return err(lineno, 0, "invalid exponent list");
        };
        if exps.len() != n {
            return err(
                lineno,
                0,
                format!("expected {n} exponents, found {}", exps.len()),
            );
        }
        let total: u32 = exps.iter().sum();
        if total != d {
            return err(lineno, 0, format!("term degree {total} differs from d={d}"));
        }
        poly.add_term(Monomial::new(exps), coeff);
    }
    Ok(poly)
}

fn render_poly_terms(out: &mut String, f: &Poly<Scalar>, ctx: &Arc<FieldContext>) {
    let terms: Vec<_> = f.terms().collect();
    for (m, c) in terms.into_iter().rev() {
        let c = c.embed(ctx).expect("conductor covers all coefficients");
        out.push_str(&c.to_string());
        out.push_str(" ; ");
        let exps: Vec<String> = m.exps().iter().map(u32::to_string).collect();
        out.push_str(&exps.join(" "));
        out.push('\n');
    }
}

pub fn print_poly(f: &Poly<Scalar>) -> String {
    print_poly_with_conductor(f, poly_conductor(f))
}

pub fn print_poly_with_conductor(f: &Poly<Scalar>, cond: u64) -> String {
    let ctx = make_context(cond);
    let mut out = format!("poly n={} d={} N={}\n", f.nvars(), f.degree(), cond);
    render_poly_terms(&mut out, f, &ctx);
    out
}

// ---------------------------------------------------------------------------
// border files
// ---------------------------------------------------------------------------

pub fn parse_border(src: &str, limit: u64) -> Result<BorderDecomposition, ParseError> {
    let lines = content_lines(src);
    let Some(&(lineno, header)) = lines.first() else {
        return err(0, 0, "empty input");
    };
    let values = parse_header(header, lineno, "border", &["n", "d", "N", "r"])?;
    let (n, d, cond, r) = (values[0] as usize, values[1] as u32, values[2], values[3]);
    if n == 0 {
        return err(lineno, 0, "n must be positive");
    }
    let ctx = check_conductor(cond, limit, lineno)?;
    let body = &lines[1..];
    if body.len() != r as usize {
        return err(
            lineno,
            0,
            format!("header says r={r} but found {} summand lines", body.len()),
        );
    }
    let mut summands = Vec::with_capacity(body.len());
    for &(lineno, line) in body {
        let Some((weight_src, form_src)) = line.split_once(';') else {
            return err(lineno, 0, "expected 'weight=<expr> ; <expr> ...'");
        };
        let Some(weight_src) = weight_src.trim().strip_prefix("weight=") else {
            return err(lineno, 0, "summand line must start with weight=");
        };
        let weight = parse_eps(weight_src, &ctx).map_err(|e| ParseError {
            line: lineno,
            col: e.col,
            msg: e.msg,
        })?;
        let tokens: Vec<&str> = form_src.split_whitespace().collect();
        if tokens.len() != n {
            return err(
                lineno,
                0,
                format!(
                    "expected {n} coefficient expressions, found {}",
                    tokens.len()
                ),
            );
        }
        let coeffs: Result<Vec<EpsScalar>, ParseError> = tokens
            .iter()
            .map(|t| {
                parse_eps(t, &ctx).map_err(|e| ParseError {
                    line: lineno,
                    col: e.col,
                    msg: e.msg,
                })
            })
            .collect();
        summands.push((weight, LinForm::new(coeffs?)));
    }
    BorderDecomposition::new(n, d, summands).map_err(|e| ParseError {
        line: lineno,
        col: 0,
        msg: e.to_string(),
    })
}

pub fn print_border(b: &BorderDecomposition) -> String {
    let cond = border_conductor(b);
    let ctx = make_context(cond);
    let mut out = format!(
        "border n={} d={} N={} r={}\n",
        b.nvars(),
        b.degree(),
        cond,
        b.rank()
    );
    for (weight, form) in b.summands() {
        let weight = weight.embed(&ctx).expect("conductor covers weights");
        out.push_str(&format!("weight={weight} ; "));
        let coeffs: Vec<String> = form
            .coeffs()
            .iter()
            .map(|c| c.embed(&ctx).expect("conductor covers forms").to_string())
            .collect();
        out.push_str(&coeffs.join(" "));
        out.push('\n');
    }
    out
}

// ---------------------------------------------------------------------------
// waring files
// ---------------------------------------------------------------------------

pub fn parse_waring(src: &str, limit: u64) -> Result<WaringDecomposition, ParseError> {
    let lines = content_lines(src);
    let Some(&(lineno, header)) = lines.first() else {
        return err(0, 0, "empty input");
    };
    let values = parse_header(header, lineno, "waring", &["n", "d", "N", "r"])?;
    let (n, d, cond, r) = (values[0] as usize, values[1] as u32, values[2], values[3]);
    if n == 0 {
        return err(lineno, 0, "n must be positive");
    }
    let ctx = check_conductor(cond, limit, lineno)?;
    let body = &lines[1..];
    if body.len() != r as usize {
        return err(
            lineno,
            0,
            format!("header says r={r} but found {} summand lines", body.len()),
        );
    }
    let mut summands = Vec::with_capacity(body.len());
    for &(lineno, line) in body {
        let Some((weight_src, form_src)) = line.split_once(';') else {
            return err(lineno, 0, "expected 'weight=<scalar> ; <scalar> ...'");
        };
        let Some(weight_src) = weight_src.trim().strip_prefix("weight=") else {
            return err(lineno, 0, "summand line must start with weight=");
        };
        let map_err = |e: crate::expr::ExprError| ParseError {
            line: lineno,
            col: e.col,
            msg: e.msg,
        };
        let weight = parse_scalar(weight_src, &ctx).map_err(map_err)?;
        let tokens: Vec<&str> = form_src.split_whitespace().collect();
        if tokens.len() != n {
            return err(
                lineno,
                0,
                format!("expected {n} coefficients, found {}", tokens.len()),
            );
        }
        let coeffs: Result<Vec<Scalar>, ParseError> = tokens
            .iter()
            .map(|t| parse_scalar(t, &ctx).map_err(map_err))
            .collect();
        summands.push((weight, LinForm::new(coeffs?)));
    }
    Ok(WaringDecomposition::new(n, d, summands))
}

pub fn print_waring(w: &WaringDecomposition) -> String {
    let cond = waring_conductor(w);
    let ctx = make_context(cond);
    let mut out = format!(
        "waring n={} d={} N={} r={}\n",
        w.nvars(),
        w.degree(),
        cond,
        w.rank()
    );
    for (weight, form) in w.summands() {
        let weight = weight.embed(&ctx).expect("conductor covers weights");
        out.push_str(&format!("weight={weight} ; "));
        let coeffs: Vec<String> = form
            .coeffs()
            .iter()
            .map(|c| c.embed(&ctx).expect("conductor covers forms").to_string())
            .collect();
        out.push_str(&coeffs.join(" "));
        out.push('\n');
    }
    out
}

// ---------------------------------------------------------------------------
// gad files
// ---------------------------------------------------------------------------

pub fn parse_gad(src: &str, limit: u64) -> Result<Gad, ParseError> {
    let lines = content_lines(src);
    let Some(&(header_line, header)) = lines.first() else {
        return err(0, 0, "empty input");
    };
    let values = parse_header(header, header_line, "gad", &["n", "d", "N", "m"])?;
    let (n, d, cond, m) = (values[0] as usize, values[1] as u32, values[2], values[3]);
    if n == 0 {
        return err(header_line, 0, "n must be positive");
    }
    let ctx = check_conductor(cond, limit, header_line)?;

    let mut parts = Vec::new();
    let mut idx = 1;
    while idx < lines.len() {
        let (lineno, line) = lines[idx];
        let Some(form_src) = line.strip_prefix("form=") else {
            return err(lineno, 0, "expected a form= line");
        };
        let map_err = |e: crate::expr::ExprError, lineno: usize| ParseError {
            line: lineno,
            col: e.col,
            msg: e.msg,
        };
        let tokens: Vec<&str> = form_src.split_whitespace().collect();
        if tokens.len() != n {
            return err(
                lineno,
                0,
                format!("expected {n} coefficients, found {}", tokens.len()),
            );
        }
        let coeffs: Result<Vec<Scalar>, ParseError> = tokens
            .iter()
            .map(|t| parse_scalar(t, &ctx).map_err(|e| map_err(e, lineno)))
            .collect();
        let form = LinForm::new(coeffs?);
        idx += 1;

        let Some(&(lineno, line)) = lines.get(idx) else {
            return err(lineno, 0, "missing r= line");
        };
        let Some(r_src) = line.strip_prefix("r=") else {
            return err(lineno, 0, "expected an r= line");
        };
        let Ok(multiplicity) = r_src.trim().parse::<usize>() else {
            return err(lineno, 0, "invalid multiplicity");
        };
        idx += 1;

        // nested polynomial block: header + term lines until the next form=
        let Some(&(plineno, pheader)) = lines.get(idx) else {
            return err(lineno, 0, "missing cofactor polynomial");
        };
        let pvalues = parse_header(pheader, plineno, "poly", &["n", "d", "N"])?;
        if pvalues[0] as usize != n {
            return err(plineno, 0, "cofactor variable count differs from header");
        }
        if cond % pvalues[2] != 0 {
            return err(
                plineno,
                0,
                "cofactor conductor must divide the header conductor",
            );
        }
        idx += 1;
        let mut block = String::from(pheader);
        block.push('\n');
        while let Some(&(_, line)) = lines.get(idx) {
            if line.starts_with("form=") {
                break;
            }
            block.push_str(line);
            block.push('\n');
            idx += 1;
        }
        let cofactor = parse_poly(&block, limit).map_err(|e| ParseError {
            line: plineno + e.line.saturating_sub(1),
            col: e.col,
            msg: e.msg,
        })?;
        let cofactor = cofactor
            .try_map_coeffs(|c| c.embed(&ctx))
            .expect("cofactor conductor divides header conductor");
        parts.push(GadPart {
            form,
            multiplicity,
            cofactor,
        });
    }
    if parts.len() != m as usize {
        return err(
            header_line,
            0,
            format!("header says m={m} but found {} parts", parts.len()),
        );
    }
    Gad::new(n, d, parts).map_err(|e| ParseError {
        line: header_line,
        col: 0,
        msg: format!("invalid decomposition: {e}"),
    })
}

pub fn print_gad(g: &Gad) -> String {
    let cond = gad_conductor(g);
    let ctx = make_context(cond);
    let mut out = format!(
        "gad n={} d={} N={} m={}\n",
        g.nvars(),
        g.degree(),
        cond,
        g.parts().len()
    );
    for part in g.parts() {
        let coeffs: Vec<String> = part
            .form
            .coeffs()
            .iter()
            .map(|c| c.embed(&ctx).expect("conductor covers forms").to_string())
            .collect();
        out.push_str(&format!("form= {}\n", coeffs.join(" ")));
        out.push_str(&format!("r= {}\n", part.multiplicity));
        out.push_str(&format!(
            "poly n={} d={} N={}\n",
            g.nvars(),
            part.cofactor.degree(),
            cond
        ));
        render_poly_terms(&mut out, &part.cofactor, &ctx);
    }
    out
}

/// Compare polynomials that may live in different cyclotomic contexts by
/// embedding both into the least common one.
pub fn polys_equal(a: &Poly<Scalar>, b: &Poly<Scalar>) -> bool {
    if a.nvars() != b.nvars() {
        return false;
    }
    let cond = poly_conductor(a).lcm(&poly_conductor(b));
    let ctx = make_context(cond);
    let ea = a.try_map_coeffs(|c| c.embed(&ctx)).expect("lcm conductor");
    let eb = b.try_map_coeffs(|c| c.embed(&ctx)).expect("lcm conductor");
    ea == eb
}
