//! Border-rank-3 classification for three essential variables.
//!
//! All three normal forms are apolar to a degree-3 scheme supported on at
//! most three points, and the degree-2 piece of the annihilator (three
//! quadrics in the dual variables) cuts out that support. Candidate support
//! points are found exactly — pairwise resultants project the common zeros
//! onto two coordinates, gcds and squarefree splitting extract the roots that
//! live in the base field — and every candidate fit is re-verified by exact
//! reconstruction of f, so a returned tag is always correct. Supports with
//! coordinates outside ℚ (or hidden by degenerate projections) make the
//! classifier answer `None`, which the caller reports as UNKNOWN.

use alloc::vec;
use alloc::vec::Vec;

use super::binary::{affine_roots, BinForm};
use super::{peel_power_summand, solve_weights, NormalFormTag};
use crate::catalecticant::{catalecticant, rotate_form_to_first};
use crate::cyclotomic::Scalar;
use crate::error::Result;
use crate::poly::{LinForm, Monomial, Poly};
use crate::ring::Field;
use crate::upoly::UPoly;

pub(crate) fn classify_ternary(
    f: &Poly<Scalar>,
) -> Result<Option<(NormalFormTag, Vec<LinForm<Scalar>>)>> {
    debug_assert_eq!(f.nvars(), 3);
    let d = f.degree();
    if d < 2 {
        return Ok(None);
    }
    let quadrics = catalecticant(f, 2)?.operator_kernel();
    if quadrics.len() != 3 {
        return Ok(None);
    }
    let candidates = support_candidates(&quadrics);
    if candidates.is_empty() {
        return Ok(None);
    }

    if let Some(result) = fit_sum3(f, &candidates, d) {
        return Ok(Some(result));
    }
    if let Some(result) = fit_sum1_tangent(f, &candidates, d) {
        return Ok(Some(result));
    }
    if let Some(result) = fit_bwr3_local(f, &candidates, d) {
        return Ok(Some(result));
    }
    Ok(None)
}

/// Points [ℓ] with q(ℓ) = 0 for every quadric q, insofar as their
/// coordinates lie in the base field.
fn support_candidates(quadrics: &[Poly<Scalar>]) -> Vec<LinForm<Scalar>> {
    let mut candidates: Vec<LinForm<Scalar>> = Vec::new();
    let mut push = |form: LinForm<Scalar>| {
        if let Some(normalized) = form.normalized() {
            if !candidates.contains(&normalized) {
                candidates.push(normalized);
            }
        }
    };

    for elim in 0..3usize {
        let kept = keep_vars(elim);
        // unit point in the eliminated direction is invisible to the projection
        let unit = unit_point(elim);
        if quadrics.iter().all(|q| q.eval(&unit).is_zero()) {
            push(LinForm::new(unit.clone()));
        }

        let mut constraints: Vec<BinForm> = Vec::new();
        let mut involved: Vec<Vec<Poly<Scalar>>> = Vec::new();
        for q in quadrics {
            let slices = coeffs_in_var(q, elim);
            let deg = slices.iter().rposition(|s| !s.is_zero());
            match deg {
                None => {}
                Some(0) => constraints.push(binform_of_slice(&slices[0], elim)),
                Some(_) => involved.push(slices),
            }
        }
        for i in 0..involved.len() {
            for j in i + 1..involved.len() {
                let res = sylvester_resultant(&involved[i], &involved[j]);
                if !res.is_zero() {
                    constraints.push(binform_of_slice(&res, elim));
                }
            }
        }
        let Some(first) = constraints.first() else {
            continue;
        };
        let projected = constraints
            .iter()
            .skip(1)
            .fold(first.clone(), |acc, c| acc.gcd(c));
        for ((alpha, beta), _) in projected.field_roots() {
            // lift the projected root: substitute and intersect the
            // univariate conditions on the eliminated coordinate
            let univariates: Vec<UPoly<Scalar>> = quadrics
                .iter()
                .map(|q| restrict_to_line(q, elim, kept, &alpha, &beta))
                .collect();
            if univariates.iter().all(UPoly::is_zero) {
                continue; // a whole line of zeros; nothing to pin down here
            }
            let gcd = univariates
                .iter()
                .filter(|u| !u.is_zero())
                .fold(None::<UPoly<Scalar>>, |acc, u| match acc {
                    None => Some(u.clone()),
                    Some(g) => Some(g.gcd(u)),
                })
                .expect("some univariate is nonzero");
            for t in affine_roots(&gcd) {
                let mut point = vec![Scalar::from_int(0); 3];
                point[kept.0] = alpha.clone();
                point[kept.1] = beta.clone();
                point[elim] = t;
                push(LinForm::new(point));
            }
        }
    }

    candidates
        .into_iter()
        .filter(|form| quadrics.iter().all(|q| q.eval(form.coeffs()).is_zero()))
        .collect()
}

fn keep_vars(elim: usize) -> (usize, usize) {
    match elim {
        0 => (1, 2),
        1 => (0, 2),
        _ => (0, 1),
    }
}

fn unit_point(var: usize) -> Vec<Scalar> {
    let mut p = vec![Scalar::from_int(0); 3];
    p[var] = Scalar::from_int(1);
    p
}

/// Slices of a ternary form by the exponent of one variable; slice k is a
/// ternary polynomial not involving that variable.
fn coeffs_in_var(q: &Poly<Scalar>, var: usize) -> Vec<Poly<Scalar>> {
    let d = q.degree();
    let mut slices: Vec<Poly<Scalar>> = (0..=d).map(|k| Poly::zero(3, d - k)).collect();
    for (m, c) in q.terms() {
        let k = m.exp(var) as usize;
        let mut exps = m.exps().to_vec();
        exps[var] = 0;
        slices[k].add_term(Monomial::new(exps), c.clone());
    }
    slices
}

/// A ternary polynomial with `elim` unused, reindexed as a binary form.
fn binform_of_slice(slice: &Poly<Scalar>, elim: usize) -> BinForm {
    let kept = keep_vars(elim);
    let d = slice.degree();
    let mut out = Poly::zero(2, d);
    for (m, c) in slice.terms() {
        debug_assert_eq!(m.exp(elim), 0);
        out.add_term(Monomial::new(vec![m.exp(kept.0), m.exp(kept.1)]), c.clone());
    }
    BinForm::from_poly(&out)
}

/// q with the kept variables substituted by field values, as a univariate
/// polynomial in the eliminated variable.
fn restrict_to_line(
    q: &Poly<Scalar>,
    elim: usize,
    kept: (usize, usize),
    alpha: &Scalar,
    beta: &Scalar,
) -> UPoly<Scalar> {
    let d = q.degree() as usize;
    let mut coeffs = vec![Scalar::from_int(0); d + 1];
    for (m, c) in q.terms() {
        let k = m.exp(elim) as usize;
        let mut value = c.clone();
        for _ in 0..m.exp(kept.0) {
            value = value.mul(alpha);
        }
        for _ in 0..m.exp(kept.1) {
            value = value.mul(beta);
        }
        coeffs[k] = coeffs[k].add(&value);
    }
    UPoly::new(coeffs)
}

/// Resultant of two polynomials in the sliced variable, with ternary-poly
/// coefficients; both must actually involve the variable.
fn sylvester_resultant(p: &[Poly<Scalar>], q: &[Poly<Scalar>]) -> Poly<Scalar> {
    let dp = p.iter().rposition(|s| !s.is_zero()).expect("nonzero");
    let dq = q.iter().rposition(|s| !s.is_zero()).expect("nonzero");
    let size = dp + dq;
    let zero = Poly::zero(3, 0);
    let mut matrix = vec![vec![zero; size]; size];
    for row in 0..dq {
        for (i, slice) in p.iter().take(dp + 1).enumerate() {
            matrix[row][row + dp - i] = slice.clone();
        }
    }
    for row in 0..dp {
        for (j, slice) in q.iter().take(dq + 1).enumerate() {
            matrix[dq + row][row + dq - j] = slice.clone();
        }
    }
    poly_det(&matrix)
}

fn poly_det(m: &[Vec<Poly<Scalar>>]) -> Poly<Scalar> {
    let n = m.len();
    if n == 1 {
        return m[0][0].clone();
    }
    let mut acc = Poly::zero(3, 0);
    for (col, entry) in m[0].iter().enumerate() {
        if entry.is_zero() {
            continue;
        }
        let minor: Vec<Vec<Poly<Scalar>>> = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(j, _)| *j != col)
                    .map(|(_, e)| e.clone())
                    .collect()
            })
            .collect();
        let mut term = entry.mul(&poly_det(&minor));
        if col % 2 == 1 {
            term = term.neg();
        }
        acc = acc.add(&term);
    }
    acc
}

fn fit_sum3(
    f: &Poly<Scalar>,
    candidates: &[LinForm<Scalar>],
    d: u32,
) -> Option<(NormalFormTag, Vec<LinForm<Scalar>>)> {
    let n = candidates.len();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let forms = [
                    candidates[i].clone(),
                    candidates[j].clone(),
                    candidates[k].clone(),
                ];
                if solve_weights(f, &forms, d).is_some() {
                    return Some((NormalFormTag::Sum3, forms.to_vec()));
                }
            }
        }
    }
    None
}

fn fit_sum1_tangent(
    f: &Poly<Scalar>,
    candidates: &[LinForm<Scalar>],
    d: u32,
) -> Option<(NormalFormTag, Vec<LinForm<Scalar>>)> {
    for lone in candidates {
        for base in candidates {
            if lone == base {
                continue;
            }
            if let Some((l3, _)) = peel_power_summand(f, lone, base, d) {
                return Some((
                    NormalFormTag::Sum1Tangent,
                    vec![lone.clone(), base.clone(), l3],
                ));
            }
        }
    }
    None
}

fn fit_bwr3_local(
    f: &Poly<Scalar>,
    candidates: &[LinForm<Scalar>],
    d: u32,
) -> Option<(NormalFormTag, Vec<LinForm<Scalar>>)> {
    if d < 2 {
        return None;
    }
    for base in candidates {
        let change = rotate_form_to_first(base);
        let rotated = change.to_new(f);
        let Ok(quadratic) = rotated.div_var_power(0, d - 2) else {
            continue;
        };
        // quadratic = x1·u + w(y, z); the normal form needs w ≅ ℓ3².
        let mut w = Poly::zero(2, 2);
        for (m, c) in quadratic.terms() {
            if m.exp(0) == 0 {
                w.add_term(Monomial::new(vec![m.exp(1), m.exp(2)]), c.clone());
            }
        }
        if w.is_zero() {
            continue; // pure tangent shape; two essential variables, not ours
        }
        let w_bin = BinForm::from_poly(&w);
        if w_bin.is_squarefree() {
            // w has rank 2: ℓ1^{d−2}(aℓ1² + ℓ2ℓ3) has border rank ≥ 4
            continue;
        }
        let ((alpha, beta), _) = w_bin
            .field_roots()
            .into_iter()
            .find(|(_, mult)| *mult >= 2)
            .expect("repeated root of a rank-1 binary quadratic is rational");
        // the double root (α:β) of w is where w does NOT vanish... the
        // squared factor is the orthogonal direction: w = γ(βy − αz)²? No:
        // a repeated root (α:β) means w = γ·(βy − αz)².
        let l3_rot = LinForm::new(vec![Scalar::from_int(0), beta.clone(), alpha.negated()]);
        let mut u = LinForm::zero(3);
        for (m, c) in quadratic.terms() {
            if m.exp(0) == 2 {
                u = u.add(&LinForm::unit(3, 0).scale(c));
            } else if m.exp(0) == 1 {
                let other = (1..3).find(|&i| m.exp(i) == 1).expect("degree two");
                u = u.add(&LinForm::unit(3, other).scale(c));
            }
        }
        let mut witnesses = vec![base.clone()];
        if !u.is_zero() {
            witnesses.push(change.form_to_old(&u));
        }
        witnesses.push(change.form_to_old(&l3_rot));
        return Some((NormalFormTag::Bwr3Local, witnesses));
    }
    None
}
