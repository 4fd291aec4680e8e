//! Rank oracles independent of the debordering pipeline: catalecticant
//! lower bounds, Sylvester's exact algorithm for binary forms, and the
//! classifier for border rank ≤ 3 normal forms.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::catalecticant::{
    catalecticant, essential_reduction, rotate_form_to_first, EssentialReduction,
};
use crate::cyclotomic::Scalar;
use crate::error::{Error, Result};
use crate::poly::{power_of_linform, LinForm, Poly};

pub mod binary;
mod classify;

use binary::BinForm;

/// Normal-form families for border Waring rank ≤ 3.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NormalFormTag {
    /// ℓ^d — border rank 1
    Power,
    /// ℓ1^d + ℓ2^d — border rank 2, rank 2
    Sum2,
    /// ℓ1^{d−1}·ℓ2 — border rank 2, rank d
    Tangent,
    /// ℓ1^d + ℓ2^d + ℓ3^d — border rank 3
    Sum3,
    /// ℓ1^d + ℓ2^{d−1}·ℓ3 — border rank 3
    Sum1Tangent,
    /// ℓ1^{d−1}·ℓ2 + ℓ1^{d−2}·ℓ3² (with ℓ1^{d−2}·ℓ3² as a special case)
    Bwr3Local,
    /// outside the classifier's reach
    Unknown,
}

impl NormalFormTag {
    pub fn name(self) -> &'static str {
        match self {
            NormalFormTag::Power => "POWER",
            NormalFormTag::Sum2 => "SUM2",
            NormalFormTag::Tangent => "TANGENT",
            NormalFormTag::Sum3 => "SUM3",
            NormalFormTag::Sum1Tangent => "SUM1_TANGENT",
            NormalFormTag::Bwr3Local => "BWR3_LOCAL",
            NormalFormTag::Unknown => "UNKNOWN",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Some(match name {
            "POWER" => NormalFormTag::Power,
            "SUM2" => NormalFormTag::Sum2,
            "TANGENT" => NormalFormTag::Tangent,
            "SUM3" => NormalFormTag::Sum3,
            "SUM1_TANGENT" => NormalFormTag::Sum1Tangent,
            "BWR3_LOCAL" => NormalFormTag::Bwr3Local,
            "UNKNOWN" => NormalFormTag::Unknown,
            _ => return None,
        })
    }
}

impl fmt::Display for NormalFormTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CertificateKind {
    LowerBoundCatalecticant,
    ExactBinaryWaring,
    ExactBinaryBorder,
    Classification,
}

impl CertificateKind {
    pub fn name(self) -> &'static str {
        match self {
            CertificateKind::LowerBoundCatalecticant => "lower_bound_catalecticant",
            CertificateKind::ExactBinaryWaring => "exact_binary_waring",
            CertificateKind::ExactBinaryBorder => "exact_binary_border",
            CertificateKind::Classification => "classification",
        }
    }
}

/// A rank statement with enough payload to re-verify it: for classification
/// certificates `value` is the border rank when the tag is decisive, and the
/// best proven lower bound when the tag is `Unknown`.
#[derive(Clone, Debug)]
pub struct RankCertificate {
    pub kind: CertificateKind,
    pub value: usize,
    pub tag: Option<NormalFormTag>,
    /// linear forms witnessing the normal form, in the original variables
    pub witness_forms: Vec<LinForm<Scalar>>,
    /// an annihilating operator (original dual variables) backing the tag
    pub kernel_element: Option<Poly<Scalar>>,
}

/// max_e rank(Cat_e(f)): a lower bound for Waring and border Waring rank.
pub fn catalecticant_lower_bound(f: &Poly<Scalar>) -> Result<usize> {
    if f.is_zero() {
        return Err(Error::ZeroInput);
    }
    let mut best = 0;
    for e in 0..=f.degree() {
        best = best.max(catalecticant(f, e)?.rank());
    }
    Ok(best)
}

/// Exact Waring and border Waring rank of a nonzero binary form, by
/// Sylvester's apolarity algorithm.
///
/// The border rank is the rank of the middle catalecticant. The rank is the
/// smallest r ≥ border rank such that Ann(f)_r contains a squarefree
/// operator, which happens exactly when the gcd of a kernel basis is
/// squarefree (a base-point-free pencil of binary forms has squarefree
/// members).
pub fn binary_exact_ranks(f: &Poly<Scalar>) -> Result<(usize, usize)> {
    if f.is_zero() {
        return Err(Error::ZeroInput);
    }
    if f.nvars() != 2 {
        return Err(Error::ArityMismatch {
            expected: 2,
            got: f.nvars(),
        });
    }
    let d = f.degree();
    if d == 0 {
        return Ok((1, 1));
    }
    let bwr = catalecticant(f, d / 2)?.rank();
    for r in bwr as u32..=d {
        let kernel = ann_kernel_forms(f, r)?;
        if kernel.is_empty() {
            continue;
        }
        let gcd = kernel
            .iter()
            .skip(1)
            .fold(kernel[0].clone(), |acc, k| acc.gcd(k));
        if gcd.is_squarefree() {
            return Ok((r as usize, bwr));
        }
    }
    // Unreachable for nonzero binary forms: at r = max(a, d+2−a) ≤ d the
    // kernel basis has coprime gcd.
    unreachable!("Sylvester search terminates by degree d");
}

fn ann_kernel_forms(f: &Poly<Scalar>, r: u32) -> Result<Vec<BinForm>> {
    Ok(catalecticant(f, r)?
        .operator_kernel()
        .into_iter()
        .map(|op| BinForm::from_poly(&op))
        .collect())
}

/// Lift a dual operator on the reduced variables back to the original dual
/// variables: ∂y_j = Σ_i A[i][j]·∂x_i under the substitution x = A·y.
fn lift_operator(reduction: &EssentialReduction, op: &Poly<Scalar>) -> Poly<Scalar> {
    let images: Vec<LinForm<Scalar>> = (0..op.nvars())
        .map(|j| LinForm::new(reduction.change.column(j)))
        .collect();
    op.substitute(&images)
}

/// Classify f when its border rank is at most 3; sound but incomplete for
/// three essential variables, where it returns `Unknown` rather than guess.
pub fn classify_small_border(f: &Poly<Scalar>) -> Result<RankCertificate> {
    if f.is_zero() {
        return Err(Error::ZeroInput);
    }
    let reduction = essential_reduction(f)?;
    let m = reduction.rank;
    let d = f.degree();

    if m <= 1 {
        let witness = if m == 1 {
            vec![reduction.lift_form(&LinForm::unit(1, 0))]
        } else {
            Vec::new()
        };
        return Ok(RankCertificate {
            kind: CertificateKind::Classification,
            value: 1,
            tag: Some(NormalFormTag::Power),
            witness_forms: witness,
            kernel_element: None,
        });
    }

    if m == 2 {
        return classify_binary(f, &reduction, d);
    }

    if m == 3 {
        if let Some((tag, forms)) = classify::classify_ternary(&reduction.reduced)? {
            return Ok(RankCertificate {
                kind: CertificateKind::Classification,
                value: 3,
                tag: Some(tag),
                witness_forms: forms.iter().map(|w| reduction.lift_form(w)).collect(),
                kernel_element: None,
            });
        }
    }

    Ok(RankCertificate {
        kind: CertificateKind::Classification,
        value: catalecticant_lower_bound(f)?,
        tag: Some(NormalFormTag::Unknown),
        witness_forms: Vec::new(),
        kernel_element: None,
    })
}

fn classify_binary(
    _f: &Poly<Scalar>,
    reduction: &EssentialReduction,
    d: u32,
) -> Result<RankCertificate> {
    let g = &reduction.reduced;
    let (_, bwr) = binary_exact_ranks(g)?;

    if bwr == 2 {
        let kernel = ann_kernel_forms(g, 2)?;
        let gcd = kernel
            .iter()
            .skip(1)
            .fold(kernel[0].clone(), |acc, k| acc.gcd(k));
        if gcd.is_squarefree() {
            // two distinct dual roots: f is a sum of two d-th powers
            let witness_forms = split_power_sum_witnesses(g, &kernel, d)
                .into_iter()
                .map(|w| reduction.lift_form(&w))
                .collect();
            let kernel_element = kernel
                .first()
                .map(|k| lift_operator(reduction, &k.to_poly()));
            return Ok(RankCertificate {
                kind: CertificateKind::Classification,
                value: 2,
                tag: Some(NormalFormTag::Sum2),
                witness_forms,
                kernel_element,
            });
        }
        // gcd = L²: f = ℓ1^{d−1}·ℓ2 with ℓ1 the double dual root
        let roots = gcd.field_roots();
        let ((alpha, beta), _) = roots
            .iter()
            .find(|(_, mult)| *mult >= 2)
            .expect("double root of a non-squarefree quadratic")
            .clone();
        let base = LinForm::new(vec![alpha, beta]);
        let cofactor =
            divide_by_base_power(g, &base, d - 1).expect("tangent form divides by its base power");
        return Ok(RankCertificate {
            kind: CertificateKind::Classification,
            value: 2,
            tag: Some(NormalFormTag::Tangent),
            witness_forms: vec![reduction.lift_form(&base), reduction.lift_form(&cofactor)],
            kernel_element: kernel
                .first()
                .map(|k| lift_operator(reduction, &k.to_poly())),
        });
    }

    if bwr == 3 {
        let kernel = ann_kernel_forms(g, 3)?;
        let gcd = kernel
            .iter()
            .skip(1)
            .fold(kernel[0].clone(), |acc, k| acc.gcd(k));
        let kernel_element = kernel
            .first()
            .map(|k| lift_operator(reduction, &k.to_poly()));
        if gcd.is_squarefree() {
            let witness_forms = split_power_sum_witnesses(g, &kernel, d)
                .into_iter()
                .map(|w| reduction.lift_form(&w))
                .collect();
            return Ok(RankCertificate {
                kind: CertificateKind::Classification,
                value: 3,
                tag: Some(NormalFormTag::Sum3),
                witness_forms,
                kernel_element,
            });
        }
        // Repeated dual roots: multiplicity 2 ⇒ ℓ1^d + ℓ2^{d−1}ℓ3,
        // multiplicity 3 ⇒ ℓ1^{d−1}ℓ2 + ℓ1^{d−2}ℓ3².
        let roots = gcd.field_roots();
        if let Some(((alpha, beta), mult)) = roots.iter().find(|(_, m)| *m >= 2).cloned() {
            let base = LinForm::new(vec![alpha, beta]);
            if mult == 2 {
                let mut witness_forms = Vec::new();
                if let Some(((a2, b2), _)) = roots.iter().find(|(_, m)| *m == 1) {
                    let lone = LinForm::new(vec![a2.clone(), b2.clone()]);
                    if let Some((l3, _)) = peel_power_summand(g, &lone, &base, d) {
                        witness_forms = vec![
                            reduction.lift_form(&lone),
                            reduction.lift_form(&base),
                            reduction.lift_form(&l3),
                        ];
                    }
                }
                return Ok(RankCertificate {
                    kind: CertificateKind::Classification,
                    value: 3,
                    tag: Some(NormalFormTag::Sum1Tangent),
                    witness_forms,
                    kernel_element,
                });
            }
            // mult == 3: f = ℓ1^{d−2}·(quadratic)
            let change = rotate_form_to_first(&base);
            let rotated = change.to_new(g);
            let quadratic = rotated
                .div_var_power(0, d - 2)
                .expect("local form divides by base^{d-2}");
            let mut witness_forms = vec![reduction.lift_form(&base)];
            // quadratic = x1·u + γ·y²; report u and the y-direction
            let u = linear_cofactor_of_first(&quadratic);
            if !u.is_zero() {
                witness_forms.push(reduction.lift_form(&change.form_to_old(&u)));
            }
            witness_forms.push(reduction.lift_form(&change.form_to_old(&LinForm::unit(2, 1))));
            return Ok(RankCertificate {
                kind: CertificateKind::Classification,
                value: 3,
                tag: Some(NormalFormTag::Bwr3Local),
                witness_forms,
                kernel_element,
            });
        }
        unreachable!("non-squarefree cubic has a repeated root in the field");
    }

    Ok(RankCertificate {
        kind: CertificateKind::Classification,
        value: bwr,
        tag: Some(NormalFormTag::Unknown),
        witness_forms: Vec::new(),
        kernel_element: None,
    })
}

/// For a binary f annihilated by a squarefree operator space whose roots are
/// all rational: the dual roots as linear forms, when the weighted power sum
/// reconstructs f exactly; otherwise empty.
fn split_power_sum_witnesses(g: &Poly<Scalar>, kernel: &[BinForm], d: u32) -> Vec<LinForm<Scalar>> {
    let Some(element) = binary::squarefree_element(kernel) else {
        return Vec::new();
    };
    let roots = element.field_roots();
    if roots.len() != element.degree() as usize {
        return Vec::new();
    }
    let forms: Vec<LinForm<Scalar>> = roots
        .iter()
        .map(|((a, b), _)| LinForm::new(vec![a.clone(), b.clone()]))
        .collect();
    match solve_weights(g, &forms, d) {
        Some(_) => forms,
        None => Vec::new(),
    }
}

/// Weights c with f = Σ c_i·ℓ_i^d, all nonzero; `None` when no such exist.
pub(crate) fn solve_weights(
    f: &Poly<Scalar>,
    forms: &[LinForm<Scalar>],
    d: u32,
) -> Option<Vec<Scalar>> {
    let monomials = crate::poly::monomials_of_degree(f.nvars(), d);
    let mut matrix = crate::matrix::Matrix::zero(monomials.len(), forms.len());
    for (j, form) in forms.iter().enumerate() {
        for (i, v) in power_of_linform(form, d)
            .coefficient_vector(&monomials)
            .into_iter()
            .enumerate()
        {
            matrix.set(i, j, v);
        }
    }
    let solution = matrix.solve(&f.coefficient_vector(&monomials))?;
    // re-verify (solve only guarantees consistency on pivots)
    let mut acc = Poly::zero(f.nvars(), d);
    for (c, form) in solution.iter().zip(forms) {
        acc = acc.add(&power_of_linform(form, d).scale(c));
    }
    if acc != *f || solution.iter().any(Scalar::is_zero) {
        return None;
    }
    Some(solution)
}

/// f / base^e when every monomial is divisible, returned as a linear form
/// (only called when the quotient has degree 1).
fn divide_by_base_power(
    f: &Poly<Scalar>,
    base: &LinForm<Scalar>,
    e: u32,
) -> Option<LinForm<Scalar>> {
    let change = rotate_form_to_first(base);
    let rotated = change.to_new(f);
    let quotient = rotated.div_var_power(0, e).ok()?;
    if quotient.degree() != 1 {
        return None;
    }
    Some(change.form_to_old(&poly_to_linform(&quotient)))
}

/// Split f = c·lone^d + base^{d−1}·ℓ3: returns (ℓ3, c) when the shape fits.
pub(crate) fn peel_power_summand(
    f: &Poly<Scalar>,
    lone: &LinForm<Scalar>,
    base: &LinForm<Scalar>,
    d: u32,
) -> Option<(LinForm<Scalar>, Scalar)> {
    let change = rotate_form_to_first(base);
    let rotated_f = change.to_new(f);
    let rotated_power = power_of_linform(&change.form_to_new(lone), d);
    // Coefficients with x1-exponent < d−1 must cancel against c·lone^d.
    let mut c: Option<Scalar> = None;
    for (m, coeff) in rotated_power.terms() {
        if m.exp(0) >= d - 1 {
            continue;
        }
        let target = rotated_f.coeff(m);
        let candidate = target.try_div(coeff).ok()?;
        match &c {
            None => c = Some(candidate),
            Some(prev) if *prev == candidate => {}
            _ => return None,
        }
    }
    let c = c?;
    if c.is_zero() {
        return None;
    }
    let rest = rotated_f.sub(&rotated_power.scale(&c));
    let quotient = rest.div_var_power(0, d - 1).ok()?;
    if quotient.degree() != 1 || quotient.is_zero() {
        return None;
    }
    Some((change.form_to_old(&poly_to_linform(&quotient)), c))
}

pub(crate) fn poly_to_linform(p: &Poly<Scalar>) -> LinForm<Scalar> {
    assert_eq!(p.degree(), 1);
    let n = p.nvars();
    let mut coeffs = vec![Scalar::from_int(0); n];
    for (m, c) in p.terms() {
        let var = m.exps().iter().position(|&e| e == 1).expect("degree one");
        coeffs[var] = c.clone();
    }
    LinForm::new(coeffs)
}

/// quadratic = x1·u + (terms without x1); returns u as a linear form.
fn linear_cofactor_of_first(quadratic: &Poly<Scalar>) -> LinForm<Scalar> {
    let n = quadratic.nvars();
    let mut coeffs = vec![Scalar::from_int(0); n];
    for (m, c) in quadratic.terms() {
        let e1 = m.exp(0);
        if e1 == 0 {
            continue;
        }
        if e1 == 2 {
            coeffs[0] = c.clone();
        } else {
            let other = (1..n).find(|&i| m.exp(i) == 1).expect("degree two");
            coeffs[other] = c.clone();
        }
    }
    LinForm::new(coeffs)
}

/// Deterministic generator state (splitmix64); the mapping from seed to
/// sample is part of the crate's stable behavior.
pub(crate) struct SampleRng(u64);

impl SampleRng {
    pub fn new(seed: u64) -> Self {
        SampleRng(seed)
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform-ish integer in [lo, hi].
    pub fn int_in(&mut self, lo: i64, hi: i64) -> i64 {
        lo + (self.next_u64() % (hi - lo + 1) as u64) as i64
    }
}

fn random_form(rng: &mut SampleRng, n: usize) -> LinForm<Scalar> {
    loop {
        let coeffs: Vec<i64> = (0..n).map(|_| rng.int_in(-3, 3)).collect();
        if coeffs.iter().any(|&c| c != 0) {
            return crate::poly::lin(&coeffs);
        }
    }
}

fn independent_forms(rng: &mut SampleRng, n: usize, count: usize) -> Vec<LinForm<Scalar>> {
    loop {
        let forms: Vec<LinForm<Scalar>> = (0..count).map(|_| random_form(rng, n)).collect();
        let rows: Vec<Vec<Scalar>> = forms.iter().map(|f| f.coeffs().to_vec()).collect();
        if crate::matrix::Matrix::from_rows(rows).rank() == count {
            return forms;
        }
    }
}

fn minimum_degree(tag: NormalFormTag) -> Option<u32> {
    Some(match tag {
        NormalFormTag::Power => 1,
        NormalFormTag::Sum2 => 2,
        NormalFormTag::Tangent => 3,
        NormalFormTag::Sum3 => 3,
        NormalFormTag::Sum1Tangent => 3,
        NormalFormTag::Bwr3Local => 3,
        NormalFormTag::Unknown => return None,
    })
}

/// A deterministic pseudo-random member of the tagged normal-form family,
/// with small-integer linear forms in general position.
pub fn normal_form_sample(tag: NormalFormTag, d: u32, seed: u64) -> Result<Poly<Scalar>> {
    let min_d = minimum_degree(tag).ok_or(Error::InvalidFamily)?;
    if d < min_d {
        return Err(Error::InvalidFamily);
    }
    let mut rng = SampleRng::new(seed ^ (tag.name().len() as u64) << 32 ^ d as u64);
    Ok(match tag {
        NormalFormTag::Power => power_of_linform(&random_form(&mut rng, 2), d),
        NormalFormTag::Sum2 => {
            let forms = independent_forms(&mut rng, 2, 2);
            power_of_linform(&forms[0], d).add(&power_of_linform(&forms[1], d))
        }
        NormalFormTag::Tangent => {
            let forms = independent_forms(&mut rng, 2, 2);
            power_of_linform(&forms[0], d - 1).mul(&forms[1].as_poly())
        }
        NormalFormTag::Sum3 => {
            let forms = independent_forms(&mut rng, 3, 3);
            power_of_linform(&forms[0], d)
                .add(&power_of_linform(&forms[1], d))
                .add(&power_of_linform(&forms[2], d))
        }
        NormalFormTag::Sum1Tangent => {
            let forms = independent_forms(&mut rng, 3, 3);
            power_of_linform(&forms[0], d)
                .add(&power_of_linform(&forms[1], d - 1).mul(&forms[2].as_poly()))
        }
        NormalFormTag::Bwr3Local => {
            let forms = independent_forms(&mut rng, 3, 3);
            power_of_linform(&forms[0], d - 1)
                .mul(&forms[1].as_poly())
                .add(&power_of_linform(&forms[0], d - 2).mul(&forms[2].as_poly().pow(2)))
        }
        NormalFormTag::Unknown => unreachable!(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::poly::{lin, var_power};

    fn tangent(d: u32) -> Poly<Scalar> {
        Poly::monomial(2, vec![d - 1, 1], Scalar::from_int(1))
    }

    #[test]
    fn lower_bound_examples() {
        assert_eq!(
            catalecticant_lower_bound(&fixtures::eq1_polynomial(5)).unwrap(),
            6
        );
        assert_eq!(
            catalecticant_lower_bound(&var_power::<Scalar>(3, 0, 7)).unwrap(),
            1
        );
        assert_eq!(catalecticant_lower_bound(&tangent(6)).unwrap(), 2);
        assert_eq!(
            catalecticant_lower_bound(&Poly::zero(2, 3)),
            Err(Error::ZeroInput)
        );
    }

    #[test]
    fn binary_ranks_of_tangent_monomial() {
        for d in 3..=8u32 {
            assert_eq!(binary_exact_ranks(&tangent(d)).unwrap(), (d as usize, 2));
        }
    }

    #[test]
    fn binary_ranks_of_power_sums() {
        let d = 6u32;
        let sum2 = var_power::<Scalar>(2, 0, d).add(&var_power(2, 1, d));
        assert_eq!(binary_exact_ranks(&sum2).unwrap(), (2, 2));
        let pure = power_of_linform(&lin::<Scalar>(&[1, 1]), d);
        assert_eq!(binary_exact_ranks(&pure).unwrap(), (1, 1));
    }

    #[test]
    fn classify_tangent_monomial() {
        let d = 6u32;
        let cert = classify_small_border(&tangent(d)).unwrap();
        assert_eq!(cert.tag, Some(NormalFormTag::Tangent));
        assert_eq!(cert.value, 2);
        assert_eq!(cert.witness_forms[0], lin::<Scalar>(&[1, 0]));
        assert_eq!(cert.witness_forms[1], lin::<Scalar>(&[0, 1]));
        // the reported kernel element annihilates f
        let op = cert.kernel_element.unwrap();
        assert!(crate::catalecticant::apply_operator(&op, &tangent(d)).is_zero());
    }

    #[test]
    fn classify_binary_sum_of_three_powers() {
        let d = 5u32;
        let f = var_power::<Scalar>(2, 0, d)
            .add(&var_power(2, 1, d))
            .add(&power_of_linform(&lin::<Scalar>(&[1, 1]), d));
        let cert = classify_small_border(&f).unwrap();
        assert_eq!(cert.tag, Some(NormalFormTag::Sum3));
        assert_eq!(cert.value, 3);
        assert_eq!(cert.witness_forms.len(), 3);
    }

    #[test]
    fn classify_power() {
        let f = power_of_linform(&lin::<Scalar>(&[2, -1, 3]), 5);
        let cert = classify_small_border(&f).unwrap();
        assert_eq!(cert.tag, Some(NormalFormTag::Power));
        assert_eq!(cert.value, 1);
        let w = &cert.witness_forms[0];
        assert!(w.proportionality(&lin::<Scalar>(&[2, -1, 3])).is_some());
    }

    #[test]
    fn classify_generic_quaternary_cubic_is_unknown() {
        // x³+y³+z³+w³+(x+y+z+w)³ has four essential variables.
        let mut f = power_of_linform(&lin::<Scalar>(&[1, 1, 1, 1]), 3);
        for i in 0..4 {
            f = f.add(&var_power(4, i, 3));
        }
        let cert = classify_small_border(&f).unwrap();
        assert_eq!(cert.tag, Some(NormalFormTag::Unknown));
        assert!(cert.value >= 4);
    }

    #[test]
    fn sample_families_have_expected_shape() {
        let sum2 = normal_form_sample(NormalFormTag::Sum2, 4, 0).unwrap();
        assert_eq!(sum2.nvars(), 2);
        assert_eq!(sum2.degree(), 4);
        // determinism
        assert_eq!(normal_form_sample(NormalFormTag::Sum2, 4, 0).unwrap(), sum2);
        assert_ne!(normal_form_sample(NormalFormTag::Sum2, 4, 1).unwrap(), sum2);

        let local = normal_form_sample(NormalFormTag::Bwr3Local, 4, 3).unwrap();
        assert_eq!(local.nvars(), 3);
        assert_eq!(local.degree(), 4);

        assert_eq!(
            normal_form_sample(NormalFormTag::Bwr3Local, 2, 0),
            Err(Error::InvalidFamily)
        );
        assert_eq!(
            normal_form_sample(NormalFormTag::Unknown, 5, 0),
            Err(Error::InvalidFamily)
        );
    }

    #[test]
    fn classify_roundtrip_spot_checks() {
        for (tag, d, seed) in [
            (NormalFormTag::Power, 4, 7),
            (NormalFormTag::Sum2, 5, 1),
            (NormalFormTag::Tangent, 6, 2),
            (NormalFormTag::Sum3, 4, 0),
            (NormalFormTag::Sum1Tangent, 5, 3),
            (NormalFormTag::Bwr3Local, 5, 4),
        ] {
            let f = normal_form_sample(tag, d, seed).unwrap();
            let cert = classify_small_border(&f).unwrap();
            assert_eq!(cert.tag, Some(tag), "tag {tag} d={d} seed={seed}");
        }
    }

    #[test]
    fn local_rank_two_quadric_cofactor_needs_border_rank_four() {
        // ℓ1^{d−2}(a·ℓ1² + ℓ2·ℓ3) with independent forms: catalecticant
        // lower bound reaches 4 once d > 3.
        for d in 4..=7u32 {
            let l1: Poly<Scalar> = var_power(3, 0, 1);
            let inner = var_power::<Scalar>(3, 0, 2)
                .scale(&Scalar::from_int(2))
                .add(&Poly::monomial(3, vec![0, 1, 1], Scalar::from_int(1)));
            let f = l1.pow(d - 2).mul(&inner);
            assert!(catalecticant_lower_bound(&f).unwrap() >= 4, "d = {d}");
        }
    }
}
