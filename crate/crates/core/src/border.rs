//! ε-parametric linear forms and border Waring rank decompositions.
//!
//! A decomposition claims f = lim_{ε→0} Σ_k c_k(ε)·ℓ_k(ε)^d. The weights are
//! carried separately from the forms: absorbing a weight would need a d-th
//! root, which ℚ(ζ_N)(ε) does not supply, and the summand count r ignores
//! weights either way.
//!
//! Grouping by the projective limit direction of the forms partitions the
//! summands into local classes; each class sum has an exact leading term
//! ε^{q}·f_k, the raw material for generalized additive decompositions.

use alloc::vec::Vec;

use crate::catalecticant::rotate_form_to_first;
use crate::cyclotomic::Scalar;
use crate::eps::EpsScalar;
use crate::error::{Error, Result};
use crate::poly::{power_of_linform, LinForm, Poly};

pub type EpsLinForm = LinForm<EpsScalar>;

/// Weighted ε-parametric decomposition; r = number of summands.
#[derive(Clone, Debug, PartialEq)]
pub struct BorderDecomposition {
    nvars: usize,
    degree: u32,
    summands: Vec<(EpsScalar, EpsLinForm)>,
}

impl BorderDecomposition {
    pub fn new(nvars: usize, degree: u32, summands: Vec<(EpsScalar, EpsLinForm)>) -> Result<Self> {
        for (_, form) in &summands {
            if form.nvars() != nvars {
                return Err(Error::ArityMismatch {
                    expected: nvars,
                    got: form.nvars(),
                });
            }
            if form.is_zero() {
                return Err(Error::ZeroValuation);
            }
        }
        Ok(BorderDecomposition {
            nvars,
            degree,
            summands,
        })
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// The summand count r; weights do not count.
    pub fn rank(&self) -> usize {
        self.summands.len()
    }

    pub fn summands(&self) -> &[(EpsScalar, EpsLinForm)] {
        &self.summands
    }

    /// Σ c_k·ℓ_k^d expanded exactly over ℚ(ζ)(ε).
    pub fn expand(&self) -> Poly<EpsScalar> {
        expand_weighted(self.nvars, self.degree, &self.summands)
    }

    /// The limit polynomial at ε = 0, coefficient by coefficient.
    pub fn limit(&self) -> Result<Poly<Scalar>> {
        limit_of_expansion(&self.expand())
    }

    /// Substitute ε ↦ u·ε, u a nonzero rational; the limit is unchanged.
    pub fn reparametrize(&self, u: &Scalar) -> Self {
        BorderDecomposition {
            nvars: self.nvars,
            degree: self.degree,
            summands: self
                .summands
                .iter()
                .map(|(c, form)| (c.reparametrize(u), form.map_coeffs(|a| a.reparametrize(u))))
                .collect(),
        }
    }
}

pub(crate) fn expand_weighted(
    nvars: usize,
    degree: u32,
    summands: &[(EpsScalar, EpsLinForm)],
) -> Poly<EpsScalar> {
    let mut acc = Poly::zero(nvars, degree);
    for (weight, form) in summands {
        acc = acc.add(&power_of_linform(form, degree).scale(weight));
    }
    acc
}

pub(crate) fn limit_of_expansion(expansion: &Poly<EpsScalar>) -> Result<Poly<Scalar>> {
    expansion
        .try_map_coeffs(|c| c.eval0())
        .map_err(|_| Error::LimitDoesNotExist)
}

/// lim_{ε→0} [ℓ(ε)] ∈ ℙ(S_1): the vector of leading Laurent coefficients at
/// the minimal coordinate valuation, normalized so the first nonzero
/// coordinate is 1.
pub fn projective_limit(form: &EpsLinForm) -> Result<LinForm<Scalar>> {
    let mut q_min: Option<i64> = None;
    let mut leads: Vec<Option<(i64, Scalar)>> = Vec::with_capacity(form.nvars());
    for c in form.coeffs() {
        if c.is_zero() {
            leads.push(None);
            continue;
        }
        let (q, lead) = c.valuation()?;
        q_min = Some(q_min.map_or(q, |m| m.min(q)));
        leads.push(Some((q, lead)));
    }
    let q_min = q_min.ok_or(Error::ZeroValuation)?;
    let coeffs: Vec<Scalar> = leads
        .into_iter()
        .map(|entry| match entry {
            Some((q, lead)) if q == q_min => lead,
            _ => Scalar::from_int(0),
        })
        .collect();
    Ok(LinForm::new(coeffs)
        .normalized()
        .expect("leading vector is nonzero"))
}

/// One local class: summands sharing the projective limit `base`, with the
/// exact expansion of the class sum being ε^valuation·leading + higher order.
#[derive(Clone, Debug)]
pub struct LocalClass {
    pub indices: Vec<usize>,
    pub base: LinForm<Scalar>,
    pub valuation: i64,
    pub leading: Poly<Scalar>,
    pub members: Vec<(EpsScalar, EpsLinForm)>,
}

impl LocalClass {
    pub fn size(&self) -> usize {
        self.indices.len()
    }

    /// The class sum rescaled by ε^{-q}: a border decomposition of `leading`
    /// that is local with base `base`; witnesses border rank ≤ size.
    pub fn witness(&self, nvars: usize, degree: u32) -> BorderDecomposition {
        let shift = EpsScalar::eps_pow(-self.valuation);
        BorderDecomposition {
            nvars,
            degree,
            summands: self
                .members
                .iter()
                .map(|(c, form)| (c.mul(&shift), form.clone()))
                .collect(),
        }
    }
}

/// Result of grouping: surviving classes (sorted by base) plus the index
/// sets of classes dropped because their sum vanishes in the limit.
#[derive(Clone, Debug)]
pub struct Grouping {
    pub classes: Vec<LocalClass>,
    pub dropped: Vec<Vec<usize>>,
}

/// Partition the summands by projective limit and compute each class's exact
/// valuation and leading polynomial. Classes whose sum is identically zero,
/// or has positive valuation (so they vanish in the limit), are dropped.
pub fn group_local_classes(b: &BorderDecomposition) -> Result<Grouping> {
    b.limit()?;
    let mut groups: Vec<(LinForm<Scalar>, Vec<usize>)> = Vec::new();
    for (i, (_, form)) in b.summands().iter().enumerate() {
        let base = projective_limit(form)?;
        match groups.iter_mut().find(|(g, _)| *g == base) {
            Some((_, idxs)) => idxs.push(i),
            None => groups.push((base, alloc::vec![i])),
        }
    }
    groups.sort_by(|(a, _), (b, _)| cmp_forms(a, b));

    let mut classes = Vec::new();
    let mut dropped = Vec::new();
    for (base, indices) in groups {
        let members: Vec<(EpsScalar, EpsLinForm)> =
            indices.iter().map(|&i| b.summands()[i].clone()).collect();
        let sum = expand_weighted(b.nvars(), b.degree(), &members);
        match class_valuation_leading(&sum) {
            None => dropped.push(indices),
            Some((q, _)) if q > 0 => dropped.push(indices),
            Some((q, leading)) => classes.push(LocalClass {
                indices,
                base,
                valuation: q,
                leading,
                members,
            }),
        }
    }
    Ok(Grouping { classes, dropped })
}

/// Minimal ε-valuation over the coefficients and the polynomial of leading
/// Laurent coefficients at that valuation; `None` for the zero polynomial.
pub(crate) fn class_valuation_leading(sum: &Poly<EpsScalar>) -> Option<(i64, Poly<Scalar>)> {
    let mut q_min: Option<i64> = None;
    for (_, c) in sum.terms() {
        let (q, _) = c.valuation().expect("stored coefficients are nonzero");
        q_min = Some(q_min.map_or(q, |m| m.min(q)));
    }
    let q_min = q_min?;
    let mut leading = Poly::zero(sum.nvars(), sum.degree());
    for (m, c) in sum.terms() {
        let (q, lead) = c.valuation().expect("nonzero");
        if q == q_min {
            leading.add_term(m.clone(), lead);
        }
    }
    Some((q_min, leading))
}

fn cmp_forms(a: &LinForm<Scalar>, b: &LinForm<Scalar>) -> core::cmp::Ordering {
    for (x, y) in a.coeffs().iter().zip(b.coeffs()) {
        let ord = x.canonical_cmp(y);
        if ord != core::cmp::Ordering::Equal {
            return ord;
        }
    }
    core::cmp::Ordering::Equal
}

/// Rewrite a local family so that the first member's form is exactly
/// ε^q·γ·base, preserving the class sum's valuation and leading term.
///
/// This is the standardization substitution x̂_1 = (γ/α_1)x_1 − Σ (α_i/α_1)x_i
/// applied in coordinates where the base is the first variable.
pub fn standardize_local(
    members: &[(EpsScalar, EpsLinForm)],
    base: &LinForm<Scalar>,
) -> Result<Vec<(EpsScalar, EpsLinForm)>> {
    if members.is_empty() {
        return Ok(Vec::new());
    }
    let base = base.normalized().ok_or(Error::ZeroValuation)?;
    for (_, form) in members {
        if projective_limit(form)? != base {
            return Err(Error::NotLocal);
        }
    }

    let change = rotate_form_to_first(&base).map_coeffs(|c| EpsScalar::from_scalar(c.clone()));
    let rotated: Vec<(EpsScalar, EpsLinForm)> = members
        .iter()
        .map(|(c, form)| (c.clone(), change.form_to_new(form)))
        .collect();

    // In the rotated coordinates the base is y_1, so the first coordinate of
    // the first form has strictly minimal valuation q with leading γ.
    let first = &rotated[0].1;
    let a1 = first.coeff(0).clone();
    let (q, gamma) = a1.valuation()?;
    let n = first.nvars();

    // ŷ_1 = s_1·y_1 + Σ_{i≥2} s_i·y_i
    let s1 = EpsScalar::eps_pow(q)
        .mul(&EpsScalar::from_scalar(gamma.clone()))
        .try_div(&a1)?;
    let mut subs = alloc::vec![s1];
    for i in 1..n {
        subs.push(first.coeff(i).try_div(&a1)?.negated());
    }

    let mut out = Vec::with_capacity(rotated.len());
    for (c, form) in &rotated {
        let ak1 = form.coeff(0);
        let mut coeffs = Vec::with_capacity(n);
        coeffs.push(ak1.mul(&subs[0]));
        for (i, sub) in subs.iter().enumerate().skip(1) {
            // sub = −a_i/a_1, so this is a_{ki} − a_{k1}·a_i/a_1
            coeffs.push(form.coeff(i).add(&ak1.mul(sub)));
        }
        out.push((c.clone(), LinForm::new(coeffs)));
    }

    let expected = base.map_coeffs(|c| {
        EpsScalar::eps_pow(q)
            .mul(&EpsScalar::from_scalar(gamma.clone()))
            .mul(&EpsScalar::from_scalar(c.clone()))
    });
    let back: Vec<(EpsScalar, EpsLinForm)> = out
        .into_iter()
        .map(|(c, form)| (c, change.form_to_old(&form)))
        .collect();
    assert_eq!(back[0].1, expected, "first member standardizes exactly");
    Ok(back)
}
