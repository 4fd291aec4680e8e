//! From generalized additive decompositions to explicit Waring
//! decompositions, plus the size bounds that come with the construction.
//!
//! The two kernels are a power basis of S_e with small integer coefficients
//! (so any cofactor is a combination of e-th powers) and the roots-of-unity
//! identity
//!
//!   y1^a·y2^b = (1/((a+1)·C(a+b,a))) Σ_{k=0}^{a} ζ^k (ζ^k y1 + y2)^{a+b}
//!
//! for a ≥ b with ζ = ζ_{a+1}, which rewrites each ℓ^{d−r+1}·L^{r−1} as a sum
//! of max(d−r+2, r) ≤ d powers. All roots of unity for one synthesis live in
//! a single field ℚ(ζ_N), N the lcm of the orders involved.

use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::One;

use crate::border::BorderDecomposition;
use crate::catalecticant::essential_reduction;
use crate::comb::{binomial, field_from_biguint};
use crate::cyclotomic::{make_context, FieldContext, Scalar};
use crate::error::{Error, Result};
use crate::gad::{extract_gad, Gad};
use crate::matrix::{Matrix, RowSpace};
use crate::poly::{monomials_of_degree, power_of_linform, LinForm, Poly};
use crate::ring::Field;

/// f = Σ_i c_i·ℓ_i^d with exact nonzero weights; the reported rank is the
/// summand count (over ℂ the weights could be absorbed into the forms, but
/// d-th roots do not exist in ℚ(ζ_N)).
#[derive(Clone, Debug, PartialEq)]
pub struct WaringDecomposition {
    nvars: usize,
    degree: u32,
    summands: Vec<(Scalar, LinForm<Scalar>)>,
}

impl WaringDecomposition {
    pub fn new(nvars: usize, degree: u32, summands: Vec<(Scalar, LinForm<Scalar>)>) -> Self {
        WaringDecomposition {
            nvars,
            degree,
            summands: summands.into_iter().filter(|(c, _)| !c.is_zero()).collect(),
        }
    }

    pub fn empty(nvars: usize, degree: u32) -> Self {
        WaringDecomposition::new(nvars, degree, Vec::new())
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn rank(&self) -> usize {
        self.summands.len()
    }

    pub fn summands(&self) -> &[(Scalar, LinForm<Scalar>)] {
        &self.summands
    }

    pub fn expand(&self) -> Poly<Scalar> {
        let mut acc = Poly::zero(self.nvars, self.degree);
        for (c, form) in &self.summands {
            acc = acc.add(&power_of_linform(form, self.degree).scale(c));
        }
        acc
    }

    pub fn verify(&self, f: &Poly<Scalar>) -> bool {
        self.nvars == f.nvars() && (f.is_zero() || f.degree() == self.degree) && self.expand() == *f
    }
}

/// WR(y1^a·y2^b) realized by roots of unity: max(a,b)+1 summands in two
/// variables, exact by construction and re-verified by expansion.
pub fn monomial_two_form(a: u32, b: u32) -> WaringDecomposition {
    let (hi, swapped) = if a >= b { (a, false) } else { (b, true) };
    let ctx = make_context(hi as u64 + 1);
    let zeta = Scalar::zeta(&ctx);
    let constant: Scalar = field_from_biguint::<Scalar>(
        &(BigUint::from(hi + 1) * binomial((a + b) as u64, hi as u64)),
    );
    let scale = constant.try_inv().expect("positive constant");

    let mut summands = Vec::with_capacity(hi as usize + 1);
    for k in 0..=hi {
        let zk = zeta.pow(k as i64).expect("root of unity power");
        let weight = zk.mul(&scale);
        let form = if swapped {
            LinForm::new(vec![Scalar::from_int(1), zk])
        } else {
            LinForm::new(vec![zk, Scalar::from_int(1)])
        };
        summands.push((weight, form));
    }
    let out = WaringDecomposition::new(2, a + b, summands);
    debug_assert!(out.verify(&Poly::monomial(2, vec![a, b], Scalar::from_int(1))));
    out
}

/// Exactly dim S_e = C(n+e−1, e) linear forms with small integer
/// coefficients whose e-th powers form a basis of S_e.
///
/// Integer vectors are enumerated by increasing max-norm, then L1 norm, then
/// descending lexicographic order, skipping sign duplicates; a vector is kept
/// when its e-th power enlarges the span. The enumeration is fixed so the
/// output is reproducible byte for byte.
pub fn power_basis(n: usize, e: u32) -> Vec<LinForm<Scalar>> {
    assert!(n >= 1);
    let target: BigUint = binomial((n as u64) + (e as u64) - 1, e as u64);
    let target = biguint_to_usize(&target);
    let basis_monomials = monomials_of_degree(n, e);
    let mut space = RowSpace::new(basis_monomials.len());
    let mut out = Vec::with_capacity(target);

    let mut max_norm: i64 = 1;
    while out.len() < target {
        let mut candidates: Vec<Vec<i64>> = Vec::new();
        let mut v = vec![-max_norm; n];
        let mut done = false;
        while !done {
            let norm_ok = v.iter().any(|&x| x.abs() == max_norm);
            let sign_ok = v.iter().find(|&&x| x != 0).is_some_and(|&first| first > 0);
            if norm_ok && sign_ok {
                candidates.push(v.clone());
            }
            // advance odometer over the box [-M, M]^n
            done = true;
            for i in (0..n).rev() {
                if v[i] < max_norm {
                    v[i] += 1;
                    for x in v[i + 1..].iter_mut() {
                        *x = -max_norm;
                    }
                    done = false;
                    break;
                }
            }
        }
        candidates.sort_by(|a, b| {
            let l1 = |v: &[i64]| v.iter().map(|x| x.abs()).sum::<i64>();
            l1(a).cmp(&l1(b)).then_with(|| b.cmp(a))
        });
        for cand in candidates {
            if out.len() == target {
                break;
            }
            let form: LinForm<Scalar> = crate::poly::lin(&cand);
            let row = power_of_linform(&form, e).coefficient_vector(&basis_monomials);
            if space.insert(row) {
                out.push(form);
            }
        }
        max_norm += 1;
    }
    out
}

fn biguint_to_usize(n: &BigUint) -> usize {
    let digits = n.to_u64_digits();
    match digits.len() {
        0 => 0,
        1 => digits[0] as usize,
        _ => panic!("dimension overflows usize"),
    }
}

/// Solve g = Σ c_i·L_i^e against the power basis of S_e; zero coefficients
/// are dropped, so the summand count is at most dim S_e.
pub fn decompose_in_power_basis(g: &Poly<Scalar>) -> WaringDecomposition {
    let n = g.nvars();
    let e = g.degree();
    if g.is_zero() {
        return WaringDecomposition::empty(n, e);
    }
    let basis = power_basis(n, e);
    let monomials = monomials_of_degree(n, e);
    let columns: Vec<Vec<Scalar>> = basis
        .iter()
        .map(|form| power_of_linform(form, e).coefficient_vector(&monomials))
        .collect();
    let mut matrix = Matrix::zero(monomials.len(), basis.len());
    for (j, col) in columns.iter().enumerate() {
        for (i, v) in col.iter().enumerate() {
            matrix.set(i, j, v.clone());
        }
    }
    let rhs = g.coefficient_vector(&monomials);
    let solution = matrix.solve(&rhs).expect("power basis spans S_e");
    let out = WaringDecomposition::new(n, e, solution.into_iter().zip(basis).collect());
    debug_assert!(out.verify(g));
    out
}

fn embed_form(form: &LinForm<Scalar>, ctx: &Arc<FieldContext>) -> Result<LinForm<Scalar>> {
    let coeffs: Result<Vec<Scalar>> = form.coeffs().iter().map(|c| c.embed(ctx)).collect();
    Ok(LinForm::new(coeffs?))
}

fn embed_poly(f: &Poly<Scalar>, ctx: &Arc<FieldContext>) -> Result<Poly<Scalar>> {
    f.try_map_coeffs(|c| c.embed(ctx))
}

fn scalar_conductor(s: &Scalar) -> u64 {
    s.context().map_or(1, |c| c.conductor())
}

fn gad_conductor(gad: &Gad) -> u64 {
    let mut n = 1u64;
    for part in gad.parts() {
        for c in part.form.coeffs() {
            n = n.lcm(&scalar_conductor(c));
        }
        for (_, c) in part.cofactor.terms() {
            n = n.lcm(&scalar_conductor(c));
        }
    }
    n
}

struct PartPlan {
    form: LinForm<Scalar>,
    multiplicity: usize,
    /// the constant cofactor when multiplicity is 1
    constant: Option<Scalar>,
    /// basis terms of the cofactor, lifted to the ambient variables
    terms: Vec<(Scalar, LinForm<Scalar>)>,
}

/// Rewrite a generalized additive decomposition as an explicit Waring
/// decomposition; the summand count is at most d·Σ_k C(2r_k−2, r_k−1).
pub fn synthesize(gad: &Gad) -> Result<WaringDecomposition> {
    let d = gad.degree();
    let n = gad.nvars();

    // First pass: decompose the cofactors and record every root-of-unity
    // order needed, so the whole output lives in one field.
    let mut plans = Vec::with_capacity(gad.parts().len());
    let mut conductor = gad_conductor(gad);
    let mut refined_bound_applies = true;
    for part in gad.parts() {
        let r_k = part.multiplicity;
        if r_k == 1 {
            let constant = part
                .cofactor
                .terms()
                .next()
                .map(|(_, c)| c.clone())
                .unwrap_or_else(|| Scalar::from_int(0));
            plans.push(PartPlan {
                form: part.form.clone(),
                multiplicity: 1,
                constant: Some(constant),
                terms: Vec::new(),
            });
            continue;
        }
        let reduction = essential_reduction(&part.cofactor)?;
        // Cofactors of extracted decompositions have at most r_k essential
        // variables; only then does the C(2r_k−2, r_k−1) count apply.
        refined_bound_applies &= reduction.rank <= r_k;
        let dec = decompose_in_power_basis(&reduction.reduced);
        let a = d + 1 - r_k as u32;
        let mut terms = Vec::with_capacity(dec.rank());
        for (c, reduced_form) in dec.summands() {
            let lifted = reduction.lift_form(reduced_form);
            if a >= 1 && lifted.proportionality(&part.form).is_none() {
                let order = a.max(r_k as u32 - 1) as u64 + 1; // max(a,b)+1
                conductor = conductor.lcm(&order);
            }
            terms.push((c.clone(), lifted));
        }
        plans.push(PartPlan {
            form: part.form.clone(),
            multiplicity: r_k,
            constant: None,
            terms,
        });
    }
    let ctx = make_context(conductor);

    let mut summands: Vec<(Scalar, LinForm<Scalar>)> = Vec::new();
    for plan in &plans {
        let r_k = plan.multiplicity;
        if r_k == 1 {
            let c = plan.constant.clone().expect("constant cofactor recorded");
            summands.push((c.embed(&ctx)?, embed_form(&plan.form, &ctx)?));
            continue;
        }
        let a = d + 1 - r_k as u32;
        let b = r_k as u32 - 1;
        let base = embed_form(&plan.form, &ctx)?;
        for (c, lifted) in &plan.terms {
            let c = c.embed(&ctx)?;
            let lifted_embedded = embed_form(lifted, &ctx)?;
            if a == 0 {
                // d = r_k − 1: the part is the cofactor itself and the basis
                // terms are already d-th powers.
                summands.push((c, lifted_embedded));
                continue;
            }
            if let Some(t) = lifted.proportionality(&plan.form) {
                // ℓ^a·(tℓ)^b = t^b·ℓ^d
                let tb = t.embed(&ctx)?.pow(b as i64)?;
                summands.push((c.mul(&tb), base.clone()));
                continue;
            }
            for (w, uv) in monomial_two_form(a, b).summands() {
                let weight = c.mul(&w.embed(&ctx)?);
                let u = uv.coeff(0).embed(&ctx)?;
                let v = uv.coeff(1).embed(&ctx)?;
                let form = base.scale(&u).add(&lifted_embedded.scale(&v));
                summands.push((weight, form));
            }
        }
    }

    let out = WaringDecomposition::new(n, d, summands);
    let expected = embed_poly(&gad.polynomial(), &ctx)?;
    if !out.verify(&expected) {
        return Err(Error::SynthesisError(alloc::string::String::from(
            "re-expansion does not match the decomposition",
        )));
    }
    if refined_bound_applies && d >= 1 {
        let per_part: BigUint = gad
            .parts()
            .iter()
            .map(|p| binomial(2 * p.multiplicity as u64 - 2, p.multiplicity as u64 - 1))
            .sum();
        assert!(
            BigUint::from(out.rank()) <= per_part * BigUint::from(d),
            "summand count exceeds d·Σ C(2r_k−2, r_k−1)"
        );
    }
    Ok(out)
}

/// Full pipeline: extract a generalized additive decomposition when
/// d ≥ r − 1 and synthesize it; otherwise decompose the limit directly in
/// its ≤ r essential variables. Either way the output re-expands to the
/// limit exactly and has at most 4^r·d summands.
pub fn deborder(b: &BorderDecomposition) -> Result<WaringDecomposition> {
    let r = b.rank();
    let d = b.degree();
    let f = b.limit()?;

    let out = if (d as i64) >= r as i64 - 1 {
        let extraction = extract_gad(b)?;
        synthesize(&extraction.gad)?
    } else if f.is_zero() {
        WaringDecomposition::empty(b.nvars(), d)
    } else if d == 0 {
        let c = f.coeff(&crate::poly::Monomial::constant(b.nvars()));
        WaringDecomposition::new(b.nvars(), 0, vec![(c, LinForm::unit(b.nvars(), 0))])
    } else {
        let reduction = essential_reduction(&f)?;
        let dec = decompose_in_power_basis(&reduction.reduced);
        let summands = dec
            .summands()
            .iter()
            .map(|(c, form)| (c.clone(), reduction.lift_form(form)))
            .collect();
        let out = WaringDecomposition::new(b.nvars(), d, summands);
        if !out.verify(&f) {
            return Err(Error::SynthesisError(alloc::string::String::from(
                "essential-variable fallback does not re-expand to the limit",
            )));
        }
        let dim = binomial(reduction.rank as u64 + d as u64 - 1, d as u64);
        assert!(
            BigUint::from(out.rank()) <= dim,
            "fallback exceeds dim S_d in the essential variables"
        );
        out
    };

    let fp = BigUint::from(4u32).pow(r as u32) * BigUint::from(d.max(1));
    assert!(
        BigUint::from(out.rank()) <= fp,
        "fixed-parameter bound 4^r·d violated"
    );
    Ok(out)
}

/// The bound values attached to a debordering instance.
#[derive(Clone, Debug, PartialEq)]
pub struct BoundReport {
    pub rank: usize,
    pub degree: u32,
    /// C(2r−2, r−1): dimension bound on maxR(r, r−1)
    pub binom_bound: BigUint,
    /// 2·⌈C(2r−2, r−1)/r⌉: the Blekherman–Teitler refinement
    pub bt_bound: BigUint,
    /// 4^r·d: fixed-parameter debordering bound
    pub fp_bound: BigUint,
    /// ⌈C(n+d−1, d)/n⌉: Waring rank of a generic form (away from the
    /// exceptional (n, d) pairs)
    pub generic_rank: BigUint,
}

pub fn bounds(r: usize, d: u32, n: usize) -> BoundReport {
    assert!(r >= 1 && d >= 1 && n >= 1);
    let binom = binomial(2 * r as u64 - 2, r as u64 - 1);
    let bt = BigUint::from(2u32) * ceil_div(&binom, &BigUint::from(r));
    let fp = BigUint::from(4u32).pow(r as u32) * BigUint::from(d);
    let generic = ceil_div(
        &binomial(n as u64 + d as u64 - 1, d as u64),
        &BigUint::from(n),
    );
    BoundReport {
        rank: r,
        degree: d,
        binom_bound: binom,
        bt_bound: bt,
        fp_bound: fp,
        generic_rank: generic,
    }
}

fn ceil_div(a: &BigUint, b: &BigUint) -> BigUint {
    (a + b - BigUint::one()) / b
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::gad::GadPart;
    use crate::poly::lin;

    #[test]
    fn monomial_two_form_square_difference() {
        let dec = monomial_two_form(1, 1);
        assert_eq!(dec.rank(), 2);
        assert!(dec.verify(&Poly::monomial(2, vec![1, 1], Scalar::from_int(1))));
        // weights are ±1/4 with forms y1±y2
        let quarter = Scalar::from_ratio(1, 4);
        assert_eq!(dec.summands()[0].0, quarter);
        assert_eq!(dec.summands()[1].0, quarter.negated());
    }

    #[test]
    fn monomial_two_form_tangent() {
        for d in 3..=7u32 {
            let dec = monomial_two_form(d - 1, 1);
            assert_eq!(dec.rank(), d as usize);
            assert!(dec.verify(&Poly::monomial(2, vec![d - 1, 1], Scalar::from_int(1))));
        }
    }

    #[test]
    fn monomial_two_form_constant_and_roots() {
        // (a,b) = (2,1): three summands, scaling constant 1/9, zeta(3) powers.
        let dec = monomial_two_form(2, 1);
        assert_eq!(dec.rank(), 3);
        let ninth = Scalar::from_ratio(1, 9);
        let zeta = Scalar::zeta(&make_context(3));
        for (k, (w, form)) in dec.summands().iter().enumerate() {
            let zk = zeta.pow(k as i64).unwrap();
            assert_eq!(*w, zk.mul(&ninth));
            assert_eq!(*form.coeff(0), zk);
            assert!(form.coeff(1).is_one());
        }
        assert!(dec.verify(&Poly::monomial(2, vec![2, 1], Scalar::from_int(1))));
    }

    #[test]
    fn monomial_two_form_swapped_arguments() {
        let dec = monomial_two_form(1, 3);
        assert_eq!(dec.rank(), 4);
        assert!(dec.verify(&Poly::monomial(2, vec![1, 3], Scalar::from_int(1))));
    }

    #[test]
    fn monomial_two_form_degenerate_exponents() {
        // b = 0 still follows the stated formula: a+1 summands of y1^a.
        let dec = monomial_two_form(3, 0);
        assert_eq!(dec.rank(), 4);
        assert!(dec.verify(&Poly::monomial(2, vec![3, 0], Scalar::from_int(1))));
        let unit = monomial_two_form(0, 0);
        assert_eq!(unit.rank(), 1);
        assert!(unit.verify(&Poly::constant(2, Scalar::from_int(1))));
    }

    #[test]
    fn power_basis_examples() {
        let b22 = power_basis(2, 2);
        assert_eq!(b22.len(), 3);
        assert_eq!(b22[0], lin::<Scalar>(&[1, 0]));
        assert_eq!(b22[1], lin::<Scalar>(&[0, 1]));
        assert_eq!(b22[2], lin::<Scalar>(&[1, 1]));

        assert_eq!(power_basis(1, 7), vec![lin::<Scalar>(&[1])]);

        let b31 = power_basis(3, 1);
        assert_eq!(
            b31,
            vec![
                lin::<Scalar>(&[1, 0, 0]),
                lin::<Scalar>(&[0, 1, 0]),
                lin::<Scalar>(&[0, 0, 1])
            ]
        );
    }

    #[test]
    fn power_basis_spans_larger_spaces() {
        for (n, e) in [(2usize, 5u32), (3, 3), (4, 2)] {
            let basis = power_basis(n, e);
            let monomials = monomials_of_degree(n, e);
            assert_eq!(basis.len(), monomials.len());
            let rows: Vec<Vec<Scalar>> = basis
                .iter()
                .map(|f| power_of_linform(f, e).coefficient_vector(&monomials))
                .collect();
            assert_eq!(Matrix::from_rows(rows).rank(), monomials.len());
        }
    }

    #[test]
    fn decompose_simple_polynomials() {
        let x2: Poly<Scalar> = crate::poly::var_power(2, 0, 2);
        let dec = decompose_in_power_basis(&x2);
        assert_eq!(dec.rank(), 1);
        assert!(dec.verify(&x2));

        let xy = Poly::monomial(2, vec![1, 1], Scalar::from_int(1));
        let dec = decompose_in_power_basis(&xy);
        assert!(dec.rank() <= 3);
        assert!(dec.verify(&xy));

        let zero = Poly::zero(3, 2);
        assert_eq!(decompose_in_power_basis(&zero).rank(), 0);
    }

    #[test]
    fn synthesize_tangent_gad_has_exactly_d_summands() {
        for d in 3..=7u32 {
            let extraction = extract_gad(&fixtures::intro_tangent(d)).unwrap();
            let out = synthesize(&extraction.gad).unwrap();
            assert_eq!(out.rank(), d as usize);
            assert!(out.verify(&fixtures::tangent_polynomial(d)));
        }
    }

    #[test]
    fn synthesize_eq1() {
        let d = 5u32;
        let extraction = extract_gad(&fixtures::eq1_fd(d)).unwrap();
        let out = synthesize(&extraction.gad).unwrap();
        assert!(out.rank() <= 15);
        assert!(out.verify(&fixtures::eq1_polynomial(d)));
    }

    #[test]
    fn synthesize_pure_power_part() {
        let gad = Gad::new(
            2,
            4,
            vec![GadPart {
                form: lin::<Scalar>(&[1, 2]),
                multiplicity: 1,
                cofactor: Poly::constant(2, Scalar::from_int(3)),
            }],
        )
        .unwrap();
        let out = synthesize(&gad).unwrap();
        assert_eq!(out.rank(), 1);
        assert!(out.verify(&gad.polynomial()));
    }

    #[test]
    fn deborder_tangent_has_d_summands() {
        let d = 6u32;
        let out = deborder(&fixtures::intro_tangent(d)).unwrap();
        assert_eq!(out.rank(), 6);
        assert!(out.verify(&fixtures::tangent_polynomial(d)));
    }

    #[test]
    fn deborder_wild_cubic_takes_fallback() {
        let b = fixtures::eq2_wild();
        let out = deborder(&b).unwrap();
        assert!(out.rank() <= 35, "C(7,3) bound");
        assert!(out.verify(&fixtures::eq2_polynomial()));
    }

    #[test]
    fn deborder_empty_decomposition() {
        let b = BorderDecomposition::new(2, 3, Vec::new()).unwrap();
        let out = deborder(&b).unwrap();
        assert_eq!(out.rank(), 0);
        assert!(out.expand().is_zero());
    }

    #[test]
    fn bound_report_values() {
        assert_eq!(bounds(2, 1, 1).binom_bound, BigUint::from(2u32));
        assert_eq!(bounds(6, 5, 2).fp_bound, BigUint::from(20480u32));
        assert_eq!(bounds(1, 3, 2).generic_rank, BigUint::from(2u32));
        let r6 = bounds(6, 5, 3);
        assert_eq!(r6.binom_bound, BigUint::from(252u32));
        assert_eq!(r6.bt_bound, BigUint::from(84u32));
    }
}
