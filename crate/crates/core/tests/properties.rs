//! Randomized algebraic identities: field axioms, valuation arithmetic,
//! Euler's formula, catalecticant symmetry, Jordan-type independence.

use proptest::prelude::*;

use waring_core::border::{BorderDecomposition, EpsLinForm};
use waring_core::catalecticant::{catalecticant, essential_vars};
use waring_core::cyclotomic::{make_context, Scalar};
use waring_core::eps::EpsScalar;
use waring_core::gad::jordan_independence_dim;
use waring_core::poly::{lin, monomials_of_degree, power_of_linform, LinForm, Poly};
use waring_core::upoly::UPoly;

fn scalar_strategy(conductor: u64) -> impl Strategy<Value = Scalar> {
    let ctx = make_context(conductor);
    let degree = ctx.degree();
    proptest::collection::vec(-6i64..=6, degree).prop_map(move |coeffs| {
        let mut acc = Scalar::from_int(0);
        let zeta = Scalar::zeta(&ctx);
        for (i, c) in coeffs.into_iter().enumerate() {
            let term = Scalar::from_int(c)
                .try_mul(&zeta.pow(i as i64).unwrap())
                .unwrap();
            acc = acc.try_add(&term).unwrap();
        }
        acc
    })
}

fn eps_strategy() -> impl Strategy<Value = EpsScalar> {
    let poly = proptest::collection::vec(-4i64..=4, 1..4)
        .prop_map(|coeffs| UPoly::new(coeffs.into_iter().map(Scalar::from_int).collect()));
    (poly.clone(), poly, -2i64..=2).prop_map(|(num, den, shift)| {
        let den = if den.is_zero() { UPoly::one() } else { den };
        EpsScalar::from_ratio(num, den)
            .unwrap()
            .mul(&EpsScalar::eps_pow(shift))
    })
}

fn poly_strategy(nvars: usize, degree: u32) -> impl Strategy<Value = Poly<Scalar>> {
    let monomials = monomials_of_degree(nvars, degree);
    let count = monomials.len();
    proptest::collection::vec(-4i64..=4, count).prop_map(move |coeffs| {
        Poly::from_terms(
            nvars,
            degree,
            monomials
                .iter()
                .cloned()
                .zip(coeffs.into_iter().map(Scalar::from_int)),
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn scalar_field_axioms(a in scalar_strategy(12), b in scalar_strategy(12), c in scalar_strategy(12)) {
        let ab_c = a.try_add(&b).unwrap().try_add(&c).unwrap();
        let a_bc = a.try_add(&b.try_add(&c).unwrap()).unwrap();
        prop_assert_eq!(ab_c, a_bc);

        let left = a.try_mul(&b.try_add(&c).unwrap()).unwrap();
        let right = a.try_mul(&b).unwrap().try_add(&a.try_mul(&c).unwrap()).unwrap();
        prop_assert_eq!(left, right);

        let assoc_l = a.try_mul(&b).unwrap().try_mul(&c).unwrap();
        let assoc_r = a.try_mul(&b.try_mul(&c).unwrap()).unwrap();
        prop_assert_eq!(assoc_l, assoc_r);

        if !a.is_zero() {
            prop_assert!(a.try_mul(&a.try_inv().unwrap()).unwrap().is_one());
        }
    }

    #[test]
    fn eps_valuation_is_multiplicative(x in eps_strategy(), y in eps_strategy()) {
        prop_assume!(!x.is_zero() && !y.is_zero());
        let (qx, lx) = x.valuation().unwrap();
        let (qy, ly) = y.valuation().unwrap();
        let (qp, lp) = x.mul(&y).valuation().unwrap();
        prop_assert_eq!(qp, qx + qy);
        prop_assert_eq!(lp, lx.try_mul(&ly).unwrap());
    }

    #[test]
    fn eps_eval0_iff_nonnegative_valuation(x in eps_strategy()) {
        prop_assume!(!x.is_zero());
        let (q, _) = x.valuation().unwrap();
        prop_assert_eq!(x.eval0().is_ok(), q >= 0);
    }

    #[test]
    fn euler_formula(f in poly_strategy(3, 4)) {
        prop_assume!(!f.is_zero());
        let mut acc = Poly::zero(3, 4);
        for i in 0..3 {
            acc = acc.add(&LinForm::<Scalar>::unit(3, i).as_poly().mul(&f.partial_derivative(i)));
        }
        prop_assert_eq!(acc, f.scale(&Scalar::from_int(4)));
    }

    #[test]
    fn catalecticant_rank_symmetry(f in poly_strategy(3, 5)) {
        prop_assume!(!f.is_zero());
        for e in 0..=5u32 {
            let a = catalecticant(&f, e).unwrap().rank();
            let b = catalecticant(&f, 5 - e).unwrap().rank();
            prop_assert_eq!(a, b);
        }
    }

    #[test]
    fn invertible_substitution_preserves_catalecticant_ranks(
        f in poly_strategy(2, 4),
        m in proptest::collection::vec(-3i64..=3, 4),
    ) {
        prop_assume!(!f.is_zero());
        prop_assume!(m[0] * m[3] - m[1] * m[2] != 0);
        let images = [lin::<Scalar>(&[m[0], m[1]]), lin::<Scalar>(&[m[2], m[3]])];
        let g = f.substitute(&images);
        for e in 0..=4u32 {
            prop_assert_eq!(
                catalecticant(&f, e).unwrap().rank(),
                catalecticant(&g, e).unwrap().rank()
            );
        }
    }

    #[test]
    fn essential_vars_bounded_by_summand_count(
        forms in proptest::collection::vec(proptest::collection::vec(-3i64..=3, 3), 1..4),
        d in 2u32..5,
    ) {
        let forms: Vec<LinForm<Scalar>> = forms
            .iter()
            .filter(|c| c.iter().any(|&x| x != 0))
            .map(|c| lin(c))
            .collect();
        prop_assume!(!forms.is_empty());
        let mut f = Poly::zero(3, d);
        for form in &forms {
            f = f.add(&power_of_linform(form, d));
        }
        prop_assume!(!f.is_zero());
        let (m, _) = essential_vars(&f).unwrap();
        prop_assert!(m <= forms.len().min(3));
    }

    #[test]
    fn jordan_direct_sum_at_threshold_degree(
        seeds in proptest::collection::vec((proptest::collection::vec(-3i64..=3, 3), 1usize..=3), 1..=3),
        nvars in 2usize..=3,
    ) {
        let mut parts: Vec<(LinForm<Scalar>, usize)> = Vec::new();
        for (coeffs, r) in &seeds {
            let coeffs: Vec<i64> = coeffs[..nvars].to_vec();
            if coeffs.iter().all(|&c| c == 0) {
                continue;
            }
            let form: LinForm<Scalar> = lin(&coeffs);
            if parts.iter().any(|(f, _)| f.proportionality(&form).is_some()) {
                continue;
            }
            parts.push((form, *r));
        }
        prop_assume!(!parts.is_empty());
        let total: usize = parts.iter().map(|(_, r)| r).sum();
        let d = total as u32 - 1;
        prop_assume!(parts.iter().all(|(_, r)| *r as u32 <= d + 1));
        let dim = jordan_independence_dim(&parts, d).unwrap();
        let expected: usize = parts
            .iter()
            .map(|(_, r)| monomials_of_degree(nvars, *r as u32 - 1).len())
            .sum();
        prop_assert_eq!(dim, expected);
    }

    #[test]
    fn binary_derivative_never_raises_rank(f in poly_strategy(2, 6), vx in -2i64..=2, vy in -2i64..=2) {
        prop_assume!(!f.is_zero());
        prop_assume!(vx != 0 || vy != 0);
        let df = f
            .partial_derivative(0)
            .scale(&Scalar::from_int(vx))
            .add(&f.partial_derivative(1).scale(&Scalar::from_int(vy)));
        prop_assume!(!df.is_zero());
        let (wr_f, _) = waring_core::oracles::binary_exact_ranks(&f).unwrap();
        let (wr_df, _) = waring_core::oracles::binary_exact_ranks(&df).unwrap();
        prop_assert!(wr_df <= wr_f, "derivative rank {wr_df} > {wr_f}");
    }
}

/// Weighted tangent pairs and plain summands with existing limits; the
/// building blocks for random binary border decompositions.
pub fn random_binary_border(seed: u64, max_rank: usize) -> BorderDecomposition {
    let mut state = seed.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(1);
    let mut next = move || {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        state
    };
    let mut int_in = move |lo: i64, hi: i64| lo + (next() % (hi - lo + 1) as u64) as i64;

    let mut summands: Vec<(EpsScalar, EpsLinForm)> = Vec::new();
    let rank_budget = 2 + (int_in(0, (max_rank as i64 - 2).max(0)) as usize);
    while summands.len() + 1 < rank_budget {
        if int_in(0, 1) == 0 && summands.len() + 2 <= rank_budget {
            // tangent pair c/ε·[(ℓ+εm)^d − ℓ^d]
            let l = loop {
                let c = [int_in(-3, 3), int_in(-3, 3)];
                if c != [0, 0] {
                    break c;
                }
            };
            let m = [int_in(-2, 2), int_in(-2, 2)];
            let c = int_in(1, 3);
            let w = EpsScalar::from_int(c).try_div(&EpsScalar::eps()).unwrap();
            let form1 = LinForm::new(vec![
                EpsScalar::from_int(l[0]).add(&EpsScalar::from_int(m[0]).mul(&EpsScalar::eps())),
                EpsScalar::from_int(l[1]).add(&EpsScalar::from_int(m[1]).mul(&EpsScalar::eps())),
            ]);
            let form2 = LinForm::new(vec![EpsScalar::from_int(l[0]), EpsScalar::from_int(l[1])]);
            summands.push((w.clone(), form1));
            summands.push((w.negated(), form2));
        } else {
            let l = loop {
                let c = [int_in(-3, 3), int_in(-3, 3)];
                if c != [0, 0] {
                    break c;
                }
            };
            let e = [int_in(-2, 2), int_in(-2, 2)];
            let w = EpsScalar::from_int(int_in(1, 4));
            let form = LinForm::new(vec![
                EpsScalar::from_int(l[0]).add(&EpsScalar::from_int(e[0]).mul(&EpsScalar::eps())),
                EpsScalar::from_int(l[1]).add(&EpsScalar::from_int(e[1]).mul(&EpsScalar::eps())),
            ]);
            summands.push((w, form));
        }
    }
    let r = summands.len();
    let d = (r as u32).saturating_sub(1).max(2) + (seed % 3) as u32;
    BorderDecomposition::new(2, d, summands).unwrap()
}

#[test]
fn deborder_random_binary_decompositions() {
    for seed in 0..25u64 {
        let b = random_binary_border(seed, 4);
        let f = b.limit().unwrap();
        let out = waring_core::synthesis::deborder(&b).unwrap();
        assert!(out.verify(&f), "seed {seed}");
        if !f.is_zero() {
            let (wr, bwr) = waring_core::oracles::binary_exact_ranks(&f).unwrap();
            assert!(bwr <= b.rank(), "seed {seed}: bwr {bwr} > r {}", b.rank());
            assert!(out.rank() >= wr, "seed {seed}: output smaller than rank");
        }
    }
}

#[test]
fn power_basis_decomposition_is_identity_on_small_spaces() {
    let mut state = 0xDEADBEEFu64;
    let mut next = move || {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        state
    };
    for n in 1..=4usize {
        for e in 0..=5u32 {
            if n == 4 && e > 4 {
                continue; // dim 56 solve is covered by (4, 4)
            }
            let monomials = monomials_of_degree(n, e);
            let g = Poly::from_terms(
                n,
                e,
                monomials
                    .iter()
                    .cloned()
                    .map(|m| (m, Scalar::from_int((next() % 9) as i64 - 4))),
            );
            let dec = waring_core::synthesis::decompose_in_power_basis(&g);
            assert!(dec.verify(&g), "n={n} e={e}");
            assert!(dec.rank() <= monomials.len());
        }
    }
}

#[test]
fn values_are_send_and_sync() {
    fn check<T: Send + Sync>() {}
    check::<Scalar>();
    check::<EpsScalar>();
    check::<Poly<Scalar>>();
    check::<LinForm<Scalar>>();
    check::<BorderDecomposition>();
    check::<waring_core::gad::Gad>();
    check::<waring_core::synthesis::WaringDecomposition>();
}
