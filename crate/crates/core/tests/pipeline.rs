//! Whole-pipeline checks beyond the fixture families: cyclotomic weights,
//! higher-order cancellations, mixed local classes, and the soundness of the
//! catalecticant lower bound against every decomposition the library emits.

use waring_core::border::{BorderDecomposition, EpsLinForm};
use waring_core::cyclotomic::{make_context, Scalar};
use waring_core::eps::EpsScalar;
use waring_core::fixtures;
use waring_core::gad::extract_gad;
use waring_core::oracles::catalecticant_lower_bound;
use waring_core::poly::{power_of_linform, LinForm, Poly};
use waring_core::synthesis::deborder;

fn int(n: i64) -> EpsScalar {
    EpsScalar::from_int(n)
}

/// c/ε^order · [(ℓ + ε^order·m)^d − ℓ^d] → c·d·ℓ^{d−1}·m
fn tangent_pair(
    weight: EpsScalar,
    l: &[i64],
    m: &[i64],
    order: u32,
) -> Vec<(EpsScalar, EpsLinForm)> {
    let shift = EpsScalar::eps_pow(order as i64);
    let moved = LinForm::new(
        l.iter()
            .zip(m)
            .map(|(&a, &b)| int(a).add(&int(b).mul(&shift)))
            .collect(),
    );
    let still = LinForm::new(l.iter().map(|&a| int(a)).collect());
    let w = weight.try_div(&shift).unwrap();
    vec![(w.clone(), moved), (w.negated(), still)]
}

#[test]
fn deborder_with_cyclotomic_weights() {
    // zeta(4)/(dε)·[(x+εy)^d − x^d] → zeta(4)·x^{d−1}y needs the synthesis
    // field to absorb both zeta(4) and zeta(d).
    let d = 6u32;
    let ctx = make_context(4);
    let i = Scalar::zeta(&ctx);
    let weight = EpsScalar::from_scalar(i.clone())
        .try_div(&int(d as i64))
        .unwrap();
    let mut summands = tangent_pair(weight, &[1, 0], &[0, 1], 1);
    // plus an honest cyclotomic-weighted power of a second direction
    summands.push((
        EpsScalar::from_scalar(i.pow(3).unwrap()),
        LinForm::new(vec![int(0), int(1)]),
    ));
    let b = BorderDecomposition::new(2, d, summands).unwrap();

    let f = b.limit().unwrap();
    let expected = Poly::monomial(2, vec![d - 1, 1], Scalar::from_int(1))
        .scale(&i)
        .add(&waring_core::poly::var_power(2, 1, d).scale(&i.pow(3).unwrap()));
    // compare after embedding into a common field
    let big = make_context(4);
    assert_eq!(
        f.try_map_coeffs(|c| c.embed(&big)).unwrap(),
        expected.try_map_coeffs(|c| c.embed(&big)).unwrap()
    );

    let out = deborder(&b).unwrap();
    assert!(out.rank() <= d as usize + 1);
    // the output lives in Q(zeta(lcm(4, d))); verify against f there
    let target = out
        .summands()
        .first()
        .and_then(|(c, _)| c.context())
        .cloned()
        .unwrap();
    let f_embedded = f.try_map_coeffs(|c| c.embed(&target)).unwrap();
    assert!(out.verify(&f_embedded));
}

#[test]
fn deborder_with_second_order_cancellation() {
    // the cancellation happens at ε², not ε
    let d = 5u32;
    let b = BorderDecomposition::new(
        3,
        d,
        tangent_pair(
            int(1).try_div(&int(d as i64)).unwrap(),
            &[1, 1, 0],
            &[0, 0, 1],
            2,
        ),
    )
    .unwrap();
    let f = b.limit().unwrap();
    let expected = power_of_linform(&waring_core::poly::lin::<Scalar>(&[1, 1, 0]), d - 1)
        .mul(&waring_core::poly::var_power(3, 2, 1));
    assert_eq!(f, expected);

    let extraction = extract_gad(&b).unwrap();
    assert_eq!(extraction.gad.parts().len(), 1);
    assert_eq!(extraction.gad.parts()[0].multiplicity, 2);

    let out = deborder(&b).unwrap();
    assert_eq!(out.rank(), d as usize);
    assert!(out.verify(&f));
}

#[test]
fn deborder_mixed_classes_three_variables() {
    // two tangent classes on different bases plus two pure powers: r = 6
    let d = 6u32;
    let mut summands = tangent_pair(
        int(1).try_div(&int(d as i64)).unwrap(),
        &[1, 0, 0],
        &[0, 1, 1],
        1,
    );
    summands.extend(tangent_pair(
        int(-2).try_div(&int(d as i64)).unwrap(),
        &[0, 1, 0],
        &[1, 0, -1],
        1,
    ));
    summands.push((int(3), LinForm::new(vec![int(1), int(1), int(1)])));
    summands.push((int(-1), LinForm::new(vec![int(1), int(-1), int(0)])));
    let b = BorderDecomposition::new(3, d, summands).unwrap();

    let f = b.limit().unwrap();
    let extraction = extract_gad(&b).unwrap();
    assert_eq!(extraction.gad.parts().len(), 4);
    assert_eq!(extraction.gad.total_multiplicity(), 6);
    for (witness, part) in extraction.witnesses.iter().zip(extraction.gad.parts()) {
        assert_eq!(witness.limit().unwrap(), part.polynomial(d));
    }

    let out = deborder(&b).unwrap();
    assert!(out.verify(&f));
    assert!(out.rank() <= 2 * d as usize + 2);
}

#[test]
fn catalecticant_bound_is_sound_for_emitted_decompositions() {
    let cases: Vec<BorderDecomposition> = vec![
        fixtures::intro_tangent(5),
        fixtures::intro_tangent(8),
        fixtures::eq1_fd(5),
        fixtures::eq1_fd(7),
        fixtures::eq2_wild(),
    ];
    for b in cases {
        let f = b.limit().unwrap();
        let out = deborder(&b).unwrap();
        assert!(out.verify(&f));
        let bound = catalecticant_lower_bound(&f).unwrap();
        assert!(
            bound <= out.rank(),
            "lower bound {bound} exceeds emitted rank {}",
            out.rank()
        );
    }
}
