//! The running example families: tangent-line limits, the six-summand f_d
//! decomposition, and its wild cubic variant.
//!
//! Variables are ordered (x0, x1, y0, y1, y2) for the five-variable families.

use alloc::vec;
use alloc::vec::Vec;

use crate::border::{BorderDecomposition, EpsLinForm};
use crate::cyclotomic::Scalar;
use crate::eps::EpsScalar;
use crate::poly::{power_of_linform, LinForm, Poly};

/// c/(m·ε)
fn weight_over_eps(c: i64, m: i64) -> EpsScalar {
    EpsScalar::from_int(c)
        .try_div(&EpsScalar::from_int(m).mul(&EpsScalar::eps()))
        .expect("nonzero denominator")
}

/// Linear form with constant integer coordinates plus optional ε·x_i slots.
fn eps_form(consts: &[i64], eps_slots: &[(usize, i64)]) -> EpsLinForm {
    let mut coeffs: Vec<EpsScalar> = consts.iter().map(|&c| EpsScalar::from_int(c)).collect();
    for &(i, c) in eps_slots {
        coeffs[i] = coeffs[i].add(&EpsScalar::from_int(c).mul(&EpsScalar::eps()));
    }
    LinForm::new(coeffs)
}

/// x^{d−1}y = lim (1/(dε))[(x+εy)^d − x^d], the smallest border rank 2 limit.
pub fn intro_tangent(d: u32) -> BorderDecomposition {
    assert!(d >= 2);
    let w = weight_over_eps(1, d as i64);
    BorderDecomposition::new(
        2,
        d,
        vec![
            (w.clone(), eps_form(&[1, 0], &[(1, 1)])),
            (w.negated(), eps_form(&[1, 0], &[])),
        ],
    )
    .expect("valid fixture")
}

pub fn tangent_polynomial(d: u32) -> Poly<Scalar> {
    Poly::monomial(2, vec![d - 1, 1], Scalar::from_int(1))
}

/// f_d = x0^{d−1}y0 + x1^{d−1}y1 + 2(x0+x1)^{d−1}y2 as a six-summand limit;
/// border rank 6 for d > 3.
pub fn eq1_fd(d: u32) -> BorderDecomposition {
    assert!(d > 3);
    let w1 = weight_over_eps(1, d as i64);
    let w2 = weight_over_eps(2, d as i64);
    BorderDecomposition::new(
        5,
        d,
        vec![
            (w1.clone(), eps_form(&[1, 0, 0, 0, 0], &[(2, 1)])),
            (w1.negated(), eps_form(&[1, 0, 0, 0, 0], &[])),
            (w1.clone(), eps_form(&[0, 1, 0, 0, 0], &[(3, 1)])),
            (w1.negated(), eps_form(&[0, 1, 0, 0, 0], &[])),
            (w2.clone(), eps_form(&[1, 1, 0, 0, 0], &[(4, 1)])),
            (w2.negated(), eps_form(&[1, 1, 0, 0, 0], &[])),
        ],
    )
    .expect("valid fixture")
}

/// f_d written out directly.
pub fn eq1_polynomial(d: u32) -> Poly<Scalar> {
    let term = |x: &[i64], y: usize, c: i64| -> Poly<Scalar> {
        let form = LinForm::new(x.iter().map(|&v| Scalar::from_int(v)).collect());
        let y_var = crate::poly::var_power::<Scalar>(5, y, 1);
        power_of_linform(&form, d - 1)
            .mul(&y_var)
            .scale(&Scalar::from_int(c))
    };
    term(&[1, 0, 0, 0, 0], 2, 1)
        .add(&term(&[0, 1, 0, 0, 0], 3, 1))
        .add(&term(&[1, 1, 0, 0, 0], 4, 2))
}

/// The wild cubic: f_3 as a five-summand limit whose classes are all
/// singletons with valuation −1, so no part has an individual limit.
///
/// The last summand is (2x0 + x1)^3: with it the ε^{-1} terms cancel exactly
/// and the limit recomputes to f_3, which is the validation the fixture
/// carries in its tests.
pub fn eq2_wild() -> BorderDecomposition {
    BorderDecomposition::new(
        5,
        3,
        vec![
            (weight_over_eps(1, 3), eps_form(&[1, 0, 0, 0, 0], &[(2, 1)])),
            (weight_over_eps(1, 3), eps_form(&[0, 1, 0, 0, 0], &[(3, 1)])),
            (weight_over_eps(2, 3), eps_form(&[1, 1, 0, 0, 0], &[(4, 1)])),
            (weight_over_eps(-1, 9), eps_form(&[1, 2, 0, 0, 0], &[])),
            (weight_over_eps(-1, 9), eps_form(&[2, 1, 0, 0, 0], &[])),
        ],
    )
    .expect("valid fixture")
}

pub fn eq2_polynomial() -> Poly<Scalar> {
    eq1_polynomial(3)
}
