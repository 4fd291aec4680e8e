//! Generalized additive decompositions: f = Σ_k ℓ_k^{d−r_k+1}·g_k with
//! pairwise non-proportional ℓ_k and deg g_k = r_k − 1.
//!
//! Extraction from a border decomposition proceeds class by class: when
//! d ≥ r − 1 every surviving local class has valuation 0 and its leading
//! polynomial is an exact multiple of base^{d−r_k+1}; the cofactor g_k is
//! read off by dividing in coordinates where the base is the first variable.

use alloc::vec::Vec;
use core::fmt;

use crate::border::{group_local_classes, BorderDecomposition};
use crate::catalecticant::rotate_form_to_first;
use crate::cyclotomic::Scalar;
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::poly::{monomials_of_degree, power_of_linform, LinForm, Poly};

/// One summand ℓ^{d−r+1}·g of a generalized additive decomposition.
#[derive(Clone, Debug, PartialEq)]
pub struct GadPart {
    pub form: LinForm<Scalar>,
    /// r_k; the exponent of the form in the part is d − r_k + 1.
    pub multiplicity: usize,
    /// g_k, homogeneous of degree r_k − 1.
    pub cofactor: Poly<Scalar>,
}

impl GadPart {
    pub fn polynomial(&self, degree: u32) -> Poly<Scalar> {
        let e = degree + 1 - self.multiplicity as u32;
        power_of_linform(&self.form, e).mul(&self.cofactor)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Gad {
    nvars: usize,
    degree: u32,
    parts: Vec<GadPart>,
}

/// Why a decomposition failed verification.
#[derive(Clone, Debug, PartialEq)]
pub enum GadDefect {
    ZeroForm { part: usize },
    ProportionalForms { left: usize, right: usize },
    WrongCofactorDegree { part: usize },
    MultiplicityTooLarge { part: usize },
    ArityMismatch,
    DegreeMismatch,
    SumMismatch,
}

impl fmt::Display for GadDefect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GadDefect::ZeroForm { part } => write!(f, "part {part} has a zero linear form"),
            GadDefect::ProportionalForms { left, right } => {
                write!(f, "parts {left} and {right} have proportional forms")
            }
            GadDefect::WrongCofactorDegree { part } => {
                write!(f, "part {part} cofactor degree is not multiplicity - 1")
            }
            GadDefect::MultiplicityTooLarge { part } => {
                write!(f, "part {part} multiplicity exceeds degree + 1")
            }
            GadDefect::ArityMismatch => write!(f, "variable counts disagree"),
            GadDefect::DegreeMismatch => write!(f, "degrees disagree"),
            GadDefect::SumMismatch => write!(f, "parts do not sum to the polynomial"),
        }
    }
}

impl Gad {
    pub fn new(nvars: usize, degree: u32, parts: Vec<GadPart>) -> Result<Self> {
        let gad = Gad {
            nvars,
            degree,
            parts,
        };
        match gad.validate() {
            Ok(()) => Ok(gad),
            Err(GadDefect::ProportionalForms { .. }) => Err(Error::ProportionalForms),
            Err(defect) => Err(Error::SynthesisError(alloc::format!("{defect}"))),
        }
    }

    /// No validation; used by parsers and tests that need to represent
    /// invalid decompositions.
    pub fn from_parts_unchecked(nvars: usize, degree: u32, parts: Vec<GadPart>) -> Self {
        Gad {
            nvars,
            degree,
            parts,
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn parts(&self) -> &[GadPart] {
        &self.parts
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Σ r_k.
    pub fn total_multiplicity(&self) -> usize {
        self.parts.iter().map(|p| p.multiplicity).sum()
    }

    pub fn polynomial(&self) -> Poly<Scalar> {
        let mut acc = Poly::zero(self.nvars, self.degree);
        for part in &self.parts {
            acc = acc.add(&part.polynomial(self.degree));
        }
        acc
    }

    pub fn validate(&self) -> core::result::Result<(), GadDefect> {
        for (i, part) in self.parts.iter().enumerate() {
            if part.form.nvars() != self.nvars || part.cofactor.nvars() != self.nvars {
                return Err(GadDefect::ArityMismatch);
            }
            if part.form.is_zero() {
                return Err(GadDefect::ZeroForm { part: i });
            }
            if part.multiplicity == 0 || part.multiplicity as u32 > self.degree + 1 {
                return Err(GadDefect::MultiplicityTooLarge { part: i });
            }
            if part.cofactor.is_zero() || part.cofactor.degree() != part.multiplicity as u32 - 1 {
                return Err(GadDefect::WrongCofactorDegree { part: i });
            }
        }
        for i in 0..self.parts.len() {
            for j in i + 1..self.parts.len() {
                if self.parts[i]
                    .form
                    .proportionality(&self.parts[j].form)
                    .is_some()
                {
                    return Err(GadDefect::ProportionalForms { left: i, right: j });
                }
            }
        }
        Ok(())
    }
}

/// True iff all structural invariants hold and the parts sum to f exactly.
pub fn verify_gad(gad: &Gad, f: &Poly<Scalar>) -> bool {
    verify_gad_detailed(gad, f).is_ok()
}

pub fn verify_gad_detailed(gad: &Gad, f: &Poly<Scalar>) -> core::result::Result<(), GadDefect> {
    gad.validate()?;
    if f.nvars() != gad.nvars() {
        return Err(GadDefect::ArityMismatch);
    }
    if !f.is_zero() && f.degree() != gad.degree() {
        return Err(GadDefect::DegreeMismatch);
    }
    if gad.polynomial() != *f {
        return Err(GadDefect::SumMismatch);
    }
    Ok(())
}

/// Extraction result: the decomposition itself plus, per part, a rescaled
/// local border decomposition whose limit is that part (witnessing border
/// rank ≤ r_k), and the summand index sets of dropped classes.
#[derive(Clone, Debug)]
pub struct GadExtraction {
    pub gad: Gad,
    pub witnesses: Vec<BorderDecomposition>,
    pub dropped: Vec<Vec<usize>>,
}

/// Turn a border decomposition with d ≥ r − 1 into a generalized additive
/// decomposition with Σ r_k ≤ r.
pub fn extract_gad(b: &BorderDecomposition) -> Result<GadExtraction> {
    let r = b.rank();
    let d = b.degree();
    if (d as i64) < r as i64 - 1 {
        return Err(Error::DegreeTooLow { degree: d, rank: r });
    }
    let limit = b.limit()?;
    let grouping = group_local_classes(b)?;

    let mut parts = Vec::new();
    let mut witnesses = Vec::new();
    for class in &grouping.classes {
        if class.valuation < 0 {
            // Impossible when d ≥ r − 1: the leading terms of minimal
            // valuation would cancel across classes, contradicting the
            // independence of base powers.
            return Err(Error::CrossClassCancellation);
        }
        debug_assert_eq!(class.valuation, 0, "grouping drops positive valuations");
        let r_k = class.size();
        let exponent = d + 1 - r_k as u32;
        let change = rotate_form_to_first(&class.base);
        let rotated = change.to_new(&class.leading);
        let cofactor_rotated = rotated.div_var_power(0, exponent)?;
        let cofactor = change.to_old(&cofactor_rotated);
        parts.push(GadPart {
            form: class.base.clone(),
            multiplicity: r_k,
            cofactor,
        });
        witnesses.push(class.witness(b.nvars(), d));
    }

    let gad = Gad::new(b.nvars(), d, parts)?;
    assert_eq!(gad.polynomial(), limit, "class limits re-sum to the limit");
    assert!(gad.total_multiplicity() <= r);
    Ok(GadExtraction {
        gad,
        witnesses,
        dropped: grouping.dropped,
    })
}

/// Exact dimension of Σ_k ℓ_k^{d−r_k+1}·S_{r_k−1} inside S_d.
///
/// Pairwise non-proportional forms with d ≥ Σ r_k − 1 give a direct sum
/// (dimension Σ_k dim S_{r_k−1}); lower degrees can collapse it.
pub fn jordan_independence_dim(parts: &[(LinForm<Scalar>, usize)], d: u32) -> Result<usize> {
    for i in 0..parts.len() {
        for j in i + 1..parts.len() {
            if parts[i].0.proportionality(&parts[j].0).is_some() {
                return Err(Error::ProportionalForms);
            }
        }
    }
    let Some(nvars) = parts.first().map(|(f, _)| f.nvars()) else {
        return Ok(0);
    };
    let target = monomials_of_degree(nvars, d);
    let mut rows = Vec::new();
    for (form, r_k) in parts {
        let r_k = *r_k as u32;
        if r_k == 0 || r_k > d + 1 {
            return Err(Error::DegreeTooLow {
                degree: d,
                rank: r_k as usize,
            });
        }
        let base_power = power_of_linform(form, d + 1 - r_k);
        for m in monomials_of_degree(nvars, r_k - 1) {
            let g = Poly::monomial(nvars, m.exps().to_vec(), Scalar::from_int(1));
            rows.push(base_power.mul(&g).coefficient_vector(&target));
        }
    }
    Ok(Matrix::from_rows(rows).rank())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::poly::{lin, var_power};

    #[test]
    fn extract_from_intro_tangent() {
        let d = 6u32;
        let out = extract_gad(&fixtures::intro_tangent(d)).unwrap();
        assert_eq!(out.gad.parts().len(), 1);
        let part = &out.gad.parts()[0];
        assert_eq!(part.multiplicity, 2);
        assert_eq!(part.form, lin::<Scalar>(&[1, 0]));
        assert_eq!(part.cofactor, var_power::<Scalar>(2, 1, 1));
        assert!(verify_gad(&out.gad, &fixtures::tangent_polynomial(d)));
        // witness re-verifies
        assert_eq!(out.witnesses[0].limit().unwrap(), part.polynomial(d));
    }

    #[test]
    fn extract_from_eq1() {
        let d = 5u32;
        let b = fixtures::eq1_fd(d);
        let out = extract_gad(&b).unwrap();
        let gad = &out.gad;
        assert_eq!(gad.parts().len(), 3);
        assert_eq!(gad.total_multiplicity(), 6);
        for part in gad.parts() {
            assert_eq!(part.multiplicity, 2);
        }
        // Bases in canonical order: [x1], [x0], [x0+x1]; cofactors are the
        // matching y-variables, the last one carrying the weight 2.
        assert_eq!(gad.parts()[0].form, lin::<Scalar>(&[0, 1, 0, 0, 0]));
        assert_eq!(gad.parts()[0].cofactor, var_power::<Scalar>(5, 3, 1));
        assert_eq!(gad.parts()[1].form, lin::<Scalar>(&[1, 0, 0, 0, 0]));
        assert_eq!(gad.parts()[1].cofactor, var_power::<Scalar>(5, 2, 1));
        assert_eq!(gad.parts()[2].form, lin::<Scalar>(&[1, 1, 0, 0, 0]));
        assert_eq!(
            gad.parts()[2].cofactor,
            var_power::<Scalar>(5, 4, 1).scale(&Scalar::from_int(2))
        );

        assert!(verify_gad(gad, &fixtures::eq1_polynomial(d)));
        for (witness, part) in out.witnesses.iter().zip(gad.parts()) {
            assert_eq!(witness.limit().unwrap(), part.polynomial(d));
            assert_eq!(witness.rank(), part.multiplicity);
        }
    }

    #[test]
    fn eq2_wild_is_degree_too_low() {
        let err = extract_gad(&fixtures::eq2_wild()).unwrap_err();
        assert_eq!(err, Error::DegreeTooLow { degree: 3, rank: 5 });
    }

    #[test]
    fn empty_decomposition_gives_empty_gad() {
        let b = BorderDecomposition::new(3, 4, alloc::vec::Vec::new()).unwrap();
        let out = extract_gad(&b).unwrap();
        assert!(out.gad.is_empty());
        assert!(out.gad.polynomial().is_zero());
    }

    #[test]
    fn verify_rejects_tampering() {
        let d = 5u32;
        let out = extract_gad(&fixtures::eq1_fd(d)).unwrap();
        let f = fixtures::eq1_polynomial(d);
        assert!(verify_gad(&out.gad, &f));

        let mut tampered_parts = out.gad.parts().to_vec();
        tampered_parts[0].cofactor = tampered_parts[0].cofactor.scale(&Scalar::from_int(2));
        let tampered = Gad::from_parts_unchecked(5, d, tampered_parts);
        assert_eq!(
            verify_gad_detailed(&tampered, &f),
            Err(GadDefect::SumMismatch)
        );

        let proportional = Gad::from_parts_unchecked(
            2,
            3,
            alloc::vec![
                GadPart {
                    form: lin::<Scalar>(&[1, 0]),
                    multiplicity: 1,
                    cofactor: Poly::constant(2, Scalar::from_int(1)),
                },
                GadPart {
                    form: lin::<Scalar>(&[2, 0]),
                    multiplicity: 1,
                    cofactor: Poly::constant(2, Scalar::from_int(1)),
                },
            ],
        );
        assert_eq!(
            verify_gad_detailed(&proportional, &proportional.polynomial()),
            Err(GadDefect::ProportionalForms { left: 0, right: 1 })
        );
    }

    #[test]
    fn jordan_dimension_examples() {
        // x, y at d = 1: independent.
        let parts = [(lin::<Scalar>(&[1, 0]), 1), (lin::<Scalar>(&[0, 1]), 1)];
        assert_eq!(jordan_independence_dim(&parts, 1).unwrap(), 2);

        // x²·S_1 ⊕ y²·S_1 in S_3: full 4 = Σ r_k.
        let parts = [(lin::<Scalar>(&[1, 0]), 2), (lin::<Scalar>(&[0, 1]), 2)];
        assert_eq!(jordan_independence_dim(&parts, 3).unwrap(), 4);

        // Same parts at d = 2 collapse: x·S_1 + y·S_1 is only S_2.
        assert_eq!(jordan_independence_dim(&parts, 2).unwrap(), 3);

        let proportional = [(lin::<Scalar>(&[1, 1]), 1), (lin::<Scalar>(&[2, 2]), 1)];
        assert_eq!(
            jordan_independence_dim(&proportional, 3),
            Err(Error::ProportionalForms)
        );
    }

    #[test]
    fn derivative_pattern_of_class_limits() {
        // In rotated coordinates F = y1^{d-r+1}G; the proof's derivative
        // recursion predicts ∂F/∂y1 ∈ y1^{d-r}·S and ∂F/∂y_i ∈ y1^{d-r+1}·S.
        let d = 5u32;
        let b = fixtures::eq1_fd(d);
        let grouping = crate::border::group_local_classes(&b).unwrap();
        for class in &grouping.classes {
            let r_k = class.size() as u32;
            let change = rotate_form_to_first(&class.base);
            let rotated = change.to_new(&class.leading);
            assert!(rotated
                .partial_derivative(0)
                .div_var_power(0, d - r_k)
                .is_ok());
            for i in 1..b.nvars() {
                let der = rotated.partial_derivative(i);
                if !der.is_zero() {
                    assert!(der.div_var_power(0, d - r_k + 1).is_ok());
                }
            }
        }
    }
}
