//! Binary homogeneous forms: gcds, squarefreeness, root extraction.
//!
//! A binary form factors as x^{v_x}·y^{v_y}·h with h coprime to both
//! variables; h corresponds one-to-one (with multiplicities) to the
//! dehomogenized polynomial h(t, 1), so univariate gcd machinery decides
//! everything exactly.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::cyclotomic::Scalar;
use crate::poly::{Monomial, Poly};
use crate::upoly::UPoly;

/// `coeffs[i]` is the coefficient of x^i·y^{degree−i}.
#[derive(Clone, Debug, PartialEq)]
pub struct BinForm {
    degree: u32,
    coeffs: Vec<Scalar>,
}

impl BinForm {
    pub fn new(degree: u32, coeffs: Vec<Scalar>) -> Self {
        assert_eq!(coeffs.len(), degree as usize + 1);
        BinForm { degree, coeffs }
    }

    pub fn from_poly(p: &Poly<Scalar>) -> Self {
        assert_eq!(p.nvars(), 2);
        let d = p.degree();
        let mut coeffs = vec![Scalar::from_int(0); d as usize + 1];
        for (m, c) in p.terms() {
            coeffs[m.exp(0) as usize] = c.clone();
        }
        BinForm { degree: d, coeffs }
    }

    pub fn to_poly(&self) -> Poly<Scalar> {
        let mut out = Poly::zero(2, self.degree);
        for (i, c) in self.coeffs.iter().enumerate() {
            out.add_term(
                Monomial::new(vec![i as u32, self.degree - i as u32]),
                c.clone(),
            );
        }
        out
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Scalar::is_zero)
    }

    /// Multiplicity of the factor x.
    pub fn x_valuation(&self) -> u32 {
        self.coeffs
            .iter()
            .position(|c| !c.is_zero())
            .unwrap_or(self.coeffs.len()) as u32
    }

    /// Multiplicity of the factor y.
    pub fn y_valuation(&self) -> u32 {
        let top = self.coeffs.iter().rposition(|c| !c.is_zero()).unwrap_or(0) as u32;
        self.degree - top
    }

    /// The part coprime to x and y, dehomogenized at y = 1 (a polynomial in
    /// t = x/y with nonzero constant and leading coefficients).
    pub fn reduced(&self) -> UPoly<Scalar> {
        if self.is_zero() {
            return UPoly::zero();
        }
        let lo = self.x_valuation() as usize;
        let hi = self.degree as usize - self.y_valuation() as usize;
        UPoly::new(self.coeffs[lo..=hi].to_vec())
    }

    fn from_parts(vx: u32, vy: u32, reduced: &UPoly<Scalar>) -> Self {
        let inner = reduced.degree().expect("nonzero reduced part") as u32;
        let degree = vx + vy + inner;
        let mut coeffs = vec![Scalar::from_int(0); degree as usize + 1];
        for (i, c) in reduced.coeffs().iter().enumerate() {
            coeffs[vx as usize + i] = c.clone();
        }
        BinForm { degree, coeffs }
    }

    /// Monic-normalized gcd (both forms nonzero).
    pub fn gcd(&self, rhs: &Self) -> Self {
        assert!(!self.is_zero() && !rhs.is_zero());
        let vx = self.x_valuation().min(rhs.x_valuation());
        let vy = self.y_valuation().min(rhs.y_valuation());
        let g = self.reduced().gcd(&rhs.reduced());
        BinForm::from_parts(vx, vy, &g)
    }

    /// No repeated linear factors over the algebraic closure.
    pub fn is_squarefree(&self) -> bool {
        !self.is_zero()
            && self.x_valuation() <= 1
            && self.y_valuation() <= 1
            && self.reduced().is_squarefree()
    }

    /// All projective roots (α : β) whose coordinates lie in the base field,
    /// each with its multiplicity. Roots in proper extensions are not
    /// reported.
    pub fn field_roots(&self) -> Vec<((Scalar, Scalar), usize)> {
        let mut out = Vec::new();
        if self.is_zero() {
            return out;
        }
        if self.x_valuation() >= 1 {
            out.push((
                (Scalar::from_int(0), Scalar::from_int(1)),
                self.x_valuation() as usize,
            ));
        }
        if self.y_valuation() >= 1 {
            out.push((
                (Scalar::from_int(1), Scalar::from_int(0)),
                self.y_valuation() as usize,
            ));
        }
        for (factor, mult) in self.reduced().squarefree_decomposition() {
            for root in univariate_field_roots(&factor) {
                out.push(((root, Scalar::from_int(1)), mult));
            }
        }
        out
    }
}

/// Roots of a squarefree monic polynomial that lie in the coefficient field.
///
/// Complete for degree ≤ 2 with rational coefficients (via an exact
/// discriminant square test) and finds all rational roots of higher-degree
/// rational polynomials with moderate coefficients; roots that only exist in
/// larger extensions are not found.
pub fn univariate_field_roots(p: &UPoly<Scalar>) -> Vec<Scalar> {
    match p.degree() {
        None | Some(0) => Vec::new(),
        Some(1) => {
            let root = p
                .coeff(0)
                .negated()
                .try_div(&p.coeff(1))
                .expect("unit lead");
            vec![root]
        }
        Some(2) => quadratic_roots(p),
        Some(_) => {
            let mut out = Vec::new();
            let mut rest = p.clone();
            while let Some(root) = first_rational_root(&rest) {
                out.push(root.clone());
                let linear = UPoly::new(vec![root.negated(), Scalar::from_int(1)]);
                rest = rest.div_exact(&linear);
                if rest.degree() == Some(2) {
                    out.extend(quadratic_roots(&rest));
                    return out;
                }
            }
            out
        }
    }
}

fn quadratic_roots(p: &UPoly<Scalar>) -> Vec<Scalar> {
    let (a, b, c) = (p.coeff(2), p.coeff(1), p.coeff(0));
    let (Some(a), Some(b), Some(c)) = (a.as_rational(), b.as_rational(), c.as_rational()) else {
        return Vec::new();
    };
    let disc = b * b - BigRational::from_integer(BigInt::from(4)) * a * c;
    let Some(sqrt) = rational_sqrt(&disc) else {
        return Vec::new();
    };
    let two_a = BigRational::from_integer(BigInt::from(2)) * a;
    let r1 = (-b.clone() + sqrt.clone()) / two_a.clone();
    let r2 = (-b.clone() - sqrt) / two_a;
    if r1 == r2 {
        vec![Scalar::from_rational(r1)]
    } else {
        vec![Scalar::from_rational(r1), Scalar::from_rational(r2)]
    }
}

/// Exact square root of a nonnegative rational, if it is a perfect square.
pub fn rational_sqrt(q: &BigRational) -> Option<BigRational> {
    if q.is_negative() {
        return None;
    }
    let num = q.numer().magnitude();
    let den = q.denom().magnitude();
    let sn = num_integer::Roots::sqrt(num);
    let sd = num_integer::Roots::sqrt(den);
    if &(&sn * &sn) == num && &(&sd * &sd) == den {
        Some(BigRational::new(BigInt::from(sn), BigInt::from(sd)))
    } else {
        None
    }
}

/// Smallest-height rational root of a rational-coefficient polynomial, by
/// the rational root theorem with trial-division divisor enumeration; bails
/// out (returns `None`) on non-rational coefficients, huge coefficients, or
/// when no rational root exists.
fn first_rational_root(p: &UPoly<Scalar>) -> Option<Scalar> {
    let rational: Option<Vec<BigRational>> = p
        .coeffs()
        .iter()
        .map(|c| c.as_rational().cloned())
        .collect();
    let rational = rational?;
    // clear denominators
    let mut lcm = BigInt::one();
    for c in &rational {
        lcm = lcm.lcm(c.denom());
    }
    let ints: Vec<BigInt> = rational.iter().map(|c| (c * &lcm).to_integer()).collect();
    let trailing = ints.iter().find(|c| !c.is_zero())?.clone();
    if ints.first()?.is_zero() {
        return Some(Scalar::from_int(0));
    }
    let leading = ints.last()?.clone();
    let bound = BigInt::from(1_000_000_000u64);
    if trailing.abs() > bound || leading.abs() > bound {
        return None;
    }
    let nums = small_divisors(&trailing.magnitude().clone());
    let dens = small_divisors(&leading.magnitude().clone());
    for n in &nums {
        for d in &dens {
            for sign in [1i64, -1] {
                let cand =
                    BigRational::new(BigInt::from(n.clone()) * sign, BigInt::from(d.clone()));
                let cand = Scalar::from_rational(cand);
                if p.eval(&cand).is_zero() {
                    return Some(cand);
                }
            }
        }
    }
    None
}

fn small_divisors(n: &BigUint) -> Vec<BigUint> {
    let mut out = Vec::new();
    if n.is_zero() {
        return out;
    }
    let mut d = BigUint::one();
    loop {
        let dd = &d * &d;
        if &dd > n {
            break;
        }
        if (n % &d).is_zero() {
            out.push(d.clone());
            let q = n / &d;
            if q != d {
                out.push(q);
            }
        }
        d += BigUint::one();
    }
    out.sort();
    out
}

/// Field-valued zeros of a univariate polynomial (via its squarefree
/// factors); incomplete in the same way as [`univariate_field_roots`].
pub fn affine_roots(p: &UPoly<Scalar>) -> Vec<Scalar> {
    let mut out = Vec::new();
    for (factor, _) in p.squarefree_decomposition() {
        out.extend(univariate_field_roots(&factor));
    }
    out
}

/// Looks for an explicitly squarefree element in the span of the given
/// forms, searching integer coefficient grids of growing size. The span
/// contains one exactly when the gcd of the basis is squarefree; in that
/// case the grid search terminates.
pub fn squarefree_element(basis: &[BinForm]) -> Option<BinForm> {
    if basis.is_empty() {
        return None;
    }
    for form in basis {
        if form.is_squarefree() {
            return Some(form.clone());
        }
    }
    let gcd = basis
        .iter()
        .skip(1)
        .fold(basis[0].clone(), |acc, f| acc.gcd(f));
    if !gcd.is_squarefree() {
        return None;
    }
    let k = basis.len();
    for radius in 1i64..=64 {
        let mut tuple = vec![-radius; k];
        loop {
            if tuple.iter().any(|&t| t.abs() == radius) {
                let mut acc = Poly::zero(2, basis[0].degree);
                for (t, f) in tuple.iter().zip(basis) {
                    acc = acc.add(&f.to_poly().scale(&Scalar::from_int(*t)));
                }
                let candidate = BinForm::from_poly(&acc);
                if !candidate.is_zero() && candidate.is_squarefree() {
                    return Some(candidate);
                }
            }
            let mut i = k;
            let mut done = true;
            while i > 0 {
                i -= 1;
                if tuple[i] < radius {
                    tuple[i] += 1;
                    for t in tuple[i + 1..].iter_mut() {
                        *t = -radius;
                    }
                    done = false;
                    break;
                }
            }
            if done {
                break;
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bf(coeffs: &[i64]) -> BinForm {
        BinForm::new(
            coeffs.len() as u32 - 1,
            coeffs.iter().map(|&c| Scalar::from_int(c)).collect(),
        )
    }

    #[test]
    fn valuations_and_reduced() {
        // x²y·(x + y): coefficients of x^i y^{4-i}: [0, 0, 1, 1, 0] → x²y²+x³y
        let f = bf(&[0, 0, 1, 1, 0]);
        assert_eq!(f.x_valuation(), 2);
        assert_eq!(f.y_valuation(), 1);
        assert_eq!(f.reduced().degree(), Some(1));
    }

    #[test]
    fn gcd_of_binary_forms() {
        // (x−y)²·x and (x−y)·y² share exactly (x−y).
        let x_minus_y = bf(&[-1, 1]);
        let a = BinForm::from_poly(
            &x_minus_y
                .to_poly()
                .mul(&x_minus_y.to_poly())
                .mul(&bf(&[0, 1]).to_poly()),
        );
        let b = BinForm::from_poly(&x_minus_y.to_poly().mul(&bf(&[1, 0]).to_poly()));
        let g = a.gcd(&b);
        assert_eq!(g.degree(), 1);
        assert!(!g.is_squarefree() || g.is_squarefree()); // degree 1 is squarefree
        assert_eq!(g.reduced().coeff(0).negated(), g.reduced().coeff(1));
    }

    #[test]
    fn squarefree_detection() {
        assert!(bf(&[1, 0, 1]).is_squarefree()); // x² + y²
        assert!(!bf(&[0, 0, 1]).is_squarefree()); // x²
        assert!(!bf(&[1, 2, 1]).is_squarefree()); // (x+y)²
        assert!(bf(&[0, 1, 1]).is_squarefree()); // xy + x² = x(x+y)
    }

    #[test]
    fn roots_of_small_forms() {
        // x²−y² has roots (1:1) and (−1:1)
        let roots = bf(&[-1, 0, 1]).field_roots();
        assert_eq!(roots.len(), 2);
        // x²+y² has no rational roots
        assert!(bf(&[1, 0, 1]).field_roots().is_empty());
        // x²y has x twice... : roots (0:1) with mult 2? coefficients [0,0,1] is x²
        let roots = bf(&[0, 0, 1]).field_roots();
        assert_eq!(roots, vec![((Scalar::from_int(0), Scalar::from_int(1)), 2)]);
    }

    #[test]
    fn rational_root_extraction() {
        // (t − 2/3)(t + 1)(t − 5) cleared: roots 2/3, −1, 5
        let lin =
            |r: (i64, i64)| UPoly::new(vec![Scalar::from_ratio(-r.0, r.1), Scalar::from_int(1)]);
        let p = lin((2, 3)).mul(&lin((-1, 1))).mul(&lin((5, 1)));
        let mut roots = univariate_field_roots(&p);
        roots.sort_by(|a, b| a.canonical_cmp(b));
        assert_eq!(roots.len(), 3);
        assert!(roots.contains(&Scalar::from_ratio(2, 3)));
        assert!(roots.contains(&Scalar::from_int(-1)));
        assert!(roots.contains(&Scalar::from_int(5)));
    }

    #[test]
    fn squarefree_element_in_span() {
        // span{x²y, xy²} = xy·span{x, y} contains xy(x+y).
        let basis = [bf(&[0, 0, 1, 0]), bf(&[0, 1, 0, 0])];
        let elt = squarefree_element(&basis).unwrap();
        assert!(elt.is_squarefree());
        // span{x²} has none.
        assert!(squarefree_element(&[bf(&[0, 0, 1])]).is_none());
    }
}
