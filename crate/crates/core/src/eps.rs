//! Rational functions in the limit parameter ε over a cyclotomic field.
//!
//! An [`EpsScalar`] is kept in the canonical form num/den with gcd(num, den)
//! = 1 and monic den, so structural equality is equality of rational
//! functions. Limits at ε = 0 are exact: the valuation is the difference of
//! the trailing degrees and the leading Laurent coefficient is a ratio of
//! trailing coefficients.

use alloc::format;
use alloc::string::{String, ToString};
use core::fmt;

use crate::cyclotomic::{FieldContext, Scalar};
use crate::error::{Error, Result};
use crate::ring::Field;
use crate::upoly::UPoly;

use alloc::sync::Arc;

/// num/den with den ≠ 0, gcd(num, den) = 1, den monic.
#[derive(Clone, Debug, PartialEq)]
pub struct EpsScalar {
    num: UPoly<Scalar>,
    den: UPoly<Scalar>,
}

impl EpsScalar {
    fn normalized(num: UPoly<Scalar>, den: UPoly<Scalar>) -> Self {
        assert!(!den.is_zero(), "denominator must be nonzero");
        if num.is_zero() {
            return EpsScalar {
                num,
                den: UPoly::one(),
            };
        }
        let g = num.gcd(&den);
        let (num, den) = if g.degree().unwrap_or(0) > 0 {
            (num.div_exact(&g), den.div_exact(&g))
        } else {
            (num, den)
        };
        let lead_inv = den
            .leading()
            .unwrap()
            .inv()
            .expect("unit leading coefficient");
        EpsScalar {
            num: num.mul_scalar(&lead_inv),
            den: den.mul_scalar(&lead_inv),
        }
    }

    pub fn from_ratio(num: UPoly<Scalar>, den: UPoly<Scalar>) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(EpsScalar::normalized(num, den))
    }

    pub fn from_poly(num: UPoly<Scalar>) -> Self {
        EpsScalar::normalized(num, UPoly::one())
    }

    pub fn from_scalar(s: Scalar) -> Self {
        EpsScalar::from_poly(UPoly::constant(s))
    }

    pub fn from_int(n: i64) -> Self {
        EpsScalar::from_scalar(Scalar::from_int(n))
    }

    /// The limit parameter ε itself.
    pub fn eps() -> Self {
        EpsScalar::from_poly(UPoly::monomial(Scalar::from_int(1), 1))
    }

    /// ε^k for any integer k.
    pub fn eps_pow(k: i64) -> Self {
        let p = UPoly::monomial(Scalar::from_int(1), k.unsigned_abs() as usize);
        if k >= 0 {
            EpsScalar::from_poly(p)
        } else {
            EpsScalar::normalized(UPoly::one(), p)
        }
    }

    pub fn num(&self) -> &UPoly<Scalar> {
        &self.num
    }

    pub fn den(&self) -> &UPoly<Scalar> {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_constant(&self) -> bool {
        self.num.degree().unwrap_or(0) == 0 && self.den.is_one()
    }

    pub fn as_scalar(&self) -> Option<Scalar> {
        if self.den.is_one() && self.num.degree().unwrap_or(0) == 0 {
            Some(self.num.coeff(0))
        } else {
            None
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let num = self.num.mul(&rhs.den).add(&rhs.num.mul(&self.den));
        EpsScalar::normalized(num, self.den.mul(&rhs.den))
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.negated())
    }

    pub fn negated(&self) -> Self {
        EpsScalar {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        EpsScalar::normalized(self.num.mul(&rhs.num), self.den.mul(&rhs.den))
    }

    pub fn try_inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(EpsScalar::normalized(self.den.clone(), self.num.clone()))
    }

    pub fn try_div(&self, rhs: &Self) -> Result<Self> {
        Ok(self.mul(&rhs.try_inv()?))
    }

    /// Order q of the Laurent expansion at ε = 0 and the coefficient of ε^q.
    pub fn valuation(&self) -> Result<(i64, Scalar)> {
        if self.is_zero() {
            return Err(Error::ZeroValuation);
        }
        let vn = self.num.valuation().expect("nonzero numerator");
        let vd = self.den.valuation().expect("nonzero denominator");
        let lead = self
            .num
            .coeff(vn)
            .try_div(&self.den.coeff(vd))
            .expect("trailing coefficient is nonzero");
        Ok((vn as i64 - vd as i64, lead))
    }

    /// Value at ε = 0; errors with [`Error::PoleAtZero`] when the valuation
    /// is negative.
    pub fn eval0(&self) -> Result<Scalar> {
        let d0 = self.den.coeff(0);
        if d0.is_zero() {
            // gcd(num, den) = 1, so the numerator cannot also vanish at 0.
            return Err(Error::PoleAtZero);
        }
        self.num.coeff(0).try_div(&d0)
    }

    /// Substitute ε ↦ u·ε for a nonzero constant u.
    pub fn reparametrize(&self, u: &Scalar) -> Self {
        assert!(!Scalar::is_zero(u), "reparametrization must be invertible");
        let sub = |p: &UPoly<Scalar>| {
            let mut acc = UPoly::zero();
            let mut power = Scalar::from_int(1);
            for (i, c) in p.coeffs().iter().enumerate() {
                if i > 0 {
                    power = Field::mul(&power, u);
                }
                acc = acc.add(&UPoly::monomial(Field::mul(c, &power), i));
            }
            acc
        };
        EpsScalar::normalized(sub(&self.num), sub(&self.den))
    }

    /// Embed every coefficient into ℚ(ζ_M).
    pub fn embed(&self, ctx: &Arc<FieldContext>) -> Result<Self> {
        let map = |p: &UPoly<Scalar>| -> Result<UPoly<Scalar>> {
            let coeffs: Result<_> = p.coeffs().iter().map(|c| c.embed(ctx)).collect();
            Ok(UPoly::new(coeffs?))
        };
        Ok(EpsScalar {
            num: map(&self.num)?,
            den: map(&self.den)?,
        })
    }
}

impl Field for EpsScalar {
    fn zero() -> Self {
        EpsScalar::from_int(0)
    }

    fn one() -> Self {
        EpsScalar::from_int(1)
    }

    fn is_zero(&self) -> bool {
        EpsScalar::is_zero(self)
    }

    fn add(&self, rhs: &Self) -> Self {
        EpsScalar::add(self, rhs)
    }

    fn sub(&self, rhs: &Self) -> Self {
        EpsScalar::sub(self, rhs)
    }

    fn neg(&self) -> Self {
        self.negated()
    }

    fn mul(&self, rhs: &Self) -> Self {
        EpsScalar::mul(self, rhs)
    }

    fn inv(&self) -> Option<Self> {
        self.try_inv().ok()
    }

    fn from_int(n: i64) -> Self {
        EpsScalar::from_int(n)
    }
}

macro_rules! eps_binop {
    ($trait:ident, $method:ident) => {
        impl core::ops::$trait for &EpsScalar {
            type Output = EpsScalar;
            fn $method(self, rhs: &EpsScalar) -> EpsScalar {
                EpsScalar::$method(self, rhs)
            }
        }
        impl core::ops::$trait for EpsScalar {
            type Output = EpsScalar;
            fn $method(self, rhs: EpsScalar) -> EpsScalar {
                EpsScalar::$method(&self, &rhs)
            }
        }
    };
}

eps_binop!(Add, add);
eps_binop!(Sub, sub);
eps_binop!(Mul, mul);

impl core::ops::Neg for &EpsScalar {
    type Output = EpsScalar;
    fn neg(self) -> EpsScalar {
        self.negated()
    }
}

impl core::ops::Neg for EpsScalar {
    type Output = EpsScalar;
    fn neg(self) -> EpsScalar {
        self.negated()
    }
}

/// True when a printed scalar needs no parentheses inside a product.
fn scalar_literal_is_atomic(s: &str) -> bool {
    !s[1..].contains(['+', '-'])
}

fn poly_literal(p: &UPoly<Scalar>) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (k, c) in p.coeffs().iter().enumerate() {
        if Scalar::is_zero(c) {
            continue;
        }
        let power = match k {
            0 => String::new(),
            1 => "e".to_string(),
            _ => format!("e^{k}"),
        };
        let term = if power.is_empty() {
            c.to_string()
        } else if c.is_one() {
            power
        } else if c.negated().is_one() {
            format!("-{power}")
        } else {
            let cs = c.to_string();
            if scalar_literal_is_atomic(&cs) {
                format!("{cs}*{power}")
            } else {
                format!("({cs})*{power}")
            }
        };
        if out.is_empty() || term.starts_with('-') {
            out.push_str(&term);
        } else {
            out.push('+');
            out.push_str(&term);
        }
    }
    out
}

/// Canonical literal in the reserved symbol `e`: `(1+e)/(3*e^2)`, `-1/3*e`.
impl fmt::Display for EpsScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", poly_literal(&self.num))
        } else {
            write!(
                f,
                "({})/({})",
                poly_literal(&self.num),
                poly_literal(&self.den)
            )
        }
    }
}
