//! Exact arithmetic in cyclotomic fields ℚ(ζ_N).
//!
//! The field is represented as `ℚ[x]/(Φ_N)` where Φ_N is the N-th cyclotomic
//! polynomial; an element is stored by its φ(N) coordinates in the power
//! basis 1, ζ, …, ζ^{φ(N)−1}. Elements that happen to be rational are kept
//! in a plain rational representation, so structural equality coincides with
//! equality in the field and rationals embed into every context for free.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::ring::Field;
use crate::upoly::UPoly;

fn q_zero() -> BigRational {
    num_traits::Zero::zero()
}

fn q_one() -> BigRational {
    num_traits::One::one()
}

fn q_is_zero(q: &BigRational) -> bool {
    num_traits::Zero::is_zero(q)
}

fn q_is_one(q: &BigRational) -> bool {
    num_traits::One::is_one(q)
}

/// The field ℚ(ζ_N), i.e. the conductor N together with Φ_N.
///
/// N = 1 (and N = 2, whose primitive root is −1) degenerate to the plain
/// rationals: every value in such a context is demoted to
/// [`Scalar::Rational`] on construction.
#[derive(Debug)]
pub struct FieldContext {
    conductor: u64,
    min_poly: UPoly<BigRational>,
}

impl PartialEq for FieldContext {
    fn eq(&self, other: &Self) -> bool {
        self.conductor == other.conductor
    }
}

impl FieldContext {
    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    /// φ(N), the degree of the extension.
    pub fn degree(&self) -> usize {
        self.min_poly
            .degree()
            .expect("cyclotomic polynomial is nonzero")
    }

    pub fn min_poly(&self) -> &UPoly<BigRational> {
        &self.min_poly
    }
}

fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d != n / d {
                large.push(n / d);
            }
        }
        d += 1;
    }
    large.reverse();
    small.extend(large);
    small
}

/// Φ_N, computed exactly via Φ_N = (x^N − 1) / Π_{d | N, d < N} Φ_d.
fn cyclotomic_polynomial(n: u64) -> UPoly<BigRational> {
    let mut memo: BTreeMap<u64, UPoly<BigRational>> = BTreeMap::new();
    for d in divisors(n) {
        let mut coeffs = vec![q_zero(); d as usize + 1];
        coeffs[0] = -q_one();
        coeffs[d as usize] = q_one();
        let mut p = UPoly::new(coeffs);
        for (e, phi_e) in memo.range(..d) {
            if d.is_multiple_of(*e) {
                p = p.div_exact(phi_e);
            }
        }
        memo.insert(d, p);
    }
    memo.remove(&n).expect("n is a divisor of itself")
}

/// Build the field ℚ(ζ_N). Requires N ≥ 1.
pub fn make_context(n: u64) -> Arc<FieldContext> {
    assert!(n >= 1, "conductor must be positive");
    Arc::new(FieldContext {
        conductor: n,
        min_poly: cyclotomic_polynomial(n),
    })
}

/// An exact element of a cyclotomic field.
///
/// Rational values are always stored in the `Rational` variant, so derived
/// equality is equality in the field whenever the operands share a context.
/// Elements of distinct contexts are never considered equal; use
/// [`Scalar::embed`] to move into a common field first.
#[derive(Clone, Debug, PartialEq)]
pub enum Scalar {
    Rational(BigRational),
    Cyclotomic(Arc<FieldContext>, Vec<BigRational>),
}

impl Scalar {
    pub fn from_rational(q: BigRational) -> Self {
        Scalar::Rational(q)
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        assert!(den != 0);
        Scalar::Rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    /// ζ_N, the residue of x in `ℚ[x]/(Φ_N)`.
    pub fn zeta(ctx: &Arc<FieldContext>) -> Self {
        Scalar::from_upoly(ctx, UPoly::monomial(q_one(), 1))
    }

    /// Reduce a rational-coefficient polynomial in ζ modulo Φ_N.
    pub fn from_upoly(ctx: &Arc<FieldContext>, p: UPoly<BigRational>) -> Self {
        let r = p.div_rem(ctx.min_poly()).1;
        if r.degree().unwrap_or(0) == 0 {
            return Scalar::Rational(r.coeff(0));
        }
        let mut coeffs = vec![q_zero(); ctx.degree()];
        for (i, c) in r.coeffs().iter().enumerate() {
            coeffs[i] = c.clone();
        }
        Scalar::Cyclotomic(ctx.clone(), coeffs)
    }

    pub fn context(&self) -> Option<&Arc<FieldContext>> {
        match self {
            Scalar::Rational(_) => None,
            Scalar::Cyclotomic(ctx, _) => Some(ctx),
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Rational(q) => Some(q),
            Scalar::Cyclotomic(..) => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Scalar::Rational(q) if q_is_zero(q))
    }

    pub fn is_one(&self) -> bool {
        matches!(self, Scalar::Rational(q) if q_is_one(q))
    }

    fn as_upoly(&self) -> UPoly<BigRational> {
        match self {
            Scalar::Rational(q) => UPoly::constant(q.clone()),
            Scalar::Cyclotomic(_, coeffs) => UPoly::new(coeffs.clone()),
        }
    }

    /// Common context of two operands: rationals embed anywhere, two
    /// cyclotomic contexts must have equal conductor.
    fn common_context<'a>(&'a self, rhs: &'a Scalar) -> Result<Option<&'a Arc<FieldContext>>> {
        match (self.context(), rhs.context()) {
            (None, None) => Ok(None),
            (Some(c), None) | (None, Some(c)) => Ok(Some(c)),
            (Some(a), Some(b)) => {
                if a.conductor() == b.conductor() {
                    Ok(Some(a))
                } else {
                    Err(Error::ContextMismatch {
                        left: a.conductor(),
                        right: b.conductor(),
                    })
                }
            }
        }
    }

    pub fn try_add(&self, rhs: &Scalar) -> Result<Scalar> {
        match self.common_context(rhs)? {
            None => {
                let (Scalar::Rational(a), Scalar::Rational(b)) = (self, rhs) else {
                    unreachable!()
                };
                Ok(Scalar::Rational(a + b))
            }
            Some(ctx) => Ok(Scalar::from_upoly(
                ctx,
                self.as_upoly().add(&rhs.as_upoly()),
            )),
        }
    }

    pub fn try_sub(&self, rhs: &Scalar) -> Result<Scalar> {
        self.try_add(&rhs.negated())
    }

    pub fn try_mul(&self, rhs: &Scalar) -> Result<Scalar> {
        match self.common_context(rhs)? {
            None => {
                let (Scalar::Rational(a), Scalar::Rational(b)) = (self, rhs) else {
                    unreachable!()
                };
                Ok(Scalar::Rational(a * b))
            }
            Some(ctx) => Ok(Scalar::from_upoly(
                ctx,
                self.as_upoly().mul(&rhs.as_upoly()),
            )),
        }
    }

    pub fn try_eq(&self, rhs: &Scalar) -> Result<bool> {
        self.common_context(rhs)?;
        Ok(self == rhs)
    }

    pub fn negated(&self) -> Scalar {
        match self {
            Scalar::Rational(q) => Scalar::Rational(-q),
            Scalar::Cyclotomic(ctx, coeffs) => {
                Scalar::Cyclotomic(ctx.clone(), coeffs.iter().map(|c| -c).collect())
            }
        }
    }

    pub fn try_inv(&self) -> Result<Scalar> {
        match self {
            Scalar::Rational(q) => {
                if q_is_zero(q) {
                    Err(Error::DivisionByZero)
                } else {
                    Ok(Scalar::Rational(q.recip()))
                }
            }
            Scalar::Cyclotomic(ctx, _) => {
                // Φ_N is irreducible over ℚ, so every nonzero residue is a unit.
                let inv = self
                    .as_upoly()
                    .inverse_mod(ctx.min_poly())
                    .ok_or(Error::DivisionByZero)?;
                Ok(Scalar::from_upoly(ctx, inv))
            }
        }
    }

    pub fn try_div(&self, rhs: &Scalar) -> Result<Scalar> {
        self.try_mul(&rhs.try_inv()?)
    }

    pub fn pow(&self, e: i64) -> Result<Scalar> {
        let base = if e < 0 { self.try_inv()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = Scalar::from_int(1);
        let mut b = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.try_mul(&b)?;
            }
            e >>= 1;
            if e > 0 {
                b = b.try_mul(&b.clone())?;
            }
        }
        Ok(acc)
    }

    /// Embed into ℚ(ζ_M); requires the current conductor to divide M.
    /// ζ_N maps to ζ_M^{M/N}.
    pub fn embed(&self, ctx: &Arc<FieldContext>) -> Result<Scalar> {
        match self {
            Scalar::Rational(_) => Ok(self.clone()),
            Scalar::Cyclotomic(own, coeffs) => {
                let n = own.conductor();
                let m = ctx.conductor();
                if n == m {
                    return Ok(self.clone());
                }
                if !m.is_multiple_of(n) {
                    return Err(Error::ContextMismatch { left: n, right: m });
                }
                let step = (m / n) as usize;
                let mut p = UPoly::zero();
                for (i, c) in coeffs.iter().enumerate() {
                    p = p.add(&UPoly::monomial(c.clone(), i * step));
                }
                Ok(Scalar::from_upoly(ctx, p))
            }
        }
    }

    /// Deterministic total order for tie-breaking; not a field order.
    pub fn canonical_cmp(&self, rhs: &Scalar) -> Ordering {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => a.cmp(b),
            (Scalar::Rational(_), Scalar::Cyclotomic(..)) => Ordering::Less,
            (Scalar::Cyclotomic(..), Scalar::Rational(_)) => Ordering::Greater,
            (Scalar::Cyclotomic(ca, a), Scalar::Cyclotomic(cb, b)) => {
                ca.conductor().cmp(&cb.conductor()).then_with(|| a.cmp(b))
            }
        }
    }
}

impl Field for Scalar {
    fn zero() -> Self {
        Scalar::Rational(q_zero())
    }

    fn one() -> Self {
        Scalar::Rational(q_one())
    }

    fn is_zero(&self) -> bool {
        Scalar::is_zero(self)
    }

    fn add(&self, rhs: &Self) -> Self {
        self.try_add(rhs).expect("scalar context mismatch")
    }

    fn sub(&self, rhs: &Self) -> Self {
        self.try_sub(rhs).expect("scalar context mismatch")
    }

    fn neg(&self) -> Self {
        self.negated()
    }

    fn mul(&self, rhs: &Self) -> Self {
        self.try_mul(rhs).expect("scalar context mismatch")
    }

    fn inv(&self) -> Option<Self> {
        self.try_inv().ok()
    }

    fn from_int(n: i64) -> Self {
        Scalar::Rational(BigRational::from_integer(BigInt::from(n)))
    }
}

impl Scalar {
    pub fn from_int(n: i64) -> Self {
        <Scalar as Field>::from_int(n)
    }
}

macro_rules! scalar_binop {
    ($trait:ident, $method:ident, $delegate:ident) => {
        impl core::ops::$trait for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                self.$delegate(rhs).expect("scalar context mismatch")
            }
        }
        impl core::ops::$trait for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                self.$delegate(&rhs).expect("scalar context mismatch")
            }
        }
    };
}

scalar_binop!(Add, add, try_add);
scalar_binop!(Sub, sub, try_sub);
scalar_binop!(Mul, mul, try_mul);

impl core::ops::Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.negated()
    }
}

impl core::ops::Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.negated()
    }
}

fn rational_literal(q: &BigRational) -> String {
    q.to_string()
}

/// Canonical, whitespace-free literal: `-2/3`, `zeta(4)`, `1/2+3*zeta(5)^2`.
/// The CLI expression grammar parses this back to the same value.
impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(q) => write!(f, "{}", rational_literal(q)),
            Scalar::Cyclotomic(ctx, coeffs) => {
                let n = ctx.conductor();
                let mut first = true;
                for (i, c) in coeffs.iter().enumerate() {
                    if q_is_zero(c) {
                        continue;
                    }
                    let term = if i == 0 {
                        rational_literal(c)
                    } else {
                        let power = if i == 1 {
                            alloc::format!("zeta({n})")
                        } else {
                            alloc::format!("zeta({n})^{i}")
                        };
                        if q_is_one(c) {
                            power
                        } else if q_is_one(&-c) {
                            alloc::format!("-{power}")
                        } else {
                            alloc::format!("{}*{power}", rational_literal(c))
                        }
                    };
                    if !first && !term.starts_with('-') {
                        write!(f, "+{term}")?;
                    } else {
                        write!(f, "{term}")?;
                    }
                    first = false;
                }
                if first {
                    write!(f, "0")?;
                }
                Ok(())
            }
        }
    }
}
