//! Dense univariate polynomials over an exact field.
//!
//! Two instantiations matter here: rational-coefficient polynomials carrying
//! the cyclotomic minimal polynomials Φ_N, and polynomials in the limit
//! parameter ε that make up an [`crate::eps::EpsScalar`].

use alloc::vec;
use alloc::vec::Vec;

use crate::ring::Field;

/// `coeffs[i]` is the coefficient of x^i; no trailing zeros, zero = empty.
#[derive(Clone, Debug, PartialEq)]
pub struct UPoly<K: Field> {
    coeffs: Vec<K>,
}

impl<K: Field> UPoly<K> {
    pub fn new(mut coeffs: Vec<K>) -> Self {
        while coeffs.last().is_some_and(K::is_zero) {
            coeffs.pop();
        }
        UPoly { coeffs }
    }

    pub fn zero() -> Self {
        UPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        UPoly::constant(K::one())
    }

    pub fn constant(c: K) -> Self {
        UPoly::new(vec![c])
    }

    /// c·x^exp
    pub fn monomial(c: K, exp: usize) -> Self {
        if c.is_zero() {
            return UPoly::zero();
        }
        let mut coeffs = vec![K::zero(); exp + 1];
        coeffs[exp] = c;
        UPoly { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0] == K::one()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> K {
        self.coeffs.get(i).cloned().unwrap_or_else(K::zero)
    }

    pub fn coeffs(&self) -> &[K] {
        &self.coeffs
    }

    pub fn leading(&self) -> Option<&K> {
        self.coeffs.last()
    }

    /// Index of the lowest nonzero coefficient, `None` for zero.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i).add(&rhs.coeff(i))).collect();
        UPoly::new(coeffs)
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i).sub(&rhs.coeff(i))).collect();
        UPoly::new(coeffs)
    }

    pub fn neg(&self) -> Self {
        UPoly {
            coeffs: self.coeffs.iter().map(K::neg).collect(),
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return UPoly::zero();
        }
        let mut coeffs = vec![K::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] = coeffs[i + j].add(&a.mul(b));
            }
        }
        UPoly::new(coeffs)
    }

    pub fn mul_scalar(&self, c: &K) -> Self {
        if c.is_zero() {
            return UPoly::zero();
        }
        UPoly::new(self.coeffs.iter().map(|a| a.mul(c)).collect())
    }

    /// Multiply by x^k.
    pub fn shift_up(&self, k: usize) -> Self {
        if self.is_zero() {
            return UPoly::zero();
        }
        let mut coeffs = vec![K::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        UPoly { coeffs }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = UPoly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn eval(&self, x: &K) -> K {
        let mut acc = K::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x).add(c);
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c.mul(&K::from_int(i as i64)))
            .collect();
        UPoly::new(coeffs)
    }

    /// Euclidean division; panics if `rhs` is zero.
    pub fn div_rem(&self, rhs: &Self) -> (Self, Self) {
        assert!(!rhs.is_zero(), "division by the zero polynomial");
        let d = rhs.coeffs.len();
        if self.coeffs.len() < d {
            return (UPoly::zero(), self.clone());
        }
        let lead_inv = rhs.leading().unwrap().inv().unwrap();
        let mut rem = self.coeffs.clone();
        let mut quo = vec![K::zero(); self.coeffs.len() - d + 1];
        for i in (0..quo.len()).rev() {
            let q = rem[i + d - 1].mul(&lead_inv);
            if q.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                rem[i + j] = rem[i + j].sub(&q.mul(b));
            }
            quo[i] = q;
        }
        (UPoly::new(quo), UPoly::new(rem))
    }

    /// Exact division; panics if the remainder is nonzero.
    pub fn div_exact(&self, rhs: &Self) -> Self {
        let (q, r) = self.div_rem(rhs);
        assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    pub fn make_monic(&self) -> Self {
        match self.leading() {
            None => UPoly::zero(),
            Some(l) => self.mul_scalar(&l.inv().expect("leading coefficient invertible")),
        }
    }

    /// Monic gcd by the Euclidean algorithm; gcd(0, 0) = 0.
    pub fn gcd(&self, rhs: &Self) -> Self {
        let mut a = self.clone();
        let mut b = rhs.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.make_monic()
    }

    /// Inverse of `self` modulo `m`, when gcd(self, m) is a nonzero constant.
    pub fn inverse_mod(&self, m: &Self) -> Option<Self> {
        let mut r0 = m.clone();
        let mut r1 = self.div_rem(m).1;
        let mut t0 = UPoly::zero();
        let mut t1 = UPoly::one();
        if r1.is_zero() {
            return None;
        }
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            r0 = r1;
            r1 = r;
            let t = t0.sub(&q.mul(&t1));
            t0 = t1;
            t1 = t;
        }
        if r0.degree() != Some(0) {
            return None;
        }
        let c = r0.coeff(0).inv()?;
        Some(t0.mul_scalar(&c).div_rem(m).1)
    }

    /// Squarefree factorization by Yun's algorithm (characteristic zero):
    /// returns `[(g_1, 1), (g_2, 2), ...]` with `self = lc · Π g_i^i`,
    /// each g_i monic squarefree, pairwise coprime; factors with g_i = 1 are
    /// omitted.
    pub fn squarefree_decomposition(&self) -> Vec<(Self, usize)> {
        let mut out = Vec::new();
        if self.degree().unwrap_or(0) == 0 {
            return out;
        }
        let f = self.make_monic();
        let df = f.derivative();
        let a0 = f.gcd(&df);
        let mut b = f.div_exact(&a0);
        let mut c = df.div_exact(&a0);
        let mut i = 1;
        loop {
            let d = c.sub(&b.derivative());
            if d.is_zero() {
                if b.degree().unwrap_or(0) > 0 {
                    out.push((b.make_monic(), i));
                }
                break;
            }
            let g = b.gcd(&d);
            if g.degree().unwrap_or(0) > 0 {
                out.push((g.clone(), i));
            }
            b = b.div_exact(&g);
            c = d.div_exact(&g);
            i += 1;
        }
        out
    }

    /// True when gcd(self, self') is constant (no repeated roots).
    pub fn is_squarefree(&self) -> bool {
        if self.is_zero() {
            return false;
        }
        if self.degree() == Some(0) {
            return true;
        }
        self.gcd(&self.derivative()).degree() == Some(0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    type Q = BigRational;

    fn q(n: i64) -> Q {
        Field::from_int(n)
    }

    fn poly(cs: &[i64]) -> UPoly<Q> {
        UPoly::new(cs.iter().map(|&c| q(c)).collect())
    }

    #[test]
    fn div_rem_roundtrip() {
        let a = poly(&[2, 0, -3, 1, 4]);
        let b = poly(&[1, 2, 1]);
        let (quo, rem) = a.div_rem(&b);
        assert_eq!(quo.mul(&b).add(&rem), a);
        assert!(rem.degree() < b.degree());
    }

    #[test]
    fn gcd_of_multiples() {
        let g = poly(&[1, 1]); // x + 1
        let a = g.mul(&poly(&[2, 0, 1]));
        let b = g.mul(&poly(&[-1, 1]));
        assert_eq!(a.gcd(&b), g);
    }

    #[test]
    fn inverse_mod_quadratic() {
        // (x)^{-1} mod (x^2 + 1) = -x
        let m = poly(&[1, 0, 1]);
        let x = poly(&[0, 1]);
        let inv = x.inverse_mod(&m).unwrap();
        assert_eq!(x.mul(&inv).div_rem(&m).1, UPoly::one());
        assert_eq!(inv, poly(&[0, -1]));
    }

    #[test]
    fn squarefree_decomposition_splits_multiplicities() {
        // (x-1)^2 (x+2)
        let f = poly(&[-1, 1]).pow(2).mul(&poly(&[2, 1]));
        let dec = f.squarefree_decomposition();
        assert_eq!(dec, vec![(poly(&[2, 1]), 1), (poly(&[-1, 1]), 2)]);
        assert!(!f.is_squarefree());
        assert!(poly(&[2, 1]).is_squarefree());
    }
}
