//! Sparse homogeneous multivariate polynomials over an exact field.
//!
//! Terms live in a `BTreeMap` keyed by exponent vectors under graded-lex
//! order, so iteration (and therefore printing) is canonical. All stored
//! coefficients are nonzero and all stored monomials have the declared total
//! degree.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::comb::{field_from_biguint, multinomial};
use crate::cyclotomic::Scalar;
use crate::error::{Error, Result};
use crate::ring::Field;

/// Exponent vector; total degree is the sum of the entries.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        Monomial(exps)
    }

    pub fn unit(nvars: usize, var: usize) -> Self {
        let mut exps = vec![0; nvars];
        exps[var] = 1;
        Monomial(exps)
    }

    pub fn constant(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn exp(&self, var: usize) -> u32 {
        self.0[var]
    }

    pub fn mul(&self, rhs: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }

    /// Componentwise difference, `None` when `rhs` does not divide `self`.
    pub fn checked_div(&self, rhs: &Monomial) -> Option<Monomial> {
        self.0
            .iter()
            .zip(&rhs.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(Monomial)
    }
}

/// All exponent vectors of the given total degree, ascending in the
/// graded-lex order used by the term map.
pub fn monomials_of_degree(nvars: usize, degree: u32) -> Vec<Monomial> {
    fn rec(nvars: usize, degree: u32, prefix: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if nvars == 1 {
            prefix.push(degree);
            out.push(Monomial(prefix.clone()));
            prefix.pop();
            return;
        }
        for e in 0..=degree {
            prefix.push(e);
            rec(nvars - 1, degree - e, prefix, out);
            prefix.pop();
        }
    }
    if nvars == 0 {
        return if degree == 0 {
            vec![Monomial(Vec::new())]
        } else {
            Vec::new()
        };
    }
    let mut out = Vec::new();
    rec(nvars, degree, &mut Vec::new(), &mut out);
    out.sort();
    out
}

/// Homogeneous polynomial of a fixed degree in `nvars` variables.
#[derive(Clone, Debug, PartialEq)]
pub struct Poly<K: Field = Scalar> {
    nvars: usize,
    degree: u32,
    terms: BTreeMap<Monomial, K>,
}

impl<K: Field> Poly<K> {
    pub fn zero(nvars: usize, degree: u32) -> Self {
        Poly {
            nvars,
            degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: K) -> Self {
        let mut p = Poly::zero(nvars, 0);
        if !c.is_zero() {
            p.terms.insert(Monomial::constant(nvars), c);
        }
        p
    }

    /// c·x^exps
    pub fn monomial(nvars: usize, exps: Vec<u32>, c: K) -> Self {
        assert_eq!(exps.len(), nvars);
        let m = Monomial::new(exps);
        let mut p = Poly::zero(nvars, m.degree());
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn from_terms<I>(nvars: usize, degree: u32, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, K)>,
    {
        let mut p = Poly::zero(nvars, degree);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &K)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> K {
        self.terms.get(m).cloned().unwrap_or_else(K::zero)
    }

    /// Accumulate one term, pruning a zero sum.
    pub fn add_term(&mut self, m: Monomial, c: K) {
        assert_eq!(m.nvars(), self.nvars, "monomial arity");
        if c.is_zero() {
            return;
        }
        assert_eq!(m.degree(), self.degree, "monomial degree");
        match self.terms.entry(m) {
            alloc::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            alloc::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get().add(&c);
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn try_add(&self, rhs: &Self) -> Result<Self> {
        if self.nvars != rhs.nvars {
            return Err(Error::ArityMismatch {
                expected: self.nvars,
                got: rhs.nvars,
            });
        }
        if self.is_zero() {
            return Ok(rhs.clone());
        }
        if rhs.is_zero() {
            return Ok(self.clone());
        }
        assert_eq!(self.degree, rhs.degree, "homogeneous degrees must agree");
        let mut out = self.clone();
        for (m, c) in rhs.terms.iter() {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn add(&self, rhs: &Self) -> Self {
        self.try_add(rhs).expect("arity mismatch")
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Self {
        Poly {
            nvars: self.nvars,
            degree: self.degree,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), c.neg()))
                .collect(),
        }
    }

    pub fn scale(&self, c: &K) -> Self {
        if c.is_zero() {
            return Poly::zero(self.nvars, self.degree);
        }
        Poly {
            nvars: self.nvars,
            degree: self.degree,
            terms: self
                .terms
                .iter()
                .map(|(m, a)| (m.clone(), a.mul(c)))
                .collect(),
        }
    }

    pub fn try_mul(&self, rhs: &Self) -> Result<Self> {
        if self.nvars != rhs.nvars {
            return Err(Error::ArityMismatch {
                expected: self.nvars,
                got: rhs.nvars,
            });
        }
        let mut out = Poly::zero(self.nvars, self.degree + rhs.degree);
        for (ma, ca) in self.terms.iter() {
            for (mb, cb) in rhs.terms.iter() {
                out.add_term(ma.mul(mb), ca.mul(cb));
            }
        }
        Ok(out)
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        self.try_mul(rhs).expect("arity mismatch")
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Poly::constant(self.nvars, K::one());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// ∂/∂x_var, homogeneous of degree d−1 (zero polynomial for d = 0).
    pub fn partial_derivative(&self, var: usize) -> Self {
        assert!(var < self.nvars);
        let mut out = Poly::zero(self.nvars, self.degree.saturating_sub(1));
        for (m, c) in self.terms.iter() {
            let e = m.exp(var);
            if e == 0 {
                continue;
            }
            let mut exps = m.exps().to_vec();
            exps[var] -= 1;
            out.add_term(Monomial::new(exps), c.mul(&K::from_int(e as i64)));
        }
        out
    }

    /// Substitute x_i ↦ `images[i]`; the images share some new variable count
    /// n′ and the result is homogeneous of the same degree in n′ variables.
    pub fn try_substitute(&self, images: &[LinForm<K>]) -> Result<Self> {
        if images.len() != self.nvars {
            return Err(Error::ArityMismatch {
                expected: self.nvars,
                got: images.len(),
            });
        }
        let new_nvars = images.first().map_or(0, LinForm::nvars);
        for im in images {
            if im.nvars() != new_nvars {
                return Err(Error::ArityMismatch {
                    expected: new_nvars,
                    got: im.nvars(),
                });
            }
        }
        let mut out = Poly::zero(new_nvars, self.degree);
        for (m, c) in self.terms.iter() {
            let mut term = Poly::constant(new_nvars, c.clone());
            for (i, im) in images.iter().enumerate() {
                let e = m.exp(i);
                if e > 0 {
                    term = term.mul(&power_of_linform(im, e));
                }
            }
            out = out.add(&term);
        }
        Ok(out)
    }

    pub fn substitute(&self, images: &[LinForm<K>]) -> Self {
        self.try_substitute(images).expect("substitution arity")
    }

    /// Reinterpret in `m ≤ nvars` variables; panics if any trailing variable
    /// actually occurs.
    pub fn shrink_vars(&self, m: usize) -> Self {
        assert!(m <= self.nvars);
        let mut out = Poly::zero(m, self.degree);
        for (mon, c) in self.terms.iter() {
            assert!(
                mon.exps()[m..].iter().all(|&e| e == 0),
                "polynomial uses a variable beyond the first {m}"
            );
            out.add_term(Monomial::new(mon.exps()[..m].to_vec()), c.clone());
        }
        out
    }

    /// Pad with unused variables up to `n ≥ nvars`.
    pub fn pad_vars(&self, n: usize) -> Self {
        assert!(n >= self.nvars);
        let mut out = Poly::zero(n, self.degree);
        for (mon, c) in self.terms.iter() {
            let mut exps = mon.exps().to_vec();
            exps.resize(n, 0);
            out.add_term(Monomial::new(exps), c.clone());
        }
        out
    }

    /// Exact division by x_var^e; errors if some term has a smaller exponent.
    pub fn div_var_power(&self, var: usize, e: u32) -> Result<Self> {
        let mut out = Poly::zero(self.nvars, self.degree - e.min(self.degree));
        for (m, c) in self.terms.iter() {
            if m.exp(var) < e {
                return Err(Error::LocalStructureViolation);
            }
            let mut exps = m.exps().to_vec();
            exps[var] -= e;
            out.add_term(Monomial::new(exps), c.clone());
        }
        Ok(out)
    }

    /// Coefficients against an explicit monomial basis.
    pub fn coefficient_vector(&self, basis: &[Monomial]) -> Vec<K> {
        basis.iter().map(|m| self.coeff(m)).collect()
    }

    pub fn eval(&self, point: &[K]) -> K {
        assert_eq!(point.len(), self.nvars);
        let mut acc = K::zero();
        for (m, c) in self.terms.iter() {
            let mut term = c.clone();
            for (x, &e) in point.iter().zip(m.exps()) {
                for _ in 0..e {
                    term = term.mul(x);
                }
            }
            acc = acc.add(&term);
        }
        acc
    }

    pub fn map_coeffs<L: Field>(&self, mut f: impl FnMut(&K) -> L) -> Poly<L> {
        let mut out = Poly::zero(self.nvars, self.degree);
        for (m, c) in self.terms.iter() {
            out.add_term(m.clone(), f(c));
        }
        out
    }

    pub fn try_map_coeffs<L: Field>(&self, mut f: impl FnMut(&K) -> Result<L>) -> Result<Poly<L>> {
        let mut out = Poly::zero(self.nvars, self.degree);
        for (m, c) in self.terms.iter() {
            out.add_term(m.clone(), f(c)?);
        }
        Ok(out)
    }
}

/// Homogeneous linear form, the degree-1 special case of [`Poly`].
#[derive(Clone, Debug, PartialEq)]
pub struct LinForm<K: Field = Scalar> {
    coeffs: Vec<K>,
}

impl<K: Field> LinForm<K> {
    pub fn new(coeffs: Vec<K>) -> Self {
        LinForm { coeffs }
    }

    pub fn zero(nvars: usize) -> Self {
        LinForm {
            coeffs: vec![K::zero(); nvars],
        }
    }

    pub fn unit(nvars: usize, var: usize) -> Self {
        let mut coeffs = vec![K::zero(); nvars];
        coeffs[var] = K::one();
        LinForm { coeffs }
    }

    pub fn nvars(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[K] {
        &self.coeffs
    }

    pub fn coeff(&self, var: usize) -> &K {
        &self.coeffs[var]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(K::is_zero)
    }

    pub fn as_poly(&self) -> Poly<K> {
        let mut p = Poly::zero(self.nvars(), 1);
        for (i, c) in self.coeffs.iter().enumerate() {
            p.add_term(Monomial::unit(self.nvars(), i), c.clone());
        }
        p
    }

    pub fn scale(&self, c: &K) -> Self {
        LinForm {
            coeffs: self.coeffs.iter().map(|a| a.mul(c)).collect(),
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!(self.nvars(), rhs.nvars());
        LinForm {
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a.add(b))
                .collect(),
        }
    }

    pub fn neg(&self) -> Self {
        LinForm {
            coeffs: self.coeffs.iter().map(K::neg).collect(),
        }
    }

    pub fn map_coeffs<L: Field>(&self, f: impl FnMut(&K) -> L) -> LinForm<L> {
        LinForm {
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }

    /// Scale so the first nonzero coordinate is 1; `None` for the zero form.
    pub fn normalized(&self) -> Option<LinForm<K>> {
        let pivot = self.coeffs.iter().find(|c| !c.is_zero())?;
        let inv = pivot.inv().expect("nonzero coefficient");
        Some(self.scale(&inv))
    }

    /// The factor t with self = t·rhs, when the forms are proportional.
    pub fn proportionality(&self, rhs: &Self) -> Option<K> {
        assert_eq!(self.nvars(), rhs.nvars());
        if rhs.is_zero() {
            return None;
        }
        let pivot = rhs.coeffs.iter().position(|c| !c.is_zero()).unwrap();
        let t = self.coeffs[pivot].div(&rhs.coeffs[pivot]);
        for (a, b) in self.coeffs.iter().zip(&rhs.coeffs) {
            if a != &t.mul(b) {
                return None;
            }
        }
        Some(t)
    }
}

/// Multinomial expansion of ℓ^d, the Waring expansion kernel.
pub fn power_of_linform<K: Field>(form: &LinForm<K>, d: u32) -> Poly<K> {
    let n = form.nvars();
    // Only exponent vectors supported on the nonzero coordinates contribute.
    let support: Vec<usize> = (0..n).filter(|&i| !form.coeff(i).is_zero()).collect();
    let mut out = Poly::zero(n, d);
    if support.is_empty() {
        if d == 0 {
            return Poly::constant(n, K::one());
        }
        return out;
    }
    for m in monomials_of_degree(support.len(), d) {
        let mut full = vec![0u32; n];
        let mut coeff: K = field_from_biguint(&multinomial(m.exps()));
        for (slot, &var) in support.iter().enumerate() {
            let e = m.exp(slot);
            full[var] = e;
            for _ in 0..e {
                coeff = coeff.mul(form.coeff(var));
            }
        }
        out.add_term(Monomial::new(full), coeff);
    }
    out
}

fn scalar_term_string(c: &Scalar, m: &Monomial) -> String {
    use alloc::format;
    let vars: Vec<String> = m
        .exps()
        .iter()
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .map(|(i, &e)| {
            if e == 1 {
                format!("x{}", i + 1)
            } else {
                format!("x{}^{}", i + 1, e)
            }
        })
        .collect();
    let vars = vars.join("*");
    if vars.is_empty() {
        format!("{c}")
    } else if c.is_one() {
        vars
    } else if c.negated().is_one() {
        format!("-{vars}")
    } else {
        format!("{c}*{vars}")
    }
}

impl fmt::Display for Poly<Scalar> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            let term = scalar_term_string(c, m);
            if first {
                write!(f, "{term}")?;
            } else if let Some(stripped) = term.strip_prefix('-') {
                write!(f, " - {stripped}")?;
            } else {
                write!(f, " + {term}")?;
            }
            first = false;
        }
        Ok(())
    }
}

impl fmt::Display for LinForm<Scalar> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_poly())
    }
}

/// Convenience constructor used in tests and fixtures: a linear form with
/// integer coordinates.
pub fn lin<K: Field>(coeffs: &[i64]) -> LinForm<K> {
    LinForm::new(coeffs.iter().map(|&c| K::from_int(c)).collect())
}

/// x_var^d as a polynomial.
pub fn var_power<K: Field>(nvars: usize, var: usize, d: u32) -> Poly<K> {
    let mut exps = vec![0; nvars];
    exps[var] = d;
    Poly::monomial(nvars, exps, K::one())
}
