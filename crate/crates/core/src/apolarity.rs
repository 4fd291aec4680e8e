//! Apolarity: graded annihilator pieces, Hilbert functions, compression and
//! the size of a generalized additive decomposition.
//!
//! The annihilator piece Ann(f)_p is the kernel of the order-p catalecticant;
//! the Hilbert function of the apolar algebra is its rank profile. The
//! compression of f along ℓ dehomogenizes f = Σ (ℓ^i/i!)·f_i into g = Σ f_i
//! over the complementary variables, and the compressed size is the dimension
//! of the span of g under repeated differentiation.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::catalecticant::{apply_operator, catalecticant, rotate_form_to_first, CoordinateChange};
use crate::comb::{factorial_biguint, field_from_biguint};
use crate::cyclotomic::Scalar;
use crate::error::{Error, Result};
use crate::gad::Gad;
use crate::matrix::RowSpace;
use crate::poly::{monomials_of_degree, LinForm, Monomial, Poly};
use crate::ring::Field;

/// A degree-p subspace of dual operators with a linearly independent basis.
#[derive(Clone, Debug)]
pub struct GradedSubspace {
    pub degree: u32,
    pub basis: Vec<Poly<Scalar>>,
}

impl GradedSubspace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

/// Basis of Ann(f)_p = {α ∈ T_p : α·f = 0}.
pub fn ann_graded(f: &Poly<Scalar>, p: u32) -> Result<GradedSubspace> {
    let cat = catalecticant(f, p)?;
    Ok(GradedSubspace {
        degree: p,
        basis: cat.operator_kernel(),
    })
}

/// h(p) for p = 0..d, where h is the Hilbert function of the apolar algebra.
#[derive(Clone, Debug, PartialEq)]
pub struct HilbertProfile {
    values: Vec<usize>,
}

impl HilbertProfile {
    pub fn values(&self) -> &[usize] {
        &self.values
    }

    pub fn at(&self, p: usize) -> usize {
        self.values[p]
    }

    pub fn max(&self) -> usize {
        self.values.iter().copied().max().unwrap_or(0)
    }
}

pub fn hilbert_function(f: &Poly<Scalar>) -> Result<HilbertProfile> {
    if f.is_zero() {
        return Err(Error::ZeroInput);
    }
    let values = (0..=f.degree())
        .map(|p| catalecticant(f, p).map(|c| c.rank()))
        .collect::<Result<Vec<_>>>()?;
    Ok(HilbertProfile { values })
}

/// Top-graded-piece apolarity check: does every operator in D annihilate f?
pub fn apolarity_check(f: &Poly<Scalar>, subspace: &GradedSubspace) -> Result<bool> {
    if subspace.degree != f.degree() {
        return Err(Error::OrderOutOfRange {
            order: subspace.degree as usize,
            degree: f.degree(),
        });
    }
    Ok(subspace
        .basis
        .iter()
        .all(|op| apply_operator(op, f).is_zero()))
}

/// Inhomogeneous polynomial: same sparse term map as [`Poly`] but without the
/// single-degree invariant. Only what compression needs lives here.
#[derive(Clone, Debug, PartialEq)]
pub struct InhomPoly {
    nvars: usize,
    terms: BTreeMap<Monomial, Scalar>,
}

impl InhomPoly {
    pub fn zero(nvars: usize) -> Self {
        InhomPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn max_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.degree() == 0)
    }

    pub fn add_term(&mut self, m: Monomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
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

    pub fn add_poly(&mut self, p: &Poly<Scalar>) {
        for (m, c) in p.terms() {
            self.add_term(m.clone(), c.clone());
        }
    }

    pub fn partial_derivative(&self, var: usize) -> Self {
        let mut out = InhomPoly::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.exp(var);
            if e == 0 {
                continue;
            }
            let mut exps = m.exps().to_vec();
            exps[var] -= 1;
            out.add_term(Monomial::new(exps), c.mul(&Scalar::from_int(e as i64)));
        }
        out
    }

    fn coefficient_vector(&self, basis: &[Monomial]) -> Vec<Scalar> {
        basis
            .iter()
            .map(|m| {
                self.terms
                    .get(m)
                    .cloned()
                    .unwrap_or_else(|| Scalar::from_int(0))
            })
            .collect()
    }
}

/// Result of compressing f along ℓ: the dehomogenized polynomial g = Σ f_i in
/// the complementary variables and the dimension of its derivative closure.
#[derive(Clone, Debug)]
pub struct Compression {
    pub dehomogenized: InhomPoly,
    pub size: usize,
}

/// Compression with the canonical coordinate completion for ℓ.
pub fn compression(f: &Poly<Scalar>, form: &LinForm<Scalar>) -> Result<Compression> {
    if form.is_zero() {
        return Err(Error::ZeroInput);
    }
    compression_with_change(f, &rotate_form_to_first(form))
}

/// Compression in explicitly chosen coordinates; the first new variable must
/// be the compression direction. The size does not depend on this choice.
pub fn compression_with_change(
    f: &Poly<Scalar>,
    change: &CoordinateChange<Scalar>,
) -> Result<Compression> {
    if f.is_zero() {
        return Err(Error::ZeroInput);
    }
    let n = f.nvars();
    let rotated = change.to_new(f);

    // f = Σ_i (y1^i / i!)·f_i with f_i in the remaining variables, so the
    // slice of y1-exponent i carries f_i / i!.
    let mut g = InhomPoly::zero(n - 1);
    for (m, c) in rotated.terms() {
        let i = m.exp(0);
        let fac: Scalar = field_from_biguint(&factorial_biguint(i as u64));
        g.add_term(Monomial::new(m.exps()[1..].to_vec()), c.mul(&fac));
    }

    let size = derivative_closure_dim(&g);
    Ok(Compression {
        dehomogenized: g,
        size,
    })
}

/// Dimension of the span of g and all its iterated partial derivatives,
/// computed by breadth-first differentiation with rank-incremental insertion.
pub fn derivative_closure_dim(g: &InhomPoly) -> usize {
    if g.is_zero() {
        return 0;
    }
    let n = g.nvars();
    let max_deg = g.max_degree();
    let basis: Vec<Monomial> = (0..=max_deg)
        .flat_map(|d| monomials_of_degree(n, d))
        .collect();
    let mut space = RowSpace::new(basis.len());
    let mut queue = alloc::vec![g.clone()];
    space.insert(g.coefficient_vector(&basis));
    while let Some(p) = queue.pop() {
        for var in 0..n {
            let der = p.partial_derivative(var);
            if der.is_zero() {
                continue;
            }
            if space.insert(der.coefficient_vector(&basis)) {
                queue.push(der);
            }
        }
    }
    space.dim()
}

/// Σ_k (compressed size of ℓ_k^{d−r_k+1}·g_k along ℓ_k).
pub fn gad_size(gad: &Gad) -> Result<usize> {
    let mut total = 0;
    for part in gad.parts() {
        let poly = part.polynomial(gad.degree());
        total += compression(&poly, &part.form)?.size;
    }
    Ok(total)
}
