//! Catalecticant matrices, coordinate changes, and essential variables.
//!
//! The order-e catalecticant of a degree-d form f is the matrix of the
//! pairing T_e × S_{d−e} induced by letting constant-coefficient
//! diffoperators act on f. Its rank is the dimension of the space of order-e
//! partial derivatives of f, which is both the Hilbert function of the apolar
//! algebra at e and a lower bound for (border) Waring rank.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigUint;

use crate::comb::{falling_factorial, field_from_biguint};
use crate::cyclotomic::Scalar;
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::poly::{monomials_of_degree, LinForm, Monomial, Poly};
use crate::ring::Field;

/// Matrix of α ↦ α·f with rows indexed by degree-e dual monomials and
/// columns by degree-(d−e) monomials.
#[derive(Clone, Debug)]
pub struct CatMatrix<K: Field = Scalar> {
    order: u32,
    rows: Vec<Monomial>,
    cols: Vec<Monomial>,
    matrix: Matrix<K>,
}

impl<K: Field> CatMatrix<K> {
    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn row_monomials(&self) -> &[Monomial] {
        &self.rows
    }

    pub fn col_monomials(&self) -> &[Monomial] {
        &self.cols
    }

    pub fn matrix(&self) -> &Matrix<K> {
        &self.matrix
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }

    /// Basis of {α ∈ T_e : α·f = 0}, each returned as a polynomial in the
    /// dual variables.
    pub fn operator_kernel(&self) -> Vec<Poly<K>> {
        let nvars = self.rows.first().map_or(0, Monomial::nvars);
        self.matrix
            .transpose()
            .kernel_basis()
            .into_iter()
            .map(|v| {
                Poly::from_terms(
                    nvars,
                    self.order,
                    self.rows
                        .iter()
                        .cloned()
                        .zip(v)
                        .filter(|(_, c)| !c.is_zero()),
                )
            })
            .collect()
    }
}

/// ∂^α x^β = (Π_i β_i·(β_i−1)…(β_i−α_i+1)) x^{β−α}; this is the scalar factor.
fn action_factor(alpha: &Monomial, beta: &Monomial) -> BigUint {
    let mut acc = BigUint::from(1u32);
    for (a, b) in alpha.exps().iter().zip(beta.exps()) {
        acc *= falling_factorial(*b as u64, *a as u64);
    }
    acc
}

/// Apply the dual monomial α to f.
pub fn apply_operator_monomial<K: Field>(alpha: &Monomial, f: &Poly<K>) -> Poly<K> {
    let e = alpha.degree();
    let mut out = Poly::zero(f.nvars(), f.degree().saturating_sub(e));
    if e > f.degree() {
        return out;
    }
    for (beta, c) in f.terms() {
        if let Some(rest) = beta.checked_div(alpha) {
            let factor: K = field_from_biguint(&action_factor(alpha, beta));
            out.add_term(rest, c.mul(&factor));
        }
    }
    out
}

/// Apply a dual polynomial (operator with constant coefficients) to f.
pub fn apply_operator<K: Field>(op: &Poly<K>, f: &Poly<K>) -> Poly<K> {
    let e = op.degree();
    let mut out = Poly::zero(f.nvars(), f.degree().saturating_sub(e));
    for (alpha, c) in op.terms() {
        out = out.add(&apply_operator_monomial(alpha, f).scale(c));
    }
    out
}

/// The order-e catalecticant of f; requires 0 ≤ e ≤ d.
pub fn catalecticant<K: Field>(f: &Poly<K>, e: u32) -> Result<CatMatrix<K>> {
    let d = f.degree();
    if e > d {
        return Err(Error::OrderOutOfRange {
            order: e as usize,
            degree: d,
        });
    }
    let rows = monomials_of_degree(f.nvars(), e);
    let cols = monomials_of_degree(f.nvars(), d - e);
    let mut matrix = Matrix::zero(rows.len(), cols.len());
    for (i, alpha) in rows.iter().enumerate() {
        for (j, m) in cols.iter().enumerate() {
            let beta = alpha.mul(m);
            let c = f.coeff(&beta);
            if c.is_zero() {
                continue;
            }
            let factor: K = field_from_biguint(&action_factor(alpha, &beta));
            matrix.set(i, j, c.mul(&factor));
        }
    }
    Ok(CatMatrix {
        order: e,
        rows,
        cols,
        matrix,
    })
}

/// An invertible change of coordinates carrying a chosen linear form to the
/// first variable: y = C·x with y_1 = ℓ(x), x = M·y where M = C⁻¹.
#[derive(Clone, Debug)]
pub struct CoordinateChange<K: Field> {
    new_from_old: Matrix<K>, // C
    old_from_new: Matrix<K>, // M = C⁻¹
}

impl<K: Field> CoordinateChange<K> {
    /// Change of coordinates y = C·x from an explicit invertible matrix.
    pub fn from_matrix(new_from_old: Matrix<K>) -> Option<Self> {
        let old_from_new = new_from_old.inverse()?;
        Some(CoordinateChange {
            new_from_old,
            old_from_new,
        })
    }

    pub fn new_from_old(&self) -> &Matrix<K> {
        &self.new_from_old
    }

    pub fn old_from_new(&self) -> &Matrix<K> {
        &self.old_from_new
    }

    fn images(m: &Matrix<K>) -> Vec<LinForm<K>> {
        (0..m.nrows())
            .map(|i| LinForm::new(m.row(i).to_vec()))
            .collect()
    }

    /// Express f in the new coordinates: (to_new f)(y) = f(M·y).
    pub fn to_new(&self, f: &Poly<K>) -> Poly<K> {
        f.substitute(&Self::images(&self.old_from_new))
    }

    /// Express a polynomial in new coordinates back in the old ones.
    pub fn to_old(&self, g: &Poly<K>) -> Poly<K> {
        g.substitute(&Self::images(&self.new_from_old))
    }

    /// A linear form v·y in new coordinates equals (vᵀC)·x in old ones.
    pub fn form_to_old(&self, v: &LinForm<K>) -> LinForm<K> {
        LinForm::new(self.new_from_old.transpose().mul_vec(v.coeffs()))
    }

    /// A linear form w·x in old coordinates equals (wᵀM)·y in new ones.
    pub fn form_to_new(&self, w: &LinForm<K>) -> LinForm<K> {
        LinForm::new(self.old_from_new.transpose().mul_vec(w.coeffs()))
    }

    /// Lift the change of coordinates into a larger coefficient field.
    pub fn map_coeffs<L: Field>(&self, mut f: impl FnMut(&K) -> L) -> CoordinateChange<L> {
        let lift = |m: &Matrix<K>, f: &mut dyn FnMut(&K) -> L| {
            let mut out = Matrix::zero(m.nrows(), m.ncols());
            for i in 0..m.nrows() {
                for j in 0..m.ncols() {
                    out.set(i, j, f(m.get(i, j)));
                }
            }
            out
        };
        CoordinateChange {
            new_from_old: lift(&self.new_from_old, &mut f),
            old_from_new: lift(&self.old_from_new, &mut f),
        }
    }
}

/// Coordinates in which `form` becomes the first variable.
pub fn rotate_form_to_first<K: Field>(form: &LinForm<K>) -> CoordinateChange<K> {
    let n = form.nvars();
    let pivot = (0..n)
        .find(|&i| !form.coeff(i).is_zero())
        .expect("nonzero linear form");
    let mut rows = Vec::with_capacity(n);
    rows.push(form.coeffs().to_vec());
    for j in 0..n {
        if j != pivot {
            let mut row = vec![K::zero(); n];
            row[j] = K::one();
            rows.push(row);
        }
    }
    let c = Matrix::from_rows(rows);
    let m = c.inverse().expect("rotation matrix is invertible");
    CoordinateChange {
        new_from_old: c,
        old_from_new: m,
    }
}

/// Essential-variable count and a change of coordinates realizing it:
/// substituting x = A·y makes f a polynomial in the first `rank` of the y.
pub fn essential_vars(f: &Poly<Scalar>) -> Result<(usize, Matrix<Scalar>)> {
    if f.is_zero() {
        return Err(Error::ZeroInput);
    }
    let n = f.nvars();
    if f.degree() == 0 {
        return Ok((0, Matrix::identity(n)));
    }
    let basis = monomials_of_degree(n, f.degree() - 1);
    let jac = Matrix::from_rows(
        (0..n)
            .map(|i| f.partial_derivative(i).coefficient_vector(&basis))
            .collect(),
    );
    let rank = jac.rank();
    // Directions v with Σ v_i ∂_i f = 0; f is constant along these.
    let kernel = jac.transpose().kernel_basis();

    let mut columns: Vec<Vec<Scalar>> = Vec::with_capacity(n);
    for j in 0..n {
        if columns.len() == rank {
            break;
        }
        let mut unit = vec![Scalar::from_int(0); n];
        unit[j] = Scalar::from_int(1);
        let mut probe: Vec<Vec<Scalar>> = columns.clone();
        probe.push(unit.clone());
        probe.extend(kernel.iter().cloned());
        if Matrix::from_rows(probe).rank() == columns.len() + kernel.len() + 1 {
            columns.push(unit);
        }
    }
    assert_eq!(
        columns.len(),
        rank,
        "unit vectors complete the kernel basis"
    );
    columns.extend(kernel);

    let mut a = Matrix::zero(n, n);
    for (j, col) in columns.iter().enumerate() {
        for (i, v) in col.iter().enumerate() {
            a.set(i, j, v.clone());
        }
    }
    Ok((rank, a))
}

/// Essential-variable reduction bundle: f∘A restricted to its essential
/// variables, and the data needed to lift linear forms back.
#[derive(Clone, Debug)]
pub struct EssentialReduction {
    pub rank: usize,
    pub change: Matrix<Scalar>,
    inverse: Matrix<Scalar>,
    pub reduced: Poly<Scalar>,
}

pub fn essential_reduction(f: &Poly<Scalar>) -> Result<EssentialReduction> {
    let (rank, a) = essential_vars(f)?;
    let n = f.nvars();
    let images: Vec<LinForm<Scalar>> = (0..n).map(|i| LinForm::new(a.row(i).to_vec())).collect();
    let transformed = f.substitute(&images);
    let reduced = transformed.shrink_vars(rank);
    let inverse = a.inverse().expect("change of coordinates is invertible");
    Ok(EssentialReduction {
        rank,
        change: a,
        inverse,
        reduced,
    })
}

impl EssentialReduction {
    /// Lift a linear form on the reduced variables back to the original ones:
    /// if g(y) uses only y_1..y_m, a form v on those satisfies
    /// v(π(A⁻¹x)) = (v_padᵀ A⁻¹)·x.
    pub fn lift_form(&self, v: &LinForm<Scalar>) -> LinForm<Scalar> {
        let n = self.change.nrows();
        let mut padded = v.coeffs().to_vec();
        padded.resize(n, Scalar::from_int(0));
        LinForm::new(self.inverse.transpose().mul_vec(&padded))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{lin, power_of_linform, var_power};

    fn tangent_monomial(d: u32) -> Poly<Scalar> {
        Poly::monomial(2, vec![d - 1, 1], Scalar::from_int(1))
    }

    #[test]
    fn catalecticant_rank_of_tangent_monomial() {
        for d in [3u32, 5, 8] {
            let f = tangent_monomial(d);
            assert_eq!(catalecticant(&f, 1).unwrap().rank(), 2, "d={d}");
        }
    }

    #[test]
    fn catalecticant_rank_of_pure_power() {
        let f: Poly<Scalar> = var_power(3, 0, 6);
        for e in 0..=6 {
            assert_eq!(catalecticant(&f, e).unwrap().rank(), 1);
        }
        assert!(matches!(
            catalecticant(&f, 7),
            Err(Error::OrderOutOfRange { .. })
        ));
    }

    #[test]
    fn operator_application() {
        // ∂y² kills x^{d-1}y; ∂x∂y maps it to (d-1)x^{d-2}.
        let d = 5;
        let f = tangent_monomial(d);
        let dyy = Poly::monomial(2, vec![0, 2], Scalar::from_int(1));
        assert!(apply_operator(&dyy, &f).is_zero());
        let dxy = Poly::monomial(2, vec![1, 1], Scalar::from_int(1));
        assert_eq!(
            apply_operator(&dxy, &f),
            var_power::<Scalar>(2, 0, d - 2).scale(&Scalar::from_int((d - 1) as i64))
        );
    }

    #[test]
    fn essential_vars_of_power_of_sum() {
        let f = power_of_linform(&lin::<Scalar>(&[1, 1]), 5);
        let (m, a) = essential_vars(&f).unwrap();
        assert_eq!(m, 1);
        let images: Vec<LinForm<Scalar>> =
            (0..2).map(|i| LinForm::new(a.row(i).to_vec())).collect();
        let g = f.substitute(&images);
        g.shrink_vars(1); // panics if the second variable still occurs
    }

    #[test]
    fn essential_vars_rank_two_example() {
        // x² + xy has first partials 2x + y and x, spanning a 2-dim space.
        let f =
            var_power::<Scalar>(2, 0, 2).add(&Poly::monomial(2, vec![1, 1], Scalar::from_int(1)));
        let (m, _) = essential_vars(&f).unwrap();
        assert_eq!(m, 2);
    }

    #[test]
    fn essential_vars_rejects_zero() {
        assert!(matches!(
            essential_vars(&Poly::zero(2, 3)),
            Err(Error::ZeroInput)
        ));
    }

    #[test]
    fn rotation_carries_form_to_first_variable() {
        let form = lin::<Scalar>(&[2, 1, -1]);
        let change = rotate_form_to_first(&form);
        let p = change.to_new(&form.as_poly());
        assert_eq!(p, var_power(3, 0, 1));
        // round trip
        let f = power_of_linform(&form, 3);
        assert_eq!(change.to_old(&change.to_new(&f)), f);
        // form_to_old maps y1 back to the original form
        let y1 = LinForm::unit(3, 0);
        assert_eq!(change.form_to_old(&y1), form);
    }
}
