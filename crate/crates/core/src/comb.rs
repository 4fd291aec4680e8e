//! Small exact combinatorics helpers.

use num_bigint::{BigInt, BigUint};
use num_traits::One;

use crate::ring::Field;

pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::ZERO;
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

/// d! / (α_1! · … · α_n!) for α summing to d.
pub fn multinomial(exps: &[u32]) -> BigUint {
    let mut acc = BigUint::one();
    let mut seen = 0u64;
    for &e in exps {
        for i in 1..=e as u64 {
            acc = acc * BigUint::from(seen + i) / BigUint::from(i);
        }
        seen += e as u64;
    }
    acc
}

/// a·(a−1)·…·(a−k+1)
pub fn falling_factorial(a: u64, k: u64) -> BigUint {
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= BigUint::from(a - i);
    }
    acc
}

pub fn factorial_biguint(n: u64) -> BigUint {
    falling_factorial(n, n)
}

/// Exact conversion of a big integer into any coefficient field.
pub fn field_from_bigint<K: Field>(n: &BigInt) -> K {
    let (sign, digits) = n.to_u32_digits();
    let base = K::from_int(1i64 << 32);
    let mut acc = K::zero();
    for d in digits.iter().rev() {
        acc = acc.mul(&base).add(&K::from_int(*d as i64));
    }
    if sign == num_bigint::Sign::Minus {
        acc = acc.neg();
    }
    acc
}

pub fn field_from_biguint<K: Field>(n: &BigUint) -> K {
    field_from_bigint(&BigInt::from(n.clone()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    #[test]
    fn binomials() {
        assert_eq!(binomial(4, 2), BigUint::from(6u32));
        assert_eq!(binomial(22, 11), BigUint::from(705432u32));
        assert_eq!(binomial(3, 5), BigUint::ZERO);
    }

    #[test]
    fn multinomials() {
        assert_eq!(multinomial(&[1, 1, 1]), BigUint::from(6u32));
        assert_eq!(multinomial(&[2, 1]), BigUint::from(3u32));
        assert_eq!(multinomial(&[0, 4]), BigUint::one());
    }

    #[test]
    fn bigint_embedding() {
        let n = BigInt::from(-12345678901234567890i128);
        let q: BigRational = field_from_bigint(&n);
        assert_eq!(q, BigRational::from_integer(n));
    }
}
