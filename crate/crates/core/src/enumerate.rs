//! Enumeration and seeded sampling of coordinate vectors, shared by the
//! pointwise identity checks and local-map certification.

use crate::scalar::{FieldKind, FieldSpec, Scalar};
use rand::Rng;

/// `p^n` as a u128, used for budget checks before enumerating F_p^n.
pub(crate) fn finite_vector_count(field: &FieldSpec, n: usize) -> Option<u128> {
    match field.kind() {
        FieldKind::PrimeField(p) => {
            let mut total: u128 = 1;
            for _ in 0..n {
                total = total.checked_mul(p as u128)?;
            }
            Some(total)
        }
        _ => None,
    }
}

/// The `idx`-th vector of F_p^n in base-p counting order (digit k = coord k).
pub(crate) fn fp_vector(p: u64, n: usize, idx: u128) -> Vec<Scalar> {
    let mut digits = Vec::with_capacity(n);
    let mut rest = idx;
    for _ in 0..n {
        digits.push(Scalar::from_residue(p, (rest % p as u128) as u64));
        rest /= p as u128;
    }
    digits
}

/// Iterator over all of F_p^n in deterministic (base-p) order.
pub(crate) fn all_fp_vectors(p: u64, n: usize, total: u128) -> impl Iterator<Item = Vec<Scalar>> {
    (0..total).map(move |idx| fp_vector(p, n, idx))
}

pub(crate) fn random_coords<R: Rng>(field: &FieldSpec, n: usize, rng: &mut R) -> Vec<Scalar> {
    (0..n).map(|_| Scalar::sample(field, rng)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_and_order() {
        let f3 = FieldSpec::prime_field(3).unwrap();
        assert_eq!(finite_vector_count(&f3, 4), Some(81));
        assert_eq!(finite_vector_count(&FieldSpec::rationals(), 2), None);
        let v = fp_vector(3, 3, 5); // 5 = 2 + 1*3
        assert_eq!(
            v,
            vec![
                Scalar::from_residue(3, 2),
                Scalar::from_residue(3, 1),
                Scalar::from_residue(3, 0)
            ]
        );
        assert_eq!(all_fp_vectors(2, 3, 8).count(), 8);
    }
}
