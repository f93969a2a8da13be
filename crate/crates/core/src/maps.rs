//! Linear operators on an algebra and the classification predicates:
//! derivation, (anti)homomorphism, Jordan homomorphism, bijectivity, and
//! membership in the multiplication algebra.
//!
//! Every predicate is decided by exact linear algebra on basis pairs; since
//! the defining identities are bilinear, checking them on the basis is
//! complete (no sampling, no field-size conditions).

use crate::algebra::{Algebra, Element};
use crate::linalg::{unit_vec, vec_add, vec_scale, vec_sub, zero_vec, Matrix};
use crate::scalar::Scalar;
use crate::{Error, Result};

/// A linear operator given by the images of the basis vectors
/// (`columns[j]` = coordinates of the image of `b_j`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinMap {
    columns: Vec<Vec<Scalar>>,
}

impl LinMap {
    pub fn from_columns(alg: &Algebra, columns: Vec<Vec<Scalar>>) -> Result<LinMap> {
        if columns.len() != alg.dim() {
            return Err(Error::AlgebraMismatch);
        }
        for col in &columns {
            if col.len() != alg.dim() || col.iter().any(|c| c.field() != alg.field()) {
                return Err(Error::AlgebraMismatch);
            }
        }
        Ok(LinMap { columns })
    }

    pub fn identity(alg: &Algebra) -> LinMap {
        let n = alg.dim();
        LinMap {
            columns: (0..n).map(|j| unit_vec(&alg.field(), n, j)).collect(),
        }
    }

    pub fn zero(alg: &Algebra) -> LinMap {
        let n = alg.dim();
        LinMap {
            columns: vec![zero_vec(&alg.field(), n); n],
        }
    }

    /// Rebuilds a map from a row-major flattened operator matrix
    /// (`flat[r*n + c]` = entry (r, c)).
    pub(crate) fn from_flat(alg: &Algebra, flat: &[Scalar]) -> LinMap {
        let n = alg.dim();
        debug_assert_eq!(flat.len(), n * n);
        let columns = (0..n)
            .map(|c| (0..n).map(|r| flat[r * n + c].clone()).collect())
            .collect();
        LinMap { columns }
    }

    pub fn columns(&self) -> &[Vec<Scalar>] {
        &self.columns
    }

    pub fn dim(&self) -> usize {
        self.columns.len()
    }

    pub fn apply_vec(&self, x: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(x.len(), self.columns.len());
        let field = self.columns[0][0].field();
        let mut out = zero_vec(&field, self.columns.len());
        for (j, xj) in x.iter().enumerate() {
            if !xj.is_zero() {
                for (slot, c) in out.iter_mut().zip(&self.columns[j]) {
                    *slot = slot.add(&xj.mul(c));
                }
            }
        }
        out
    }

    pub fn apply(&self, x: &Element) -> Element {
        Element::new(self.apply_vec(&x.coords))
    }

    pub fn operator_matrix(&self) -> Matrix {
        let n = self.columns.len();
        let field = self.columns[0][0].field();
        let mut m = Matrix::zero(field, n, n);
        for (j, col) in self.columns.iter().enumerate() {
            for (i, v) in col.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        m
    }

    /// Row-major flattening of the operator matrix.
    pub(crate) fn to_flat(&self) -> Vec<Scalar> {
        let n = self.columns.len();
        let field = self.columns[0][0].field();
        let mut flat = zero_vec(&field, n * n);
        for (c, col) in self.columns.iter().enumerate() {
            for (r, v) in col.iter().enumerate() {
                flat[r * n + c] = v.clone();
            }
        }
        flat
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &LinMap) -> LinMap {
        LinMap {
            columns: inner
                .columns
                .iter()
                .map(|col| self.apply_vec(col))
                .collect(),
        }
    }

    pub fn add(&self, other: &LinMap) -> LinMap {
        LinMap {
            columns: self
                .columns
                .iter()
                .zip(&other.columns)
                .map(|(a, b)| vec_add(a, b))
                .collect(),
        }
    }

    pub fn sub(&self, other: &LinMap) -> LinMap {
        LinMap {
            columns: self
                .columns
                .iter()
                .zip(&other.columns)
                .map(|(a, b)| vec_sub(a, b))
                .collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> LinMap {
        LinMap {
            columns: self.columns.iter().map(|col| vec_scale(c, col)).collect(),
        }
    }

    // -- named constructors --------------------------------------------------

    /// ad_a : x ↦ [a, x].
    pub fn inner_derivation(alg: &Algebra, a: &Element) -> Result<LinMap> {
        alg.check_element(a)?;
        let columns = (0..alg.dim())
            .map(|j| {
                let b = alg.basis_element(j);
                Ok(alg.commutator(a, &b)?.coords)
            })
            .collect::<Result<_>>()?;
        Ok(LinMap { columns })
    }

    /// x ↦ u·x·u⁻¹ for invertible u.
    pub fn conjugation(alg: &Algebra, u: &Element) -> Result<LinMap> {
        alg.check_element(u)?;
        let lu = alg.left_mult_matrix(&u.coords);
        let unit = alg.unit()?;
        // u invertible iff L_u is nonsingular; then L_u v = 1 gives v = u⁻¹
        let Some(u_inv) = crate::linalg::solve(&lu, &unit.coords) else {
            return Err(Error::NotInvertible);
        };
        let columns = (0..alg.dim())
            .map(|j| {
                let ub = alg.mul_vec_basis(&u.coords, j);
                alg.mul_vec(&ub, &u_inv)
            })
            .collect();
        Ok(LinMap { columns })
    }

    /// The transpose map x ↦ xᵗ on a matrix-tagged algebra.
    pub fn transpose_map(alg: &Algebra) -> Result<LinMap> {
        let s = alg.matrix_side()?;
        let n = alg.dim();
        let columns = (0..n)
            .map(|j| {
                let (k, l) = (j / s, j % s);
                unit_vec(&alg.field(), n, l * s + k)
            })
            .collect();
        Ok(LinMap { columns })
    }

    /// x ↦ α·T(x) for a central element α.
    pub fn scalar_multiple(alg: &Algebra, alpha: &Element, t: &LinMap) -> Result<LinMap> {
        alg.check_element(alpha)?;
        if !alg.center().contains(&alpha.coords) {
            return Err(Error::NotCentral);
        }
        let columns = t
            .columns
            .iter()
            .map(|col| alg.mul_vec(&alpha.coords, col))
            .collect();
        Ok(LinMap { columns })
    }
}

// ---------------------------------------------------------------------------
// Classification
// ---------------------------------------------------------------------------

/// Eagerly computed classification flags of a linear operator.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MapProfile {
    pub bijective: bool,
    pub unital: bool,
    pub derivation: bool,
    pub jordan_homomorphism: bool,
    pub homomorphism: bool,
    pub antihomomorphism: bool,
    pub jordan_automorphism: bool,
    pub automorphism: bool,
    pub antiautomorphism: bool,
    pub in_mult_algebra: bool,
}

/// Decides every flag by exact checks on basis pairs.
pub fn classify(alg: &Algebra, t: &LinMap) -> MapProfile {
    let n = alg.dim();
    let table = alg.table();
    let mut derivation = true;
    let mut homomorphism = true;
    let mut antihomomorphism = true;
    let mut jordan = true;
    for i in 0..n {
        for j in 0..n {
            let t_of_prod = t.apply_vec(&table[i][j]);
            let ti_tj = alg.mul_vec(&t.columns[i], &t.columns[j]);
            if homomorphism && t_of_prod != ti_tj {
                homomorphism = false;
            }
            let tj_ti = alg.mul_vec(&t.columns[j], &t.columns[i]);
            if antihomomorphism && t_of_prod != tj_ti {
                antihomomorphism = false;
            }
            if derivation {
                let leibniz = vec_add(
                    &alg.mul_vec_basis(&t.columns[i], j),
                    &alg.mul_basis_vec(i, &t.columns[j]),
                );
                if t_of_prod != leibniz {
                    derivation = false;
                }
            }
            if jordan && j >= i {
                let circ = vec_add(&table[i][j], &table[j][i]);
                let lhs = t.apply_vec(&circ);
                let rhs = vec_add(&ti_tj, &tj_ti);
                if lhs != rhs {
                    jordan = false;
                }
            }
        }
    }
    let bijective = t.operator_matrix().is_invertible();
    let unital = match alg.unit_coords() {
        Some(u) => t.apply_vec(u) == *u,
        None => false,
    };
    let in_mult_algebra = alg.mult_operator_span().contains(&t.to_flat());
    MapProfile {
        bijective,
        unital,
        derivation,
        jordan_homomorphism: jordan,
        homomorphism,
        antihomomorphism,
        jordan_automorphism: jordan && bijective,
        automorphism: homomorphism && bijective,
        antiautomorphism: antihomomorphism && bijective,
        in_mult_algebra,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::FieldSpec;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn q() -> FieldSpec {
        FieldSpec::rationals()
    }

    fn f(p: u64) -> FieldSpec {
        FieldSpec::prime_field(p).unwrap()
    }

    fn random_element<R: Rng>(alg: &Algebra, rng: &mut R) -> Element {
        Element::new(crate::enumerate::random_coords(
            &alg.field(),
            alg.dim(),
            rng,
        ))
    }

    fn random_invertible<R: Rng>(alg: &Algebra, rng: &mut R) -> Element {
        loop {
            let u = random_element(alg, rng);
            if alg.left_mult_matrix(&u.coords).is_invertible() {
                return u;
            }
        }
    }

    /// The char-2 gallery map on M2(F2): (x11 x12 / x21 x22) ↦ (x22 x12 / 0 x11).
    pub(crate) fn f2_gallery_map(alg: &Algebra) -> LinMap {
        LinMap::from_columns(
            alg,
            vec![
                alg.element_from_i64(&[0, 0, 0, 1]).coords, // e11 ↦ e22
                alg.element_from_i64(&[0, 1, 0, 0]).coords, // e12 ↦ e12
                alg.element_from_i64(&[0, 0, 0, 0]).coords, // e21 ↦ 0
                alg.element_from_i64(&[1, 0, 0, 0]).coords, // e22 ↦ e11
            ],
        )
        .unwrap()
    }

    #[test]
    fn inner_derivation_on_matrix_units() {
        let m2 = Algebra::matrix_algebra(q(), 2);
        let d = LinMap::inner_derivation(&m2, &m2.basis_element(1)).unwrap(); // ad_{e12}
        let out = d.apply(&m2.basis_element(2)); // [e12, e21] = e11 − e22
        assert_eq!(out, m2.element_from_i64(&[1, 0, 0, -1]));
    }

    #[test]
    fn conjugation_example_over_f7() {
        let m2 = Algebra::matrix_algebra(f(7), 2);
        let u = m2.element_from_i64(&[1, 1, 0, 1]); // 1 + e12
        let t = LinMap::conjugation(&m2, &u).unwrap();
        // (1+e12)·e11·(1−e12) = e11 − e11 e12 = e11 + 6·e12 over F7
        assert_eq!(
            t.apply(&m2.basis_element(0)),
            m2.element_from_i64(&[1, 6, 0, 0])
        );
    }

    #[test]
    fn transpose_swaps_offdiagonal_units() {
        let m2 = Algebra::matrix_algebra(q(), 2);
        let t = LinMap::transpose_map(&m2).unwrap();
        assert_eq!(t.apply(&m2.basis_element(1)), m2.basis_element(2));
        let t3 = Algebra::upper_triangular(q(), 2);
        assert!(matches!(
            LinMap::transpose_map(&t3),
            Err(Error::NotMatrixAlgebra)
        ));
    }

    #[test]
    fn seeded_inner_derivations_classify_as_derivations() {
        let m3 = Algebra::matrix_algebra(f(5), 3);
        let mut rng = ChaCha8Rng::seed_from_u64(50);
        for _ in 0..50 {
            let a = random_element(&m3, &mut rng);
            let d = LinMap::inner_derivation(&m3, &a).unwrap();
            let profile = classify(&m3, &d);
            assert!(profile.derivation);
            assert!(profile.in_mult_algebra);
        }
    }

    #[test]
    fn transpose_is_an_antiautomorphism_not_automorphism() {
        let m2 = Algebra::matrix_algebra(q(), 2);
        let t = LinMap::transpose_map(&m2).unwrap();
        let profile = classify(&m2, &t);
        assert!(profile.antiautomorphism);
        assert!(!profile.automorphism);
        assert!(profile.jordan_automorphism);
        assert!(profile.unital);
    }

    // The char-2 example map passes the pointwise trace condition but is not
    // a derivation.
    #[test]
    fn f2_gallery_map_is_not_a_derivation() {
        let m2 = Algebra::matrix_algebra(f(2), 2);
        let d = f2_gallery_map(&m2);
        assert!(!classify(&m2, &d).derivation);
    }

    #[test]
    fn conjugations_classify_as_unital_automorphisms() {
        let m2 = Algebra::matrix_algebra(f(7), 2);
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for _ in 0..20 {
            let u = random_invertible(&m2, &mut rng);
            let t = LinMap::conjugation(&m2, &u).unwrap();
            let profile = classify(&m2, &t);
            assert!(profile.automorphism);
            assert!(profile.unital);
            assert!(profile.in_mult_algebra);
        }
    }

    #[test]
    fn conjugation_requires_invertible_element() {
        let m2 = Algebra::matrix_algebra(q(), 2);
        let nilp = m2.basis_element(1);
        assert!(matches!(
            LinMap::conjugation(&m2, &nilp),
            Err(Error::NotInvertible)
        ));
    }

    #[test]
    fn composition_closure_on_seeds() {
        for alg in [
            Algebra::matrix_algebra(q(), 2),
            Algebra::matrix_algebra(f(5), 3),
        ] {
            let mut rng = ChaCha8Rng::seed_from_u64(13);
            let transpose = LinMap::transpose_map(&alg).unwrap();
            for _ in 0..10 {
                let u = random_invertible(&alg, &mut rng);
                let v = random_invertible(&alg, &mut rng);
                let cu = LinMap::conjugation(&alg, &u).unwrap();
                let cv = LinMap::conjugation(&alg, &v).unwrap();
                assert!(classify(&alg, &cu.compose(&cv)).automorphism);
                let anti = cu.compose(&transpose);
                let profile = classify(&alg, &anti);
                assert!(profile.antiautomorphism && !profile.automorphism);
            }
        }
    }

    #[test]
    fn scalar_multiple_requires_central_element() {
        let m2 = Algebra::matrix_algebra(f(7), 2);
        let t = LinMap::identity(&m2);
        let central = m2.unit().unwrap().scale(&Scalar::from_i64(&f(7), 2));
        assert!(LinMap::scalar_multiple(&m2, &central, &t).is_ok());
        let off = m2.basis_element(1);
        assert!(matches!(
            LinMap::scalar_multiple(&m2, &off, &t),
            Err(Error::NotCentral)
        ));
    }

    // With char ≠ 2, the bilinear Jordan law on basis pairs is equivalent to
    // the squares-only condition T((b_i+b_j)²) = T(b_i+b_j)² by polarization.
    #[test]
    fn jordan_equivalent_to_squares_only_over_q() {
        let m2 = Algebra::matrix_algebra(q(), 2);
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        let mut maps: Vec<LinMap> =
            vec![LinMap::transpose_map(&m2).unwrap(), LinMap::identity(&m2)];
        for _ in 0..10 {
            let cols = (0..4)
                .map(|_| random_element(&m2, &mut rng).coords)
                .collect();
            maps.push(LinMap::from_columns(&m2, cols).unwrap());
        }
        for t in &maps {
            let bilinear = classify(&m2, t).jordan_homomorphism;
            let squares_only = squares_check(&m2, t);
            assert_eq!(bilinear, squares_only);
        }
    }

    fn squares_check(alg: &Algebra, t: &LinMap) -> bool {
        let n = alg.dim();
        for i in 0..n {
            for j in i..n {
                let x = vec_add(&alg.basis_element(i).coords, &alg.basis_element(j).coords);
                let x2 = alg.mul_vec(&x, &x);
                let tx = t.apply_vec(&x);
                if t.apply_vec(&x2) != alg.mul_vec(&tx, &tx) {
                    return false;
                }
            }
        }
        // also plain basis squares
        (0..n).all(|i| {
            let x = alg.basis_element(i).coords;
            let tx = t.apply_vec(&x);
            t.apply_vec(&alg.mul_vec(&x, &x)) == alg.mul_vec(&tx, &tx)
        })
    }

    #[test]
    fn profile_implications_hold() {
        let m2 = Algebra::matrix_algebra(f(3), 2);
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..30 {
            let cols = (0..4)
                .map(|_| random_element(&m2, &mut rng).coords)
                .collect();
            let t = LinMap::from_columns(&m2, cols).unwrap();
            let p = classify(&m2, &t);
            if p.automorphism || p.antiautomorphism {
                assert!(p.jordan_automorphism);
            }
            if p.jordan_automorphism {
                assert!(p.bijective && p.jordan_homomorphism);
            }
        }
    }
}
