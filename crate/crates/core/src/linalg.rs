//! Exact dense linear algebra over any [`FieldSpec`]: reduced row-echelon
//! form, canonical solving, kernels, and subspace lattice operations.
//!
//! Subspaces are stored with their unique RREF basis, so structural equality
//! is subspace equality and all derived data (pivots, quotient coordinates)
//! is deterministic.

use crate::scalar::{FieldSpec, Scalar};
use crate::{Error, Result};

// ---------------------------------------------------------------------------
// Coordinate-vector helpers
// ---------------------------------------------------------------------------

pub fn zero_vec(field: &FieldSpec, n: usize) -> Vec<Scalar> {
    vec![Scalar::zero(field); n]
}

pub fn unit_vec(field: &FieldSpec, n: usize, i: usize) -> Vec<Scalar> {
    let mut v = zero_vec(field, n);
    v[i] = Scalar::one(field);
    v
}

pub fn vec_add(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    a.iter().zip(b).map(|(x, y)| x.add(y)).collect()
}

pub fn vec_sub(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    a.iter().zip(b).map(|(x, y)| x.sub(y)).collect()
}

pub fn vec_scale(c: &Scalar, a: &[Scalar]) -> Vec<Scalar> {
    a.iter().map(|x| c.mul(x)).collect()
}

pub fn vec_add_scaled(acc: &mut [Scalar], c: &Scalar, a: &[Scalar]) {
    if c.is_zero() {
        return;
    }
    for (slot, x) in acc.iter_mut().zip(a) {
        *slot = slot.add(&c.mul(x));
    }
}

pub fn vec_is_zero(a: &[Scalar]) -> bool {
    a.iter().all(Scalar::is_zero)
}

// ---------------------------------------------------------------------------
// Matrix
// ---------------------------------------------------------------------------

/// Dense row-major matrix of [`Scalar`]s sharing one field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    field: FieldSpec,
    rows: usize,
    cols: usize,
    entries: Vec<Scalar>,
}

impl Matrix {
    pub fn new(field: FieldSpec, rows: usize, cols: usize, entries: Vec<Scalar>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::SizeMismatch);
        }
        if entries.iter().any(|e| e.field() != field) {
            return Err(Error::FieldMismatch);
        }
        Ok(Matrix {
            field,
            rows,
            cols,
            entries,
        })
    }

    pub fn zero(field: FieldSpec, rows: usize, cols: usize) -> Self {
        Matrix {
            field,
            rows,
            cols,
            entries: zero_vec(&field, rows * cols),
        }
    }

    pub fn identity(field: FieldSpec, n: usize) -> Self {
        let mut m = Matrix::zero(field, n, n);
        for i in 0..n {
            m.set(i, i, Scalar::one(&field));
        }
        m
    }

    pub fn from_rows(field: FieldSpec, rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::SizeMismatch);
        }
        Matrix::new(field, r, c, rows.into_iter().flatten().collect())
    }

    /// Convenience constructor from integer entries.
    pub fn from_i64(field: FieldSpec, rows: usize, cols: usize, data: &[i64]) -> Self {
        let entries = data.iter().map(|&n| Scalar::from_i64(&field, n)).collect();
        Matrix::new(field, rows, cols, entries).expect("dimension mismatch")
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> &Scalar {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn col(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.at(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut out = Matrix::zero(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.at(i, j).clone());
            }
        }
        out
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::SizeMismatch);
        }
        let mut out = Matrix::zero(self.field, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = out.at(i, j).add(&a.mul(other.at(k, j)));
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols, "matrix-vector size mismatch");
        let mut out = zero_vec(&self.field, self.rows);
        for (i, slot) in out.iter_mut().enumerate() {
            for (j, vj) in v.iter().enumerate() {
                if !vj.is_zero() {
                    *slot = slot.add(&self.at(i, j).mul(vj));
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::SizeMismatch);
        }
        Matrix::new(
            self.field,
            self.rows,
            self.cols,
            self.entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a.add(b))
                .collect(),
        )
    }

    pub fn sub(&self, other: &Matrix) -> Result<Matrix> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::SizeMismatch);
        }
        Matrix::new(
            self.field,
            self.rows,
            self.cols,
            self.entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a.sub(b))
                .collect(),
        )
    }

    pub fn rank(&self) -> usize {
        row_reduce(self).1.len()
    }

    pub fn is_invertible(&self) -> bool {
        self.rows == self.cols && self.rank() == self.rows
    }

    /// Inverse of a square matrix, if it exists.
    pub fn inverse(&self) -> Result<Matrix> {
        if self.rows != self.cols {
            return Err(Error::SizeMismatch);
        }
        let n = self.rows;
        // row-reduce [A | I]
        let mut aug = Matrix::zero(self.field, n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.at(i, j).clone());
            }
            aug.set(i, n + i, Scalar::one(&self.field));
        }
        let (red, pivots) = row_reduce(&aug);
        if pivots.len() < n || pivots.iter().take(n).enumerate().any(|(k, &p)| p != k) {
            return Err(Error::NotInvertible);
        }
        let mut inv = Matrix::zero(self.field, n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, red.at(i, n + j).clone());
            }
        }
        Ok(inv)
    }
}

// ---------------------------------------------------------------------------
// Reduced row-echelon form and solving
// ---------------------------------------------------------------------------

/// Unique reduced row-echelon form together with the pivot columns.
pub fn row_reduce(m: &Matrix) -> (Matrix, Vec<usize>) {
    let mut a = m.clone();
    let mut pivots = Vec::new();
    let mut pivot_row = 0usize;
    for col in 0..a.cols {
        if pivot_row == a.rows {
            break;
        }
        let Some(src) = (pivot_row..a.rows).find(|&r| !a.at(r, col).is_zero()) else {
            continue;
        };
        if src != pivot_row {
            for j in 0..a.cols {
                let tmp = a.at(src, j).clone();
                a.set(src, j, a.at(pivot_row, j).clone());
                a.set(pivot_row, j, tmp);
            }
        }
        let inv = a.at(pivot_row, col).inv().expect("pivot nonzero");
        for j in col..a.cols {
            a.set(pivot_row, j, inv.mul(a.at(pivot_row, j)));
        }
        for r in 0..a.rows {
            if r == pivot_row || a.at(r, col).is_zero() {
                continue;
            }
            let factor = a.at(r, col).clone();
            for j in col..a.cols {
                let v = a.at(r, j).sub(&factor.mul(a.at(pivot_row, j)));
                a.set(r, j, v);
            }
        }
        pivots.push(col);
        pivot_row += 1;
    }
    (a, pivots)
}

/// Canonical solution of `A·x = b` with all free variables set to zero, or
/// `None` when the system is inconsistent.
pub fn solve(a: &Matrix, b: &[Scalar]) -> Option<Vec<Scalar>> {
    assert_eq!(b.len(), a.rows, "rhs length mismatch");
    let mut aug = Matrix::zero(a.field, a.rows, a.cols + 1);
    for i in 0..a.rows {
        for j in 0..a.cols {
            aug.set(i, j, a.at(i, j).clone());
        }
        aug.set(i, a.cols, b[i].clone());
    }
    let (red, pivots) = row_reduce(&aug);
    if pivots.contains(&a.cols) {
        return None; // pivot in the rhs column: inconsistent
    }
    let mut x = zero_vec(&a.field, a.cols);
    for (r, &p) in pivots.iter().enumerate() {
        x[p] = red.at(r, a.cols).clone();
    }
    Some(x)
}

/// Basis of `{x : A·x = 0}` as a canonical subspace.
pub fn kernel(a: &Matrix) -> Subspace {
    let (red, pivots) = row_reduce(a);
    let n = a.cols;
    let free: Vec<usize> = (0..n).filter(|j| !pivots.contains(j)).collect();
    let mut basis = Vec::with_capacity(free.len());
    for &f in &free {
        let mut v = zero_vec(&a.field, n);
        v[f] = Scalar::one(&a.field);
        for (r, &p) in pivots.iter().enumerate() {
            v[p] = red.at(r, f).neg();
        }
        basis.push(v);
    }
    Subspace::span(a.field, n, basis)
}

/// One-shot solver output: RREF, pivots, canonical solution for an optional
/// right-hand side, and the kernel.
pub struct LinearSolution {
    pub rref: Matrix,
    pub pivots: Vec<usize>,
    pub solution: Option<Vec<Scalar>>,
    pub inconsistent: bool,
    pub kernel: Subspace,
}

pub fn row_reduce_and_solve(a: &Matrix, b: Option<&[Scalar]>) -> LinearSolution {
    let (rref, pivots) = row_reduce(a);
    let (solution, inconsistent) = match b {
        None => (None, false),
        Some(rhs) => match solve(a, rhs) {
            Some(x) => (Some(x), false),
            None => (None, true),
        },
    };
    LinearSolution {
        rref,
        pivots,
        solution,
        inconsistent,
        kernel: kernel(a),
    }
}

// ---------------------------------------------------------------------------
// Subspaces
// ---------------------------------------------------------------------------

/// A subspace of F^n stored by its unique RREF basis (pivots equal to one,
/// zeros above and below pivots, strictly increasing pivot columns).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subspace {
    field: FieldSpec,
    ambient: usize,
    basis: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn span(field: FieldSpec, ambient: usize, vectors: Vec<Vec<Scalar>>) -> Subspace {
        assert!(vectors.iter().all(|v| v.len() == ambient));
        if vectors.is_empty() {
            return Subspace {
                field,
                ambient,
                basis: vec![],
                pivots: vec![],
            };
        }
        let m = Matrix::from_rows(field, vectors).expect("ragged span input");
        let (red, pivots) = row_reduce(&m);
        let basis = (0..pivots.len()).map(|i| red.row(i).to_vec()).collect();
        Subspace {
            field,
            ambient,
            basis,
            pivots,
        }
    }

    pub fn zero(field: FieldSpec, ambient: usize) -> Subspace {
        Subspace::span(field, ambient, vec![])
    }

    pub fn full(field: FieldSpec, ambient: usize) -> Subspace {
        let basis = (0..ambient).map(|i| unit_vec(&field, ambient, i)).collect();
        Subspace::span(field, ambient, basis)
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<Scalar>] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    /// Residual of `v` after eliminating all pivot coordinates.
    pub fn reduce(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.ambient);
        let mut out = v.to_vec();
        for (row, &p) in self.basis.iter().zip(&self.pivots) {
            let c = out[p].clone();
            if !c.is_zero() {
                for (slot, rv) in out.iter_mut().zip(row) {
                    *slot = slot.sub(&c.mul(rv));
                }
            }
        }
        out
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        vec_is_zero(&self.reduce(v))
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.basis.iter().all(|v| self.contains(v))
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        if self.ambient != other.ambient || self.field != other.field {
            return Err(Error::AmbientMismatch);
        }
        let mut vecs = self.basis.clone();
        vecs.extend(other.basis.iter().cloned());
        Ok(Subspace::span(self.field, self.ambient, vecs))
    }

    /// Intersection computed from the kernel of `[Uᵀ | −Vᵀ]`.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        if self.ambient != other.ambient || self.field != other.field {
            return Err(Error::AmbientMismatch);
        }
        let r = self.dim();
        let s = other.dim();
        if r == 0 || s == 0 {
            return Ok(Subspace::zero(self.field, self.ambient));
        }
        let mut m = Matrix::zero(self.field, self.ambient, r + s);
        for (k, row) in self.basis.iter().enumerate() {
            for i in 0..self.ambient {
                m.set(i, k, row[i].clone());
            }
        }
        for (k, row) in other.basis.iter().enumerate() {
            for i in 0..self.ambient {
                m.set(i, r + k, row[i].neg());
            }
        }
        let ker = kernel(&m);
        let vecs = ker
            .basis()
            .iter()
            .map(|coeffs| {
                let mut v = zero_vec(&self.field, self.ambient);
                for (k, row) in self.basis.iter().enumerate() {
                    vec_add_scaled(&mut v, &coeffs[k], row);
                }
                v
            })
            .collect();
        Ok(Subspace::span(self.field, self.ambient, vecs))
    }

    /// Complement coordinate positions (non-pivot columns).
    pub fn complement_positions(&self) -> Vec<usize> {
        (0..self.ambient)
            .filter(|j| !self.pivots.contains(j))
            .collect()
    }

    /// Coordinates of `v + S` in the fixed complement spanned by the
    /// non-pivot coordinate positions.
    pub fn quotient_coords(&self, v: &[Scalar]) -> Vec<Scalar> {
        let reduced = self.reduce(v);
        self.complement_positions()
            .iter()
            .map(|&j| reduced[j].clone())
            .collect()
    }

    /// Matrix of the quotient map F^n → F^(n−dim) in complement coordinates.
    pub fn quotient_map_matrix(&self) -> Matrix {
        let n = self.ambient;
        let comp = self.complement_positions();
        let mut m = Matrix::zero(self.field, comp.len(), n);
        for j in 0..n {
            let q = self.quotient_coords(&unit_vec(&self.field, n, j));
            for (i, qi) in q.into_iter().enumerate() {
                m.set(i, j, qi);
            }
        }
        m
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn q() -> FieldSpec {
        FieldSpec::rationals()
    }

    fn f(p: u64) -> FieldSpec {
        FieldSpec::prime_field(p).unwrap()
    }

    fn random_matrix<R: Rng>(field: &FieldSpec, rows: usize, cols: usize, rng: &mut R) -> Matrix {
        let entries = (0..rows * cols)
            .map(|_| Scalar::sample(field, rng))
            .collect();
        Matrix::new(*field, rows, cols, entries).unwrap()
    }

    #[test]
    fn solve_underdetermined_canonical() {
        let a = Matrix::from_i64(q(), 2, 2, &[1, 2, 2, 4]);
        let b = vec![Scalar::from_i64(&q(), 1), Scalar::from_i64(&q(), 2)];
        let out = row_reduce_and_solve(&a, Some(&b));
        assert_eq!(
            out.solution.unwrap(),
            vec![Scalar::from_i64(&q(), 1), Scalar::zero(&q())]
        );
        assert_eq!(out.kernel.dim(), 1);
        let span = Subspace::span(
            q(),
            2,
            vec![vec![Scalar::from_i64(&q(), -2), Scalar::from_i64(&q(), 1)]],
        );
        assert_eq!(out.kernel, span);
    }

    #[test]
    fn solve_identity() {
        let a = Matrix::identity(q(), 3);
        let b: Vec<Scalar> = [4, 5, 6]
            .iter()
            .map(|&n| Scalar::from_i64(&q(), n))
            .collect();
        let out = row_reduce_and_solve(&a, Some(&b));
        assert_eq!(out.solution.unwrap(), b);
        assert_eq!(out.kernel.dim(), 0);
    }

    // Over F_3: check 1·2+1·1 = 3 ≡ 0 and 1·2+2·1 = 4 ≡ 1.
    #[test]
    fn solve_over_f3() {
        let a = Matrix::from_i64(f(3), 2, 2, &[1, 1, 1, 2]);
        let b = vec![Scalar::zero(&f(3)), Scalar::one(&f(3))];
        let x = solve(&a, &b).unwrap();
        assert_eq!(
            x,
            vec![Scalar::from_i64(&f(3), 2), Scalar::from_i64(&f(3), 1)]
        );
        assert_eq!(a.mul_vec(&x), b);
    }

    #[test]
    fn inconsistent_reported_not_fatal() {
        let a = Matrix::from_i64(q(), 2, 1, &[1, 1]);
        let b = vec![Scalar::from_i64(&q(), 1), Scalar::from_i64(&q(), 2)];
        let out = row_reduce_and_solve(&a, Some(&b));
        assert!(out.inconsistent);
        assert!(out.solution.is_none());
    }

    #[test]
    fn membership_examples() {
        let field = q();
        let u = Subspace::span(
            field,
            3,
            vec![unit_vec(&field, 3, 0), unit_vec(&field, 3, 1)],
        );
        assert!(u.contains(&[
            Scalar::from_i64(&field, 1),
            Scalar::from_i64(&field, 1),
            Scalar::zero(&field)
        ]));
        assert!(!u.contains(&unit_vec(&field, 3, 2)));
    }

    #[test]
    fn quotient_coords_kill_the_subspace() {
        // span{e2} inside F^3 (stand-in for rad(T2) = span{e12})
        let field = q();
        let s = Subspace::span(field, 3, vec![unit_vec(&field, 3, 1)]);
        assert_eq!(
            s.quotient_coords(&unit_vec(&field, 3, 1)),
            zero_vec(&field, 2)
        );
        let qm = s.quotient_map_matrix();
        assert_eq!(qm.rows(), 2);
        assert!(vec_is_zero(&qm.mul_vec(&unit_vec(&field, 3, 1))));
    }

    #[test]
    fn modular_law_on_seeded_subspaces() {
        let field = f(5);
        let mut rng = ChaCha8Rng::seed_from_u64(999);
        for _ in 0..50 {
            let du = rng.gen_range(0..=4usize);
            let dv = rng.gen_range(0..=4usize);
            let u_vecs = (0..du)
                .map(|_| (0..6).map(|_| Scalar::sample(&field, &mut rng)).collect())
                .collect();
            let v_vecs = (0..dv)
                .map(|_| (0..6).map(|_| Scalar::sample(&field, &mut rng)).collect())
                .collect();
            let u = Subspace::span(field, 6, u_vecs);
            let v = Subspace::span(field, 6, v_vecs);
            let sum = u.sum(&v).unwrap();
            let int = u.intersect(&v).unwrap();
            assert_eq!(sum.dim() + int.dim(), u.dim() + v.dim());
            assert!(sum.contains_subspace(&u));
            assert!(u.contains_subspace(&int));
            assert!(v.contains_subspace(&int));
        }
    }

    #[test]
    fn solutions_reverify_on_seeded_systems() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for field in [q(), f(5)] {
            for _ in 0..30 {
                let a = random_matrix(&field, 4, 5, &mut rng);
                // build a consistent rhs from a known vector
                let x0: Vec<Scalar> = (0..5).map(|_| Scalar::sample(&field, &mut rng)).collect();
                let b = a.mul_vec(&x0);
                let x = solve(&a, &b).expect("consistent by construction");
                assert_eq!(a.mul_vec(&x), b);
                for k in kernel(&a).basis() {
                    assert!(vec_is_zero(&a.mul_vec(k)));
                }
            }
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn rref_is_idempotent(seed in 0u64..500) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let field = if seed % 2 == 0 { q() } else { f(5) };
            let m = random_matrix(&field, 3, 4, &mut rng);
            let (r1, p1) = row_reduce(&m);
            let (r2, p2) = row_reduce(&r1);
            prop_assert_eq!(r1, r2);
            prop_assert_eq!(p1, p2);
        }
    }
}
