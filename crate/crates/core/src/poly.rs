//! Univariate polynomials over a base field, the Smith form of `xI − M` over
//! `F[x]`, and the invariant-factor similarity test.

use crate::linalg::Matrix;
use crate::scalar::{FieldSpec, Scalar};
use crate::{Error, Result};
use std::fmt;

/// Dense univariate polynomial with scalar coefficients; canonical form has
/// no trailing zero coefficients (zero polynomial = empty list).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polynomial {
    field: FieldSpec,
    coeffs: Vec<Scalar>,
}

impl Polynomial {
    pub fn new(field: FieldSpec, mut coeffs: Vec<Scalar>) -> Self {
        while coeffs.last().is_some_and(Scalar::is_zero) {
            coeffs.pop();
        }
        Polynomial { field, coeffs }
    }

    pub fn zero(field: FieldSpec) -> Self {
        Polynomial {
            field,
            coeffs: vec![],
        }
    }

    pub fn one(field: FieldSpec) -> Self {
        Polynomial::constant(Scalar::one(&field))
    }

    pub fn constant(c: Scalar) -> Self {
        Polynomial::new(c.field(), vec![c])
    }

    /// The monomial x.
    pub fn x(field: FieldSpec) -> Self {
        Polynomial::new(field, vec![Scalar::zero(&field), Scalar::one(&field)])
    }

    pub fn from_i64(field: FieldSpec, coeffs: &[i64]) -> Self {
        Polynomial::new(
            field,
            coeffs
                .iter()
                .map(|&c| Scalar::from_i64(&field, c))
                .collect(),
        )
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Scalar {
        self.coeffs
            .get(k)
            .cloned()
            .unwrap_or_else(|| Scalar::zero(&self.field))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Degree of a nonzero polynomial.
    pub fn degree(&self) -> usize {
        debug_assert!(!self.is_zero(), "degree of zero polynomial");
        self.coeffs.len() - 1
    }

    pub fn leading(&self) -> &Scalar {
        self.coeffs.last().expect("leading of zero polynomial")
    }

    pub fn is_monic(&self) -> bool {
        !self.is_zero() && self.leading().is_one()
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|k| self.coeff(k).add(&other.coeff(k))).collect();
        Polynomial::new(self.field, coeffs)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|k| self.coeff(k).sub(&other.coeff(k))).collect();
        Polynomial::new(self.field, coeffs)
    }

    pub fn neg(&self) -> Self {
        Polynomial::new(self.field, self.coeffs.iter().map(Scalar::neg).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero(self.field);
        }
        let mut out = vec![Scalar::zero(&self.field); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        Polynomial::new(self.field, out)
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        Polynomial::new(self.field, self.coeffs.iter().map(|a| c.mul(a)).collect())
    }

    /// Euclidean division; divisor must be nonzero.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        assert!(!divisor.is_zero(), "polynomial division by zero");
        if self.is_zero() || self.coeffs.len() < divisor.coeffs.len() {
            return (Polynomial::zero(self.field), self.clone());
        }
        let inv_lc = divisor.leading().inv().expect("nonzero leading");
        let dd = divisor.degree();
        let mut rem = self.coeffs.clone();
        let mut quo = vec![Scalar::zero(&self.field); rem.len() - dd];
        for k in (dd..rem.len()).rev() {
            let c = rem[k].mul(&inv_lc);
            if c.is_zero() {
                continue;
            }
            quo[k - dd] = c.clone();
            for (i, dc) in divisor.coeffs.iter().enumerate() {
                rem[k - dd + i] = rem[k - dd + i].sub(&c.mul(dc));
            }
        }
        (
            Polynomial::new(self.field, quo),
            Polynomial::new(self.field, rem),
        )
    }

    pub fn divides(&self, other: &Self) -> bool {
        if self.is_zero() {
            return other.is_zero();
        }
        other.div_rem(self).1.is_zero()
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        if a.is_zero() {
            a
        } else {
            a.monic()
        }
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&self.leading().inv().expect("nonzero leading"))
    }

    /// Formal derivative.
    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return Polynomial::zero(self.field);
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| Scalar::from_i64(&self.field, k as i64).mul(c))
            .collect();
        Polynomial::new(self.field, coeffs)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut out = String::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mut lit = c.to_string();
            let negative = lit.starts_with('-');
            if negative {
                lit.remove(0);
            }
            if !out.is_empty() {
                out.push(if negative { '-' } else { '+' });
            } else if negative {
                out.push('-');
            }
            let body = match k {
                0 => lit,
                1 if lit == "1" => "x".to_string(),
                1 => format!("{lit}*x"),
                _ if lit == "1" => format!("x^{k}"),
                _ => format!("{lit}*x^{k}"),
            };
            out.push_str(&body);
        }
        write!(f, "{out}")
    }
}

// ---------------------------------------------------------------------------
// Smith form of xI − M over F[x] and similarity
// ---------------------------------------------------------------------------

fn min_degree_entry(mat: &[Vec<Polynomial>], from: usize) -> Option<(usize, usize)> {
    let n = mat.len();
    let mut best: Option<(usize, usize, usize)> = None;
    for (i, row) in mat.iter().enumerate().take(n).skip(from) {
        for (j, e) in row.iter().enumerate().take(n).skip(from) {
            if e.is_zero() {
                continue;
            }
            let d = e.degree();
            if best.map_or(true, |(_, _, bd)| d < bd) {
                best = Some((i, j, d));
            }
        }
    }
    best.map(|(i, j, _)| (i, j))
}

/// Diagonalizes a square polynomial matrix by elementary row/column
/// operations, returning the monic diagonal in divisibility order.
fn smith_diagonal(mut mat: Vec<Vec<Polynomial>>) -> Vec<Polynomial> {
    let n = mat.len();
    let field = mat[0][0].field();
    for k in 0..n {
        'pivot: loop {
            let Some((pi, pj)) = min_degree_entry(&mat, k) else {
                break 'pivot;
            };
            mat.swap(k, pi);
            if pj != k {
                for row in mat.iter_mut() {
                    row.swap(k, pj);
                }
            }
            let mut dirty = false;
            for i in k + 1..n {
                if mat[i][k].is_zero() {
                    continue;
                }
                let (q, r) = mat[i][k].div_rem(&mat[k][k]);
                for j in k..n {
                    let t = q.mul(&mat[k][j]);
                    mat[i][j] = mat[i][j].sub(&t);
                }
                if !r.is_zero() {
                    dirty = true;
                }
            }
            for j in k + 1..n {
                if mat[k][j].is_zero() {
                    continue;
                }
                let (q, r) = mat[k][j].div_rem(&mat[k][k]);
                for row in mat.iter_mut().take(n).skip(k) {
                    let t = q.mul(&row[k]);
                    row[j] = row[j].sub(&t);
                }
                if !r.is_zero() {
                    dirty = true;
                }
            }
            if dirty {
                continue 'pivot;
            }
            // pivot row/column clear; enforce that the pivot divides the rest
            for i in k + 1..n {
                for j in k + 1..n {
                    if !mat[k][k].divides(&mat[i][j]) {
                        for col in k..n {
                            let t = mat[i][col].clone();
                            mat[k][col] = mat[k][col].add(&t);
                        }
                        continue 'pivot;
                    }
                }
            }
            break 'pivot;
        }
    }
    (0..n)
        .map(|k| {
            if mat[k][k].is_zero() {
                Polynomial::zero(field)
            } else {
                mat[k][k].monic()
            }
        })
        .collect()
}

/// The invariant-factor chain `f₁ | f₂ | … | f_k` of a square matrix: the
/// nonconstant diagonal entries of the Smith form of `xI − M`, each monic,
/// with product equal to the characteristic polynomial.
pub fn invariant_factors(m: &Matrix) -> Result<Vec<Polynomial>> {
    if m.rows() != m.cols() {
        return Err(Error::SizeMismatch);
    }
    let n = m.rows();
    let field = m.field();
    let x = Polynomial::x(field);
    let mut mat = vec![vec![Polynomial::zero(field); n]; n];
    for (i, row) in mat.iter_mut().enumerate() {
        for (j, slot) in row.iter_mut().enumerate() {
            let c = Polynomial::constant(m.at(i, j).neg());
            *slot = if i == j { x.add(&c) } else { c };
        }
    }
    let diag = smith_diagonal(mat);
    let factors: Vec<Polynomial> = diag
        .into_iter()
        .filter(|d| !d.is_zero() && d.degree() >= 1)
        .collect();
    // xI − M is nonsingular over F[x], so the chain multiplies to char(M).
    debug_assert!(factors.windows(2).all(|w| w[0].divides(&w[1])));
    Ok(factors)
}

/// Characteristic polynomial det(xI − M), computed as the product of the
/// invariant factors.
pub fn char_poly(m: &Matrix) -> Result<Polynomial> {
    let factors = invariant_factors(m)?;
    let mut acc = Polynomial::one(m.field());
    for f in &factors {
        acc = acc.mul(f);
    }
    Ok(acc)
}

/// Two square matrices over the same field are similar iff their
/// invariant-factor chains coincide.
pub fn is_similar(a: &Matrix, b: &Matrix) -> Result<bool> {
    if a.rows() != a.cols() || b.rows() != b.cols() || a.rows() != b.rows() {
        return Err(Error::SizeMismatch);
    }
    if a.field() != b.field() {
        return Err(Error::FieldMismatch);
    }
    Ok(invariant_factors(a)? == invariant_factors(b)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn q() -> FieldSpec {
        FieldSpec::rationals()
    }

    fn f(p: u64) -> FieldSpec {
        FieldSpec::prime_field(p).unwrap()
    }

    // Test-only oracle: det(xI − M) by Laplace expansion, independent of the
    // Smith-form path.
    fn char_poly_cofactor(m: &Matrix) -> Polynomial {
        let n = m.rows();
        let field = m.field();
        let x = Polynomial::x(field);
        let mut mat = vec![vec![Polynomial::zero(field); n]; n];
        for (i, row) in mat.iter_mut().enumerate() {
            for (j, slot) in row.iter_mut().enumerate() {
                let c = Polynomial::constant(m.at(i, j).neg());
                *slot = if i == j { x.add(&c) } else { c };
            }
        }
        det_poly(&mat)
    }

    fn det_poly(mat: &[Vec<Polynomial>]) -> Polynomial {
        let n = mat.len();
        let field = mat[0][0].field();
        if n == 1 {
            return mat[0][0].clone();
        }
        let mut acc = Polynomial::zero(field);
        for j in 0..n {
            if mat[0][j].is_zero() {
                continue;
            }
            let minor: Vec<Vec<Polynomial>> = (1..n)
                .map(|i| {
                    (0..n)
                        .filter(|&c| c != j)
                        .map(|c| mat[i][c].clone())
                        .collect()
                })
                .collect();
            let term = mat[0][j].mul(&det_poly(&minor));
            acc = if j % 2 == 0 {
                acc.add(&term)
            } else {
                acc.sub(&term)
            };
        }
        acc
    }

    fn random_matrix<R: Rng>(field: &FieldSpec, n: usize, rng: &mut R) -> Matrix {
        let entries = (0..n * n)
            .map(|_| Scalar::from_i64(field, rng.gen_range(-4i64..=4)))
            .collect();
        Matrix::new(*field, n, n, entries).unwrap()
    }

    fn random_invertible<R: Rng>(field: &FieldSpec, n: usize, rng: &mut R) -> Matrix {
        loop {
            let m = random_matrix(field, n, rng);
            if m.is_invertible() {
                return m;
            }
        }
    }

    #[test]
    fn zero_matrix_factors() {
        let m = Matrix::zero(q(), 2, 2);
        let fac = invariant_factors(&m).unwrap();
        let x = Polynomial::x(q());
        assert_eq!(fac, vec![x.clone(), x]);
    }

    #[test]
    fn companion_matrix_is_cyclic() {
        // companion of x^2 + 1: [[0, -1], [1, 0]]
        let m = Matrix::from_i64(q(), 2, 2, &[0, -1, 1, 0]);
        let fac = invariant_factors(&m).unwrap();
        assert_eq!(fac, vec![Polynomial::from_i64(q(), &[1, 0, 1])]);
    }

    // e12 over F_3: nonzero, square zero, cyclic with vector e2 => single factor x^2.
    #[test]
    fn nilpotent_jordan_block() {
        let m = Matrix::from_i64(f(3), 2, 2, &[0, 1, 0, 0]);
        let sq = m.mul(&m).unwrap();
        assert_eq!(sq, Matrix::zero(f(3), 2, 2));
        let fac = invariant_factors(&m).unwrap();
        assert_eq!(fac, vec![Polynomial::from_i64(f(3), &[0, 0, 1])]);
    }

    // e11 has chain [x^2 - x]; e12 has chain [x^2]; they are not similar.
    #[test]
    fn idempotent_vs_nilpotent() {
        let e11 = Matrix::from_i64(q(), 2, 2, &[1, 0, 0, 0]);
        let e12 = Matrix::from_i64(q(), 2, 2, &[0, 1, 0, 0]);
        assert_eq!(
            invariant_factors(&e11).unwrap(),
            vec![Polynomial::from_i64(q(), &[0, -1, 1])]
        );
        assert_eq!(
            invariant_factors(&e12).unwrap(),
            vec![Polynomial::from_i64(q(), &[0, 0, 1])]
        );
        assert!(!is_similar(&e11, &e12).unwrap());
    }

    #[test]
    fn conjugation_preserves_factors() {
        let field = f(5);
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        for _ in 0..20 {
            let m = random_matrix(&field, 3, &mut rng);
            let p = random_invertible(&field, 3, &mut rng);
            let conj = p.mul(&m).unwrap().mul(&p.inverse().unwrap()).unwrap();
            assert!(is_similar(&m, &conj).unwrap());
        }
    }

    #[test]
    fn similar_to_transpose_on_seeds() {
        let mut rng = ChaCha8Rng::seed_from_u64(77);
        for field in [q(), f(3)] {
            for n in 2..=4usize {
                for _ in 0..10 {
                    let m = random_matrix(&field, n, &mut rng);
                    assert!(is_similar(&m, &m.transpose()).unwrap());
                }
            }
        }
    }

    #[test]
    fn chain_divides_and_multiplies_to_char_poly() {
        let mut rng = ChaCha8Rng::seed_from_u64(123);
        for field in [q(), f(3), f(5)] {
            for n in 2..=4usize {
                for _ in 0..5 {
                    let m = random_matrix(&field, n, &mut rng);
                    let fac = invariant_factors(&m).unwrap();
                    for w in fac.windows(2) {
                        assert!(w[0].divides(&w[1]));
                    }
                    for fpoly in &fac {
                        assert!(fpoly.is_monic());
                    }
                    let prod = char_poly(&m).unwrap();
                    assert_eq!(prod, char_poly_cofactor(&m));
                }
            }
        }
    }

    #[test]
    fn similarity_is_an_equivalence_on_seeds() {
        let field = f(5);
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let ms: Vec<Matrix> = (0..6).map(|_| random_matrix(&field, 3, &mut rng)).collect();
        for a in &ms {
            assert!(is_similar(a, a).unwrap());
            for b in &ms {
                assert_eq!(is_similar(a, b).unwrap(), is_similar(b, a).unwrap());
                for c in &ms {
                    if is_similar(a, b).unwrap() && is_similar(b, c).unwrap() {
                        assert!(is_similar(a, c).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn size_mismatch_errors() {
        let a = Matrix::zero(q(), 2, 2);
        let b = Matrix::zero(q(), 3, 3);
        assert!(matches!(is_similar(&a, &b), Err(Error::SizeMismatch)));
    }
}
