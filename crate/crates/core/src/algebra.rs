//! Structure-constant algebras, standard constructors, and the derived
//! invariant subspaces every theorem check consumes.
//!
//! An [`Algebra`] is a validated multiplication table over a fixed basis:
//! associativity is checked exhaustively on basis triples at build time and
//! the unit (when one exists) is found by solving a linear system. Derived
//! subspaces — `[A,A]`, the center, the Jacobson radical, the derivation
//! space, and the multiplication algebra — are computed once and cached
//! behind a single-writer/many-reader contract.

use std::sync::OnceLock;

use crate::enumerate::{all_fp_vectors, finite_vector_count};
use crate::linalg::{
    kernel, solve, unit_vec, vec_add, vec_add_scaled, vec_is_zero, vec_scale, vec_sub, zero_vec,
    Matrix, Subspace,
};
use crate::maps::LinMap;
use crate::poly::Polynomial;
use crate::scalar::{FieldKind, FieldSpec, Scalar};
use crate::{Error, Result};

/// Default cap on `|F|^dim` for exhaustive radical enumeration.
pub const DEFAULT_ENUMERATION_BUDGET: u64 = 1 << 21;

// ---------------------------------------------------------------------------
// Elements
// ---------------------------------------------------------------------------

/// A member of an algebra, stored as its coordinate vector on the basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Element {
    pub coords: Vec<Scalar>,
}

impl Element {
    pub fn new(coords: Vec<Scalar>) -> Self {
        Element { coords }
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn is_zero(&self) -> bool {
        vec_is_zero(&self.coords)
    }

    pub fn add(&self, other: &Element) -> Element {
        Element::new(vec_add(&self.coords, &other.coords))
    }

    pub fn sub(&self, other: &Element) -> Element {
        Element::new(vec_sub(&self.coords, &other.coords))
    }

    pub fn scale(&self, c: &Scalar) -> Element {
        Element::new(vec_scale(c, &self.coords))
    }
}

// ---------------------------------------------------------------------------
// Tags
// ---------------------------------------------------------------------------

/// Construction metadata carried by the standard constructors.
#[derive(Debug, Clone, Default)]
pub struct AlgebraTags {
    /// Full matrix algebra M_s(F): the side s, enabling element ↔ matrix
    /// reshaping and similarity-orbit tests.
    pub matrix_side: Option<usize>,
    /// Upper-triangular algebra T_s(F): basis indices of the diagonal
    /// matrix units, a designated semisimple complement of the radical.
    pub triangular_diagonal: Option<Vec<usize>>,
    /// F[X]/(f) extension algebras remember their minimal polynomial.
    pub min_poly: Option<Polynomial>,
}

#[derive(Debug, Default)]
struct Caches {
    commutator: OnceLock<Subspace>,
    center: OnceLock<Subspace>,
    radical: OnceLock<Result<Subspace>>,
    mult_ops: OnceLock<Subspace>,
    derivations: OnceLock<Vec<LinMap>>,
}

impl Clone for Caches {
    fn clone(&self) -> Self {
        // caches restart empty; they are pure functions of the table
        Caches::default()
    }
}

// ---------------------------------------------------------------------------
// Algebra
// ---------------------------------------------------------------------------

/// A finite-dimensional associative algebra given by structure constants.
#[derive(Debug, Clone)]
pub struct Algebra {
    field: FieldSpec,
    dim: usize,
    labels: Vec<String>,
    /// `table[i][j]` = coordinates of `b_i · b_j`.
    table: Vec<Vec<Vec<Scalar>>>,
    unit: Option<Vec<Scalar>>,
    tags: AlgebraTags,
    caches: Caches,
}

impl Algebra {
    /// Validates a structure-constant table: shape, field agreement, and
    /// associativity on every basis triple; then solves for the unit.
    pub fn build(
        field: FieldSpec,
        labels: Vec<String>,
        table: Vec<Vec<Vec<Scalar>>>,
        tags: AlgebraTags,
    ) -> Result<Algebra> {
        let n = table.len();
        if n == 0 {
            return Err(Error::MalformedTable("empty table".into()));
        }
        if labels.len() != n {
            return Err(Error::MalformedTable(format!(
                "expected {n} labels, got {}",
                labels.len()
            )));
        }
        for row in &table {
            if row.len() != n {
                return Err(Error::MalformedTable("table is not n×n".into()));
            }
            for entry in row {
                if entry.len() != n {
                    return Err(Error::MalformedTable(
                        "product vector has wrong length".into(),
                    ));
                }
                if entry.iter().any(|s| s.field() != field) {
                    return Err(Error::FieldMismatch);
                }
            }
        }
        let mut alg = Algebra {
            field,
            dim: n,
            labels,
            table,
            unit: None,
            tags,
            caches: Caches::default(),
        };
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let lhs = alg.mul_vec_basis(&alg.table[i][j], k);
                    let rhs = alg.mul_basis_vec(i, &alg.table[j][k]);
                    if lhs != rhs {
                        return Err(Error::NotAssociative(i, j, k));
                    }
                }
            }
        }
        alg.unit = alg.solve_unit();
        Ok(alg)
    }

    fn solve_unit(&self) -> Option<Vec<Scalar>> {
        // e·b_i = b_i and b_i·e = b_i for all i; unknowns = coords of e
        let n = self.dim;
        let mut rows = Vec::with_capacity(2 * n * n);
        let mut rhs = Vec::with_capacity(2 * n * n);
        for i in 0..n {
            // e·b_i: coefficient of e_j is table[j][i]
            for k in 0..n {
                let row: Vec<Scalar> = (0..n).map(|j| self.table[j][i][k].clone()).collect();
                rows.push(row);
                rhs.push(if k == i {
                    Scalar::one(&self.field)
                } else {
                    Scalar::zero(&self.field)
                });
            }
            // b_i·e: coefficient of e_j is table[i][j]
            for k in 0..n {
                let row: Vec<Scalar> = (0..n).map(|j| self.table[i][j][k].clone()).collect();
                rows.push(row);
                rhs.push(if k == i {
                    Scalar::one(&self.field)
                } else {
                    Scalar::zero(&self.field)
                });
            }
        }
        let m = Matrix::from_rows(self.field, rows).expect("uniform rows");
        solve(&m, &rhs)
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn table(&self) -> &[Vec<Vec<Scalar>>] {
        &self.table
    }

    pub fn tags(&self) -> &AlgebraTags {
        &self.tags
    }

    pub fn unit_coords(&self) -> Option<&Vec<Scalar>> {
        self.unit.as_ref()
    }

    pub fn unit(&self) -> Result<Element> {
        self.unit
            .as_ref()
            .map(|u| Element::new(u.clone()))
            .ok_or(Error::NotUnital)
    }

    pub fn is_unital(&self) -> bool {
        self.unit.is_some()
    }

    pub fn zero_element(&self) -> Element {
        Element::new(zero_vec(&self.field, self.dim))
    }

    pub fn basis_element(&self, i: usize) -> Element {
        Element::new(unit_vec(&self.field, self.dim, i))
    }

    pub fn element_from_i64(&self, coords: &[i64]) -> Element {
        assert_eq!(coords.len(), self.dim);
        Element::new(
            coords
                .iter()
                .map(|&c| Scalar::from_i64(&self.field, c))
                .collect(),
        )
    }

    pub fn check_element(&self, x: &Element) -> Result<()> {
        if x.coords.len() != self.dim || x.coords.iter().any(|c| c.field() != self.field) {
            return Err(Error::AlgebraMismatch);
        }
        Ok(())
    }

    // -- products ----------------------------------------------------------

    /// `b_i · y` for a coordinate vector y (n² scalar operations).
    pub(crate) fn mul_basis_vec(&self, i: usize, y: &[Scalar]) -> Vec<Scalar> {
        let mut out = zero_vec(&self.field, self.dim);
        for (j, yj) in y.iter().enumerate() {
            if !yj.is_zero() {
                vec_add_scaled(&mut out, yj, &self.table[i][j]);
            }
        }
        out
    }

    /// `x · b_j` for a coordinate vector x (n² scalar operations).
    pub(crate) fn mul_vec_basis(&self, x: &[Scalar], j: usize) -> Vec<Scalar> {
        let mut out = zero_vec(&self.field, self.dim);
        for (i, xi) in x.iter().enumerate() {
            if !xi.is_zero() {
                vec_add_scaled(&mut out, xi, &self.table[i][j]);
            }
        }
        out
    }

    /// Full bilinear product of coordinate vectors.
    pub(crate) fn mul_vec(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        let mut out = zero_vec(&self.field, self.dim);
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                vec_add_scaled(&mut out, &xi.mul(yj), &self.table[i][j]);
            }
        }
        out
    }

    pub fn mul(&self, x: &Element, y: &Element) -> Result<Element> {
        self.check_element(x)?;
        self.check_element(y)?;
        Ok(Element::new(self.mul_vec(&x.coords, &y.coords)))
    }

    pub fn commutator(&self, x: &Element, y: &Element) -> Result<Element> {
        Ok(Element::new(vec_sub(
            &self.mul(x, y)?.coords,
            &self.mul(y, x)?.coords,
        )))
    }

    /// `x^k`; `x^0` is the unit (requires a unital algebra).
    pub fn power(&self, x: &Element, k: u32) -> Result<Element> {
        self.check_element(x)?;
        if k == 0 {
            return self.unit();
        }
        let mut acc = x.clone();
        for _ in 1..k {
            acc = Element::new(self.mul_vec(&acc.coords, &x.coords));
        }
        Ok(acc)
    }

    /// Operator matrix of left multiplication x ↦ a·x.
    pub fn left_mult_matrix(&self, a: &[Scalar]) -> Matrix {
        let n = self.dim;
        let mut m = Matrix::zero(self.field, n, n);
        for j in 0..n {
            let col = self.mul_vec_basis(a, j);
            for (i, v) in col.into_iter().enumerate() {
                m.set(i, j, v);
            }
        }
        m
    }

    /// Operator matrix of right multiplication x ↦ x·a.
    pub fn right_mult_matrix(&self, a: &[Scalar]) -> Matrix {
        let n = self.dim;
        let mut m = Matrix::zero(self.field, n, n);
        for j in 0..n {
            let col = self.mul_basis_vec(j, a);
            for (i, v) in col.into_iter().enumerate() {
                m.set(i, j, v);
            }
        }
        m
    }

    /// Nilpotency of a single element: some power up to dim+1 vanishes.
    pub fn element_is_nilpotent(&self, x: &[Scalar]) -> bool {
        let mut acc = x.to_vec();
        for _ in 0..=self.dim {
            if vec_is_zero(&acc) {
                return true;
            }
            acc = self.mul_vec(&acc, x);
        }
        false
    }

    // -- reshaping for matrix-tagged algebras -------------------------------

    pub fn matrix_side(&self) -> Result<usize> {
        self.tags.matrix_side.ok_or(Error::NotMatrixAlgebra)
    }

    /// View an element of a matrix-tagged algebra as an s×s matrix.
    pub fn reshape_to_matrix(&self, x: &Element) -> Result<Matrix> {
        let s = self.matrix_side()?;
        self.check_element(x)?;
        Matrix::new(self.field, s, s, x.coords.clone())
    }

    pub fn reshape_from_matrix(&self, m: &Matrix) -> Result<Element> {
        let s = self.matrix_side()?;
        if m.rows() != s || m.cols() != s || m.field() != self.field {
            return Err(Error::SizeMismatch);
        }
        Ok(Element::new(
            (0..s)
                .flat_map(|i| (0..s).map(move |j| m.at(i, j).clone()))
                .collect(),
        ))
    }

    // -- derived subspaces ---------------------------------------------------

    /// `[A,A]`: the span of all basis commutators.
    pub fn commutator_space(&self) -> &Subspace {
        self.caches.commutator.get_or_init(|| {
            let mut vecs = Vec::new();
            for i in 0..self.dim {
                for j in i + 1..self.dim {
                    vecs.push(vec_sub(&self.table[i][j], &self.table[j][i]));
                }
            }
            Subspace::span(self.field, self.dim, vecs)
        })
    }

    /// The center: kernel of the stacked operators `L_{b_i} − R_{b_i}`.
    pub fn center(&self) -> &Subspace {
        self.caches.center.get_or_init(|| {
            let n = self.dim;
            let mut rows = Vec::with_capacity(n * n);
            for i in 0..n {
                // [x, b_i] = 0: coefficient of x_j in coord k is (b_j b_i − b_i b_j)[k]
                for k in 0..n {
                    let row: Vec<Scalar> = (0..n)
                        .map(|j| self.table[j][i][k].sub(&self.table[i][j][k]))
                        .collect();
                    rows.push(row);
                }
            }
            let m = Matrix::from_rows(self.field, rows).expect("uniform rows");
            kernel(&m)
        })
    }

    /// Two-sided ideal generated by the given vectors: closure of their span
    /// under left/right multiplication by basis elements.
    pub fn ideal_generated_by(&self, gens: &[Vec<Scalar>]) -> Subspace {
        let mut current = Subspace::span(self.field, self.dim, gens.to_vec());
        loop {
            let mut vecs: Vec<Vec<Scalar>> = current.basis().to_vec();
            for v in current.basis() {
                for i in 0..self.dim {
                    vecs.push(self.mul_basis_vec(i, v));
                    vecs.push(self.mul_vec_basis(v, i));
                }
            }
            let next = Subspace::span(self.field, self.dim, vecs);
            if next.dim() == current.dim() {
                return next;
            }
            current = next;
        }
    }

    pub fn is_ideal(&self, s: &Subspace) -> Result<bool> {
        if s.ambient_dim() != self.dim || s.field() != self.field {
            return Err(Error::AmbientMismatch);
        }
        for v in s.basis() {
            for i in 0..self.dim {
                if !s.contains(&self.mul_basis_vec(i, v)) || !s.contains(&self.mul_vec_basis(v, i))
                {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Whether the ideal S is nilpotent: the chain S ⊇ S² ⊇ … hits 0 within
    /// dim(A) steps. Errors with `NotAnIdeal` on a non-ideal.
    pub fn is_nilpotent_ideal(&self, s: &Subspace) -> Result<bool> {
        if !self.is_ideal(s)? {
            return Err(Error::NotAnIdeal);
        }
        let mut power = s.clone();
        for _ in 0..self.dim {
            if power.is_zero() {
                return Ok(true);
            }
            let mut vecs = Vec::new();
            for u in power.basis() {
                for v in s.basis() {
                    vecs.push(self.mul_vec(u, v));
                }
            }
            power = Subspace::span(self.field, self.dim, vecs);
        }
        Ok(power.is_zero())
    }

    // -- radical -------------------------------------------------------------

    /// Jacobson radical via the given method; results are verified to be a
    /// nilpotent ideal with semisimple quotient.
    pub fn radical(&self, method: RadicalMethod, budget: u64) -> Result<Subspace> {
        let rad = self.radical_unverified(method, budget)?;
        if !self.is_nilpotent_ideal(&rad)? {
            panic!("radical verification failed: candidate is not a nilpotent ideal");
        }
        if !rad.is_zero() {
            let quot = Algebra::quotient(self, &rad)?;
            let qrad = quot.radical_unverified(method, budget)?;
            if !qrad.is_zero() {
                panic!("radical verification failed: quotient is not semisimple");
            }
        }
        Ok(rad)
    }

    /// Cached radical with method auto and the default budget.
    pub fn radical_auto(&self) -> Result<Subspace> {
        self.caches
            .radical
            .get_or_init(|| self.radical(RadicalMethod::Auto, DEFAULT_ENUMERATION_BUDGET))
            .clone()
    }

    fn trace_form_valid(&self) -> bool {
        let c = self.field.characteristic();
        c == 0 || c > self.dim as u64
    }

    fn radical_unverified(&self, method: RadicalMethod, budget: u64) -> Result<Subspace> {
        match method {
            RadicalMethod::TraceForm => {
                if !self.trace_form_valid() {
                    return Err(Error::NoValidMethod(format!(
                        "trace form requires char 0 or char > dim, got char {} and dim {}",
                        self.field.characteristic(),
                        self.dim
                    )));
                }
                Ok(self.radical_trace_form())
            }
            RadicalMethod::Brute => self.radical_brute(budget),
            RadicalMethod::Auto => {
                if self.trace_form_valid() {
                    return Ok(self.radical_trace_form());
                }
                match self.radical_brute(budget) {
                    Ok(r) => Ok(r),
                    Err(brute_err) => {
                        if let Some(rad) = self.radical_from_min_poly_certificate() {
                            return Ok(rad);
                        }
                        Err(brute_err)
                    }
                }
            }
        }
    }

    /// Dickson criterion: rad = {x : trace(L_{x·b_j}) = 0 for all j}, valid
    /// when char = 0 or char > dim.
    fn radical_trace_form(&self) -> Subspace {
        let n = self.dim;
        // trace of L_{b_m}
        let lm_trace: Vec<Scalar> = (0..n)
            .map(|m| {
                let mut t = Scalar::zero(&self.field);
                for k in 0..n {
                    t = t.add(&self.table[m][k][k]);
                }
                t
            })
            .collect();
        let mut g = Matrix::zero(self.field, n, n);
        for j in 0..n {
            for i in 0..n {
                let mut entry = Scalar::zero(&self.field);
                for (m, tm) in lm_trace.iter().enumerate() {
                    if !self.table[i][j][m].is_zero() {
                        entry = entry.add(&self.table[i][j][m].mul(tm));
                    }
                }
                g.set(j, i, entry);
            }
        }
        kernel(&g)
    }

    /// Exhaustive enumeration: the radical is the span of all elements whose
    /// generated ideal is nilpotent. Finite fields only, `|F|^n ≤ budget`.
    fn radical_brute(&self, budget: u64) -> Result<Subspace> {
        let FieldKind::PrimeField(p) = self.field.kind() else {
            return Err(Error::NoValidMethod(
                "exhaustive radical requires a finite base field".into(),
            ));
        };
        let total = finite_vector_count(&self.field, self.dim)
            .filter(|&t| t <= budget as u128)
            .ok_or(Error::BudgetExceeded {
                needed: finite_vector_count(&self.field, self.dim).unwrap_or(u128::MAX),
                budget,
            })?;
        let mut rad = Subspace::zero(self.field, self.dim);
        for x in all_fp_vectors(p, self.dim, total) {
            if vec_is_zero(&x) || rad.contains(&x) {
                continue;
            }
            // elements of the radical are nilpotent: cheap pre-filter
            if !self.element_is_nilpotent(&x) {
                continue;
            }
            let ideal = self.ideal_generated_by(std::slice::from_ref(&x));
            if self.is_nilpotent_ideal(&ideal).unwrap_or(false) {
                rad = rad
                    .sum(&Subspace::span(self.field, self.dim, vec![x]))
                    .expect("same ambient");
            }
        }
        Ok(rad)
    }

    /// Semisimplicity certificates for extension algebras F[X]/(f):
    /// gcd(f, f') = 1 certifies f squarefree (so rad = 0); the binomial
    /// X^p − c with p = char and c not a p-th power is irreducible (Capelli),
    /// so the algebra is a field and rad = 0.
    fn radical_from_min_poly_certificate(&self) -> Option<Subspace> {
        let f = self.tags.min_poly.as_ref()?;
        let g = f.gcd(&f.derivative());
        if g.is_one() {
            return Some(Subspace::zero(self.field, self.dim));
        }
        let p = self.field.characteristic();
        if p != 0 && f.degree() as u64 == p {
            let binomial = f
                .coeffs()
                .iter()
                .enumerate()
                .all(|(k, c)| k == 0 || k == f.degree() || c.is_zero());
            if binomial {
                let c = f.coeff(0).neg(); // f = X^p − c
                if !scalar_is_pth_power(&c, p) {
                    return Some(Subspace::zero(self.field, self.dim));
                }
            }
        }
        None
    }

    // -- derivation space ----------------------------------------------------

    /// Basis of the Lie algebra of derivations, canonicalized as RREF rows of
    /// flattened operator matrices.
    pub fn derivation_space(&self) -> &Vec<LinMap> {
        self.caches.derivations.get_or_init(|| {
            let n = self.dim;
            let zero = Scalar::zero(&self.field);
            // unknown (k,j) at flat index k*n + j: coefficient of b_k in δ(b_j)
            let mut rows = Vec::with_capacity(n * n * n);
            for i in 0..n {
                for j in 0..n {
                    for m in 0..n {
                        let mut row = vec![zero.clone(); n * n];
                        // δ(b_i b_j)[m]: unknown (m,k) gains table[i][j][k]
                        for k in 0..n {
                            let c = &self.table[i][j][k];
                            if !c.is_zero() {
                                row[m * n + k] = row[m * n + k].add(c);
                            }
                        }
                        // −(δ(b_i)·b_j)[m]: unknown (k,i) loses table[k][j][m]
                        for k in 0..n {
                            let c = &self.table[k][j][m];
                            if !c.is_zero() {
                                row[k * n + i] = row[k * n + i].sub(c);
                            }
                        }
                        // −(b_i·δ(b_j))[m]: unknown (k,j) loses table[i][k][m]
                        for k in 0..n {
                            let c = &self.table[i][k][m];
                            if !c.is_zero() {
                                row[k * n + j] = row[k * n + j].sub(c);
                            }
                        }
                        rows.push(row);
                    }
                }
            }
            let m = Matrix::from_rows(self.field, rows).expect("uniform rows");
            kernel(&m)
                .basis()
                .iter()
                .map(|flat| LinMap::from_flat(self, flat))
                .collect()
        })
    }

    /// Span of the operators L_{b_i}·R_{b_j} inside the n²-dimensional
    /// operator space (= the multiplication algebra for unital A).
    pub(crate) fn mult_operator_span(&self) -> &Subspace {
        self.caches.mult_ops.get_or_init(|| {
            let n = self.dim;
            let mut vecs = Vec::with_capacity(n * n);
            for i in 0..n {
                for j in 0..n {
                    // operator x ↦ b_i·x·b_j, flattened row-major
                    let mut flat = zero_vec(&self.field, n * n);
                    for k in 0..n {
                        let col = self.mul_vec_basis(&self.table[i][k], j);
                        for (r, v) in col.into_iter().enumerate() {
                            flat[r * n + k] = v;
                        }
                    }
                    vecs.push(flat);
                }
            }
            Subspace::span(self.field, n * n, vecs)
        })
    }

    /// The multiplication algebra M(A) as a subspace of operator space.
    /// Requires a unital algebra.
    pub fn multiplication_algebra(&self) -> Result<&Subspace> {
        if !self.is_unital() {
            return Err(Error::NotUnital);
        }
        Ok(self.mult_operator_span())
    }

    /// Designated complement subalgebra from construction tags (the diagonal
    /// span for upper-triangular algebras).
    pub fn designated_complement(&self) -> Option<Subspace> {
        let diag = self.tags.triangular_diagonal.as_ref()?;
        Some(Subspace::span(
            self.field,
            self.dim,
            diag.iter()
                .map(|&i| unit_vec(&self.field, self.dim, i))
                .collect(),
        ))
    }

    // -- standard constructors ------------------------------------------------

    /// Full matrix algebra M_s(F) on the matrix-unit basis, row-major.
    pub fn matrix_algebra(field: FieldSpec, s: usize) -> Algebra {
        assert!(s >= 1);
        let n = s * s;
        let idx = |k: usize, l: usize| k * s + l;
        let mut table = vec![vec![zero_vec(&field, n); n]; n];
        let mut labels = vec![String::new(); n];
        for k in 0..s {
            for l in 0..s {
                labels[idx(k, l)] = format!("e{}{}", k + 1, l + 1);
                for m in 0..s {
                    for r in 0..s {
                        if l == m {
                            table[idx(k, l)][idx(m, r)][idx(k, r)] = Scalar::one(&field);
                        }
                    }
                }
            }
        }
        let tags = AlgebraTags {
            matrix_side: Some(s),
            ..AlgebraTags::default()
        };
        Algebra::build(field, labels, table, tags).expect("matrix algebra is associative")
    }

    /// Upper-triangular matrix algebra T_s(F) on the units e_kl with k ≤ l.
    pub fn upper_triangular(field: FieldSpec, s: usize) -> Algebra {
        assert!(s >= 1);
        let mut pairs = Vec::new();
        for k in 0..s {
            for l in k..s {
                pairs.push((k, l));
            }
        }
        let n = pairs.len();
        let pos = |k: usize, l: usize| pairs.iter().position(|&p| p == (k, l)).unwrap();
        let mut table = vec![vec![zero_vec(&field, n); n]; n];
        let mut labels = Vec::with_capacity(n);
        for (a, &(k, l)) in pairs.iter().enumerate() {
            labels.push(format!("e{}{}", k + 1, l + 1));
            for (b, &(m, r)) in pairs.iter().enumerate() {
                if l == m {
                    table[a][b][pos(k, r)] = Scalar::one(&field);
                }
            }
        }
        let diagonal = (0..s).map(|k| pos(k, k)).collect();
        let tags = AlgebraTags {
            triangular_diagonal: Some(diagonal),
            ..AlgebraTags::default()
        };
        Algebra::build(field, labels, table, tags).expect("triangular algebra is associative")
    }

    /// Direct sum A ⊕ B with componentwise multiplication.
    pub fn direct_sum(a: &Algebra, b: &Algebra) -> Result<Algebra> {
        if a.field != b.field {
            return Err(Error::FieldMismatch);
        }
        let field = a.field;
        let n = a.dim + b.dim;
        let mut table = vec![vec![zero_vec(&field, n); n]; n];
        for i in 0..a.dim {
            for j in 0..a.dim {
                for k in 0..a.dim {
                    table[i][j][k] = a.table[i][j][k].clone();
                }
            }
        }
        for i in 0..b.dim {
            for j in 0..b.dim {
                for k in 0..b.dim {
                    table[a.dim + i][a.dim + j][a.dim + k] = b.table[i][j][k].clone();
                }
            }
        }
        let labels = a
            .labels
            .iter()
            .map(|l| format!("{l}#1"))
            .chain(b.labels.iter().map(|l| format!("{l}#2")))
            .collect();
        Algebra::build(field, labels, table, AlgebraTags::default())
    }

    /// Quotient A/I by a verified two-sided ideal, on the representative
    /// basis given by the non-pivot complement positions of I.
    pub fn quotient(a: &Algebra, ideal: &Subspace) -> Result<Algebra> {
        if !a.is_ideal(ideal)? {
            return Err(Error::NotAnIdeal);
        }
        let reps = ideal.complement_positions();
        let n = reps.len();
        if n == 0 {
            return Err(Error::MalformedTable(
                "quotient by the whole algebra is empty".into(),
            ));
        }
        let mut table = vec![vec![zero_vec(&a.field, n); n]; n];
        for (qi, &fi) in reps.iter().enumerate() {
            for (qj, &fj) in reps.iter().enumerate() {
                table[qi][qj] = ideal.quotient_coords(&a.table[fi][fj]);
            }
        }
        let labels = reps.iter().map(|&i| a.labels[i].clone()).collect();
        Algebra::build(a.field, labels, table, AlgebraTags::default())
    }

    /// F[X]/(f) for a monic polynomial f of degree ≥ 1, on the basis
    /// 1, a, …, a^(d−1) where a is the class of X.
    pub fn field_extension(f: &Polynomial) -> Result<Algebra> {
        if f.is_zero() || !f.is_monic() || f.degree() < 1 {
            return Err(Error::NonMonic);
        }
        let field = f.field();
        let d = f.degree();
        // powers of the class of X reduced mod f, up to degree 2d−2
        let mut powers: Vec<Vec<Scalar>> = Vec::with_capacity(2 * d - 1);
        let mut current = Polynomial::one(field);
        for _ in 0..(2 * d - 1) {
            let reduced = current.div_rem(f).1;
            let coords = (0..d).map(|k| reduced.coeff(k)).collect();
            powers.push(coords);
            current = current.mul(&Polynomial::x(field));
        }
        let table = (0..d)
            .map(|i| (0..d).map(|j| powers[i + j].clone()).collect())
            .collect();
        let labels = (0..d)
            .map(|k| match k {
                0 => "1".to_string(),
                1 => "a".to_string(),
                _ => format!("a^{k}"),
            })
            .collect();
        let tags = AlgebraTags {
            min_poly: Some(f.clone()),
            ..AlgebraTags::default()
        };
        Algebra::build(field, labels, table, tags)
    }
}

/// How to compute the Jacobson radical.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RadicalMethod {
    /// Trace form when valid, otherwise exhaustive enumeration, otherwise a
    /// minimal-polynomial certificate for extension algebras.
    Auto,
    /// Dickson trace-form criterion (char 0 or char > dim only).
    TraceForm,
    /// Exhaustive enumeration over a finite field within budget.
    Brute,
}

/// Whether c has a p-th root in its field. In 𝔽_p everything does
/// (Frobenius is onto); in 𝔽_p(t) a reduced fraction is a p-th power iff
/// both polynomials only use exponents divisible by p.
fn scalar_is_pth_power(c: &Scalar, p: u64) -> bool {
    match c.field().kind() {
        FieldKind::Rationals => true,
        FieldKind::PrimeField(_) => true,
        FieldKind::RationalFunctions(_) => {
            let probe = crate::scalar::format_scalar(c);
            // canonical form: inspect exponents of num and den
            fpt_exponents_divisible(&probe, p, c)
        }
    }
}

fn fpt_exponents_divisible(_literal: &str, p: u64, c: &Scalar) -> bool {
    c.fpt_parts().is_some_and(|(num, den)| {
        let ok = |poly: &crate::scalar::FpPoly| {
            poly.coeffs
                .iter()
                .enumerate()
                .all(|(k, &coef)| coef == 0 || k as u64 % p == 0)
        };
        ok(num) && ok(den)
    })
}
