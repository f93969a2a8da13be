//! Deciding conditions of the form "P(x) ∈ V for all x" for the trace-style
//! polynomial expressions, in two modes:
//!
//! - **formal**: every fully symmetrized multidegree coefficient of the
//!   expression is tested for membership in the target. A formal PASS implies
//!   the pointwise condition over *every* field; the converse holds iff
//!   char = 0 or |F| > degree, and the verdict records that note.
//! - **pointwise**: the expression is evaluated at every element of a small
//!   finite-field algebra (exhaustive), or at seeded samples otherwise.
//!
//! Symmetrized coefficients are computed without dividing by multinomial
//! factors, so no characteristic assumptions enter the engine itself.

use crate::algebra::{Algebra, Element};
use crate::enumerate::{all_fp_vectors, finite_vector_count, random_coords};
use crate::linalg::{vec_sub, Subspace};
use crate::maps::LinMap;
use crate::scalar::{FieldKind, Scalar};
use crate::{Error, Result};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Default cap on the number of evaluated points in exhaustive mode.
pub const DEFAULT_BUDGET: u64 = 1 << 21;
/// Default number of seeded samples in sampled mode.
pub const DEFAULT_SAMPLES: u64 = 256;

/// The five supported identity shapes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IdentityKind {
    /// x·D(x)·x ∈ target (degree 3).
    Xdxx,
    /// T(x)³ − x³ ∈ target (degree 3).
    CubeDiff,
    /// T(x)² − x² ∈ target (degree 2).
    SquareDiff,
    /// T(x⁴) − T(x)⁴ ∈ target (degree 4, target defaults to rad(A)).
    QuarticDiff,
    /// T(x)²T(y) − x²y ∈ target (degree 3 in two variables).
    H1,
}

impl IdentityKind {
    pub fn degree(self) -> usize {
        match self {
            IdentityKind::Xdxx | IdentityKind::CubeDiff | IdentityKind::H1 => 3,
            IdentityKind::SquareDiff => 2,
            IdentityKind::QuarticDiff => 4,
        }
    }

    /// Number of symmetrized x-slots (H1 keeps y independent).
    fn x_slots(self) -> usize {
        match self {
            IdentityKind::Xdxx | IdentityKind::CubeDiff => 3,
            IdentityKind::SquareDiff | IdentityKind::H1 => 2,
            IdentityKind::QuarticDiff => 4,
        }
    }

    fn has_y(self) -> bool {
        matches!(self, IdentityKind::H1)
    }

    pub fn cli_token(self) -> &'static str {
        match self {
            IdentityKind::Xdxx => "xdxx",
            IdentityKind::CubeDiff => "cube",
            IdentityKind::SquareDiff => "square",
            IdentityKind::QuarticDiff => "quartic-rad",
            IdentityKind::H1 => "h1",
        }
    }

    pub fn from_cli_token(token: &str) -> Option<IdentityKind> {
        Some(match token {
            "xdxx" => IdentityKind::Xdxx,
            "cube" => IdentityKind::CubeDiff,
            "square" => IdentityKind::SquareDiff,
            "quartic-rad" => IdentityKind::QuarticDiff,
            "h1" => IdentityKind::H1,
            _ => return None,
        })
    }
}

/// An identity check bound to a map and a target subspace.
#[derive(Debug, Clone)]
pub struct IdentitySpec {
    pub kind: IdentityKind,
    pub map: LinMap,
    pub target: Subspace,
}

impl IdentitySpec {
    /// Builds the identity check with the default target: `[A,A]` for all kinds except
    /// `QuarticDiff`, which targets rad(A) (computed with method auto).
    pub fn new(alg: &Algebra, kind: IdentityKind, map: LinMap) -> Result<IdentitySpec> {
        if map.dim() != alg.dim() {
            return Err(Error::AlgebraMismatch);
        }
        let target = match kind {
            IdentityKind::QuarticDiff => alg.radical_auto()?,
            _ => alg.commutator_space().clone(),
        };
        Ok(IdentitySpec { kind, map, target })
    }

    pub fn with_target(kind: IdentityKind, map: LinMap, target: Subspace) -> IdentitySpec {
        IdentitySpec { kind, map, target }
    }

    /// Evaluates the expression at a point (pair for H1).
    pub fn eval_at(&self, alg: &Algebra, x: &[Scalar], y: Option<&[Scalar]>) -> Vec<Scalar> {
        let t = &self.map;
        match self.kind {
            IdentityKind::Xdxx => {
                let dx = t.apply_vec(x);
                alg.mul_vec(&alg.mul_vec(x, &dx), x)
            }
            IdentityKind::CubeDiff => {
                let tx = t.apply_vec(x);
                let tx3 = alg.mul_vec(&alg.mul_vec(&tx, &tx), &tx);
                let x3 = alg.mul_vec(&alg.mul_vec(x, x), x);
                vec_sub(&tx3, &x3)
            }
            IdentityKind::SquareDiff => {
                let tx = t.apply_vec(x);
                vec_sub(&alg.mul_vec(&tx, &tx), &alg.mul_vec(x, x))
            }
            IdentityKind::QuarticDiff => {
                let x2 = alg.mul_vec(x, x);
                let x4 = alg.mul_vec(&x2, &x2);
                let tx = t.apply_vec(x);
                let tx2 = alg.mul_vec(&tx, &tx);
                vec_sub(&t.apply_vec(&x4), &alg.mul_vec(&tx2, &tx2))
            }
            IdentityKind::H1 => {
                let y = y.expect("H1 needs a second argument");
                let tx = t.apply_vec(x);
                let ty = t.apply_vec(y);
                let lhs = alg.mul_vec(&alg.mul_vec(&tx, &tx), &ty);
                let rhs = alg.mul_vec(&alg.mul_vec(x, x), y);
                vec_sub(&lhs, &rhs)
            }
        }
    }

    /// Multilinear evaluation with basis indices in the slots; x-slots come
    /// first, the H1 y-slot last.
    fn eval_basis_slots(&self, alg: &Algebra, xs: &[usize], y: Option<usize>) -> Vec<Scalar> {
        let t = &self.map;
        let col = |j: usize| &t.columns()[j];
        match self.kind {
            IdentityKind::Xdxx => {
                // b_u · D(b_v) · b_w
                let u_dv = alg.mul_basis_vec(xs[0], col(xs[1]));
                alg.mul_vec_basis(&u_dv, xs[2])
            }
            IdentityKind::CubeDiff => {
                let t_part = alg.mul_vec(&alg.mul_vec(col(xs[0]), col(xs[1])), col(xs[2]));
                let plain = alg.mul_basis_vec(xs[0], &alg.table()[xs[1]][xs[2]]);
                vec_sub(&t_part, &plain)
            }
            IdentityKind::SquareDiff => {
                let t_part = alg.mul_vec(col(xs[0]), col(xs[1]));
                vec_sub(&t_part, &alg.table()[xs[0]][xs[1]])
            }
            IdentityKind::QuarticDiff => {
                let prod3 = alg.mul_vec_basis(&alg.table()[xs[0]][xs[1]], xs[2]);
                let prod4 = alg.mul_vec_basis(&prod3, xs[3]);
                let t_of_prod = t.apply_vec(&prod4);
                let t_prod = alg.mul_vec(
                    &alg.mul_vec(&alg.mul_vec(col(xs[0]), col(xs[1])), col(xs[2])),
                    col(xs[3]),
                );
                vec_sub(&t_of_prod, &t_prod)
            }
            IdentityKind::H1 => {
                let w = y.expect("H1 needs a y slot");
                let t_part = alg.mul_vec(&alg.mul_vec(col(xs[0]), col(xs[1])), col(w));
                let plain = alg.mul_basis_vec(xs[0], &alg.table()[xs[1]][w]);
                vec_sub(&t_part, &plain)
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Verdicts
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    UndecidedSampled,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Formal,
    PointwiseExhaustive,
    PointwiseSampled,
}

/// Index data for a failing symmetrized coefficient.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoeffWitness {
    /// Non-decreasing basis indices of the x-multiset.
    pub x_multiset: Vec<usize>,
    /// Basis index of the independent H1 slot, when present.
    pub y_index: Option<usize>,
}

#[derive(Debug, Clone)]
pub struct Verdict {
    pub status: Status,
    pub mode: Mode,
    /// Failing point (pair for H1).
    pub witness: Option<Vec<Element>>,
    pub coefficient_witness: Option<CoeffWitness>,
    /// Whether a formal verdict is provably equivalent to the pointwise one
    /// for this field and degree, with the reason.
    pub equivalence_note: String,
    pub checked_count: u64,
    pub budget: Option<u64>,
    pub seed: Option<u64>,
}

fn equivalence_note(alg: &Algebra, degree: usize) -> (bool, String) {
    let c = alg.field().characteristic();
    let equivalent = match alg.field().kind() {
        FieldKind::PrimeField(p) => p > degree as u64,
        _ => c == 0 || true, // infinite fields: polynomial functions determine coefficients
    };
    let note = if equivalent {
        format!(
            "formal and pointwise verdicts are equivalent here (field larger than degree {degree})"
        )
    } else {
        format!("formal PASS implies pointwise, but not conversely: |F| = {c} ≤ degree {degree}")
    };
    (equivalent, note)
}

// ---------------------------------------------------------------------------
// Formal mode
// ---------------------------------------------------------------------------

/// Advances `v` to the next non-decreasing tuple over 0..n; false at the end.
fn next_multiset(v: &mut [usize], n: usize) -> bool {
    for i in (0..v.len()).rev() {
        if v[i] + 1 < n {
            let next = v[i] + 1;
            for slot in v.iter_mut().skip(i) {
                *slot = next;
            }
            return true;
        }
    }
    false
}

/// Advances to the next lexicographic permutation; false when exhausted.
fn next_permutation(v: &mut [usize]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// Sum of the expression over all distinct arrangements of the multiset in
/// the x-slots.
fn symmetrized_coefficient(
    alg: &Algebra,
    spec: &IdentitySpec,
    multiset: &[usize],
    y: Option<usize>,
) -> Vec<Scalar> {
    let mut arrangement = multiset.to_vec();
    let mut acc = spec.eval_basis_slots(alg, &arrangement, y);
    while next_permutation(&mut arrangement) {
        let term = spec.eval_basis_slots(alg, &arrangement, y);
        acc = crate::linalg::vec_add(&acc, &term);
    }
    acc
}

/// Formal check: every symmetrized multidegree coefficient must lie in the
/// target. PASS implies the pointwise condition over every base field.
pub fn check_formal(alg: &Algebra, spec: &IdentitySpec) -> Verdict {
    let (_, note) = equivalence_note(alg, spec.kind.degree());
    let n = alg.dim();
    let d = spec.kind.x_slots();
    let mut checked = 0u64;
    let mut multiset = vec![0usize; d];
    loop {
        let y_range: Vec<Option<usize>> = if spec.kind.has_y() {
            (0..n).map(Some).collect()
        } else {
            vec![None]
        };
        for y in y_range {
            let coeff = symmetrized_coefficient(alg, spec, &multiset, y);
            checked += 1;
            if !spec.target.contains(&coeff) {
                return Verdict {
                    status: Status::Fail,
                    mode: Mode::Formal,
                    witness: None,
                    coefficient_witness: Some(CoeffWitness {
                        x_multiset: multiset.clone(),
                        y_index: y,
                    }),
                    equivalence_note: note,
                    checked_count: checked,
                    budget: None,
                    seed: None,
                };
            }
        }
        if !next_multiset(&mut multiset, n) {
            break;
        }
    }
    Verdict {
        status: Status::Pass,
        mode: Mode::Formal,
        witness: None,
        coefficient_witness: None,
        equivalence_note: note,
        checked_count: checked,
        budget: None,
        seed: None,
    }
}

/// Formal check of the auxiliary degree-2 condition x·D(x) ∈ target on the
/// bilinear coefficients b_u·D(b_v) + b_v·D(b_u).
pub(crate) fn check_formal_xdx(alg: &Algebra, map: &LinMap, target: &Subspace) -> Verdict {
    let (_, note) = equivalence_note(alg, 2);
    let n = alg.dim();
    let mut checked = 0u64;
    for i in 0..n {
        for j in i..n {
            let a = alg.mul_basis_vec(i, &map.columns()[j]);
            let b = alg.mul_basis_vec(j, &map.columns()[i]);
            let coeff = if i == j {
                a
            } else {
                crate::linalg::vec_add(&a, &b)
            };
            checked += 1;
            if !target.contains(&coeff) {
                return Verdict {
                    status: Status::Fail,
                    mode: Mode::Formal,
                    witness: None,
                    coefficient_witness: Some(CoeffWitness {
                        x_multiset: vec![i, j],
                        y_index: None,
                    }),
                    equivalence_note: note,
                    checked_count: checked,
                    budget: None,
                    seed: None,
                };
            }
        }
    }
    Verdict {
        status: Status::Pass,
        mode: Mode::Formal,
        witness: None,
        coefficient_witness: None,
        equivalence_note: note,
        checked_count: checked,
        budget: None,
        seed: None,
    }
}

// ---------------------------------------------------------------------------
// Pointwise mode
// ---------------------------------------------------------------------------

/// Number of points an exhaustive run would evaluate (pairs for H1).
fn exhaustive_point_count(alg: &Algebra, kind: IdentityKind) -> Option<u128> {
    let single = finite_vector_count(&alg.field(), alg.dim())?;
    if kind.has_y() {
        single.checked_mul(single)
    } else {
        Some(single)
    }
}

/// Pointwise check: exhaustive when the finite enumeration fits the budget,
/// seeded sampling otherwise. A FAIL is always definitive and carries a
/// witness; a sampled run without failures is UNDECIDED_SAMPLED.
pub fn check_pointwise(alg: &Algebra, spec: &IdentitySpec, budget: u64, seed: u64) -> Verdict {
    match exhaustive_point_count(alg, spec.kind) {
        Some(total) if total <= budget as u128 => {
            check_pointwise_exhaustive(alg, spec, budget).expect("within budget")
        }
        _ => check_pointwise_sampled(alg, spec, DEFAULT_SAMPLES, budget, seed),
    }
}

/// Exhaustive pointwise check; errors with BUDGET_EXCEEDED when the
/// enumeration does not fit.
pub fn check_pointwise_exhaustive(
    alg: &Algebra,
    spec: &IdentitySpec,
    budget: u64,
) -> Result<Verdict> {
    let (_, note) = equivalence_note(alg, spec.kind.degree());
    let total = exhaustive_point_count(alg, spec.kind).ok_or(Error::BudgetExceeded {
        needed: u128::MAX,
        budget,
    })?;
    if total > budget as u128 {
        return Err(Error::BudgetExceeded {
            needed: total,
            budget,
        });
    }
    let FieldKind::PrimeField(p) = alg.field().kind() else {
        unreachable!("finite count implies prime field");
    };
    let n = alg.dim();
    let singles = finite_vector_count(&alg.field(), n).expect("finite");
    let mut checked = 0u64;
    for x in all_fp_vectors(p, n, singles) {
        let y_iter: Box<dyn Iterator<Item = Option<Vec<Scalar>>>> = if spec.kind.has_y() {
            Box::new(all_fp_vectors(p, n, singles).map(Some))
        } else {
            Box::new(std::iter::once(None))
        };
        for y in y_iter {
            checked += 1;
            let value = spec.eval_at(alg, &x, y.as_deref());
            if !spec.target.contains(&value) {
                let mut witness = vec![Element::new(x.clone())];
                if let Some(yv) = y {
                    witness.push(Element::new(yv));
                }
                return Ok(Verdict {
                    status: Status::Fail,
                    mode: Mode::PointwiseExhaustive,
                    witness: Some(witness),
                    coefficient_witness: None,
                    equivalence_note: note,
                    checked_count: checked,
                    budget: Some(budget),
                    seed: None,
                });
            }
        }
    }
    Ok(Verdict {
        status: Status::Pass,
        mode: Mode::PointwiseExhaustive,
        witness: None,
        coefficient_witness: None,
        equivalence_note: note,
        checked_count: checked,
        budget: Some(budget),
        seed: None,
    })
}

fn check_pointwise_sampled(
    alg: &Algebra,
    spec: &IdentitySpec,
    samples: u64,
    budget: u64,
    seed: u64,
) -> Verdict {
    let (_, note) = equivalence_note(alg, spec.kind.degree());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let field = alg.field();
    let n = alg.dim();
    for i in 0..samples {
        let x = random_coords(&field, n, &mut rng);
        let y = if spec.kind.has_y() {
            Some(random_coords(&field, n, &mut rng))
        } else {
            None
        };
        let value = spec.eval_at(alg, &x, y.as_deref());
        if !spec.target.contains(&value) {
            let mut witness = vec![Element::new(x)];
            if let Some(yv) = y {
                witness.push(Element::new(yv));
            }
            return Verdict {
                status: Status::Fail,
                mode: Mode::PointwiseSampled,
                witness: Some(witness),
                coefficient_witness: None,
                equivalence_note: note,
                checked_count: i + 1,
                budget: Some(budget),
                seed: Some(seed),
            };
        }
    }
    Verdict {
        status: Status::UndecidedSampled,
        mode: Mode::PointwiseSampled,
        witness: None,
        coefficient_witness: None,
        equivalence_note: note,
        checked_count: samples,
        budget: Some(budget),
        seed: Some(seed),
    }
}
