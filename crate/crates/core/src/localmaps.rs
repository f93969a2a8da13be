//! Pointwise orbit-membership tests and whole-map certification for local
//! derivations, local inner derivations, local inner automorphisms, and
//! local Jordan automorphisms.
//!
//! Orbit tests are exact: the derivation orbit of x is the subspace
//! {δ(x) : δ ∈ Der(A)}, the inner-derivation orbit is the image of
//! a ↦ [a,x], and on full matrix algebras both automorphism orbits coincide
//! with the similarity class of x (every matrix is similar to its transpose,
//! so conjugation orbits and Jordan orbits agree there).

use crate::algebra::{Algebra, Element};
use crate::enumerate::{all_fp_vectors, finite_vector_count, random_coords};
use crate::identities::Status;
use crate::linalg::{solve, vec_add, Matrix, Subspace};
use crate::maps::{classify, LinMap, MapProfile};
use crate::poly::{invariant_factors, is_similar};
use crate::scalar::FieldKind;
use crate::{Error, Result};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Default number of points in sampled certification.
pub const DEFAULT_SAMPLES: u64 = 256;

/// Which family of point-witnesses a local map must admit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LocalKind {
    Derivation,
    InnerDerivation,
    InnerAutomorphism,
    JordanAutomorphism,
}

impl LocalKind {
    pub fn cli_token(self) -> &'static str {
        match self {
            LocalKind::Derivation => "derivation",
            LocalKind::InnerDerivation => "inner-derivation",
            LocalKind::InnerAutomorphism => "inner-automorphism",
            LocalKind::JordanAutomorphism => "jordan-automorphism",
        }
    }

    pub fn from_cli_token(token: &str) -> Option<LocalKind> {
        Some(match token {
            "derivation" => LocalKind::Derivation,
            "inner-derivation" => LocalKind::InnerDerivation,
            "inner-automorphism" => LocalKind::InnerAutomorphism,
            "jordan-automorphism" => LocalKind::JordanAutomorphism,
            _ => return None,
        })
    }

    fn needs_matrix_tag(self) -> bool {
        matches!(
            self,
            LocalKind::InnerAutomorphism | LocalKind::JordanAutomorphism
        )
    }
}

/// Per-point witness backing a positive orbit test.
#[derive(Debug, Clone)]
pub enum WitnessData {
    /// Coefficients on the derivation-space basis.
    DerivationCoords(Vec<crate::scalar::Scalar>),
    /// Element a with [a, x] = T(x).
    InnerElement(Element),
    /// Shared invariant-factor chain of x and T(x).
    SimilarityCertificate(Vec<String>),
}

/// Result of certifying a map as a local map of the given kind.
#[derive(Debug, Clone)]
pub struct Certification {
    pub status: Status,
    pub checked_count: u64,
    /// Point at which no local witness exists (FAIL only).
    pub witness: Option<Element>,
    /// Per-point witness data for the audited points (the basis elements).
    pub audited: Vec<(Element, Option<WitnessData>)>,
    pub budget: u64,
    pub seed: Option<u64>,
}

/// Does T(x) lie in the kind-orbit of x? Returns the witness data backing a
/// positive answer.
pub fn orbit_membership(
    alg: &Algebra,
    kind: LocalKind,
    t: &LinMap,
    x: &Element,
) -> Result<(bool, Option<WitnessData>)> {
    alg.check_element(x)?;
    if kind.needs_matrix_tag() && alg.tags().matrix_side.is_none() {
        return Err(Error::UnsupportedAlgebra);
    }
    let tx = t.apply(x);
    match kind {
        LocalKind::Derivation => {
            let ders = alg.derivation_space();
            if ders.is_empty() {
                return Ok((tx.is_zero(), None));
            }
            // images δ_i(x) as columns; solve for coefficients
            let n = alg.dim();
            let mut m = Matrix::zero(alg.field(), n, ders.len());
            for (j, d) in ders.iter().enumerate() {
                for (i, v) in d.apply_vec(&x.coords).into_iter().enumerate() {
                    m.set(i, j, v);
                }
            }
            match solve(&m, &tx.coords) {
                Some(coeffs) => Ok((true, Some(WitnessData::DerivationCoords(coeffs)))),
                None => Ok((false, None)),
            }
        }
        LocalKind::InnerDerivation => {
            // [a, x] = T(x): coefficient matrix R_x − L_x acting on a
            let system = alg
                .right_mult_matrix(&x.coords)
                .sub(&alg.left_mult_matrix(&x.coords))
                .expect("same size");
            match solve(&system, &tx.coords) {
                Some(a) => Ok((true, Some(WitnessData::InnerElement(Element::new(a))))),
                None => Ok((false, None)),
            }
        }
        LocalKind::InnerAutomorphism | LocalKind::JordanAutomorphism => {
            let mx = alg.reshape_to_matrix(x)?;
            let mtx = alg.reshape_to_matrix(&tx)?;
            if is_similar(&mx, &mtx)? {
                let chain = invariant_factors(&mx)?
                    .iter()
                    .map(|f| f.to_string())
                    .collect();
                Ok((true, Some(WitnessData::SimilarityCertificate(chain))))
            } else {
                Ok((false, None))
            }
        }
    }
}

/// Certifies T as a local map of the given kind: exhaustively over small
/// finite-field algebras, otherwise on a deterministic-then-seeded sample
/// plan (all basis vectors, all pairwise basis sums, then random points).
pub fn certify_local(
    alg: &Algebra,
    kind: LocalKind,
    t: &LinMap,
    budget: u64,
    seed: u64,
) -> Result<Certification> {
    if kind.needs_matrix_tag() && alg.tags().matrix_side.is_none() {
        return Err(Error::UnsupportedAlgebra);
    }
    let audited = audit_basis_points(alg, kind, t)?;
    match finite_vector_count(&alg.field(), alg.dim()) {
        Some(total) if total <= budget as u128 => {
            let FieldKind::PrimeField(p) = alg.field().kind() else {
                unreachable!()
            };
            let mut checked = 0u64;
            for coords in all_fp_vectors(p, alg.dim(), total) {
                checked += 1;
                let x = Element::new(coords);
                let (ok, _) = orbit_membership(alg, kind, t, &x)?;
                if !ok {
                    return Ok(Certification {
                        status: Status::Fail,
                        checked_count: checked,
                        witness: Some(x),
                        audited,
                        budget,
                        seed: None,
                    });
                }
            }
            Ok(Certification {
                status: Status::Pass,
                checked_count: checked,
                witness: None,
                audited,
                budget,
                seed: None,
            })
        }
        _ => {
            // deterministic plan first: basis vectors and pairwise sums
            let n = alg.dim();
            let mut plan: Vec<Element> = (0..n).map(|i| alg.basis_element(i)).collect();
            for i in 0..n {
                for j in i + 1..n {
                    plan.push(Element::new(vec_add(
                        &alg.basis_element(i).coords,
                        &alg.basis_element(j).coords,
                    )));
                }
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            while (plan.len() as u64) < DEFAULT_SAMPLES {
                plan.push(Element::new(random_coords(&alg.field(), n, &mut rng)));
            }
            let mut checked = 0u64;
            for x in plan {
                checked += 1;
                let (ok, _) = orbit_membership(alg, kind, t, &x)?;
                if !ok {
                    return Ok(Certification {
                        status: Status::Fail,
                        checked_count: checked,
                        witness: Some(x),
                        audited,
                        budget,
                        seed: Some(seed),
                    });
                }
            }
            Ok(Certification {
                status: Status::UndecidedSampled,
                checked_count: checked,
                witness: None,
                audited,
                budget,
                seed: Some(seed),
            })
        }
    }
}

fn audit_basis_points(
    alg: &Algebra,
    kind: LocalKind,
    t: &LinMap,
) -> Result<Vec<(Element, Option<WitnessData>)>> {
    (0..alg.dim())
        .map(|i| {
            let x = alg.basis_element(i);
            let (_, data) = orbit_membership(alg, kind, t, &x)?;
            Ok((x, data))
        })
        .collect()
}

/// Outcome of the local-Jordan-automorphism experiment on a matrix algebra
/// over a small finite field.
#[derive(Debug, Clone)]
pub struct A2Report {
    pub certification: Certification,
    pub profile: MapProfile,
    /// True when the experimental outcome contradicts the theorem: a
    /// certified local Jordan automorphism must classify as a Jordan
    /// automorphism inside M(A), and a genuine Jordan automorphism can never
    /// fail certification. Any anomaly indicates an implementation bug.
    pub anomaly: bool,
}

/// Runs exhaustive local-Jordan certification and cross-checks the verdict
/// against the global classification.
pub fn experiment_a2(alg: &Algebra, t: &LinMap, budget: u64) -> Result<A2Report> {
    if alg.tags().matrix_side.is_none() {
        return Err(Error::UnsupportedAlgebra);
    }
    let total = finite_vector_count(&alg.field(), alg.dim()).ok_or(Error::BudgetExceeded {
        needed: u128::MAX,
        budget,
    })?;
    if total > budget as u128 {
        return Err(Error::BudgetExceeded {
            needed: total,
            budget,
        });
    }
    let certification = certify_local(alg, LocalKind::JordanAutomorphism, t, budget, 0)?;
    let profile = classify(alg, t);
    let anomaly = match certification.status {
        Status::Pass => !(profile.jordan_automorphism && profile.in_mult_algebra),
        Status::Fail => profile.jordan_automorphism,
        Status::UndecidedSampled => false,
    };
    Ok(A2Report {
        certification,
        profile,
        anomaly,
    })
}

/// The derivation orbit of x as a subspace (basis-independent).
pub fn derivation_orbit(alg: &Algebra, x: &Element) -> Subspace {
    let images = alg
        .derivation_space()
        .iter()
        .map(|d| d.apply_vec(&x.coords))
        .collect();
    Subspace::span(alg.field(), alg.dim(), images)
}
