//! Named, parameterized regression fixtures: each bundles an algebra, a map,
//! and a table of expected verdicts that must reproduce exactly on every run.

use crate::algebra::{Algebra, Element};
use crate::decompose::{decompose_theorem_a, TheoremAOutcome};
use crate::identities::{
    check_formal, check_formal_xdx, check_pointwise_exhaustive, IdentityKind, IdentitySpec, Status,
    DEFAULT_BUDGET,
};
use crate::localmaps::{certify_local, orbit_membership, LocalKind};
use crate::maps::{classify, LinMap, MapProfile};
use crate::poly::Polynomial;
use crate::scalar::{FieldSpec, Scalar};
use crate::{Error, Result};

/// Which map a classification row inspects.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MapRef {
    Primary,
    Aux(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProfileFlag {
    Derivation,
    Automorphism,
    Antiautomorphism,
    JordanAutomorphism,
    Unital,
    InMultAlgebra,
}

impl ProfileFlag {
    fn read(self, p: &MapProfile) -> bool {
        match self {
            ProfileFlag::Derivation => p.derivation,
            ProfileFlag::Automorphism => p.automorphism,
            ProfileFlag::Antiautomorphism => p.antiautomorphism,
            ProfileFlag::JordanAutomorphism => p.jordan_automorphism,
            ProfileFlag::Unital => p.unital,
            ProfileFlag::InMultAlgebra => p.in_mult_algebra,
        }
    }

    fn name(self) -> &'static str {
        match self {
            ProfileFlag::Derivation => "derivation",
            ProfileFlag::Automorphism => "automorphism",
            ProfileFlag::Antiautomorphism => "antiautomorphism",
            ProfileFlag::JordanAutomorphism => "jordan_automorphism",
            ProfileFlag::Unital => "unital",
            ProfileFlag::InMultAlgebra => "in_mult_algebra",
        }
    }
}

/// One row of a fixture's expected-verdict table.
#[derive(Debug, Clone)]
pub enum ExpectedCheck {
    FormalIdentity {
        kind: IdentityKind,
        expect: Status,
    },
    PointwiseIdentity {
        kind: IdentityKind,
        expect: Status,
        expect_count: Option<u64>,
    },
    /// The auxiliary degree-2 condition x·D(x) ∈ [A,A], formal mode.
    FormalXdx {
        expect: Status,
    },
    ClassifyFlag {
        map: MapRef,
        flag: ProfileFlag,
        expect: bool,
    },
    /// The α·J factorization must fail structurally with the given code.
    TheoremAFailsWith {
        code: &'static str,
        allow_char_violation: bool,
    },
    /// rad(A) = [A,A] as subspaces.
    RadicalEqualsCommutator,
    CertifyLocal {
        kind: LocalKind,
        expect: Status,
        expect_count: Option<u64>,
        seed: u64,
    },
    /// Every listed point lies in the kind-orbit.
    OrbitMembershipAll {
        kind: LocalKind,
        points: Vec<Element>,
        expect: bool,
    },
    /// `solve_inner_derivation` recovers a generator.
    SolveInnerSucceeds,
}

/// Outcome of running one expected row.
#[derive(Debug, Clone)]
pub struct RowResult {
    pub fixture: String,
    pub operation: String,
    pub expected: String,
    pub actual: String,
    pub pass: bool,
}

/// A named regression fixture.
#[derive(Debug, Clone)]
pub struct Fixture {
    pub name: String,
    pub algebra: Algebra,
    pub map: LinMap,
    pub aux_maps: Vec<(String, LinMap)>,
    pub expected: Vec<ExpectedCheck>,
    pub notes: String,
}

pub const FIXTURE_NAMES: [&str; 9] = [
    "f2-m2-cube",
    "eaut1",
    "remaut-p3",
    "rd-skew",
    "rh-square",
    "tri-rad-comm",
    "ede-p3",
    "transpose-m2",
    "cd2-demo",
];

fn q() -> FieldSpec {
    FieldSpec::rationals()
}

fn fp(p: u64) -> FieldSpec {
    FieldSpec::prime_field(p).expect("prime")
}

/// T(x) = x + tr(x)·c on a matrix-tagged algebra.
fn trace_twist(alg: &Algebra, c: &Element) -> LinMap {
    let s = alg.tags().matrix_side.expect("matrix-tagged");
    let cols = (0..alg.dim())
        .map(|j| {
            let base = alg.basis_element(j);
            if j / s == j % s {
                base.add(c).coords
            } else {
                base.coords
            }
        })
        .collect();
    LinMap::from_columns(alg, cols).expect("well-formed columns")
}

/// D(x) = a·x·b − b·x·a.
fn sandwich_skew(alg: &Algebra, a: &Element, b: &Element) -> LinMap {
    let cols = (0..alg.dim())
        .map(|j| {
            let bj = alg.basis_element(j);
            let axb = alg.mul(&alg.mul(a, &bj).unwrap(), b).unwrap();
            let bxa = alg.mul(&alg.mul(b, &bj).unwrap(), a).unwrap();
            axb.sub(&bxa).coords
        })
        .collect();
    LinMap::from_columns(alg, cols).expect("well-formed columns")
}

/// The inseparable cubic extension F_3(t)[X]/(X³ − t).
fn ede_algebra_p3() -> Algebra {
    let field = FieldSpec::rational_functions(3).expect("prime");
    let min_poly = Polynomial::new(
        field,
        vec![
            Scalar::from_poly(&field, &[0, -1]), // −t
            Scalar::zero(&field),
            Scalar::zero(&field),
            Scalar::one(&field),
        ],
    );
    Algebra::field_extension(&min_poly).expect("monic cubic")
}

pub fn build_fixture(name: &str) -> Result<Fixture> {
    match name {
        "f2-m2-cube" => {
            let alg = Algebra::matrix_algebra(fp(2), 2);
            let map = LinMap::from_columns(
                &alg,
                vec![
                    alg.element_from_i64(&[0, 0, 0, 1]).coords, // e11 ↦ e22
                    alg.element_from_i64(&[0, 1, 0, 0]).coords, // e12 ↦ e12
                    alg.element_from_i64(&[0, 0, 0, 0]).coords, // e21 ↦ 0
                    alg.element_from_i64(&[1, 0, 0, 0]).coords, // e22 ↦ e11
                ],
            )?;
            Ok(Fixture {
                name: name.into(),
                algebra: alg,
                map,
                aux_maps: vec![],
                expected: vec![
                    ExpectedCheck::PointwiseIdentity {
                        kind: IdentityKind::Xdxx,
                        expect: Status::Pass,
                        expect_count: Some(16),
                    },
                    ExpectedCheck::FormalIdentity {
                        kind: IdentityKind::Xdxx,
                        expect: Status::Fail,
                    },
                    ExpectedCheck::ClassifyFlag {
                        map: MapRef::Primary,
                        flag: ProfileFlag::Derivation,
                        expect: false,
                    },
                ],
                notes: "char-2 swap map on M2(F2): x·D(x)·x is trace-zero at every point, \
                        yet the polarized coefficients escape [A,A] and D is not a derivation"
                    .into(),
            })
        }
        "eaut1" => {
            let alg = Algebra::matrix_algebra(fp(2), 2);
            let unit = alg.unit()?;
            let map = trace_twist(&alg, &unit);
            Ok(Fixture {
                name: name.into(),
                algebra: alg,
                map,
                aux_maps: vec![],
                expected: vec![
                    ExpectedCheck::PointwiseIdentity {
                        kind: IdentityKind::CubeDiff,
                        expect: Status::Pass,
                        expect_count: Some(16),
                    },
                    ExpectedCheck::ClassifyFlag {
                        map: MapRef::Primary,
                        flag: ProfileFlag::Automorphism,
                        expect: false,
                    },
                    ExpectedCheck::ClassifyFlag {
                        map: MapRef::Primary,
                        flag: ProfileFlag::Antiautomorphism,
                        expect: true,
                    },
                    ExpectedCheck::ClassifyFlag {
                        map: MapRef::Primary,
                        flag: ProfileFlag::Unital,
                        expect: true,
                    },
                ],
                notes: "T(x) = x + tr(x)·1 over F_2: fixes the unit and satisfies the cubic \
                        condition pointwise. In char 2 this map equals tr(x)·1 − x, which by \
                        2×2 Cayley–Hamilton is the adjugate — antimultiplicative and an \
                        involution — so T is an antiautomorphism (not an automorphism)"
                    .into(),
            })
        }
        "remaut-p3" => {
            let alg = Algebra::matrix_algebra(fp(3), 2);
            let e12 = alg.basis_element(1);
            let map = trace_twist(&alg, &e12);
            Ok(Fixture {
                name: name.into(),
                algebra: alg,
                map,
                aux_maps: vec![],
                expected: vec![
                    ExpectedCheck::PointwiseIdentity {
                        kind: IdentityKind::CubeDiff,
                        expect: Status::Pass,
                        expect_count: Some(81),
                    },
                    ExpectedCheck::TheoremAFailsWith {
                        code: "ALPHA_NOT_CENTRAL",
                        allow_char_violation: true,
                    },
                ],
                notes: "char-3 twist T(x) = x + φ(x)·a with a = e12 (so a³ = 0) and φ = trace; \
                        any linear functional works. Passes the cubic condition pointwise but \
                        is not of the form α·J"
                    .into(),
            })
        }
        "rd-skew" => {
            let alg = Algebra::matrix_algebra(q(), 2);
            let a = alg.basis_element(0); // e11
            let b = alg.basis_element(1); // e12
            let map = sandwich_skew(&alg, &a, &b);
            Ok(Fixture {
                name: name.into(),
                algebra: alg,
                map,
                aux_maps: vec![],
                expected: vec![
                    ExpectedCheck::FormalXdx {
                        expect: Status::Pass,
                    },
                    ExpectedCheck::ClassifyFlag {
                        map: MapRef::Primary,
                        flag: ProfileFlag::Derivation,
                        expect: false,
                    },
                ],
                notes: "D(x) = a·x·b − b·x·a with a = e11, b = e12 on M2(Q): satisfies the \
                        degree-2 condition x·D(x) ∈ [A,A] (formally, via x(axb − bxa) = \
                        [xa, xb]) without being a derivation"
                    .into(),
            })
        }
        "rh-square" => {
            let alg = Algebra::matrix_algebra(q(), 3);
            let a = alg.basis_element(2); // e13
            let b = alg.basis_element(1); // e12
                                          // a² = ab = ba = b² = 0
            debug_assert!(alg.mul(&a, &a).unwrap().is_zero());
            debug_assert!(alg.mul(&a, &b).unwrap().is_zero());
            debug_assert!(alg.mul(&b, &a).unwrap().is_zero());
            debug_assert!(alg.mul(&b, &b).unwrap().is_zero());
            let map = LinMap::identity(&alg).add(&sandwich_skew(&alg, &a, &b));
            Ok(Fixture {
                name: name.into(),
                algebra: alg,
                map,
                aux_maps: vec![],
                expected: vec![
                    ExpectedCheck::FormalIdentity {
                        kind: IdentityKind::SquareDiff,
                        expect: Status::Pass,
                    },
                    ExpectedCheck::ClassifyFlag {
                        map: MapRef::Primary,
                        flag: ProfileFlag::JordanAutomorphism,
                        expect: false,
                    },
                    ExpectedCheck::ClassifyFlag {
                        map: MapRef::Primary,
                        flag: ProfileFlag::Unital,
                        expect: true,
                    },
                ],
                notes: "T(x) = x + a·x·b − b·x·a with a = e13, b = e12 on M3(Q), where \
                        a² = ab = ba = b² = 0: T(x)² − x² = [xa, xb] + [ax, bx] lands in \
                        [A,A] and T(1) = 1, yet T is not a Jordan automorphism"
                    .into(),
            })
        }
        "tri-rad-comm" => {
            let alg = Algebra::upper_triangular(q(), 3);
            let map = LinMap::identity(&alg);
            Ok(Fixture {
                name: name.into(),
                algebra: alg,
                map,
                aux_maps: vec![],
                expected: vec![ExpectedCheck::RadicalEqualsCommutator],
                notes: "upper-triangular T3(Q): the radical (strict upper triangle) equals \
                        the commutator span [A,A]"
                    .into(),
            })
        }
        "ede-p3" => {
            let alg = ede_algebra_p3();
            let field = alg.field();
            let n = alg.dim();
            // L: 1 ↦ 0, α ↦ 1, α² ↦ 0 — kills the unit, hence a local derivation
            let mut cols = vec![crate::linalg::zero_vec(&field, n); n];
            cols[1] = alg.unit()?.coords;
            let map = LinMap::from_columns(&alg, cols)?;
            // d/dα: 1 ↦ 0, α ↦ 1, α² ↦ 2α
            let d_alpha = LinMap::from_columns(
                &alg,
                vec![
                    crate::linalg::zero_vec(&field, n),
                    alg.unit()?.coords,
                    alg.basis_element(1)
                        .scale(&Scalar::from_i64(&field, 2))
                        .coords,
                ],
            )?;
            let t = Scalar::from_poly(&field, &[0, 1]);
            let alpha = alg.basis_element(1);
            let alpha2 = alg.basis_element(2);
            let sample_points = vec![
                alpha.clone(),
                alpha2.clone(),
                alg.unit()?.add(&alpha),
                alpha.scale(&t).add(&alpha2),
            ];
            Ok(Fixture {
                name: name.into(),
                algebra: alg,
                map,
                aux_maps: vec![("d/da".into(), d_alpha)],
                expected: vec![
                    ExpectedCheck::ClassifyFlag {
                        map: MapRef::Aux(0),
                        flag: ProfileFlag::Derivation,
                        expect: true,
                    },
                    ExpectedCheck::ClassifyFlag {
                        map: MapRef::Primary,
                        flag: ProfileFlag::Derivation,
                        expect: false,
                    },
                    ExpectedCheck::OrbitMembershipAll {
                        kind: LocalKind::Derivation,
                        points: sample_points,
                        expect: true,
                    },
                    ExpectedCheck::CertifyLocal {
                        kind: LocalKind::Derivation,
                        expect: Status::UndecidedSampled,
                        expect_count: Some(crate::localmaps::DEFAULT_SAMPLES),
                        seed: 1,
                    },
                ],
                notes: "F_3(t)[X]/(X³ − t), an inseparable field extension: every F-linear \
                        map sending 1 to 0 is a local derivation (the derivation space is \
                        g·(d/da) for g in the algebra); L(α) = 1, L(α²) = 0 gives a local \
                        derivation that is not a derivation. The base field is infinite, so \
                        certification stays sampled"
                    .into(),
            })
        }
        "transpose-m2" => {
            let alg = Algebra::matrix_algebra(fp(3), 2);
            let map = LinMap::transpose_map(&alg)?;
            Ok(Fixture {
                name: name.into(),
                algebra: alg,
                map,
                aux_maps: vec![],
                expected: vec![
                    ExpectedCheck::CertifyLocal {
                        kind: LocalKind::InnerAutomorphism,
                        expect: Status::Pass,
                        expect_count: Some(81),
                        seed: 0,
                    },
                    ExpectedCheck::ClassifyFlag {
                        map: MapRef::Primary,
                        flag: ProfileFlag::Antiautomorphism,
                        expect: true,
                    },
                    ExpectedCheck::ClassifyFlag {
                        map: MapRef::Primary,
                        flag: ProfileFlag::Automorphism,
                        expect: false,
                    },
                    ExpectedCheck::ClassifyFlag {
                        map: MapRef::Primary,
                        flag: ProfileFlag::JordanAutomorphism,
                        expect: true,
                    },
                    ExpectedCheck::ClassifyFlag {
                        map: MapRef::Primary,
                        flag: ProfileFlag::InMultAlgebra,
                        expect: true,
                    },
                ],
                notes: "x ↦ xᵗ on M2(F3): every matrix is similar to its transpose, so the \
                        transpose is a local inner automorphism; globally it is an \
                        antiautomorphism (hence a Jordan automorphism) but not an automorphism"
                    .into(),
            })
        }
        "cd2-demo" => {
            let alg = Algebra::matrix_algebra(fp(3), 2);
            let a = alg.basis_element(1); // e12
            let map = LinMap::inner_derivation(&alg, &a)?;
            Ok(Fixture {
                name: name.into(),
                algebra: alg,
                map,
                aux_maps: vec![],
                expected: vec![
                    ExpectedCheck::CertifyLocal {
                        kind: LocalKind::InnerDerivation,
                        expect: Status::Pass,
                        expect_count: Some(81),
                        seed: 0,
                    },
                    ExpectedCheck::SolveInnerSucceeds,
                    ExpectedCheck::PointwiseIdentity {
                        kind: IdentityKind::Xdxx,
                        expect: Status::Pass,
                        expect_count: Some(81),
                    },
                ],
                notes: "ad_{e12} on M2(F3): a local inner derivation that is (of course) \
                        inner; exhaustive certification over all 81 points"
                    .into(),
            })
        }
        _ => Err(Error::UnknownFixture(name.to_string())),
    }
}

impl Fixture {
    fn map_for(&self, r: MapRef) -> &LinMap {
        match r {
            MapRef::Primary => &self.map,
            MapRef::Aux(i) => &self.aux_maps[i].1,
        }
    }

    /// Runs every expected row and reports pass/fail per row.
    pub fn verify(&self) -> Result<Vec<RowResult>> {
        let alg = &self.algebra;
        let mut rows = Vec::with_capacity(self.expected.len());
        for check in &self.expected {
            let row = match check {
                ExpectedCheck::FormalIdentity { kind, expect } => {
                    let spec = IdentitySpec::new(alg, *kind, self.map.clone())?;
                    let v = check_formal(alg, &spec);
                    RowResult {
                        fixture: self.name.clone(),
                        operation: format!("check {} --mode formal", kind.cli_token()),
                        expected: format!("{expect:?}"),
                        actual: format!("{:?}", v.status),
                        pass: v.status == *expect,
                    }
                }
                ExpectedCheck::PointwiseIdentity {
                    kind,
                    expect,
                    expect_count,
                } => {
                    let spec = IdentitySpec::new(alg, *kind, self.map.clone())?;
                    let v = check_pointwise_exhaustive(alg, &spec, DEFAULT_BUDGET)?;
                    let count_ok = expect_count.map_or(true, |c| v.checked_count == c);
                    RowResult {
                        fixture: self.name.clone(),
                        operation: format!("check {} --mode pointwise", kind.cli_token()),
                        expected: format!("{expect:?} over {expect_count:?} points"),
                        actual: format!("{:?} over Some({}) points", v.status, v.checked_count),
                        pass: v.status == *expect && count_ok,
                    }
                }
                ExpectedCheck::FormalXdx { expect } => {
                    let v = check_formal_xdx(alg, &self.map, alg.commutator_space());
                    RowResult {
                        fixture: self.name.clone(),
                        operation: "check xdx --mode formal".into(),
                        expected: format!("{expect:?}"),
                        actual: format!("{:?}", v.status),
                        pass: v.status == *expect,
                    }
                }
                ExpectedCheck::ClassifyFlag { map, flag, expect } => {
                    let profile = classify(alg, self.map_for(*map));
                    let actual = flag.read(&profile);
                    RowResult {
                        fixture: self.name.clone(),
                        operation: format!("classify .{}", flag.name()),
                        expected: expect.to_string(),
                        actual: actual.to_string(),
                        pass: actual == *expect,
                    }
                }
                ExpectedCheck::TheoremAFailsWith {
                    code,
                    allow_char_violation,
                } => {
                    let outcome = decompose_theorem_a(alg, &self.map, *allow_char_violation)?;
                    let actual = match &outcome {
                        TheoremAOutcome::Factorized(_) => "FACTORIZED".to_string(),
                        TheoremAOutcome::Failed(f) => f.code().to_string(),
                    };
                    RowResult {
                        fixture: self.name.clone(),
                        operation: "decompose --theorem a".into(),
                        expected: (*code).into(),
                        actual: actual.clone(),
                        pass: actual == *code,
                    }
                }
                ExpectedCheck::RadicalEqualsCommutator => {
                    let rad = alg.radical_auto()?;
                    let comm = alg.commutator_space();
                    RowResult {
                        fixture: self.name.clone(),
                        operation: "invariant radical == commutator".into(),
                        expected: "equal subspaces".into(),
                        actual: if &rad == comm {
                            "equal subspaces".into()
                        } else {
                            format!("rad dim {} vs [A,A] dim {}", rad.dim(), comm.dim())
                        },
                        pass: &rad == comm,
                    }
                }
                ExpectedCheck::CertifyLocal {
                    kind,
                    expect,
                    expect_count,
                    seed,
                } => {
                    let cert = certify_local(alg, *kind, &self.map, DEFAULT_BUDGET, *seed)?;
                    let count_ok = expect_count.map_or(true, |c| cert.checked_count == c);
                    RowResult {
                        fixture: self.name.clone(),
                        operation: format!("local --kind {}", kind.cli_token()),
                        expected: format!("{expect:?} over {expect_count:?} points"),
                        actual: format!(
                            "{:?} over Some({}) points",
                            cert.status, cert.checked_count
                        ),
                        pass: cert.status == *expect && count_ok,
                    }
                }
                ExpectedCheck::OrbitMembershipAll {
                    kind,
                    points,
                    expect,
                } => {
                    let mut all = true;
                    for x in points {
                        let (ok, _) = orbit_membership(alg, *kind, &self.map, x)?;
                        if ok != *expect {
                            all = false;
                        }
                    }
                    RowResult {
                        fixture: self.name.clone(),
                        operation: format!(
                            "local --kind {} --at <{} sample points>",
                            kind.cli_token(),
                            points.len()
                        ),
                        expected: format!("all {expect}"),
                        actual: if all {
                            format!("all {expect}")
                        } else {
                            "mismatch".into()
                        },
                        pass: all,
                    }
                }
                ExpectedCheck::SolveInnerSucceeds => {
                    let got = crate::decompose::solve_inner_derivation(alg, &self.map)?;
                    RowResult {
                        fixture: self.name.clone(),
                        operation: "decompose --theorem d (inner solve)".into(),
                        expected: "inner generator found".into(),
                        actual: match &got {
                            Some(_) => "inner generator found".into(),
                            None => "none".into(),
                        },
                        pass: got.is_some(),
                    }
                }
            };
            rows.push(row);
        }
        Ok(rows)
    }
}

/// Builds and verifies every fixture.
pub fn verify_all() -> Result<Vec<RowResult>> {
    let mut rows = Vec::new();
    for name in FIXTURE_NAMES {
        let fixture = build_fixture(name)?;
        rows.extend(fixture.verify()?);
    }
    Ok(rows)
}
