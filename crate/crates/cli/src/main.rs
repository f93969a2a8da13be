//! `fdalg` — command-line driver for the exact finite-dimensional algebra
//! toolkit. Every subcommand prints a single JSON report on stdout
//! (diagnostics go to stderr) and exits 0 on PASS/OK, 1 on FAIL, 2 on
//! UNDECIDED, 3 on usage or internal errors.
//!
//! Reports are deterministic given (inputs, seed): keys are sorted and no
//! timing data is included unless `--timings` is passed.

use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand};
use serde_json::{json, Map, Value};

use fdalg_core::algebra::{Algebra, Element, RadicalMethod, DEFAULT_ENUMERATION_BUDGET};
use fdalg_core::decompose::{
    decompose_theorem_a, decompose_theorem_d, TheoremAOutcome, TheoremDOutcome,
};
use fdalg_core::gallery::{build_fixture, RowResult, FIXTURE_NAMES};
use fdalg_core::identities::{
    check_formal, check_pointwise, IdentityKind, IdentitySpec, Mode, Status, DEFAULT_BUDGET,
};
use fdalg_core::io::{
    algebra_from_file, algebra_to_file, element_from_file, map_from_file, map_to_file,
    subspace_from_file, AlgebraFile, ElementFile, MapFile, SubspaceFile,
};
use fdalg_core::localmaps::{
    certify_local, experiment_a2, orbit_membership, LocalKind, WitnessData,
};
use fdalg_core::maps::{classify, LinMap, MapProfile};
use fdalg_core::scalar::{format_scalar, Scalar};
use fdalg_core::{Error, Result};

#[derive(Parser)]
#[command(
    name = "fdalg",
    version,
    about = "Exact checks for derivations and Jordan automorphisms of finite-dimensional algebras"
)]
struct Cli {
    /// Include wall-clock timing in the report (breaks byte-identical
    /// reproducibility, hence off by default).
    #[arg(long, global = true)]
    timings: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Validate an algebra file: associativity and unit detection.
    Validate { alg: PathBuf },
    /// Compute a derived invariant subspace of the algebra.
    Invariant {
        alg: PathBuf,
        /// radical | center | commutator | derivations | multalg
        #[arg(long)]
        what: String,
        /// auto | dickson | brute (radical only)
        #[arg(long, default_value = "auto")]
        method: String,
    },
    /// Check a polynomial identity in formal or pointwise mode.
    Check {
        alg: PathBuf,
        #[arg(long)]
        map: PathBuf,
        /// xdxx | cube | square | quartic-rad | h1
        #[arg(long)]
        identity: String,
        /// formal | pointwise
        #[arg(long, default_value = "formal")]
        mode: String,
        #[arg(long)]
        budget: Option<u64>,
        #[arg(long)]
        seed: Option<u64>,
        /// Evaluate at a single element instead of quantifying over A.
        #[arg(long)]
        at: Option<PathBuf>,
        /// Second element for the two-variable identity h1.
        #[arg(long)]
        at2: Option<PathBuf>,
    },
    /// Classify a linear map (derivation/automorphism/Jordan/… flags).
    Classify {
        alg: PathBuf,
        #[arg(long)]
        map: PathBuf,
    },
    /// Decompose a map per the structure theorems.
    Decompose {
        alg: PathBuf,
        #[arg(long)]
        map: PathBuf,
        /// d | a
        #[arg(long)]
        theorem: String,
        #[arg(long)]
        allow_char_violation: bool,
        /// Complement subalgebra file: triggers the Jordan-endomorphism +
        /// radical-part splitting instead.
        #[arg(long)]
        complement: Option<PathBuf>,
    },
    /// Certify a map as a local derivation / local (Jordan) automorphism.
    Local {
        alg: PathBuf,
        #[arg(long)]
        map: PathBuf,
        /// derivation | inner-derivation | inner-automorphism | jordan-automorphism
        #[arg(long)]
        kind: String,
        /// Test a single point instead of certifying the whole map.
        #[arg(long)]
        at: Option<PathBuf>,
        #[arg(long)]
        budget: Option<u64>,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Local-Jordan-automorphism experiment with classification cross-check.
    A2 {
        alg: PathBuf,
        #[arg(long)]
        map: PathBuf,
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Build or verify the named example fixtures.
    Gallery {
        name: Option<String>,
        /// Write algebra.json, map.json, expected.json to this directory.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Run every expected row (all fixtures when no name is given).
        #[arg(long)]
        verify_all: bool,
    },
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            // clap renders its own message; keep usage failures on exit 3
            let _ = e.print();
            std::process::exit(3);
        }
    };
    let started = Instant::now();
    match run(cli.cmd) {
        Ok((mut report, code)) => {
            if cli.timings {
                report.insert(
                    "timing_ms".into(),
                    json!(started.elapsed().as_millis() as u64),
                );
            }
            report.insert("version".into(), json!(env!("CARGO_PKG_VERSION")));
            println!("{}", Value::Object(report.into_iter().collect()));
            std::process::exit(code);
        }
        Err(err) => {
            eprintln!("error: {err}");
            std::process::exit(3);
        }
    }
}

type Report = Map<String, Value>;

fn report(command: &str, verdict: &str) -> Report {
    let mut m = Map::new();
    m.insert("command".into(), json!(command));
    m.insert("verdict".into(), json!(verdict));
    m
}

fn load_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T> {
    let text =
        fs::read_to_string(path).map_err(|e| Error::Format(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Error::Format(format!("{}: {e}", path.display())))
}

fn load_algebra(path: &Path) -> Result<Algebra> {
    let file: AlgebraFile = load_json(path)?;
    algebra_from_file(&file)
}

fn load_map(alg: &Algebra, path: &Path) -> Result<LinMap> {
    let file: MapFile = load_json(path)?;
    map_from_file(alg, &file)
}

fn load_element(alg: &Algebra, path: &Path) -> Result<Element> {
    let file: ElementFile = load_json(path)?;
    element_from_file(alg, &file)
}

fn coords_json(coords: &[Scalar]) -> Value {
    Value::Array(coords.iter().map(|c| json!(format_scalar(c))).collect())
}

fn element_json(x: &Element) -> Value {
    coords_json(&x.coords)
}

fn columns_json(map: &LinMap) -> Value {
    Value::Array(map.columns().iter().map(|c| coords_json(c)).collect())
}

fn subspace_json(s: &fdalg_core::linalg::Subspace) -> Value {
    json!({
        "ambient_dim": s.ambient_dim(),
        "dim": s.dim(),
        "basis": s.basis().iter().map(|v| coords_json(v)).collect::<Vec<_>>(),
    })
}

fn status_str(s: Status) -> &'static str {
    match s {
        Status::Pass => "PASS",
        Status::Fail => "FAIL",
        Status::UndecidedSampled => "UNDECIDED_SAMPLED",
    }
}

fn status_exit(s: Status) -> i32 {
    match s {
        Status::Pass => 0,
        Status::Fail => 1,
        Status::UndecidedSampled => 2,
    }
}

fn mode_str(m: Mode) -> &'static str {
    match m {
        Mode::Formal => "formal",
        Mode::PointwiseExhaustive => "pointwise_exhaustive",
        Mode::PointwiseSampled => "pointwise_sampled",
    }
}

fn profile_json(p: &MapProfile) -> Value {
    json!({
        "bijective": p.bijective,
        "unital": p.unital,
        "derivation": p.derivation,
        "jordan_homomorphism": p.jordan_homomorphism,
        "homomorphism": p.homomorphism,
        "antihomomorphism": p.antihomomorphism,
        "jordan_automorphism": p.jordan_automorphism,
        "automorphism": p.automorphism,
        "antiautomorphism": p.antiautomorphism,
        "in_mult_algebra": p.in_mult_algebra,
    })
}

fn witness_data_json(w: &WitnessData) -> Value {
    match w {
        WitnessData::DerivationCoords(c) => json!({ "derivation_coords": coords_json(c) }),
        WitnessData::InnerElement(a) => json!({ "inner_element": element_json(a) }),
        WitnessData::SimilarityCertificate(chain) => json!({ "invariant_factors": chain }),
    }
}

fn row_json(r: &RowResult) -> Value {
    json!({
        "fixture": r.fixture,
        "operation": r.operation,
        "expected": r.expected,
        "actual": r.actual,
        "pass": r.pass,
    })
}

fn run(cmd: Cmd) -> Result<(Report, i32)> {
    match cmd {
        Cmd::Validate { alg } => {
            let file: AlgebraFile = load_json(&alg)?;
            match algebra_from_file(&file) {
                Ok(a) => {
                    let mut rep = report("validate", "OK");
                    rep.insert("dim".into(), json!(a.dim()));
                    rep.insert("field".into(), json!(a.field().to_string()));
                    rep.insert("labels".into(), json!(a.labels()));
                    rep.insert("unital".into(), json!(a.is_unital()));
                    if let Some(u) = a.unit_coords() {
                        rep.insert("unit".into(), coords_json(u));
                    }
                    Ok((rep, 0))
                }
                Err(e @ (Error::NotAssociative(..) | Error::MalformedTable(_))) => {
                    let mut rep = report("validate", "FAIL");
                    rep.insert("diagnostic".into(), json!(e.to_string()));
                    Ok((rep, 1))
                }
                Err(e) => Err(e),
            }
        }
        Cmd::Invariant { alg, what, method } => {
            let a = load_algebra(&alg)?;
            let mut rep = report("invariant", "OK");
            rep.insert("what".into(), json!(what));
            match what.as_str() {
                "radical" => {
                    let m = match method.as_str() {
                        "auto" => RadicalMethod::Auto,
                        "dickson" => RadicalMethod::TraceForm,
                        "brute" => RadicalMethod::Brute,
                        other => return Err(Error::Format(format!("unknown method `{other}`"))),
                    };
                    let rad = a.radical(m, DEFAULT_ENUMERATION_BUDGET)?;
                    rep.insert("method".into(), json!(method));
                    rep.insert("subspace".into(), subspace_json(&rad));
                }
                "center" => {
                    rep.insert("subspace".into(), subspace_json(a.center()));
                }
                "commutator" => {
                    rep.insert("subspace".into(), subspace_json(a.commutator_space()));
                }
                "derivations" => {
                    let ders = a.derivation_space();
                    rep.insert("dim".into(), json!(ders.len()));
                    rep.insert(
                        "basis_maps".into(),
                        Value::Array(ders.iter().map(columns_json).collect()),
                    );
                }
                "multalg" => {
                    rep.insert(
                        "subspace".into(),
                        subspace_json(a.multiplication_algebra()?),
                    );
                }
                other => return Err(Error::Format(format!("unknown invariant `{other}`"))),
            }
            Ok((rep, 0))
        }
        Cmd::Check {
            alg,
            map,
            identity,
            mode,
            budget,
            seed,
            at,
            at2,
        } => {
            let a = load_algebra(&alg)?;
            let t = load_map(&a, &map)?;
            let kind = IdentityKind::from_cli_token(&identity)
                .ok_or_else(|| Error::Format(format!("unknown identity `{identity}`")))?;
            let spec = IdentitySpec::new(&a, kind, t)?;
            let budget = budget.unwrap_or(DEFAULT_BUDGET);
            let seed = seed.unwrap_or(0);
            if let Some(at_path) = at {
                let x = load_element(&a, &at_path)?;
                let y = at2.map(|p| load_element(&a, &p)).transpose()?;
                let value = spec.eval_at(&a, &x.coords, y.as_ref().map(|e| e.coords.as_slice()));
                let pass = spec.target.contains(&value);
                let mut rep = report("check", if pass { "PASS" } else { "FAIL" });
                rep.insert("identity".into(), json!(identity));
                rep.insert("mode".into(), json!("single_point"));
                rep.insert("at".into(), element_json(&x));
                if let Some(yv) = &y {
                    rep.insert("at2".into(), element_json(yv));
                }
                rep.insert("value".into(), coords_json(&value));
                return Ok((rep, if pass { 0 } else { 1 }));
            }
            let verdict = match mode.as_str() {
                "formal" => check_formal(&a, &spec),
                "pointwise" => check_pointwise(&a, &spec, budget, seed),
                other => return Err(Error::Format(format!("unknown mode `{other}`"))),
            };
            let mut rep = report("check", status_str(verdict.status));
            rep.insert("identity".into(), json!(identity));
            rep.insert("mode".into(), json!(mode_str(verdict.mode)));
            rep.insert("checked_count".into(), json!(verdict.checked_count));
            rep.insert("equivalence_note".into(), json!(verdict.equivalence_note));
            if let Some(b) = verdict.budget {
                rep.insert("budget".into(), json!(b));
            }
            if let Some(s) = verdict.seed {
                rep.insert("seed".into(), json!(s));
            }
            if let Some(w) = &verdict.witness {
                rep.insert(
                    "witnesses".into(),
                    Value::Array(w.iter().map(element_json).collect()),
                );
            }
            if let Some(cw) = &verdict.coefficient_witness {
                rep.insert(
                    "coefficient_witness".into(),
                    json!({ "x_multiset": cw.x_multiset, "y_index": cw.y_index }),
                );
            }
            Ok((rep, status_exit(verdict.status)))
        }
        Cmd::Classify { alg, map } => {
            let a = load_algebra(&alg)?;
            let t = load_map(&a, &map)?;
            let mut rep = report("classify", "OK");
            rep.insert("profile".into(), profile_json(&classify(&a, &t)));
            Ok((rep, 0))
        }
        Cmd::Decompose {
            alg,
            map,
            theorem,
            allow_char_violation,
            complement,
        } => {
            let a = load_algebra(&alg)?;
            let t = load_map(&a, &map)?;
            let forbidden: &[u64] = if theorem == "d" { &[2] } else { &[2, 3] };
            if allow_char_violation && forbidden.contains(&a.field().characteristic()) {
                eprintln!(
                    "warning: characteristic {} violates the guard char ∉ {:?}; proceeding",
                    a.field().characteristic(),
                    forbidden
                );
            }
            if let Some(cpath) = complement {
                let cfile: SubspaceFile = load_json(&cpath)?;
                let comp = subspace_from_file(&a.field(), &cfile)?;
                return match fdalg_core::decompose::split_ac3(&a, &t, &comp, allow_char_violation) {
                    Ok(split) => {
                        let mut rep = report("decompose", "OK");
                        rep.insert("splitting".into(), json!("jordan_plus_radical"));
                        rep.insert("jordan_part".into(), columns_json(&split.jordan_part));
                        rep.insert("radical_part".into(), columns_json(&split.radical_part));
                        rep.insert("radical".into(), subspace_json(&split.radical));
                        Ok((rep, 0))
                    }
                    Err(Error::JordanEndoFail) => {
                        let mut rep = report("decompose", "JORDAN_ENDO_FAIL");
                        rep.insert(
                            "diagnostic".into(),
                            json!("projected part is not a Jordan endomorphism"),
                        );
                        Ok((rep, 1))
                    }
                    Err(e) => Err(e),
                };
            }
            match theorem.as_str() {
                "d" => match decompose_theorem_d(&a, &t, allow_char_violation)? {
                    TheoremDOutcome::Decomposed(dec) => {
                        let mut rep = report("decompose", "OK");
                        rep.insert("theorem".into(), json!("d"));
                        rep.insert("inner_generator".into(), element_json(&dec.inner_generator));
                        rep.insert("residual".into(), columns_json(&dec.residual));
                        rep.insert("radical".into(), subspace_json(&dec.radical));
                        Ok((rep, 0))
                    }
                    TheoremDOutcome::NoDecomposition { inconsistent_block } => {
                        let mut rep = report("decompose", "NO_DECOMPOSITION");
                        rep.insert("theorem".into(), json!("d"));
                        rep.insert("inconsistent_block".into(), json!(inconsistent_block));
                        Ok((rep, 1))
                    }
                },
                "a" => match decompose_theorem_a(&a, &t, allow_char_violation)? {
                    TheoremAOutcome::Factorized(fac) => {
                        let mut rep = report("decompose", "OK");
                        rep.insert("theorem".into(), json!("a"));
                        rep.insert("alpha".into(), element_json(&fac.alpha));
                        rep.insert("jordan".into(), columns_json(&fac.jordan));
                        Ok((rep, 0))
                    }
                    TheoremAOutcome::Failed(f) => {
                        let mut rep = report("decompose", f.code());
                        rep.insert("theorem".into(), json!("a"));
                        Ok((rep, 1))
                    }
                },
                other => Err(Error::Format(format!("unknown theorem `{other}`"))),
            }
        }
        Cmd::Local {
            alg,
            map,
            kind,
            at,
            budget,
            seed,
        } => {
            let a = load_algebra(&alg)?;
            let t = load_map(&a, &map)?;
            let k = LocalKind::from_cli_token(&kind)
                .ok_or_else(|| Error::Format(format!("unknown local kind `{kind}`")))?;
            let budget = budget.unwrap_or(DEFAULT_BUDGET);
            let seed = seed.unwrap_or(0);
            if let Some(at_path) = at {
                let x = load_element(&a, &at_path)?;
                let (ok, data) = orbit_membership(&a, k, &t, &x)?;
                let mut rep = report("local", if ok { "PASS" } else { "FAIL" });
                rep.insert("kind".into(), json!(kind));
                rep.insert("at".into(), element_json(&x));
                if let Some(w) = data {
                    rep.insert("witness_data".into(), witness_data_json(&w));
                }
                return Ok((rep, if ok { 0 } else { 1 }));
            }
            let cert = certify_local(&a, k, &t, budget, seed)?;
            let mut rep = report("local", status_str(cert.status));
            rep.insert("kind".into(), json!(kind));
            rep.insert("checked_count".into(), json!(cert.checked_count));
            rep.insert("budget".into(), json!(cert.budget));
            if let Some(s) = cert.seed {
                rep.insert("seed".into(), json!(s));
            }
            if let Some(w) = &cert.witness {
                rep.insert("witness".into(), element_json(w));
            }
            rep.insert(
                "audited".into(),
                Value::Array(
                    cert.audited
                        .iter()
                        .map(|(x, d)| {
                            json!({
                                "at": element_json(x),
                                "witness_data": d.as_ref().map(witness_data_json),
                            })
                        })
                        .collect(),
                ),
            );
            Ok((rep, status_exit(cert.status)))
        }
        Cmd::A2 { alg, map, budget } => {
            let a = load_algebra(&alg)?;
            let t = load_map(&a, &map)?;
            let rep_out = experiment_a2(&a, &t, budget.unwrap_or(DEFAULT_BUDGET))?;
            let verdict = if rep_out.anomaly {
                "ANOMALY"
            } else {
                status_str(rep_out.certification.status)
            };
            let mut rep = report("a2", verdict);
            rep.insert(
                "certification".into(),
                json!({
                    "status": status_str(rep_out.certification.status),
                    "checked_count": rep_out.certification.checked_count,
                    "witness": rep_out.certification.witness.as_ref().map(element_json),
                }),
            );
            rep.insert("profile".into(), profile_json(&rep_out.profile));
            rep.insert("anomaly".into(), json!(rep_out.anomaly));
            let code = if rep_out.anomaly {
                3
            } else {
                status_exit(rep_out.certification.status)
            };
            Ok((rep, code))
        }
        Cmd::Gallery {
            name,
            out,
            verify_all,
        } => {
            let names: Vec<&str> = match &name {
                Some(n) => vec![n.as_str()],
                None => FIXTURE_NAMES.to_vec(),
            };
            let mut rep = report("gallery", "OK");
            let mut all_rows: Vec<RowResult> = Vec::new();
            let mut failed = false;
            for n in &names {
                let fixture = build_fixture(n)?;
                if let Some(dir) = &out {
                    fs::create_dir_all(dir)
                        .map_err(|e| Error::Format(format!("{}: {e}", dir.display())))?;
                    let rows = fixture.verify()?;
                    write_json(
                        &dir.join("algebra.json"),
                        &algebra_to_file(&fixture.algebra),
                    )?;
                    write_json(&dir.join("map.json"), &map_to_file(&fixture.map))?;
                    let expected: Vec<Value> = rows
                        .iter()
                        .map(|r| json!({ "operation": r.operation, "expected": r.expected }))
                        .collect();
                    write_json(&dir.join("expected.json"), &expected)?;
                }
                if verify_all {
                    let rows = fixture.verify()?;
                    failed |= rows.iter().any(|r| !r.pass);
                    all_rows.extend(rows);
                } else {
                    all_rows.push(RowResult {
                        fixture: (*n).to_string(),
                        operation: "build".into(),
                        expected: "fixture builds".into(),
                        actual: format!(
                            "dim {} over {}, {} expected rows",
                            fixture.algebra.dim(),
                            fixture.algebra.field(),
                            fixture.expected.len()
                        ),
                        pass: true,
                    });
                }
            }
            rep.insert(
                "rows".into(),
                Value::Array(all_rows.iter().map(row_json).collect()),
            );
            if failed {
                rep.insert("verdict".into(), json!("FAIL"));
                Ok((rep, 1))
            } else {
                Ok((rep, 0))
            }
        }
    }
}

fn write_json<T: serde::Serialize>(path: &Path, value: &T) -> Result<()> {
    let text = serde_json::to_string_pretty(value).map_err(|e| Error::Format(e.to_string()))?;
    fs::write(path, text).map_err(|e| Error::Format(format!("{}: {e}", path.display())))
}
