//! Named verification suites.
//!
//! A suite is a list of independent, pure checks over built-in input files
//! (or a caller-supplied override).  Checks run on a worker pool sized by
//! `jobs`; the report is assembled serially in declaration order and can be
//! rendered as human-readable text or as one JSON record per check.

use std::sync::Arc;
use std::time::Instant;

use rayon::prelude::*;
use serde_json::json;
use thiserror::Error;

use crate::arith::TorsionExponents;
use crate::cobar::{self, BoundaryVerdict, CobarElement, CobarWord};
use crate::fixtures;
use crate::hopf::{verify_bialgebra, CoalgebraData};
use crate::parse::{format_product, product_dims, AlgebraFile, Expectation, FixtureFile, RingFile};
use crate::resolution;
use crate::spectra::{homology_of_derivation, run_bss, verify_derivation, BssSchedule};
use crate::steenrod::verify_steenrod_module;

/// Whether a single check succeeded.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckStatus {
    Pass,
    Fail,
}

/// One verified claim, with timing and optional evidence.
#[derive(Debug, Clone)]
pub struct CheckResult {
    /// Short identifier, unique within the suite.
    pub check: String,
    /// The mathematical claim being verified, in plain text.
    pub anchor: String,
    pub status: CheckStatus,
    /// Degree the outcome is pinned to, when one is meaningful.
    pub degree: Option<usize>,
    /// Evidence: a certificate on success, a counterexample on failure.
    pub witness: Option<String>,
    /// Wall-clock time spent inside this check.
    pub millis: u128,
}

/// The outcome of running a whole suite.
#[derive(Debug, Clone)]
pub struct SuiteReport {
    pub suite: String,
    pub cap: usize,
    pub checks: Vec<CheckResult>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status == CheckStatus::Pass)
    }

    /// Human-readable rendering: one line per check plus a verdict line.
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "suite {} (maxdeg {}, {} checks)\n",
            self.suite,
            self.cap,
            self.checks.len()
        ));
        for c in &self.checks {
            let status = match c.status {
                CheckStatus::Pass => "pass",
                CheckStatus::Fail => "FAIL",
            };
            out.push_str(&format!("  {status} {} [{} ms] {}\n", c.check, c.millis, c.anchor));
            if let Some(n) = c.degree {
                out.push_str(&format!("       degree: {n}\n"));
            }
            if let Some(w) = &c.witness {
                out.push_str(&format!("       witness: {w}\n"));
            }
        }
        out.push_str(&format!(
            "result: {}\n",
            if self.passed() { "PASS" } else { "FAIL" }
        ));
        out
    }

    /// Machine rendering: one JSON record per check, one per line.
    pub fn render_machine(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let record = json!({
                "suite": self.suite,
                "check": c.check,
                "anchor": c.anchor,
                "status": match c.status {
                    CheckStatus::Pass => "pass",
                    CheckStatus::Fail => "fail",
                },
                "degree": c.degree,
                "witness": c.witness,
                "millis": c.millis as u64,
            });
            out.push_str(&record.to_string());
            out.push('\n');
        }
        out
    }
}

#[derive(Debug, Error)]
pub enum SuiteError {
    #[error("unknown suite `{name}`; available suites: {available}")]
    UnknownSuite { name: String, available: String },
    #[error("suite `{suite}` does not accept an input override")]
    OverrideNotAccepted { suite: String },
    #[error("suite `{suite}` needs {want} input, but the override is {got}")]
    OverrideKind {
        suite: String,
        want: &'static str,
        got: &'static str,
    },
    #[error("override for suite `{suite}` is unusable: {reason}")]
    OverrideInvalid { suite: String, reason: String },
}

/// Every suite name with its default degree cap.
pub const SUITES: &[(&str, usize)] = &[
    ("theorem1", 40),
    ("theorem2", 48),
    ("serre-g2", 30),
    ("bss-g2", 40),
    ("bss-sol", 48),
    ("cotor-di4", 28),
    ("cotor-bg2", 12),
    ("cotor-bsol", 20),
    ("boundary-g2", 12),
    ("boundary-sol", 22),
    ("resolution", 40),
    ("nu2-range", 9999),
    ("theorem1-corrupt-demo", 20),
    ("theorem1-corrupt-coproduct-demo", 20),
    ("theorem1-corrupt-steenrod-demo", 20),
];

/// Default degree cap for a suite, if the suite exists.
pub fn default_cap(name: &str) -> Option<usize> {
    SUITES.iter().find(|(n, _)| *n == name).map(|&(_, cap)| cap)
}

fn unknown(name: &str) -> SuiteError {
    SuiteError::UnknownSuite {
        name: name.to_string(),
        available: SUITES
            .iter()
            .map(|(n, _)| *n)
            .collect::<Vec<_>>()
            .join(", "),
    }
}

/// Runs a named suite on its built-in inputs.
pub fn run_suite(name: &str, cap: usize, jobs: usize) -> Result<SuiteReport, SuiteError> {
    run_suite_with(name, cap, jobs, None)
}

/// Runs a named suite, optionally replacing its primary input file.
pub fn run_suite_with(
    name: &str,
    cap: usize,
    jobs: usize,
    override_file: Option<FixtureFile>,
) -> Result<SuiteReport, SuiteError> {
    let checks = build_checks(name, cap, override_file)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .expect("worker pool");
    let results: Vec<CheckResult> = pool.install(|| {
        checks
            .par_iter()
            .map(|c| {
                let start = Instant::now();
                let outcome = (c.run)();
                CheckResult {
                    check: c.id.clone(),
                    anchor: c.anchor.clone(),
                    status: if outcome.ok {
                        CheckStatus::Pass
                    } else {
                        CheckStatus::Fail
                    },
                    degree: outcome.degree,
                    witness: outcome.witness,
                    millis: start.elapsed().as_millis(),
                }
            })
            .collect()
    });
    Ok(SuiteReport {
        suite: name.to_string(),
        cap,
        checks: results,
    })
}

struct Outcome {
    ok: bool,
    degree: Option<usize>,
    witness: Option<String>,
}

impl Outcome {
    fn pass() -> Self {
        Outcome {
            ok: true,
            degree: None,
            witness: None,
        }
    }

    fn pass_with(witness: String) -> Self {
        Outcome {
            ok: true,
            degree: None,
            witness: Some(witness),
        }
    }

    fn fail(witness: String) -> Self {
        Outcome {
            ok: false,
            degree: None,
            witness: Some(witness),
        }
    }

    fn fail_at(degree: usize, witness: String) -> Self {
        Outcome {
            ok: false,
            degree: Some(degree),
            witness: Some(witness),
        }
    }

    fn at(mut self, degree: usize) -> Self {
        self.degree = Some(degree);
        self
    }
}

struct Check {
    id: String,
    anchor: String,
    run: Box<dyn Fn() -> Outcome + Send + Sync>,
}

fn check(
    id: impl Into<String>,
    anchor: impl Into<String>,
    run: impl Fn() -> Outcome + Send + Sync + 'static,
) -> Check {
    Check {
        id: id.into(),
        anchor: anchor.into(),
        run: Box::new(run),
    }
}

fn build_checks(
    name: &str,
    cap: usize,
    override_file: Option<FixtureFile>,
) -> Result<Vec<Check>, SuiteError> {
    match name {
        "theorem1" => Ok(presented_checks(
            algebra_input(name, "loops-bg2q", override_file)?,
            cap,
            &[(5, 2), (8, 3), (10, 4)],
        )),
        "theorem2" => Ok(presented_checks(
            algebra_input(name, "loops-bsolq", override_file)?,
            cap,
            &[(13, 2), (14, 1), (26, 4)],
        )),
        "theorem1-corrupt-demo" => Ok(presented_checks(
            algebra_input(name, "loops-bg2q-corrupt-comm", override_file)?,
            cap,
            &[],
        )),
        "theorem1-corrupt-coproduct-demo" => Ok(presented_checks(
            algebra_input(name, "loops-bg2q-corrupt-coproduct", override_file)?,
            cap,
            &[],
        )),
        "theorem1-corrupt-steenrod-demo" => Ok(presented_checks(
            algebra_input(name, "loops-bg2q-corrupt-steenrod", override_file)?,
            cap,
            &[],
        )),
        "serre-g2" => {
            let page = algebra_input(name, "serre-input", override_file)?;
            Ok(serre_checks(name, page, cap)?)
        }
        "bss-g2" => {
            reject_override(name, override_file)?;
            Ok(bss_checks(fixtures::bss_g2_schedule(), cap, ("z6", "x5")))
        }
        "bss-sol" => {
            reject_override(name, override_file)?;
            Ok(bss_checks(fixtures::bss_sol_schedule(), cap, ("y14", "y13")))
        }
        "cotor-di4" => Ok(cotor_checks(
            coalgebra_input("di4-homology", override_file)?,
            fixtures::algebra("loops-di4"),
            cap,
            None,
        )),
        "cotor-bg2" => Ok(cotor_checks(
            coalgebra_input("bg2q-cohomology", override_file)?,
            fixtures::algebra("loops-bg2q"),
            cap,
            Some(RingSpot::Leads(&["y5^2", "y5*t7"])),
        )),
        "cotor-bsol" => Ok(cotor_checks(
            coalgebra_input("bsolq-cohomology", override_file)?,
            fixtures::algebra("loops-bsolq"),
            cap,
            Some(RingSpot::Standard(22, &["t11^2", "u15*t7", "u8*u14"])),
        )),
        "boundary-g2" => Ok(boundary_checks(
            coalgebra_input("bg2q-cohomology", override_file)?,
            cap.max(12),
            BoundaryClaim {
                class: &[&["y5", "y5"], &["y3", "t7"], &["t7", "y3"]],
                forces: "[a2, z6] = a4^2",
                letters: &[("y3", "a2"), ("y5", "a4"), ("t7", "z6")],
            },
        )),
        "boundary-sol" => Ok(boundary_checks(
            coalgebra_input("bsolq-cohomology", override_file)?,
            cap.max(22),
            BoundaryClaim {
                class: &[&["t11", "t11"], &["u15", "t7"], &["t7", "u15"]],
                forces: "[a6, y14] = b10^2",
                letters: &[("t7", "a6"), ("t11", "b10"), ("u15", "y14")],
            },
        )),
        "resolution" => {
            reject_override(name, override_file)?;
            Ok(resolution_checks(cap))
        }
        "nu2-range" => {
            reject_override(name, override_file)?;
            Ok(nu2_checks(cap))
        }
        _ => Err(unknown(name)),
    }
}

fn reject_override(suite: &str, override_file: Option<FixtureFile>) -> Result<(), SuiteError> {
    if override_file.is_some() {
        return Err(SuiteError::OverrideNotAccepted {
            suite: suite.to_string(),
        });
    }
    Ok(())
}

fn algebra_input(
    suite: &str,
    default: &str,
    override_file: Option<FixtureFile>,
) -> Result<AlgebraFile, SuiteError> {
    match override_file {
        None => Ok(fixtures::algebra(default)),
        Some(FixtureFile::Algebra(a)) => Ok(a),
        Some(FixtureFile::Ring(_)) => Err(SuiteError::OverrideKind {
            suite: suite.to_string(),
            want: "a presented-algebra",
            got: "a quotient-ring",
        }),
    }
}

/// Input that can serve as a coalgebra: a presented algebra with its
/// coproduct, or a quotient ring taken as the graded dual.
enum CoalgebraSource {
    Algebra(AlgebraFile),
    Ring(RingFile),
}

impl CoalgebraSource {
    fn build(&self, cap: usize) -> Result<CoalgebraData, String> {
        match self {
            CoalgebraSource::Algebra(a) => {
                CoalgebraData::from_presented(&a.presentation, &a.coproduct, cap)
                    .map_err(|e| e.to_string())
            }
            CoalgebraSource::Ring(r) => {
                let gb = r.ring.groebner_basis(cap);
                CoalgebraData::dual_of_ring(&gb, cap).map_err(|e| e.to_string())
            }
        }
    }
}

fn coalgebra_input(
    default: &str,
    override_file: Option<FixtureFile>,
) -> Result<CoalgebraSource, SuiteError> {
    match override_file {
        None => Ok(match fixtures::load(default) {
            FixtureFile::Algebra(a) => CoalgebraSource::Algebra(a),
            FixtureFile::Ring(r) => CoalgebraSource::Ring(r),
        }),
        Some(FixtureFile::Algebra(a)) => Ok(CoalgebraSource::Algebra(a)),
        Some(FixtureFile::Ring(r)) => Ok(CoalgebraSource::Ring(r)),
    }
}

/// Checks shared by every presented-algebra suite: confluent rewriting, the
/// declared basis count, degree spot checks, the bialgebra axioms, and the
/// Steenrod module structure.
fn presented_checks(file: AlgebraFile, cap: usize, spots: &[(usize, u64)]) -> Vec<Check> {
    let pres = Arc::new(file.presentation);
    let cop = Arc::new(file.coproduct);
    let action = Arc::new(file.steenrod);
    let mut checks = Vec::new();

    {
        let pres = pres.clone();
        checks.push(check(
            "confluence",
            format!(
                "every overlap among the defining rewrites resolves to a single \
                 normal form through degree {cap}"
            ),
            move || match pres.check_confluence(cap) {
                Ok(n) => Outcome::pass_with(format!("{n} overlaps resolved")),
                Err(f) => {
                    let degree: usize = f
                        .overlap
                        .iter()
                        .map(|&i| pres.generator(i).degree)
                        .sum();
                    Outcome::fail_at(
                        degree,
                        format!(
                            "overlap `{}` resolves to `{}` and `{}`; difference `{}`",
                            pres.format_word(&f.overlap),
                            pres.format_element(&f.left),
                            pres.format_element(&f.right),
                            pres.format_element(&f.difference())
                        ),
                    )
                }
            },
        ));
    }

    match &file.expect {
        Some(Expectation::Product(factors)) => {
            let pres = pres.clone();
            let factors = factors.clone();
            let anchor = format!(
                "the graded basis has the dimensions of {} through degree {cap}",
                format_product(&factors)
            );
            checks.push(check("declared-product", anchor, move || {
                let got = pres.poincare(cap);
                let want = product_dims(&factors, cap);
                match got.first_mismatch(&want) {
                    None => Outcome::pass(),
                    Some(n) => Outcome::fail_at(
                        n,
                        format!(
                            "basis has dimension {} in degree {n}, decomposition predicts {}",
                            got.get(n),
                            want.get(n)
                        ),
                    ),
                }
            }));
        }
        Some(Expectation::Dims(dims)) => {
            let pres = pres.clone();
            let dims = dims.clone();
            checks.push(check(
                "declared-dims",
                format!("the graded basis matches the declared dimension table through degree {cap}"),
                move || {
                    let top = cap.min(dims.len().saturating_sub(1));
                    let got = pres.poincare(top);
                    for (n, &want) in dims.iter().enumerate().take(top + 1) {
                        if got.get(n) != want {
                            return Outcome::fail_at(
                                n,
                                format!("basis has dimension {} in degree {n}, table says {want}", got.get(n)),
                            );
                        }
                    }
                    Outcome::pass()
                },
            ));
        }
        None => {}
    }

    for &(n, want) in spots {
        if cap < n {
            continue;
        }
        let pres = pres.clone();
        checks.push(check(
            format!("dim-{n}"),
            format!("the basis in degree {n} has dimension {want}"),
            move || {
                let got = pres.basis_in_degree(n).len() as u64;
                if got == want {
                    Outcome::pass().at(n)
                } else {
                    Outcome::fail_at(n, format!("basis has dimension {got}"))
                }
            },
        ));
    }

    {
        let pres = pres.clone();
        let cop = cop.clone();
        checks.push(check(
            "bialgebra",
            format!(
                "the stated reduced coproducts extend to a counital, coassociative \
                 algebra map respecting every commutator and height, through degree {cap}"
            ),
            move || match verify_bialgebra(&pres, &cop, cap) {
                Ok(_) => Outcome::pass(),
                Err(f) => Outcome::fail(f.to_string()),
            },
        ));
    }

    checks.push(check(
        "steenrod-module",
        format!(
            "the stated operations extend to a Steenrod module structure satisfying \
             the Cartan formula, the quotient relations, and all Adem instances \
             through degree {cap}"
        ),
        move || match verify_steenrod_module(&pres, &cop, &action, cap) {
            Ok(r) => Outcome::pass_with(format!(
                "{} relation, {} height, {} Adem, {} coproduct instances",
                r.relation_instances, r.height_instances, r.adem_instances, r.coproduct_instances
            )),
            Err(f) => Outcome::fail(f.to_string()),
        },
    ));

    checks
}

fn serre_checks(suite: &str, page: AlgebraFile, cap: usize) -> Result<Vec<Check>, SuiteError> {
    let Some(diff) = page.differential else {
        return Err(SuiteError::OverrideInvalid {
            suite: suite.to_string(),
            reason: "the input carries no differential".to_string(),
        });
    };
    let pres = Arc::new(page.presentation);
    let diff = Arc::new(diff);
    let reference = fixtures::algebra("loops-g2");
    let ref_pres = Arc::new(reference.presentation);
    let ref_formula = match &reference.expect {
        Some(Expectation::Product(factors)) => format_product(factors),
        _ => "the reference loop-space basis".to_string(),
    };

    let mut checks = Vec::new();
    {
        let pres = pres.clone();
        let diff = diff.clone();
        checks.push(check(
            "derivation",
            "the declared differential is a square-zero derivation respecting the presentation",
            move || match verify_derivation(&pres, &diff) {
                Ok(()) => Outcome::pass(),
                Err(f) => Outcome::fail(f.to_string()),
            },
        ));
    }
    {
        let pres = pres.clone();
        let diff = diff.clone();
        let ref_pres = ref_pres.clone();
        checks.push(check(
            "homology-matches",
            format!("the homology of the page equals {ref_formula} degree by degree through {cap}"),
            move || {
                let got = match homology_of_derivation(&pres, &diff, cap) {
                    Ok(h) => h,
                    Err(e) => return Outcome::fail(e.to_string()),
                };
                let want = ref_pres.poincare(cap);
                match got.first_mismatch(&want) {
                    None => Outcome::pass(),
                    Some(n) => Outcome::fail_at(
                        n,
                        format!("homology has dimension {} in degree {n}, want {}", got.get(n), want.get(n)),
                    ),
                }
            },
        ));
    }
    if cap >= 10 {
        checks.push(check(
            "dim-10",
            "the homology of the page has dimension 2 in degree 10",
            move || {
                let got = match homology_of_derivation(&pres, &diff, 10) {
                    Ok(h) => h.get(10),
                    Err(e) => return Outcome::fail(e.to_string()),
                };
                if got == 2 {
                    Outcome::pass().at(10)
                } else {
                    Outcome::fail_at(10, format!("homology has dimension {got}"))
                }
            },
        ));
    }
    Ok(checks)
}

fn bss_checks(schedule: BssSchedule, cap: usize, opening: (&str, &str)) -> Vec<Check> {
    let schedule = Arc::new(schedule);
    let (source, target) = (opening.0.to_string(), opening.1.to_string());
    let mut checks = Vec::new();
    {
        let schedule = schedule.clone();
        checks.push(check(
            "opening-differential",
            format!(
                "the opening page's differential is the stated degree-one operation, \
                 sending {source} to {target}"
            ),
            move || {
                let stage = &schedule.stages[0];
                let Some(g) = stage
                    .pres
                    .generators()
                    .iter()
                    .position(|g| g.name == source)
                else {
                    return Outcome::fail(format!("no generator named `{source}`"));
                };
                let want = match stage.pres.generator_element(&target) {
                    Ok(e) => e,
                    Err(e) => return Outcome::fail(e.to_string()),
                };
                if stage.diff.of_generator(g) == &want {
                    Outcome::pass()
                } else {
                    Outcome::fail(format!(
                        "d({source}) = `{}`",
                        stage.pres.format_element(stage.diff.of_generator(g))
                    ))
                }
            },
        ));
    }
    checks.push(check(
        "ladder",
        format!(
            "each page's homology equals the next page's basis, and the final page \
             collapses to the ground field, through degree {cap}"
        ),
        move || match run_bss(&schedule, cap) {
            Ok(report) => Outcome::pass_with(format!(
                "{} pages collapse to the ground field",
                report.stages
            )),
            Err(f) => Outcome::fail(f.to_string()),
        },
    ));
    checks
}

enum RingSpot {
    /// The Gröbner basis has exactly these leading monomials.
    Leads(&'static [&'static str]),
    /// The quotient has exactly these standard monomials in one degree.
    Standard(usize, &'static [&'static str]),
}

fn cotor_checks(
    source: CoalgebraSource,
    reference: AlgebraFile,
    cap: usize,
    spot: Option<RingSpot>,
) -> Vec<Check> {
    let source = Arc::new(source);
    let ref_pres = Arc::new(reference.presentation);
    let ref_formula = match &reference.expect {
        Some(Expectation::Product(factors)) => format_product(factors),
        _ => "the reference loop-space basis".to_string(),
    };

    let mut checks = Vec::new();

    if let Some(spot) = spot {
        if let CoalgebraSource::Ring(_) = *source {
            let source = source.clone();
            match spot {
                RingSpot::Leads(want) => {
                    checks.push(check(
                        "groebner-leads",
                        format!(
                            "the defining relations complete to a Gröbner basis with \
                             leading monomials {{{}}}",
                            want.join(", ")
                        ),
                        move || {
                            let CoalgebraSource::Ring(r) = &*source else {
                                unreachable!("guarded above");
                            };
                            let gb = r.ring.groebner_basis(cap + 2);
                            let mut got: Vec<String> = gb
                                .leading_monomials()
                                .map(|m| r.ring.format_monomial(m))
                                .collect();
                            got.sort();
                            let mut expected: Vec<String> =
                                want.iter().map(|s| s.to_string()).collect();
                            expected.sort();
                            if got == expected {
                                Outcome::pass()
                            } else {
                                Outcome::fail(format!("leading monomials {{{}}}", got.join(", ")))
                            }
                        },
                    ));
                }
                RingSpot::Standard(degree, want) => {
                    checks.push(check(
                        format!("standard-monomials-{degree}"),
                        format!(
                            "the quotient basis in degree {degree} is {{{}}}",
                            want.join(", ")
                        ),
                        move || {
                            let CoalgebraSource::Ring(r) = &*source else {
                                unreachable!("guarded above");
                            };
                            let gb = r.ring.groebner_basis(degree);
                            let mut got: Vec<String> = gb
                                .standard_monomials(degree)
                                .iter()
                                .map(|m| r.ring.format_monomial(m))
                                .collect();
                            got.sort();
                            let mut expected: Vec<String> =
                                want.iter().map(|s| s.to_string()).collect();
                            expected.sort();
                            if got == expected {
                                Outcome::pass().at(degree)
                            } else {
                                Outcome::fail_at(
                                    degree,
                                    format!("basis {{{}}}", got.join(", ")),
                                )
                            }
                        },
                    ));
                }
            }
        }
    }

    checks.push(check(
        "cotor-matches",
        format!(
            "the cobar homology of the input coalgebra equals {ref_formula} \
             degree by degree through {cap}"
        ),
        move || {
            let coalg = match source.build(cap + 2) {
                Ok(c) => c,
                Err(e) => return Outcome::fail(e),
            };
            let got = match cobar::cotor(&coalg, cap) {
                Ok(d) => d,
                Err(e) => return Outcome::fail(e.to_string()),
            };
            let want = ref_pres.poincare(cap);
            match got.first_mismatch(&want) {
                None => Outcome::pass(),
                Some(n) => Outcome::fail_at(
                    n,
                    format!(
                        "cobar homology has dimension {} in degree {n}, want {}",
                        got.get(n),
                        want.get(n)
                    ),
                ),
            }
        },
    ));

    checks
}

struct BoundaryClaim {
    /// The cobar class, as words of basis-element names.
    class: &'static [&'static [&'static str]],
    /// The loop-space relation the boundary forces, for the anchor text.
    forces: &'static str,
    /// One-letter classes that must survive, with what they represent.
    letters: &'static [(&'static str, &'static str)],
}

fn class_from_names(
    coalg: &CoalgebraData,
    words: &[&[&str]],
) -> Result<CobarElement, String> {
    let mut class = CobarElement::new();
    for word in words {
        let mut w: CobarWord = Vec::with_capacity(word.len());
        for name in *word {
            let Some(id) = cobar::letter_named(coalg, name) else {
                return Err(format!("no basis element named `{name}`"));
            };
            w.push(id);
        }
        class.insert(w);
    }
    Ok(class)
}

fn format_class(words: &[&[&str]]) -> String {
    words
        .iter()
        .map(|w| format!("[{}]", w.join(" | ")))
        .collect::<Vec<_>>()
        .join(" + ")
}

fn boundary_checks(source: CoalgebraSource, cap: usize, claim: BoundaryClaim) -> Vec<Check> {
    let source = Arc::new(source);
    let mut checks = Vec::new();

    {
        let source = source.clone();
        let class_words = claim.class;
        checks.push(check(
            "relation-bounds",
            format!(
                "the cobar class {} is a boundary, forcing {} in loop-space homology",
                format_class(class_words),
                claim.forces
            ),
            move || {
                let coalg = match source.build(cap) {
                    Ok(c) => c,
                    Err(e) => return Outcome::fail(e),
                };
                let class = match class_from_names(&coalg, class_words) {
                    Ok(c) => c,
                    Err(e) => return Outcome::fail(e),
                };
                let degree = class
                    .iter()
                    .next()
                    .map(|w| cobar::word_degree(&coalg, w))
                    .unwrap_or(0);
                match cobar::is_boundary(&coalg, &class) {
                    Ok(BoundaryVerdict::Boundary { preimage }) => {
                        // Re-verify the certificate independently.
                        if cobar::differential(&coalg, &preimage) != class {
                            return Outcome::fail_at(
                                degree,
                                "solver returned a preimage whose boundary is not the class"
                                    .to_string(),
                            );
                        }
                        Outcome::pass_with(format!(
                            "class = d({})",
                            cobar::format_element(&coalg, &preimage)
                        ))
                        .at(degree)
                    }
                    Ok(BoundaryVerdict::NotABoundary) => {
                        Outcome::fail_at(degree, "the class is a cycle but not a boundary".to_string())
                    }
                    Err(e) => Outcome::fail_at(degree, e.to_string()),
                }
            },
        ));
    }

    {
        let source = source.clone();
        let letters = claim.letters;
        let listed = letters
            .iter()
            .map(|(l, _)| format!("[{l}]"))
            .collect::<Vec<_>>()
            .join(", ");
        let represents = letters
            .iter()
            .map(|&(_, r)| r)
            .collect::<Vec<_>>()
            .join(", ");
        checks.push(check(
            "letters-survive",
            format!(
                "the one-letter classes {listed} are cycles but not boundaries; \
                 they represent {represents}"
            ),
            move || {
                let coalg = match source.build(cap) {
                    Ok(c) => c,
                    Err(e) => return Outcome::fail(e),
                };
                for (name, represents) in letters {
                    let class = match class_from_names(&coalg, &[&[name]]) {
                        Ok(c) => c,
                        Err(e) => return Outcome::fail(e),
                    };
                    match cobar::is_boundary(&coalg, &class) {
                        Ok(BoundaryVerdict::NotABoundary) => {}
                        Ok(BoundaryVerdict::Boundary { .. }) => {
                            return Outcome::fail(format!(
                                "[{name}] bounds, so it cannot represent {represents}"
                            ));
                        }
                        Err(e) => return Outcome::fail(e.to_string()),
                    }
                }
                Outcome::pass()
            },
        ));
    }

    checks
}

fn resolution_checks(cap: usize) -> Vec<Check> {
    let mut checks = Vec::new();

    checks.push(check(
        "complex",
        format!(
            "the twisted tensor complex over P[x7]/(x7^4) (x) E[y11, z13] squares \
             to zero and is acyclic, as are both of its tensor factors, through degree {cap}"
        ),
        move || match resolution::verify_resolution(cap) {
            Ok(r) => Outcome::pass_with(format!(
                "{} basis elements; {} squares expanded; {} factors exact",
                r.basis_elements, r.square_zero_checked, r.factors_checked
            )),
            Err(f) => Outcome::fail(f.to_string()),
        },
    ));

    let ext_cap = cap.min(28);
    checks.push(check(
        "ext-matches-cotor",
        format!(
            "the generator count of the resolution's dual equals the cobar homology \
             of the exterior coalgebra on degrees 7, 11, 13, 14, coefficientwise \
             through degree {ext_cap}"
        ),
        move || {
            let got = match resolution::ext_dims(ext_cap) {
                Ok(d) => d,
                Err(f) => return Outcome::fail(f.to_string()),
            };
            let file = fixtures::algebra("di4-homology");
            let coalg = match CoalgebraData::from_presented(
                &file.presentation,
                &file.coproduct,
                ext_cap + 2,
            ) {
                Ok(c) => c,
                Err(e) => return Outcome::fail(e.to_string()),
            };
            let want = match cobar::cotor(&coalg, ext_cap) {
                Ok(d) => d,
                Err(e) => return Outcome::fail(e.to_string()),
            };
            match got.first_mismatch(&want) {
                None => Outcome::pass(),
                Some(n) => Outcome::fail_at(
                    n,
                    format!(
                        "resolution gives dimension {} in degree {n}, cobar homology gives {}",
                        got.get(n),
                        want.get(n)
                    ),
                ),
            }
        },
    ));

    if cap >= 26 {
        checks.push(check(
            "ext-basis-26",
            "the resolution's dual basis in degree 26 is {g1(a)*g2(b), g1(e)}",
            move || {
                let got = resolution::ext_basis_in_degree(26);
                let want = vec!["g1(a)*g2(b)".to_string(), "g1(e)".to_string()];
                if got == want {
                    Outcome::pass().at(26)
                } else {
                    Outcome::fail_at(26, format!("basis {{{}}}", got.join(", ")))
                }
            },
        ));
    }

    checks
}

fn nu2_checks(cap: usize) -> Vec<Check> {
    let mut checks = Vec::new();

    checks.push(check(
        "identity-range",
        format!(
            "for every odd q with 3 <= q <= {cap}, the 2-adic valuations \
             r_i = nu2(q^i - 1) satisfy r2 = r6 = r14, r4 = r2 + 1, and \
             r2 = nu2(k) + 3 where q = 4k +- 1"
        ),
        move || {
            let mut count = 0u64;
            let mut q = 3u64;
            while (q as usize) <= cap {
                let exps = match TorsionExponents::new(q) {
                    Ok(e) => e,
                    Err(e) => return Outcome::fail(format!("q = {q}: {e}")),
                };
                if let Err(msg) = exps.verify_identities() {
                    return Outcome::fail(format!("q = {q}: {msg}"));
                }
                count += 1;
                q += 2;
            }
            Outcome::pass_with(format!("{count} values of q checked"))
        },
    ));

    for &(q, r2, r4, r6, r14) in &[(3u64, 3, 4, 3, 3), (5, 3, 4, 3, 3), (7, 4, 5, 4, 4)] {
        if cap < q as usize {
            continue;
        }
        checks.push(check(
            format!("q-{q}"),
            format!("(r2, r4, r6, r14)({q}) = ({r2}, {r4}, {r6}, {r14})"),
            move || {
                let exps = match TorsionExponents::new(q) {
                    Ok(e) => e,
                    Err(e) => return Outcome::fail(e.to_string()),
                };
                let got = (exps.r2, exps.r4, exps.r6, exps.r14);
                if got == (r2, r4, r6, r14) {
                    Outcome::pass()
                } else {
                    Outcome::fail(format!("got {got:?}"))
                }
            },
        ));
    }

    checks
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_suites_are_rejected_with_the_available_list() {
        match run_suite("no-such-suite", 10, 1) {
            Err(SuiteError::UnknownSuite { available, .. }) => {
                assert!(available.contains("theorem1"));
            }
            other => panic!("expected UnknownSuite, got {other:?}"),
        }
    }

    #[test]
    fn cap_zero_passes_vacuously() {
        let report = run_suite("theorem1", 0, 1).unwrap();
        assert!(report.passed(), "{}", report.render_text());
        assert!(report.checks.iter().all(|c| c.status == CheckStatus::Pass));
    }

    #[test]
    fn theorem1_at_modest_cap_passes_every_check() {
        let report = run_suite("theorem1", 12, 2).unwrap();
        assert!(report.passed(), "{}", report.render_text());
        let ids: Vec<&str> = report.checks.iter().map(|c| c.check.as_str()).collect();
        assert_eq!(
            ids,
            [
                "confluence",
                "declared-product",
                "dim-5",
                "dim-8",
                "dim-10",
                "bialgebra",
                "steenrod-module"
            ]
        );
    }

    #[test]
    fn corrupt_commutator_demo_fails_at_confluence_with_the_documented_witness() {
        let report = run_suite("theorem1-corrupt-demo", 20, 1).unwrap();
        assert!(!report.passed());
        let confluence = report
            .checks
            .iter()
            .find(|c| c.check == "confluence")
            .unwrap();
        assert_eq!(confluence.status, CheckStatus::Fail);
        let witness = confluence.witness.as_deref().unwrap();
        assert!(witness.contains("z6*z6*a4"), "witness: {witness}");
        assert!(witness.contains("a4^4"), "witness: {witness}");
    }

    #[test]
    fn corrupt_coproduct_demo_fails_only_the_bialgebra_check() {
        let report = run_suite("theorem1-corrupt-coproduct-demo", 20, 1).unwrap();
        for c in &report.checks {
            if c.check == "bialgebra" {
                assert_eq!(c.status, CheckStatus::Fail);
                let witness = c.witness.as_deref().unwrap();
                assert!(witness.contains("a4"), "witness: {witness}");
            } else {
                assert_eq!(c.status, CheckStatus::Pass, "{} should pass", c.check);
            }
        }
    }

    #[test]
    fn corrupt_steenrod_demo_fails_only_the_module_check() {
        let report = run_suite("theorem1-corrupt-steenrod-demo", 20, 1).unwrap();
        for c in &report.checks {
            if c.check == "steenrod-module" {
                assert_eq!(c.status, CheckStatus::Fail);
                let witness = c.witness.as_deref().unwrap();
                assert!(witness.contains("a4"), "witness: {witness}");
            } else {
                assert_eq!(c.status, CheckStatus::Pass, "{} should pass", c.check);
            }
        }
    }

    #[test]
    fn machine_rendering_emits_one_record_per_check_with_all_fields() {
        let report = run_suite("nu2-range", 9, 1).unwrap();
        let rendered = report.render_machine();
        let lines: Vec<&str> = rendered.lines().collect();
        assert_eq!(lines.len(), report.checks.len());
        for line in lines {
            let v: serde_json::Value = serde_json::from_str(line).unwrap();
            for field in ["suite", "check", "anchor", "status", "degree", "witness", "millis"] {
                assert!(v.get(field).is_some(), "missing field {field} in {line}");
            }
            assert_eq!(v["suite"], "nu2-range");
        }
    }

    #[test]
    fn boundary_suite_produces_the_documented_witness() {
        let report = run_suite("boundary-g2", 12, 2).unwrap();
        assert!(report.passed(), "{}", report.render_text());
        let bounds = report
            .checks
            .iter()
            .find(|c| c.check == "relation-bounds")
            .unwrap();
        let witness = bounds.witness.as_deref().unwrap();
        assert!(witness.contains("y3*t7"), "witness: {witness}");
        assert_eq!(bounds.degree, Some(8));
    }

    #[test]
    fn serre_suite_passes_at_the_anchored_degree() {
        let report = run_suite("serre-g2", 12, 2).unwrap();
        assert!(report.passed(), "{}", report.render_text());
        assert!(report.checks.iter().any(|c| c.check == "dim-10"));
    }

    #[test]
    fn overrides_are_rejected_where_meaningless() {
        let file = fixtures::load("loops-bg2q");
        match run_suite_with("resolution", 10, 1, Some(file)) {
            Err(SuiteError::OverrideNotAccepted { suite }) => assert_eq!(suite, "resolution"),
            other => panic!("expected OverrideNotAccepted, got {other:?}"),
        }
        let ring = fixtures::load("bg2q-cohomology");
        match run_suite_with("theorem1", 10, 1, Some(ring)) {
            Err(SuiteError::OverrideKind { .. }) => {}
            other => panic!("expected OverrideKind, got {other:?}"),
        }
    }
}
