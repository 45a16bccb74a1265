//! The analysis pipeline behind `analyze` and `verify`, and its report.

use serde::Serialize;
use thiserror::Error;

use super::problem::{Check, Hypothesis, ProblemSpec, SpecError};
use crate::engine::checks::{
    divergence_identity, kernel_structure_check, modular_triviality_check, KernelVerdict,
    ModularClass,
};
use crate::engine::dims::{cohomology_tables, euler_consistency, homology_tables};
use crate::engine::lemmas::{lemma_suite, LemmaError, LemmaVerdict};
use crate::engine::series::{
    closed_form_series, quadratic_denominator, sequence_denominator, series_from_sequences,
    RationalSeries, SeriesTruncation,
};
use crate::engine::theorems::{theorem_checks, TheoremVerdict};
use crate::linalg::LinalgError;
use crate::poisson::{modular_field, GjpsStructure, StructureEcho, StructureError};
use crate::poly::{Monomial, Polynomial, PLANAR_VARS};
use crate::singularity::{
    lifted_basis_matches, regular_sequence_check, singularity_ring, Milnor, SingularityError,
};

/// Name under which a failed homogeneity test is reported.
pub const HOMOGENEITY: &str = "homogeneity";

/// Largest standard degree of the monomials `f` in `div X_f = M . grad f`.
const DIVERGENCE_DEGREE: u32 = 5;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Io(String),
    #[error(transparent)]
    Spec(#[from] SpecError),
    #[error("invalid structure: {0}")]
    Invalid(String),
    #[error("hypothesis `{check}` failed: {detail}")]
    Hypothesis { check: String, detail: String },
    #[error("internal error: {0}")]
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Io(_) | CliError::Spec(_) | CliError::Invalid(_) => 2,
            CliError::Hypothesis { .. } => 3,
            CliError::Internal(_) => 1,
        }
    }

    fn hypothesis(check: &str, detail: impl Into<String>) -> Self {
        CliError::Hypothesis {
            check: check.to_string(),
            detail: detail.into(),
        }
    }
}

impl From<LinalgError> for CliError {
    fn from(e: LinalgError) -> Self {
        CliError::Internal(e.to_string())
    }
}

impl From<SingularityError> for CliError {
    fn from(e: SingularityError) -> Self {
        CliError::Internal(e.to_string())
    }
}

impl From<LemmaError> for CliError {
    fn from(e: LemmaError) -> Self {
        CliError::Internal(e.to_string())
    }
}

/// Builds the structure, mapping construction failures onto exit codes.
pub fn build_structure(spec: &ProblemSpec) -> Result<GjpsStructure, CliError> {
    spec.structure().map_err(|e| match e {
        StructureError::NotHomogeneous(..) => CliError::hypothesis(HOMOGENEITY, e.to_string()),
        StructureError::CasimirNotSplit => {
            CliError::hypothesis(Hypothesis::PlanarSplit.name(), e.to_string())
        }
        other => CliError::Invalid(other.to_string()),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HypothesisVerdict {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

fn mono_string(m: &Monomial, nvars: usize) -> String {
    let p = Polynomial::monomial(nvars, *m, num_traits::One::one());
    if nvars == 2 {
        p.to_string_with(&PLANAR_VARS)
    } else {
        p.to_string()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PlanarMilnor {
    pub casimir: String,
    pub milnor: String,
    pub basis: Vec<String>,
    /// `mu(P) = (r + 1) mu(P~)`.
    pub product_formula: bool,
    /// `{z^i theta_k}` is a basis of the singularity ring of `P`.
    pub lifted_basis: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MilnorReport {
    pub milnor: String,
    pub number: Option<u64>,
    pub basis: Vec<String>,
    /// Quotient dimensions by grade, up to the window that proves finiteness.
    pub quotient_dims: Vec<u64>,
    pub planar: Option<PlanarMilnor>,
}

pub fn milnor_report(s: &GjpsStructure) -> Result<MilnorReport, CliError> {
    let ring = singularity_ring(s.casimir(), s.weights())?;
    let planar = match s.planar_split() {
        Some(split) => {
            let pring = singularity_ring(&split.planar_casimir, &split.planar_weights)?;
            let product_formula = match (ring.milnor, pring.milnor) {
                (Milnor::Isolated(m), Milnor::Isolated(mt)) => m == (split.r() as u64 + 1) * mt,
                _ => false,
            };
            let lifted_basis = ring.milnor != Milnor::NonIsolated
                && lifted_basis_matches(s.casimir(), split, s.weights())?;
            Some(PlanarMilnor {
                casimir: split.planar_casimir.to_string_with(&PLANAR_VARS),
                milnor: pring.milnor.to_string(),
                basis: pring.basis.iter().map(|m| mono_string(m, 2)).collect(),
                product_formula,
                lifted_basis,
            })
        }
        None => None,
    };
    Ok(MilnorReport {
        milnor: ring.milnor.to_string(),
        number: ring.milnor.value(),
        basis: ring.basis.iter().map(|m| mono_string(m, 3)).collect(),
        quotient_dims: ring.quotient_dims,
        planar,
    })
}

/// Computes the hypotheses needed by the selected checks. The first failure
/// aborts with the hypothesis named.
fn validate(spec: &ProblemSpec, s: &GjpsStructure) -> Result<Vec<HypothesisVerdict>, CliError> {
    let mut out = vec![HypothesisVerdict {
        name: HOMOGENEITY.to_string(),
        passed: true,
        detail: format!(
            "deg lambda = {}, deg P = {}",
            s.lambda_degree(),
            s.casimir_degree()
        ),
    }];
    for h in spec.required_hypotheses() {
        let (passed, detail) = match h {
            Hypothesis::RegularSequence => {
                let v =
                    regular_sequence_check(s.lambda(), s.casimir(), s.weights(), spec.max_grade)?;
                let detail = match (v.passed, v.failing_grade) {
                    (true, _) => {
                        format!("lambda is a nonzerodivisor mod P up to grade {}", v.bound)
                    }
                    (false, Some(d)) => format!("lambda is a zero divisor mod P at grade {d}"),
                    (false, None) => "lambda or P is a constant".to_string(),
                };
                (v.passed, detail)
            }
            Hypothesis::IsolatedSingularity => {
                let m = singularity_ring(s.casimir(), s.weights())?.milnor;
                (m != Milnor::NonIsolated, format!("milnor number {m}"))
            }
            Hypothesis::PlanarSplit => match s.planar_split() {
                Some(split) => (
                    true,
                    format!(
                        "P~ = {}, r = {}",
                        split.planar_casimir.to_string_with(&PLANAR_VARS),
                        split.r()
                    ),
                ),
                None => (false, "mode section5 carries no planar split".to_string()),
            },
        };
        if !passed {
            return Err(CliError::hypothesis(h.name(), detail));
        }
        out.push(HypothesisVerdict {
            name: h.name().to_string(),
            passed,
            detail,
        });
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HomologyReport {
    /// `PH_0..PH_3` in form grading.
    pub tables: Vec<SeriesTruncation>,
    pub euler_consistent: bool,
}

/// One homology table against its closed forms.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SeriesComparison {
    pub i: u8,
    pub computed: Vec<u64>,
    pub sequence_derived: String,
    pub sequence_matches: bool,
    /// The printed quadratic closed form, when weights and degrees are `(1,1,1)`, 1, 2.
    pub printed: Option<String>,
    pub printed_matches: Option<bool>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ClosedFormMatch {
    Printed,
    SequenceDerived,
    Both,
    Neither,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SeriesReport {
    pub comparisons: Vec<SeriesComparison>,
    /// Which closed form of `PH_1` the rank computation confirms.
    pub ph1_match: ClosedFormMatch,
}

pub fn is_quadratic(s: &GjpsStructure) -> bool {
    s.weights().as_slice() == [1, 1, 1] && s.lambda_degree() == 1 && s.casimir_degree() == 2
}

/// Over `(1 - t^2)(1 - t)` in the quadratic case, over the product of the
/// `1 - t^{w_i}` and `1 - t^{deg P}` otherwise.
fn display_form(r: &RationalSeries, s: &GjpsStructure) -> String {
    let den = if is_quadratic(s) {
        quadratic_denominator()
    } else {
        sequence_denominator(s.weights(), s.casimir_degree())
    };
    r.numerator_over(&den)
        .map(|n| n.to_string())
        .unwrap_or_else(|| r.to_string())
}

pub fn series_comparison(i: u8, table: &SeriesTruncation, s: &GjpsStructure) -> SeriesComparison {
    let derived = series_from_sequences(i, s.weights(), s.casimir_degree(), s.shift());
    let quadratic = is_quadratic(s);
    let printed = quadratic.then(|| closed_form_series(i));
    SeriesComparison {
        i,
        computed: table.coefficients.clone(),
        sequence_derived: display_form(&derived, s),
        sequence_matches: table.matches(&derived),
        printed: printed.as_ref().map(|p| p.to_string()),
        printed_matches: printed.as_ref().map(|p| table.matches(p)),
    }
}

fn series_report(tables: &[SeriesTruncation], s: &GjpsStructure) -> SeriesReport {
    let comparisons: Vec<SeriesComparison> = (0..=3u8)
        .map(|i| series_comparison(i, &tables[i as usize], s))
        .collect();
    let c1 = &comparisons[1];
    let ph1_match = match (c1.printed_matches.unwrap_or(false), c1.sequence_matches) {
        (true, true) => ClosedFormMatch::Both,
        (true, false) => ClosedFormMatch::Printed,
        (false, true) => ClosedFormMatch::SequenceDerived,
        (false, false) => ClosedFormMatch::Neither,
    };
    SeriesReport {
        comparisons,
        ph1_match,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ModularReport {
    pub field: [String; 3],
    pub class: ModularClass,
    /// `div X_f = M . grad f` for all monomials `f` up to the stated degree.
    pub divergence_identity: bool,
    pub divergence_degree: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Report {
    pub structure: StructureEcho,
    pub mode: super::problem::Mode,
    pub max_grade: i64,
    pub checks: Vec<Check>,
    pub hypotheses: Vec<HypothesisVerdict>,
    pub homology: Option<HomologyReport>,
    /// `PH^0..PH^3` in X-grading.
    pub cohomology: Option<Vec<SeriesTruncation>>,
    pub series: Option<SeriesReport>,
    pub kernel_structure: Option<Vec<KernelVerdict>>,
    pub modular_class: Option<ModularReport>,
    pub milnor: Option<MilnorReport>,
    pub lemmas: Option<Vec<LemmaVerdict>>,
    pub theorems: Option<Vec<TheoremVerdict>>,
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }
}

pub fn run_analysis(spec: &ProblemSpec) -> Result<Report, CliError> {
    let s = build_structure(spec)?;
    let hypotheses = validate(spec, &s)?;
    let max = spec.max_grade;
    let wants = |c: Check| spec.checks.contains(&c);

    let homology = if wants(Check::Homology) || wants(Check::Series) {
        let tables = homology_tables(max, &s)?;
        Some(HomologyReport {
            euler_consistent: euler_consistency(&tables, &s),
            tables,
        })
    } else {
        None
    };
    let cohomology = if wants(Check::Cohomology) || wants(Check::Theorems) {
        Some(cohomology_tables(max, &s)?)
    } else {
        None
    };
    let series = match (&homology, wants(Check::Series)) {
        (Some(h), true) => Some(series_report(&h.tables, &s)),
        _ => None,
    };
    let kernel_structure = if wants(Check::KernelStructure) {
        let mut out = Vec::new();
        for k in 1..=3u8 {
            for d in 0..=max {
                out.push(kernel_structure_check(k, d, &s)?);
            }
        }
        Some(out)
    } else {
        None
    };
    let modular_class = if wants(Check::ModularClass) {
        let field = modular_field(&s).field;
        Some(ModularReport {
            field: field.0.clone().map(|p| p.to_string()),
            class: modular_triviality_check(&s)?,
            divergence_identity: divergence_identity(&s, DIVERGENCE_DEGREE),
            divergence_degree: DIVERGENCE_DEGREE,
        })
    } else {
        None
    };
    let milnor = if wants(Check::Milnor) {
        Some(milnor_report(&s)?)
    } else {
        None
    };
    let lemmas = if wants(Check::Lemmas) {
        Some(lemma_suite(&s, max)?)
    } else {
        None
    };
    let theorems = match (&cohomology, wants(Check::Theorems)) {
        (Some(c), true) => Some(theorem_checks(&s, c)?),
        _ => None,
    };
    Ok(Report {
        structure: s.echo(),
        mode: spec.mode,
        max_grade: max,
        checks: spec.checks.iter().copied().collect(),
        hypotheses,
        homology,
        cohomology,
        series,
        kernel_structure,
        modular_class,
        milnor,
        lemmas,
        theorems,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Note,
}

impl std::fmt::Display for Status {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Note => "NOTE",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyLine {
    pub status: Status,
    pub text: String,
}

impl std::fmt::Display for VerifyLine {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} {}", self.status, self.text)
    }
}

fn line(passed: bool, text: String) -> VerifyLine {
    VerifyLine {
        status: if passed { Status::Pass } else { Status::Fail },
        text,
    }
}

fn note(text: String) -> VerifyLine {
    VerifyLine {
        status: Status::Note,
        text,
    }
}

/// One line per statement exercised. Only oracle-backed comparisons can
/// `FAIL`; a printed closed form that disagrees with the ranks is a `NOTE`.
pub fn verify_lines(r: &Report) -> Vec<VerifyLine> {
    let mut out = Vec::new();
    for h in &r.hypotheses {
        out.push(line(
            h.passed,
            format!("hypothesis {}: {}", h.name, h.detail),
        ));
    }
    if let Some(h) = &r.homology {
        out.push(line(
            h.euler_consistent,
            format!(
                "euler characteristic of PH_* equals that of the form complex to grade {}",
                r.max_grade
            ),
        ));
    }
    if let Some(sr) = &r.series {
        for c in &sr.comparisons {
            out.push(line(
                c.sequence_matches,
                format!(
                    "PH_{} series from exact sequences {}",
                    c.i, c.sequence_derived
                ),
            ));
            match (&c.printed, c.printed_matches) {
                (Some(p), Some(true)) => {
                    out.push(line(true, format!("PH_{} printed series {p}", c.i)))
                }
                (Some(p), Some(false)) => out.push(note(format!(
                    "PH_{} printed series {p} disagrees with the rank computation {:?}",
                    c.i, c.computed
                ))),
                _ => {}
            }
        }
        if r.structure.weights == [1, 1, 1]
            && r.structure.lambda_degree == 1
            && r.structure.casimir_degree == 2
        {
            let named = match sr.ph1_match {
                ClosedFormMatch::Printed => "printed",
                ClosedFormMatch::SequenceDerived => "sequence-derived",
                ClosedFormMatch::Both => "both",
                ClosedFormMatch::Neither => "neither",
            };
            out.push(note(format!(
                "PH_1 rank computation matches the {named} closed form"
            )));
        }
    }
    if let Some(ks) = &r.kernel_structure {
        for k in 1..=3u8 {
            let failing: Vec<i64> = ks
                .iter()
                .filter(|v| v.k == k && !v.passed)
                .map(|v| v.grade)
                .collect();
            let family = match k {
                1 => "grad F + G grad P",
                2 => "grad H x grad P",
                _ => "zero",
            };
            out.push(line(
                failing.is_empty(),
                format!(
                    "ker d_{k} = {family} at grades 0..={}; failing {failing:?}",
                    r.max_grade
                ),
            ));
        }
    }
    if let Some(m) = &r.modular_class {
        out.push(line(
            m.divergence_identity,
            format!(
                "modular field ({}, {}, {}) satisfies div X_f = M . grad f to degree {}",
                m.field[0], m.field[1], m.field[2], m.divergence_degree
            ),
        ));
        let class = match m.class {
            ModularClass::Trivial => "TRIVIAL",
            ModularClass::Nontrivial => "NONTRIVIAL",
        };
        out.push(note(format!("modular class {class}")));
    }
    if let Some(m) = &r.milnor {
        match m.number {
            Some(_) => out.push(line(
                true,
                format!(
                    "milnor number {} with basis {{{}}}",
                    m.milnor,
                    m.basis.join(", ")
                ),
            )),
            None => out.push(note("milnor number NON_ISOLATED".to_string())),
        }
        if let Some(p) = &m.planar {
            out.push(line(
                p.product_formula,
                format!("mu(P) = (r+1) mu(P~) with mu(P~) = {}", p.milnor),
            ));
            out.push(line(
                p.lifted_basis,
                "z^i theta_k is a basis of A_sing(P)".to_string(),
            ));
        }
    }
    if let Some(ls) = &r.lemmas {
        for l in ls {
            out.push(line(l.passed, format!("lemma {}: {}", l.name, l.detail)));
        }
    }
    if let Some(ts) = &r.theorems {
        for t in ts {
            out.push(line(
                t.passed,
                format!("theorem {} to X-grade {}", t.name, r.max_grade),
            ));
        }
    }
    out
}

fn row(values: &[u64]) -> String {
    values
        .iter()
        .map(u64::to_string)
        .collect::<Vec<_>>()
        .join(" ")
}

/// Human-readable tables.
pub fn render_tables(r: &Report) -> String {
    let mut out = String::new();
    let e = &r.structure;
    out.push_str(&format!(
        "lambda = {}, P = {}, weights ({}), shift {}\n",
        e.lambda,
        e.casimir,
        row(&e.weights).replace(' ', ","),
        e.shift
    ));
    if let (Some(pt), Some(rr)) = (&e.planar_casimir, e.r) {
        out.push_str(&format!("P~ = {pt}, r = {rr}\n"));
    }
    for h in &r.hypotheses {
        out.push_str(&format!("{:<22}{}\n", h.name, h.detail));
    }
    if let Some(h) = &r.homology {
        out.push_str(&format!("homology, form grades 0..={}\n", r.max_grade));
        for (i, t) in h.tables.iter().enumerate() {
            out.push_str(&format!("  PH_{i}  {}\n", row(&t.coefficients)));
        }
    }
    if let Some(c) = &r.cohomology {
        out.push_str(&format!(
            "cohomology, X-grades {}..={}\n",
            c[0].offset, r.max_grade
        ));
        for (i, t) in c.iter().enumerate() {
            out.push_str(&format!("  PH^{i}  {}\n", row(&t.coefficients)));
        }
    }
    if let Some(m) = &r.milnor {
        out.push_str(&format!("milnor {}\n", m.milnor));
    }
    out
}
