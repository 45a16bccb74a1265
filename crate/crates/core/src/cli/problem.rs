//! Problem files: flat `key = value` lines, `#` starts a comment.
//!
//! ```text
//! lambda    = z
//! casimir   = x*y + 1/2*z^2
//! weights   = 1, 1, 1
//! max_grade = 12
//! mode      = section6
//! checks    = homology, cohomology, theorems
//! ```

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde::Serialize;
use thiserror::Error;

use crate::poisson::{GjpsStructure, StructureError};
use crate::poly::{parse_polynomial, Polynomial, WeightSystem, SPATIAL_VARS};

pub const DEFAULT_MAX_GRADE: i64 = 15;
/// Larger grades make single slices too big to eliminate in reasonable time.
pub const MAX_GRADE_LIMIT: i64 = 200;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpecError {
    #[error("line {line}: {message}")]
    Line { line: usize, message: String },
    #[error("missing key `{0}`")]
    Missing(&'static str),
    #[error("{0}")]
    Invalid(String),
}

fn at(line: usize, message: impl Into<String>) -> SpecError {
    SpecError::Line {
        line,
        message: message.into(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// Graded homology: homogeneous `lambda`, `P`, regular sequence, isolated singularity.
    Section5,
    /// Additionally `lambda = z` and `P = P~(x,y) + c z^(r+2)`.
    Section6,
}

impl FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "section5" => Ok(Mode::Section5),
            "section6" => Ok(Mode::Section6),
            _ => Err(format!(
                "unknown mode `{s}` (expected section5 or section6)"
            )),
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Section5 => "section5",
            Mode::Section6 => "section6",
        })
    }
}

/// Structural hypotheses a check may depend on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Hypothesis {
    IsolatedSingularity,
    RegularSequence,
    PlanarSplit,
}

impl Hypothesis {
    pub fn name(self) -> &'static str {
        match self {
            Hypothesis::RegularSequence => "regular_sequence",
            Hypothesis::IsolatedSingularity => "isolated_singularity",
            Hypothesis::PlanarSplit => "planar_split",
        }
    }
}

/// A named analysis. Homogeneity is enforced for every check when the
/// structure is built.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Check {
    Homology,
    Cohomology,
    Series,
    KernelStructure,
    ModularClass,
    Milnor,
    Lemmas,
    Theorems,
}

impl Check {
    pub const ALL: [Check; 8] = [
        Check::Homology,
        Check::Cohomology,
        Check::Series,
        Check::KernelStructure,
        Check::ModularClass,
        Check::Milnor,
        Check::Lemmas,
        Check::Theorems,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Check::Homology => "homology",
            Check::Cohomology => "cohomology",
            Check::Series => "series",
            Check::KernelStructure => "kernel_structure",
            Check::ModularClass => "modular_class",
            Check::Milnor => "milnor",
            Check::Lemmas => "lemmas",
            Check::Theorems => "theorems",
        }
    }

    pub fn requires(self) -> &'static [Hypothesis] {
        use Hypothesis::*;
        match self {
            Check::Homology | Check::Series | Check::KernelStructure | Check::Lemmas => {
                &[IsolatedSingularity, RegularSequence]
            }
            Check::Theorems => &[IsolatedSingularity, PlanarSplit],
            Check::Cohomology | Check::ModularClass | Check::Milnor => &[],
        }
    }

    /// The checks run when the file names none.
    pub fn defaults(mode: Mode) -> BTreeSet<Check> {
        Check::ALL
            .into_iter()
            .filter(|c| mode == Mode::Section6 || *c != Check::Theorems)
            .collect()
    }
}

impl FromStr for Check {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Check::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| format!("unknown check `{s}`"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProblemSpec {
    pub lambda_text: String,
    pub casimir_text: String,
    pub lambda: Polynomial,
    pub casimir: Polynomial,
    pub weights: WeightSystem,
    pub max_grade: i64,
    pub mode: Mode,
    pub checks: BTreeSet<Check>,
}

fn parse_weights(value: &str, line: usize) -> Result<WeightSystem, SpecError> {
    let trimmed = value.trim().trim_start_matches('(').trim_end_matches(')');
    let parts: Result<Vec<u64>, _> = trimmed
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|s| !s.is_empty())
        .map(str::parse::<u64>)
        .collect();
    let parts = parts.map_err(|e| at(line, format!("weights: {e}")))?;
    if parts.len() != 3 {
        return Err(at(
            line,
            format!("weights: expected 3 entries, got {}", parts.len()),
        ));
    }
    if parts.contains(&0) {
        return Err(at(line, "weights must be positive"));
    }
    if parts.iter().fold(0u64, |g, w| g.gcd(w)) != 1 {
        return Err(at(line, "weights must have gcd 1"));
    }
    WeightSystem::new(&parts).map_err(|e| at(line, format!("weights: {e}")))
}

impl ProblemSpec {
    pub fn parse(text: &str) -> Result<ProblemSpec, SpecError> {
        let mut lambda = None;
        let mut casimir = None;
        let mut weights = None;
        let mut max_grade = None;
        let mut mode = None;
        let mut checks = None;
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let (key, value) = content
                .split_once('=')
                .ok_or_else(|| at(line, "expected `key = value`"))?;
            let (key, value) = (key.trim(), value.trim());
            let duplicate = || at(line, format!("duplicate key `{key}`"));
            match key {
                "lambda" | "casimir" => {
                    let p = parse_polynomial(value, &SPATIAL_VARS)
                        .map_err(|e| at(line, format!("{key}: {e}")))?;
                    let slot = if key == "lambda" {
                        &mut lambda
                    } else {
                        &mut casimir
                    };
                    if slot.replace((value.to_string(), p)).is_some() {
                        return Err(duplicate());
                    }
                }
                "weights" => {
                    if weights.replace(parse_weights(value, line)?).is_some() {
                        return Err(duplicate());
                    }
                }
                "max_grade" => {
                    let g: i64 = value
                        .parse()
                        .map_err(|e| at(line, format!("max_grade: {e}")))?;
                    if g < 0 {
                        return Err(at(line, "max_grade must be non-negative"));
                    }
                    if g > MAX_GRADE_LIMIT {
                        return Err(at(
                            line,
                            format!("max_grade must be at most {MAX_GRADE_LIMIT}"),
                        ));
                    }
                    if max_grade.replace(g).is_some() {
                        return Err(duplicate());
                    }
                }
                "mode" => {
                    let m: Mode = value.parse().map_err(|e: String| at(line, e))?;
                    if mode.replace(m).is_some() {
                        return Err(duplicate());
                    }
                }
                "checks" => {
                    let set: Result<BTreeSet<Check>, String> = value
                        .split(',')
                        .map(str::trim)
                        .filter(|s| !s.is_empty())
                        .map(str::parse)
                        .collect();
                    let set = set.map_err(|e| at(line, e))?;
                    if checks.replace(set).is_some() {
                        return Err(duplicate());
                    }
                }
                _ => return Err(at(line, format!("unknown key `{key}`"))),
            }
        }
        let (lambda_text, lambda) = lambda.ok_or(SpecError::Missing("lambda"))?;
        let (casimir_text, casimir) = casimir.ok_or(SpecError::Missing("casimir"))?;
        let weights = weights.ok_or(SpecError::Missing("weights"))?;
        let mode = mode.unwrap_or(Mode::Section5);
        if mode == Mode::Section6 && lambda != Polynomial::var(3, 2) {
            return Err(SpecError::Invalid(format!(
                "mode section6 needs lambda = z, got `{lambda_text}`"
            )));
        }
        let checks = checks.unwrap_or_else(|| Check::defaults(mode));
        if mode == Mode::Section5 && checks.contains(&Check::Theorems) {
            return Err(SpecError::Invalid(
                "check `theorems` needs mode = section6".to_string(),
            ));
        }
        Ok(ProblemSpec {
            lambda_text,
            casimir_text,
            lambda,
            casimir,
            weights,
            max_grade: max_grade.unwrap_or(DEFAULT_MAX_GRADE),
            mode,
            checks,
        })
    }

    /// Hypotheses needed by the selected checks, in a fixed order.
    pub fn required_hypotheses(&self) -> BTreeSet<Hypothesis> {
        self.checks
            .iter()
            .flat_map(|c| c.requires().iter().copied())
            .collect()
    }

    /// Builds the structure. Only homogeneity and, in section6 mode, the
    /// split form of the casimir are checked here.
    pub fn structure(&self) -> Result<GjpsStructure, StructureError> {
        match self.mode {
            Mode::Section5 => GjpsStructure::new(
                self.lambda.clone(),
                self.casimir.clone(),
                self.weights.clone(),
            ),
            Mode::Section6 => GjpsStructure::with_planar_split(
                self.lambda.clone(),
                self.casimir.clone(),
                self.weights.clone(),
            ),
        }
    }
}
