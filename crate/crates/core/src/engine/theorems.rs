//! Predicted cohomology dimensions from the structure theorems, compared
//! with the rank computation.

use serde::Serialize;

use super::series::{GradingConvention, SeriesTruncation};
use crate::poisson::GjpsStructure;
use crate::singularity::{deformed_quotient_dims, SingularityError};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TheoremVerdict {
    pub name: String,
    pub passed: bool,
    pub expected: SeriesTruncation,
    pub computed: SeriesTruncation,
}

impl TheoremVerdict {
    fn compare(name: &str, expected: SeriesTruncation, computed: &SeriesTruncation) -> Self {
        let passed = expected.grades().all(|g| expected.at(g) == computed.at(g))
            && computed.grades().all(|g| expected.at(g) == computed.at(g));
        TheoremVerdict {
            name: name.to_string(),
            passed,
            expected,
            computed: computed.clone(),
        }
    }
}

fn multivector_table(
    s: &GjpsStructure,
    max_grade: i64,
    f: impl Fn(i64) -> u64,
) -> SeriesTruncation {
    let offset = -(s.weights().total() as i64);
    SeriesTruncation {
        convention: GradingConvention::Multivector,
        offset,
        max_grade,
        coefficients: (offset..=max_grade).map(f).collect(),
    }
}

/// `1` at `g >= 0` with `g` a multiple of `p`.
fn casimir_count(g: i64, p: i64) -> u64 {
    u64::from(g >= 0 && g % p == 0)
}

/// Whether the extra generator `e_w` appears in `PH^1`.
pub fn euler_branch(s: &GjpsStructure) -> bool {
    let w = s.weights();
    s.casimir_degree() == w.weight(0) + w.weight(1)
}

/// `PH^0 = K[P]`.
pub fn expected_ph0(s: &GjpsStructure, max_grade: i64) -> SeriesTruncation {
    let dp = s.casimir_degree() as i64;
    multivector_table(s, max_grade, |g| casimir_count(g, dp))
}

/// `PH^1 = K[P] (grad lambda x grad P)`, plus `K[P] e_w` when `deg P = w1 + w2`.
///
/// The modular field sits at X-grade `shift`, the Euler field at X-grade 0.
pub fn expected_ph1(s: &GjpsStructure, max_grade: i64) -> SeriesTruncation {
    let dp = s.casimir_degree() as i64;
    let sigma = s.shift();
    let euler = euler_branch(s);
    multivector_table(s, max_grade, |g| {
        casimir_count(g - sigma, dp) + if euler { casimir_count(g, dp) } else { 0 }
    })
}

/// `PH^3 = K[P] (x) A_sing(P')`. `None` without a planar split.
///
/// An element of `X^3` at X-grade `g` has degree `g + |w|`.
pub fn expected_ph3(
    s: &GjpsStructure,
    max_grade: i64,
) -> Result<Option<SeriesTruncation>, SingularityError> {
    let Some(split) = s.planar_split() else {
        return Ok(None);
    };
    let w = s.weights();
    let total = w.total() as i64;
    let dp = s.casimir_degree() as i64;
    let q = deformed_quotient_dims(split, w, max_grade + total)?;
    Ok(Some(multivector_table(s, max_grade, |g| {
        let d = g + total;
        (0..)
            .map(|l| d - l * dp)
            .take_while(|e| *e >= 0)
            .map(|e| q[e as usize])
            .sum()
    })))
}

/// `w1 + w2 - w3 >= 0`, the hypothesis of the `PH^3` description.
pub fn ph3_hypothesis(s: &GjpsStructure) -> bool {
    let w = s.weights();
    w.weight(0) + w.weight(1) >= w.weight(2)
}

/// Theorem comparisons against computed cohomology tables `PH^0..PH^3`.
/// `PH^1` and `PH^3` need `lambda = z` with a planar split; `PH^3` also
/// needs `w1 + w2 >= w3`.
pub fn theorem_checks(
    s: &GjpsStructure,
    cohomology: &[SeriesTruncation],
) -> Result<Vec<TheoremVerdict>, SingularityError> {
    let max = cohomology[0].max_grade;
    let mut out = vec![TheoremVerdict::compare(
        "PH^0",
        expected_ph0(s, max),
        &cohomology[0],
    )];
    if s.planar_split().is_some() {
        let name = if euler_branch(s) {
            "PH^1 (with e_w)"
        } else {
            "PH^1 (modular only)"
        };
        out.push(TheoremVerdict::compare(
            name,
            expected_ph1(s, max),
            &cohomology[1],
        ));
        if ph3_hypothesis(s) {
            if let Some(e) = expected_ph3(s, max)? {
                out.push(TheoremVerdict::compare("PH^3", e, &cohomology[3]));
            }
        }
    }
    Ok(out)
}
