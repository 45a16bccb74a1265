//! Graded quotients by monomial-multiple spans: Jacobian ideals, Milnor
//! numbers, reduced monomial bases and the regular-sequence test.

use num_traits::One;
use serde::Serialize;
use thiserror::Error;

use crate::linalg::{rank_of, Echelon, SparseVec};
use crate::poisson::PlanarSplit;
use crate::poly::{monomial_basis, GradedSliceBasis, Monomial, Polynomial, WeightSystem};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SingularityError {
    #[error("singularity is not isolated")]
    NonIsolated,
    #[error("generator is not weight homogeneous")]
    NotHomogeneous,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Milnor {
    Isolated(u64),
    NonIsolated,
}

impl Milnor {
    pub fn value(self) -> Option<u64> {
        match self {
            Milnor::Isolated(n) => Some(n),
            Milnor::NonIsolated => None,
        }
    }
}

impl std::fmt::Display for Milnor {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Milnor::Isolated(n) => write!(f, "{n}"),
            Milnor::NonIsolated => write!(f, "NON_ISOLATED"),
        }
    }
}

/// Homogeneous ideal generators with their weighted degrees.
#[derive(Debug, Clone)]
pub struct GradedIdeal {
    generators: Vec<(Polynomial, u64)>,
    weights: WeightSystem,
}

impl GradedIdeal {
    pub fn new(generators: &[Polynomial], w: &WeightSystem) -> Result<Self, SingularityError> {
        let mut out = Vec::new();
        for g in generators.iter().filter(|g| !g.is_zero()) {
            let d = g
                .homogeneous_degree(w)
                .ok_or(SingularityError::NotHomogeneous)?;
            out.push((g.clone(), d));
        }
        Ok(GradedIdeal {
            generators: out,
            weights: w.clone(),
        })
    }

    pub fn jacobian(p: &Polynomial, w: &WeightSystem) -> Result<Self, SingularityError> {
        let partials: Vec<Polynomial> = (0..p.nvars()).map(|i| p.derivative(i)).collect();
        GradedIdeal::new(&partials, w)
    }

    /// Coordinates of the spanning set `{m * g}` of the ideal's slice at `grade`.
    fn slice_span(&self, basis: &GradedSliceBasis) -> Vec<SparseVec> {
        let grade = basis.grade();
        let mut rows = Vec::new();
        for (g, d) in &self.generators {
            for m in monomial_basis(grade - *d as i64, &self.weights).monomials() {
                let mut row: SparseVec = g
                    .mul_monomial(m)
                    .terms()
                    .map(|(t, c)| (basis.index_of(t).expect("homogeneous product"), c.clone()))
                    .collect();
                row.sort_by_key(|(i, _)| *i);
                rows.push(row);
            }
        }
        rows
    }

    /// `dim (A/I)_grade`.
    pub fn quotient_dim(&self, grade: i64) -> u64 {
        let basis = monomial_basis(grade, &self.weights);
        if basis.is_empty() {
            return 0;
        }
        let rank = rank_of(&self.slice_span(&basis), basis.len());
        (basis.len() - rank) as u64
    }

    pub fn quotient_dims(&self, bound: i64) -> Vec<u64> {
        (0..=bound).map(|d| self.quotient_dim(d)).collect()
    }

    /// Monomials of degree `grade` that are not leading terms of the slice
    /// span: the smallest monomials surviving elimination.
    pub fn standard_monomials(&self, grade: i64) -> Vec<Monomial> {
        let basis = monomial_basis(grade, &self.weights);
        if basis.is_empty() {
            return Vec::new();
        }
        let ech = Echelon::new(&self.slice_span(&basis), basis.len(), false);
        ech.free_columns()
            .into_iter()
            .map(|c| basis.monomials()[c])
            .collect()
    }

    /// Whether `extra` (homogeneous of degree `grade`) spans `(A/I)_grade`
    /// and is linearly independent there.
    pub fn is_quotient_basis(&self, grade: i64, extra: &[Polynomial]) -> bool {
        let basis = monomial_basis(grade, &self.weights);
        let mut rows = self.slice_span(&basis);
        let ideal_rank = rank_of(&rows, basis.len());
        for p in extra {
            let mut row: SparseVec = Vec::new();
            for (m, c) in p.terms() {
                match basis.index_of(m) {
                    Some(i) => row.push((i, c.clone())),
                    None => return false,
                }
            }
            row.sort_by_key(|(i, _)| *i);
            rows.push(row);
        }
        let total = rank_of(&rows, basis.len());
        total == basis.len() && total - ideal_rank == extra.len()
    }
}

/// One past the socle degree `n*deg(P) - 2|w|` of a quasi-homogeneous
/// isolated singularity in `n` variables, clamped at zero.
pub fn milnor_cutoff(p_degree: u64, w: &WeightSystem) -> i64 {
    let socle = w.nvars() as i64 * p_degree as i64 - 2 * w.total() as i64;
    (socle + 1).max(0)
}

/// Quotient dims of the Jacobian ideal for grades `0..=bound`.
pub fn jacobian_quotient_dims(
    p: &Polynomial,
    w: &WeightSystem,
    bound: i64,
) -> Result<Vec<u64>, SingularityError> {
    Ok(GradedIdeal::jacobian(p, w)?.quotient_dims(bound))
}

/// Graded singularity ring `A/(dP/dx_i)`.
#[derive(Debug, Clone, Serialize)]
pub struct SingularityRing {
    pub source: String,
    pub cutoff: i64,
    /// Grades `0..cutoff + max weight`.
    pub quotient_dims: Vec<u64>,
    pub basis: Vec<Monomial>,
    pub milnor: Milnor,
}

/// Computes the quotient below the cutoff and verifies that it vanishes on
/// `max weight` consecutive grades from the cutoff on, which forces it to
/// vanish in every higher grade.
pub fn singularity_ring(
    p: &Polynomial,
    w: &WeightSystem,
) -> Result<SingularityRing, SingularityError> {
    let degree = p
        .homogeneous_degree(w)
        .ok_or(SingularityError::NotHomogeneous)?;
    let ideal = GradedIdeal::jacobian(p, w)?;
    let cutoff = milnor_cutoff(degree, w);
    let wmax = *w.as_slice().iter().max().expect("weights") as i64;
    let quotient_dims = ideal.quotient_dims(cutoff + wmax - 1);
    let isolated = quotient_dims[cutoff as usize..].iter().all(|d| *d == 0);
    let (milnor, basis) = if isolated {
        let basis: Vec<Monomial> = (0..cutoff)
            .flat_map(|d| ideal.standard_monomials(d))
            .collect();
        (Milnor::Isolated(quotient_dims.iter().sum()), basis)
    } else {
        (Milnor::NonIsolated, Vec::new())
    };
    Ok(SingularityRing {
        source: p.to_string(),
        cutoff,
        quotient_dims,
        basis,
        milnor,
    })
}

pub fn milnor_number(p: &Polynomial, w: &WeightSystem) -> Result<Milnor, SingularityError> {
    Ok(singularity_ring(p, w)?.milnor)
}

/// Reduced monomial representatives of `A/(dP)`, in increasing grade.
pub fn sing_basis(p: &Polynomial, w: &WeightSystem) -> Result<Vec<Monomial>, SingularityError> {
    let ring = singularity_ring(p, w)?;
    match ring.milnor {
        Milnor::Isolated(_) => Ok(ring.basis),
        Milnor::NonIsolated => Err(SingularityError::NonIsolated),
    }
}

/// Ideal `(dP~/dx, dP~/dy, z^(r+2))`, the Jacobian ideal of
/// `P' = P~ + z^(r+3)/(r+3)`. Its generators are homogeneous even though `P'`
/// is not.
pub fn deformed_jacobian_ideal(
    split: &PlanarSplit,
    w: &WeightSystem,
) -> Result<GradedIdeal, SingularityError> {
    let pt = split.planar_casimir.to_spatial();
    let z_power = Polynomial::monomial(3, Monomial([0, 0, split.z_exponent]), One::one());
    GradedIdeal::new(&[pt.derivative(0), pt.derivative(1), z_power], w)
}

/// Quotient dims of `A_sing(P')` for grades `0..=bound`.
pub fn deformed_quotient_dims(
    split: &PlanarSplit,
    w: &WeightSystem,
    bound: i64,
) -> Result<Vec<u64>, SingularityError> {
    Ok(deformed_jacobian_ideal(split, w)?.quotient_dims(bound))
}

/// The products `z^i * theta_k`, `0 <= i <= r`, of the planar representatives.
pub fn lifted_planar_basis(split: &PlanarSplit) -> Result<Vec<Polynomial>, SingularityError> {
    let thetas = sing_basis(&split.planar_casimir, &split.planar_weights)?;
    let mut out = Vec::new();
    for i in 0..=split.r() {
        for t in &thetas {
            let m = Monomial([t.exponent(0), t.exponent(1), i]);
            out.push(Polynomial::monomial(3, m, One::one()));
        }
    }
    Ok(out)
}

/// Checks grade by grade that `{z^i theta_k}` is a basis of `A/(dP)`.
pub fn lifted_basis_matches(
    casimir: &Polynomial,
    split: &PlanarSplit,
    w: &WeightSystem,
) -> Result<bool, SingularityError> {
    let ring = singularity_ring(casimir, w)?;
    if ring.milnor == Milnor::NonIsolated {
        return Err(SingularityError::NonIsolated);
    }
    let lifted = lifted_planar_basis(split)?;
    let ideal = GradedIdeal::jacobian(casimir, w)?;
    let top = ring.quotient_dims.len() as i64;
    for d in 0..top {
        let here: Vec<Polynomial> = lifted
            .iter()
            .filter(|p| p.homogeneous_degree(w) == Some(d as u64))
            .cloned()
            .collect();
        if !ideal.is_quotient_basis(d, &here) {
            return Ok(false);
        }
    }
    Ok(lifted
        .iter()
        .all(|p| p.homogeneous_degree(w).is_some_and(|d| (d as i64) < top)))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RegularSequenceVerdict {
    pub passed: bool,
    pub bound: i64,
    /// First grade `d` at which multiplication by `lambda` fails to be
    /// injective on `(A/(P))_d`; `None` with `passed = false` means a unit.
    pub failing_grade: Option<i64>,
}

/// Bounded check that `(lambda, P)` is a regular sequence.
///
/// With `e = deg lambda - deg P`, injectivity of `lambda` on `(A/(P))_d` is
/// `rank(lambda A_d + P A_(d+e)) = dim A_d + dim A_(d+e) - dim A_(d - deg P)`.
pub fn regular_sequence_check(
    lambda: &Polynomial,
    p: &Polynomial,
    w: &WeightSystem,
    bound: i64,
) -> Result<RegularSequenceVerdict, SingularityError> {
    let dl = lambda
        .homogeneous_degree(w)
        .ok_or(SingularityError::NotHomogeneous)? as i64;
    let dp = p
        .homogeneous_degree(w)
        .ok_or(SingularityError::NotHomogeneous)? as i64;
    if dl == 0 || dp == 0 || lambda.is_zero() || p.is_zero() {
        return Ok(RegularSequenceVerdict {
            passed: false,
            bound,
            failing_grade: None,
        });
    }
    let ideal = GradedIdeal::new(&[lambda.clone(), p.clone()], w)?;
    let dim = |d: i64| monomial_basis(d, w).len();
    for d in 0..=bound {
        let target = monomial_basis(d + dl, w);
        let rank = rank_of(&ideal.slice_span(&target), target.len());
        let expected = dim(d) + dim(d + dl - dp) - dim(d - dp);
        if rank != expected {
            return Ok(RegularSequenceVerdict {
                passed: false,
                bound,
                failing_grade: Some(d),
            });
        }
    }
    Ok(RegularSequenceVerdict {
        passed: true,
        bound,
        failing_grade: None,
    })
}
