//! Degree-by-degree verification of the kernel, spanning and coset lemmas.

use num_bigint::BigInt;
use num_traits::{One, Signed};
use serde::Serialize;

use crate::linalg::{
    operator_matrix, rank_of, slice_basis, solve, ComplexMap, GradedOperatorMatrix, LinalgError,
    SpaceKind, SparseVec,
};
use crate::poisson::{coboundary_0, modular_field, GjpsStructure};
use crate::poly::{Monomial, Polynomial, Rational, WeightSystem};
use crate::singularity::{sing_basis, SingularityError};
use crate::vector_calculus::{cross, curl, dot, grad, planar_box, planar_dot, planar_grad};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LemmaVerdict {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LemmaError {
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Singularity(#[from] SingularityError),
}

fn one() -> Rational {
    Rational::one()
}

fn mono3(m: &Monomial) -> Polynomial {
    Polynomial::monomial(3, *m, one())
}

fn verdict(name: &str, passed: bool, detail: String) -> LemmaVerdict {
    LemmaVerdict {
        name: name.to_string(),
        passed,
        detail,
    }
}

/// Ranks describing `image + span(extras)` inside `target`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct SpanCount {
    dim: usize,
    image_rank: usize,
    extras: usize,
    joint: usize,
}

impl SpanCount {
    fn spans(&self) -> bool {
        self.joint == self.dim
    }

    fn direct(&self) -> bool {
        self.image_rank + self.extras == self.joint
    }
}

fn span_count(
    m: &GradedOperatorMatrix,
    extras: &[Vec<Polynomial>],
) -> Result<SpanCount, LinalgError> {
    let dim = m.nrows();
    let image_rank = m.rank();
    let mut rows: Vec<SparseVec> = m.columns.clone();
    for e in extras {
        rows.push(m.target.coordinates(e, "claimed basis")?);
    }
    Ok(SpanCount {
        dim,
        image_rank,
        extras: extras.len(),
        joint: rank_of(&rows, dim),
    })
}

fn in_degree(items: &[Polynomial], w: &WeightSystem, degree: i64) -> Vec<Vec<Polynomial>> {
    items
        .iter()
        .filter(|p| p.homogeneous_degree(w).map(|d| d as i64) == Some(degree))
        .map(|p| vec![p.clone()])
        .collect()
}

/// Kernel of `F -> grad F x grad P` is `K[P]`: dimension one exactly at
/// multiples of `deg P`.
pub fn lemma_cas(s: &GjpsStructure, bound: i64) -> Result<LemmaVerdict, LemmaError> {
    let w = s.weights();
    let dp = s.casimir_degree() as i64;
    let mut failures = Vec::new();
    for d in 0..=bound {
        let src = slice_basis(SpaceKind::X0, d, w);
        let tgt = slice_basis(SpaceKind::Omega2, d + dp - w.total() as i64, w);
        let m = GradedOperatorMatrix::build("cas", src, tgt, |c| {
            Ok(cross(&grad(&c[0]).expect("spatial"), s.grad_casimir())
                .0
                .to_vec())
        })?;
        let expected = usize::from(d % dp == 0);
        if m.ncols() - m.rank() != expected {
            failures.push(d);
        }
    }
    Ok(verdict(
        "cas",
        failures.is_empty(),
        format!("kernel dims match K[P] for grades 0..={bound}; failing grades {failures:?}"),
    ))
}

/// `lambda F = P^r` has no solution `F` for any `r`.
pub fn lemma_reg(s: &GjpsStructure, bound: i64) -> Result<LemmaVerdict, LemmaError> {
    let w = s.weights();
    let dp = s.casimir_degree() as i64;
    let dl = s.lambda_degree() as i64;
    let mut solvable = Vec::new();
    let mut r = 0u32;
    while r as i64 * dp <= bound {
        let top = r as i64 * dp;
        let src = slice_basis(SpaceKind::X0, top - dl, w);
        let tgt = slice_basis(SpaceKind::X0, top, w);
        let m = GradedOperatorMatrix::build("reg", src, tgt, |c| Ok(vec![&c[0] * s.lambda()]))?;
        let rhs = m.target.coordinates(&[s.casimir().pow(r)], "reg")?;
        if solve(&m.columns, m.nrows(), &rhs).is_some() {
            solvable.push(r);
        }
        r += 1;
    }
    Ok(verdict(
        "reg",
        solvable.is_empty(),
        format!(
            "P^r outside lambda*A for r = 0..{}; solvable r {solvable:?}",
            r.saturating_sub(1)
        ),
    ))
}

/// `A_e = {grad P . curl G} + span{P^l mu_s}` for every `e <= bound`.
pub fn prop_p2(s: &GjpsStructure, bound: i64) -> Result<LemmaVerdict, LemmaError> {
    let w = s.weights();
    let dp = s.casimir_degree() as i64;
    let mus: Vec<Polynomial> = sing_basis(s.casimir(), w)?.iter().map(mono3).collect();
    let extras = casimir_multiples(&mus, s.casimir(), w, bound);
    let mut failures = Vec::new();
    let mut direct = true;
    for e in 0..=bound {
        let src = slice_basis(SpaceKind::Omega1, e - dp, w);
        let tgt = slice_basis(SpaceKind::X0, e, w);
        let m = GradedOperatorMatrix::build("p2", src, tgt, |c| {
            let g = crate::vector_calculus::VectorField([c[0].clone(), c[1].clone(), c[2].clone()]);
            Ok(vec![dot(s.grad_casimir(), &curl(&g))])
        })?;
        let count = span_count(&m, &in_degree(&extras, w, e))?;
        if !count.spans() {
            failures.push(e);
        }
        direct &= count.direct();
    }
    Ok(verdict(
        "p2",
        failures.is_empty(),
        format!("image of G -> grad P . curl G plus K[P] mu_s spans A_e for e = 0..={bound}; failing {failures:?}; sum direct: {direct}"),
    ))
}

/// `P^l * b` for every `b` in `basis`, up to weighted degree `bound`.
fn casimir_multiples(
    basis: &[Polynomial],
    p: &Polynomial,
    w: &WeightSystem,
    bound: i64,
) -> Vec<Polynomial> {
    let dp = p.homogeneous_degree(w).expect("homogeneous") as i64;
    let mut out = Vec::new();
    for b in basis {
        let db = b.homogeneous_degree(w).expect("homogeneous") as i64;
        let mut l = 0u32;
        while db + l as i64 * dp <= bound {
            out.push(&p.pow(l) * b);
            l += 1;
        }
    }
    out
}

/// Section 6 data needed by the planar lemmas.
struct Planar<'a> {
    s: &'a GjpsStructure,
    ptilde: Polynomial,
    ptilde_spatial: Polynomial,
    pw: WeightSystem,
    dpt: i64,
    thetas: Vec<Polynomial>,
    r: u32,
}

fn planar_data(s: &GjpsStructure) -> Result<Option<Planar<'_>>, LemmaError> {
    let Some(split) = s.planar_split() else {
        return Ok(None);
    };
    let pw = split.planar_weights.clone();
    let ptilde = split.planar_casimir.clone();
    let dpt = ptilde.homogeneous_degree(&pw).expect("homogeneous") as i64;
    let thetas = sing_basis(&ptilde, &pw)?
        .iter()
        .map(|m| Polynomial::monomial(2, *m, one()))
        .collect();
    Ok(Some(Planar {
        s,
        ptilde_spatial: ptilde.to_spatial(),
        ptilde,
        pw,
        dpt,
        thetas,
        r: split.r(),
    }))
}

fn box_pairing_matrix(
    pl: &Planar<'_>,
    source_grade: i64,
) -> Result<GradedOperatorMatrix, LinalgError> {
    let src = slice_basis(SpaceKind::PlanarB, source_grade, &pl.pw);
    let tgt = slice_basis(
        SpaceKind::PlanarB,
        source_grade + pl.dpt - pl.pw.total() as i64,
        &pl.pw,
    );
    let grad_pt = planar_grad(&pl.ptilde).expect("planar");
    GradedOperatorMatrix::build("box pairing", src, tgt, |c| {
        Ok(vec![planar_dot(
            &planar_box(&c[0]).expect("planar"),
            &grad_pt,
        )])
    })
}

/// `box L . grad P~ = 0` iff `L` in `K[P~]`.
pub fn planar_lemma(s: &GjpsStructure, bound: i64) -> Result<Option<LemmaVerdict>, LemmaError> {
    let Some(pl) = planar_data(s)? else {
        return Ok(None);
    };
    let mut failures = Vec::new();
    for e in 0..=bound {
        let m = box_pairing_matrix(&pl, e)?;
        let expected = usize::from(e % pl.dpt == 0);
        if m.ncols() - m.rank() != expected {
            failures.push(e);
        }
    }
    Ok(Some(verdict(
        "planar",
        failures.is_empty(),
        format!("kernel of L -> box L . grad P~ matches K[P~] for grades 0..={bound}; failing {failures:?}"),
    )))
}

/// `B_e = {box Q . grad P~} (+) span{P~^i theta_j}`.
pub fn lemma_lema(s: &GjpsStructure, bound: i64) -> Result<Option<LemmaVerdict>, LemmaError> {
    let Some(pl) = planar_data(s)? else {
        return Ok(None);
    };
    let extras = casimir_multiples(&pl.thetas, &pl.ptilde, &pl.pw, bound);
    let mut failures = Vec::new();
    for e in 0..=bound {
        let m = box_pairing_matrix(&pl, e - pl.dpt + pl.pw.total() as i64)?;
        let count = span_count(&m, &in_degree(&extras, &pl.pw, e))?;
        if !(count.spans() && count.direct()) {
            failures.push(e);
        }
    }
    Ok(Some(verdict(
        "lema",
        failures.is_empty(),
        format!("direct sum spans B_e for e = 0..={bound}; failing {failures:?}"),
    )))
}

/// `A_e = {M . grad Q} (+) span{P~^i lambda^j theta_k}`.
pub fn prop_p1(s: &GjpsStructure, bound: i64) -> Result<Option<LemmaVerdict>, LemmaError> {
    let Some(pl) = planar_data(s)? else {
        return Ok(None);
    };
    let w = s.weights();
    let sigma = s.shift();
    let field = modular_field(s).field;
    let mut products = Vec::new();
    for t in &pl.thetas {
        let t3 = t.to_spatial();
        let dt = t3.homogeneous_degree(w).expect("homogeneous") as i64;
        let mut i = 0u32;
        while dt + i as i64 * s.casimir_degree() as i64 <= bound {
            let base = &pl.ptilde_spatial.pow(i) * &t3;
            let db = base.homogeneous_degree(w).expect("homogeneous") as i64;
            let mut j = 0u32;
            while db + j as i64 * s.lambda_degree() as i64 <= bound {
                products.push(&base * &s.lambda().pow(j));
                j += 1;
            }
            i += 1;
        }
    }
    let mut failures = Vec::new();
    for e in 0..=bound {
        let src = slice_basis(SpaceKind::X0, e - sigma, w);
        let tgt = slice_basis(SpaceKind::X0, e, w);
        let m = GradedOperatorMatrix::build("p1", src, tgt, |c| {
            Ok(vec![dot(&field, &grad(&c[0]).expect("spatial"))])
        })?;
        let count = span_count(&m, &in_degree(&products, w, e))?;
        if !(count.spans() && count.direct()) {
            failures.push(e);
        }
    }
    Ok(Some(verdict(
        "p1",
        failures.is_empty(),
        format!("direct sum spans A_e for e = 0..={bound}; failing {failures:?}"),
    )))
}

/// `w1 + w2 - w3` and `(deg P / deg' P~)(|w'| - deg' P~/(r+2))` have the same sign.
pub fn lemma_lem1(s: &GjpsStructure) -> Option<LemmaVerdict> {
    let split = s.planar_split()?;
    let w = s.weights();
    let pw = &split.planar_weights;
    let dpt = split
        .planar_casimir
        .homogeneous_degree(pw)
        .expect("homogeneous");
    let lhs = Rational::from_integer(BigInt::from(
        w.weight(0) as i64 + w.weight(1) as i64 - w.weight(2) as i64,
    ));
    let r2 = Rational::from_integer(BigInt::from(split.z_exponent));
    let deg_ratio = Rational::new(BigInt::from(s.casimir_degree()), BigInt::from(dpt));
    let rhs = deg_ratio
        * (Rational::from_integer(BigInt::from(pw.total()))
            - Rational::from_integer(BigInt::from(dpt)) / r2);
    let same_sign = lhs.signum() == rhs.signum();
    Some(verdict(
        "lem1",
        same_sign,
        format!(
            "w1+w2-w3 = {}, (deg P/deg' P~)(|w'| - deg' P~/(r+2)) = {}",
            crate::poly::format_rational(&lhs),
            crate::poly::format_rational(&rhs)
        ),
    ))
}

/// `(P~^s - P^s) M` lies in the image of `delta^0`, with the explicit
/// witness `F_(s+1) = P F_s - P~^(s+1)/((s+1)(r+2))`.
pub fn lemma_lem2(s: &GjpsStructure, bound: i64) -> Result<Option<LemmaVerdict>, LemmaError> {
    let Some(pl) = planar_data(s)? else {
        return Ok(None);
    };
    let dp = s.casimir_degree() as i64;
    let sigma = s.shift();
    let field = modular_field(pl.s).field;
    let mut witness = Polynomial::zero(3);
    let mut failures = Vec::new();
    let mut k = 0u32;
    while sigma + k as i64 * dp <= bound {
        let diff = &pl.ptilde_spatial.pow(k) - &s.casimir().pow(k);
        let target = field.scale(&diff);
        let m = operator_matrix(ComplexMap::Coboundary(0), k as i64 * dp, s)?;
        let rhs = m.target.coordinates(&target.0, "lem2")?;
        let in_image = solve(&m.columns, m.nrows(), &rhs).is_some();
        let witness_ok = coboundary_0(&witness, s).expect("spatial") == target;
        if !(in_image && witness_ok) {
            failures.push(k);
        }
        let denom = Rational::from_integer(BigInt::from((k + 1) * (pl.r + 2)));
        witness = &(s.casimir() * &witness) - &pl.ptilde_spatial.pow(k + 1).scale(&(one() / denom));
        k += 1;
    }
    Ok(Some(verdict(
        "lem2",
        failures.is_empty(),
        format!(
            "coset membership and explicit witness for s = 0..{}; failing {failures:?}",
            k.saturating_sub(1)
        ),
    )))
}

/// Every lemma applicable to `s`, in a fixed order.
pub fn lemma_suite(s: &GjpsStructure, bound: i64) -> Result<Vec<LemmaVerdict>, LemmaError> {
    let mut out = vec![lemma_cas(s, bound)?, lemma_reg(s, bound)?];
    if let Some(v) = lemma_lema(s, bound)? {
        out.push(v);
    }
    if let Some(v) = prop_p1(s, bound)? {
        out.push(v);
    }
    out.push(prop_p2(s, bound)?);
    if let Some(v) = lemma_lem1(s) {
        out.push(v);
    }
    if let Some(v) = lemma_lem2(s, bound)? {
        out.push(v);
    }
    if let Some(v) = planar_lemma(s, bound)? {
        out.push(v);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse_polynomial, SPATIAL_VARS};

    fn planar(p: &str, w: [u64; 3]) -> GjpsStructure {
        GjpsStructure::with_planar_split(
            parse_polynomial("z", &SPATIAL_VARS).unwrap(),
            parse_polynomial(p, &SPATIAL_VARS).unwrap(),
            WeightSystem::new(&w).unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn suite_on_quadric() {
        let s = planar("x*y + 1/2*z^2", [1, 1, 1]);
        let names: Vec<String> = lemma_suite(&s, 6)
            .unwrap()
            .into_iter()
            .map(|v| {
                assert!(v.passed, "{v:?}");
                v.name
            })
            .collect();
        assert_eq!(
            names,
            ["cas", "reg", "lema", "p1", "p2", "lem1", "lem2", "planar"]
        );
    }

    #[test]
    fn lem1_arithmetic() {
        let v = lemma_lem1(&planar("x^2 + y^2 + z^3", [3, 3, 2])).unwrap();
        assert!(v.passed);
        assert!(
            v.detail.contains("= 4,") && v.detail.ends_with("= 4"),
            "{}",
            v.detail
        );
    }

    #[test]
    fn reg_fails_for_unit_lambda() {
        let s = GjpsStructure::new(
            Polynomial::one(3),
            parse_polynomial("x*y + 1/2*z^2", &SPATIAL_VARS).unwrap(),
            WeightSystem::standard(3),
        )
        .unwrap();
        assert!(!lemma_reg(&s, 4).unwrap().passed);
        assert!(lemma_lema(&s, 4).unwrap().is_none());
    }
}
