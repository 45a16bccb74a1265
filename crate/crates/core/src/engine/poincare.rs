//! Explicit potentials for closed fields on `K[x,y,z]` (polynomial Poincare lemma).

use num_bigint::BigInt;
use thiserror::Error;

use crate::poly::{Polynomial, Rational};
use crate::vector_calculus::{cross, curl, div, grad, VectorField};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PoincareError {
    #[error("field has nonzero curl")]
    NotCurlFree,
    #[error("field has nonzero divergence")]
    NotDivergenceFree,
    #[error("potential does not reproduce the field")]
    Verification,
}

fn position() -> VectorField {
    VectorField(std::array::from_fn(|i| Polynomial::var(3, i)))
}

/// Splits a field into parts of fixed standard degree.
fn standard_parts(f: &VectorField) -> Vec<(u64, VectorField)> {
    let mut parts: std::collections::BTreeMap<u64, VectorField> = Default::default();
    for (i, comp) in f.0.iter().enumerate() {
        for (m, c) in comp.terms() {
            let entry = parts
                .entry(m.total_degree())
                .or_insert_with(VectorField::zero);
            entry.0[i].add_term(*m, c.clone());
        }
    }
    parts.into_iter().collect()
}

/// `F` with `grad F = field` and `F(0) = 0`.
///
/// Each standard-degree-`k` part `G` contributes `(r . G)/(k+1)`.
pub fn grad_potential(field: &VectorField) -> Result<Polynomial, PoincareError> {
    if !curl(field).is_zero() {
        return Err(PoincareError::NotCurlFree);
    }
    let r = position();
    let mut out = Polynomial::zero(3);
    for (k, part) in standard_parts(field) {
        let inv = Rational::new(BigInt::from(1), BigInt::from(k + 1));
        out = &out + &crate::vector_calculus::dot(&r, &part).scale(&inv);
    }
    if grad(&out).expect("spatial") != *field {
        return Err(PoincareError::Verification);
    }
    Ok(out)
}

/// `H` with `curl H = field`.
///
/// Each standard-degree-`k` part `G` contributes `(G x r)/(k+2)`.
pub fn curl_potential(field: &VectorField) -> Result<VectorField, PoincareError> {
    if !div(field).is_zero() {
        return Err(PoincareError::NotDivergenceFree);
    }
    let r = position();
    let mut out = VectorField::zero();
    for (k, part) in standard_parts(field) {
        let inv = Rational::new(BigInt::from(1), BigInt::from(k + 2));
        out = &out + &cross(&part, &r).scale_rational(&inv);
    }
    if curl(&out) != *field {
        return Err(PoincareError::Verification);
    }
    Ok(out)
}
