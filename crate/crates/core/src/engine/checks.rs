//! Structure checks for kernels of the boundary maps and for the modular class.

use serde::Serialize;

use crate::linalg::{operator_matrix, rank_of, solve, ComplexMap, LinalgError, SparseVec};
use crate::poisson::{hamiltonian_field, modular_field, GjpsStructure};
use crate::poly::{monomial_basis, Polynomial};
use crate::vector_calculus::{cross, div, dot, grad, VectorField};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KernelVerdict {
    pub k: u8,
    /// Form grade of the slice.
    pub grade: i64,
    pub kernel_dim: usize,
    pub claimed_rank: usize,
    pub passed: bool,
}

/// Whether `ker d_k` at form grade `grade` equals the span of the claimed
/// parametric family: `grad F + G grad P` for `k = 1`, `grad H x grad P` for
/// `k = 2`, nothing for `k = 3`.
pub fn kernel_structure_check(
    k: u8,
    grade: i64,
    s: &GjpsStructure,
) -> Result<KernelVerdict, LinalgError> {
    let w = s.weights();
    let g = grade - w.total() as i64;
    let m = operator_matrix(ComplexMap::Boundary(k), g, s)?;
    let rk = m.rank_kernel();
    let dp = s.casimir_degree() as i64;
    let claimed: Vec<VectorField> = match k {
        1 => {
            let mut v: Vec<VectorField> = monomial_basis(grade, w)
                .monomials()
                .iter()
                .map(|mono| grad(&Polynomial::monomial(3, *mono, one())).expect("spatial"))
                .collect();
            v.extend(
                monomial_basis(grade - dp, w)
                    .monomials()
                    .iter()
                    .map(|mono| {
                        s.grad_casimir()
                            .scale(&Polynomial::monomial(3, *mono, one()))
                    }),
            );
            v
        }
        2 => monomial_basis(grade - dp, w)
            .monomials()
            .iter()
            .map(|mono| {
                cross(
                    &grad(&Polynomial::monomial(3, *mono, one())).expect("spatial"),
                    s.grad_casimir(),
                )
            })
            .collect(),
        _ => Vec::new(),
    };
    let mut claimed_rows: Vec<SparseVec> = Vec::new();
    for f in &claimed {
        claimed_rows.push(m.source.coordinates(&f.0, "claimed family")?);
    }
    let n = m.ncols();
    let claimed_rank = rank_of(&claimed_rows, n);
    let mut all = claimed_rows;
    all.extend(rk.kernel_basis.iter().cloned());
    let joint = rank_of(&all, n);
    let passed = joint == rk.kernel_dim && claimed_rank == rk.kernel_dim;
    Ok(KernelVerdict {
        k,
        grade,
        kernel_dim: rk.kernel_dim,
        claimed_rank,
        passed,
    })
}

fn one() -> crate::poly::Rational {
    num_traits::One::one()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ModularClass {
    Trivial,
    Nontrivial,
}

/// The modular field is a coboundary `delta^0(F)` iff the class is trivial.
/// `delta^0` raises the X-grade by the shift and the field sits at X-grade
/// equal to the shift, so the only candidates are constants.
pub fn modular_triviality_check(s: &GjpsStructure) -> Result<ModularClass, LinalgError> {
    let field = modular_field(s).field;
    if field.is_zero() {
        return Ok(ModularClass::Trivial);
    }
    let m = operator_matrix(ComplexMap::Coboundary(0), 0, s)?;
    let rhs = m.target.coordinates(&field.0, "modular field")?;
    Ok(match solve(&m.columns, m.nrows(), &rhs) {
        Some(_) => ModularClass::Trivial,
        None => ModularClass::Nontrivial,
    })
}

/// `div(X_f) = M . grad f` for every monomial `f` of standard degree at most `max_degree`.
pub fn divergence_identity(s: &GjpsStructure, max_degree: u32) -> bool {
    let m = modular_field(s).field;
    let std = crate::poly::WeightSystem::standard(3);
    (0..=max_degree as i64).all(|d| {
        monomial_basis(d, &std).monomials().iter().all(|mono| {
            let f = Polynomial::monomial(3, *mono, one());
            let x = hamiltonian_field(&f, s).expect("spatial");
            div(&x) == dot(&m, &grad(&f).expect("spatial"))
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poisson::GjpsStructure;
    use crate::poly::{parse_polynomial, WeightSystem, SPATIAL_VARS};

    fn s(l: &str, p: &str, w: [u64; 3]) -> GjpsStructure {
        GjpsStructure::new(
            parse_polynomial(l, &SPATIAL_VARS).unwrap(),
            parse_polynomial(p, &SPATIAL_VARS).unwrap(),
            WeightSystem::new(&w).unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn kernels_of_quadric() {
        let q = s("z", "x*y + 1/2*z^2", [1, 1, 1]);
        for k in 1..=3 {
            for d in 0..=6 {
                let v = kernel_structure_check(k, d, &q).unwrap();
                assert!(v.passed, "{v:?}");
            }
        }
        // Constant one-forms: closed, gradients of linear forms.
        let v = kernel_structure_check(1, 1, &q).unwrap();
        assert_eq!((v.kernel_dim, v.claimed_rank), (3, 3));
        assert_eq!(kernel_structure_check(3, 5, &q).unwrap().kernel_dim, 0);
    }

    #[test]
    fn modular_classes() {
        assert_eq!(
            modular_triviality_check(&s("z", "x*y + 1/2*z^2", [1, 1, 1])).unwrap(),
            ModularClass::Nontrivial
        );
        assert_eq!(
            modular_triviality_check(&s("z", "x^2 + y^2 + z^3", [3, 3, 2])).unwrap(),
            ModularClass::Nontrivial
        );
        assert_eq!(
            modular_triviality_check(&s("1", "x^3 + y^3 + z^3", [1, 1, 1])).unwrap(),
            ModularClass::Trivial
        );
        assert!(divergence_identity(
            &s("z", "x^2 + y^2 + z^3", [3, 3, 2]),
            3
        ));
    }
}
