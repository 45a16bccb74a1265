//! Generalized Jacobian Poisson structures `{f,g} = lambda * det(df, dg, dP) / (dx dy dz)`
//! on `K[x,y,z]`, and the four complexes attached to them.

use num_traits::One;
use serde::Serialize;
use thiserror::Error;

use crate::poly::{PolyError, Polynomial, Rational, WeightSystem};
use crate::vector_calculus::{cross, curl, div, dot, grad, VectorField};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StructureError {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("{0} must be a polynomial in x, y, z")]
    NotSpatial(&'static str),
    #[error("weights must be given for three variables")]
    WeightArity,
    #[error("{0} is zero")]
    Zero(&'static str),
    #[error("{0} is not weight homogeneous for weights {1}")]
    NotHomogeneous(&'static str, WeightSystem),
    #[error("section 6 mode needs lambda = z")]
    LambdaNotZ,
    #[error("casimir is not of the form P~(x,y) + c/(r+2) z^(r+2) with r >= 0")]
    CasimirNotSplit,
}

/// Data of the planar splitting `P = P~ + z^(r+2)/(r+2)`, after normalization.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlanarSplit {
    /// `P~` as an element of `K[x,y]`.
    pub planar_casimir: Polynomial,
    /// `r + 2`.
    pub z_exponent: u32,
    /// The constant `c` of the user's casimir; the stored casimir is divided by it.
    pub z_coefficient: Rational,
    /// The casimir as given, before division by `c`.
    pub original_casimir: Polynomial,
    pub planar_weights: WeightSystem,
}

impl PlanarSplit {
    pub fn r(&self) -> u32 {
        self.z_exponent - 2
    }
}

/// A validated GJPS: nonzero weight-homogeneous `lambda` and casimir `P`.
#[derive(Debug, Clone)]
pub struct GjpsStructure {
    lambda: Polynomial,
    casimir: Polynomial,
    weights: WeightSystem,
    lambda_degree: u64,
    casimir_degree: u64,
    grad_lambda: VectorField,
    grad_casimir: VectorField,
    modular: VectorField,
    split: Option<PlanarSplit>,
}

impl GjpsStructure {
    /// General graded mode: validates homogeneity of `lambda` and `casimir`.
    pub fn new(
        lambda: Polynomial,
        casimir: Polynomial,
        weights: WeightSystem,
    ) -> Result<Self, StructureError> {
        if weights.nvars() != 3 {
            return Err(StructureError::WeightArity);
        }
        if lambda.nvars() != 3 {
            return Err(StructureError::NotSpatial("lambda"));
        }
        if casimir.nvars() != 3 {
            return Err(StructureError::NotSpatial("casimir"));
        }
        if lambda.is_zero() {
            return Err(StructureError::Zero("lambda"));
        }
        if casimir.is_zero() {
            return Err(StructureError::Zero("casimir"));
        }
        let lambda_degree = lambda
            .homogeneous_degree(&weights)
            .ok_or_else(|| StructureError::NotHomogeneous("lambda", weights.clone()))?;
        let casimir_degree = casimir
            .homogeneous_degree(&weights)
            .ok_or_else(|| StructureError::NotHomogeneous("casimir", weights.clone()))?;
        let grad_lambda = grad(&lambda)?;
        let grad_casimir = grad(&casimir)?;
        let modular = cross(&grad_lambda, &grad_casimir);
        Ok(GjpsStructure {
            lambda,
            casimir,
            weights,
            lambda_degree,
            casimir_degree,
            grad_lambda,
            grad_casimir,
            modular,
            split: None,
        })
    }

    /// Mode with `lambda = z` and `P = P~(x,y) + c/(r+2) z^(r+2)`.
    ///
    /// The casimir is divided by `c`, which rescales the bracket by a nonzero
    /// constant and leaves every (co)homology space unchanged. Afterwards
    /// `P = P~ + z^(r+2)/(r+2)`.
    pub fn with_planar_split(
        lambda: Polynomial,
        casimir: Polynomial,
        weights: WeightSystem,
    ) -> Result<Self, StructureError> {
        if lambda != Polynomial::var(3, 2) {
            return Err(StructureError::LambdaNotZ);
        }
        let base = GjpsStructure::new(lambda, casimir.clone(), weights)?;
        let (planar, z_part) = casimir.split_by_var(2);
        if z_part.len() != 1 {
            return Err(StructureError::CasimirNotSplit);
        }
        let (m, coef) = z_part.terms().next().expect("one term");
        let exponent = m.exponent(2);
        if m.exponent(0) != 0 || m.exponent(1) != 0 || exponent < 2 {
            return Err(StructureError::CasimirNotSplit);
        }
        let c = coef * Rational::from_integer(exponent.into());
        let inv = Rational::one() / &c;
        let normalized = casimir.scale(&inv);
        let planar_casimir = planar.scale(&inv).to_planar()?;
        if planar_casimir.is_zero() {
            return Err(StructureError::CasimirNotSplit);
        }
        let planar_weights = base.weights.planar();
        let mut s = GjpsStructure::new(base.lambda, normalized, base.weights)?;
        s.split = Some(PlanarSplit {
            planar_casimir,
            z_exponent: exponent,
            z_coefficient: c,
            original_casimir: casimir,
            planar_weights,
        });
        Ok(s)
    }

    pub fn lambda(&self) -> &Polynomial {
        &self.lambda
    }

    pub fn casimir(&self) -> &Polynomial {
        &self.casimir
    }

    pub fn weights(&self) -> &WeightSystem {
        &self.weights
    }

    pub fn lambda_degree(&self) -> u64 {
        self.lambda_degree
    }

    pub fn casimir_degree(&self) -> u64 {
        self.casimir_degree
    }

    pub fn grad_lambda(&self) -> &VectorField {
        &self.grad_lambda
    }

    pub fn grad_casimir(&self) -> &VectorField {
        &self.grad_casimir
    }

    pub fn planar_split(&self) -> Option<&PlanarSplit> {
        self.split.as_ref()
    }

    /// Weighted degree of the bivector: every Poisson boundary and coboundary
    /// map moves the grading by `deg(lambda) + deg(P) - |w|`.
    pub fn shift(&self) -> i64 {
        self.lambda_degree as i64 + self.casimir_degree as i64 - self.weights.total() as i64
    }
}

/// Either a single polynomial (degree 0 or 3 objects) or a triple.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Chain {
    Scalar(Polynomial),
    Vector(VectorField),
}

impl Chain {
    pub fn into_components(self) -> Vec<Polynomial> {
        match self {
            Chain::Scalar(p) => vec![p],
            Chain::Vector(v) => v.0.into_iter().collect(),
        }
    }

    pub fn from_components(mut comps: Vec<Polynomial>) -> Result<Chain, PoissonError> {
        match comps.len() {
            1 => Ok(Chain::Scalar(comps.pop().expect("one"))),
            3 => {
                let c = comps.pop().expect("three");
                let b = comps.pop().expect("three");
                let a = comps.pop().expect("three");
                Ok(Chain::Vector(VectorField::new(a, b, c)?))
            }
            n => Err(PoissonError::WrongShape(n)),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Chain::Scalar(p) => p.is_zero(),
            Chain::Vector(v) => v.is_zero(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PoissonError {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("map index {0} out of range")]
    BadIndex(u8),
    #[error("input of the wrong kind for this map")]
    KindMismatch,
    #[error("a chain has 1 or 3 components, got {0}")]
    WrongShape(usize),
}

/// The modular vector field for the volume form `dx dy dz`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModularField {
    pub field: VectorField,
}

pub fn bracket(f: &Polynomial, g: &Polynomial, s: &GjpsStructure) -> Result<Polynomial, PolyError> {
    let jac = dot(&grad(f)?, &cross(&grad(g)?, &s.grad_casimir));
    Ok(&s.lambda * &jac)
}

/// The derivation `g -> {f, g}`, i.e. `-lambda grad f x grad P`.
pub fn hamiltonian_field(f: &Polynomial, s: &GjpsStructure) -> Result<VectorField, PolyError> {
    Ok((-&cross(&grad(f)?, &s.grad_casimir)).scale(&s.lambda))
}

/// `grad lambda x grad P`, the vector field `f -> div(X_f)`.
pub fn modular_field(s: &GjpsStructure) -> ModularField {
    ModularField {
        field: s.modular.clone(),
    }
}

pub fn boundary_1(h: &VectorField, s: &GjpsStructure) -> Polynomial {
    -&(&s.lambda * &dot(&curl(h), &s.grad_casimir))
}

pub fn boundary_2(g: &VectorField, s: &GjpsStructure) -> Result<VectorField, PolyError> {
    let first = grad(&(&s.lambda * &dot(g, &s.grad_casimir)))?;
    let second = s.grad_casimir.scale(&(&s.lambda * &div(g)));
    Ok(&second - &first)
}

pub fn boundary_3(u: &Polynomial, s: &GjpsStructure) -> Result<VectorField, PolyError> {
    Ok(-&cross(&grad(&(&s.lambda * u))?, &s.grad_casimir))
}

pub fn coboundary_0(f: &Polynomial, s: &GjpsStructure) -> Result<VectorField, PolyError> {
    hamiltonian_field(f, s)
}

pub fn coboundary_1(f: &VectorField, s: &GjpsStructure) -> Result<VectorField, PolyError> {
    let first = grad(&dot(f, &s.grad_casimir))?.scale(&s.lambda);
    let coef = &(&s.lambda * &div(f)) - &dot(f, &s.grad_lambda);
    Ok(&s.grad_casimir.scale(&coef) - &first)
}

pub fn coboundary_2(g: &VectorField, s: &GjpsStructure) -> Polynomial {
    let first = &s.lambda * &dot(&s.grad_casimir, &curl(g));
    let second = dot(g, &s.modular);
    -&(&first + &second)
}

/// Poisson boundary `d_k`, `k` in 1..=3.
pub fn poisson_boundary(k: u8, input: &Chain, s: &GjpsStructure) -> Result<Chain, PoissonError> {
    match (k, input) {
        (1, Chain::Vector(h)) => Ok(Chain::Scalar(boundary_1(h, s))),
        (2, Chain::Vector(g)) => Ok(Chain::Vector(boundary_2(g, s)?)),
        (3, Chain::Scalar(u)) => Ok(Chain::Vector(boundary_3(u, s)?)),
        (1..=3, _) => Err(PoissonError::KindMismatch),
        _ => Err(PoissonError::BadIndex(k)),
    }
}

/// Poisson coboundary `delta^k`, `k` in 0..=2.
pub fn poisson_coboundary(k: u8, input: &Chain, s: &GjpsStructure) -> Result<Chain, PoissonError> {
    match (k, input) {
        (0, Chain::Scalar(f)) => Ok(Chain::Vector(coboundary_0(f, s)?)),
        (1, Chain::Vector(f)) => Ok(Chain::Vector(coboundary_1(f, s)?)),
        (2, Chain::Vector(g)) => Ok(Chain::Scalar(coboundary_2(g, s))),
        (0..=2, _) => Err(PoissonError::KindMismatch),
        _ => Err(PoissonError::BadIndex(k)),
    }
}

/// de Rham differential: grad, curl, div.
pub fn de_rham(k: u8, input: &Chain) -> Result<Chain, PoissonError> {
    match (k, input) {
        (0, Chain::Scalar(f)) => Ok(Chain::Vector(grad(f)?)),
        (1, Chain::Vector(f)) => Ok(Chain::Vector(curl(f))),
        (2, Chain::Vector(k)) => Ok(Chain::Scalar(div(k))),
        (0..=2, _) => Err(PoissonError::KindMismatch),
        _ => Err(PoissonError::BadIndex(k)),
    }
}

/// Koszul differential of `(dP/dx, dP/dy, dP/dz)`: `F grad P`, `F x grad P`, `F . grad P`.
pub fn koszul(k: u8, input: &Chain, grad_p: &VectorField) -> Result<Chain, PoissonError> {
    match (k, input) {
        (0, Chain::Scalar(f)) => {
            if f.nvars() != 3 {
                return Err(PolyError::ArityMismatch {
                    left: f.nvars(),
                    right: 3,
                }
                .into());
            }
            Ok(Chain::Vector(grad_p.scale(f)))
        }
        (1, Chain::Vector(f)) => Ok(Chain::Vector(cross(f, grad_p))),
        (2, Chain::Vector(f)) => Ok(Chain::Scalar(dot(f, grad_p))),
        (0..=2, _) => Err(PoissonError::KindMismatch),
        _ => Err(PoissonError::BadIndex(k)),
    }
}

/// Summary of a structure for reports.
#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct StructureEcho {
    pub lambda: String,
    pub casimir: String,
    pub weights: Vec<u64>,
    pub lambda_degree: u64,
    pub casimir_degree: u64,
    pub shift: i64,
    pub planar_casimir: Option<String>,
    pub r: Option<u32>,
    pub z_coefficient: Option<String>,
    pub original_casimir: Option<String>,
}

impl GjpsStructure {
    pub fn echo(&self) -> StructureEcho {
        let split = self.split.as_ref();
        StructureEcho {
            lambda: self.lambda.to_string(),
            casimir: self.casimir.to_string(),
            weights: self.weights.as_slice().to_vec(),
            lambda_degree: self.lambda_degree,
            casimir_degree: self.casimir_degree,
            shift: self.shift(),
            planar_casimir: split.map(|p| p.planar_casimir.to_string()),
            r: split.map(|p| p.r()),
            z_coefficient: split.map(|p| crate::poly::format_rational(&p.z_coefficient)),
            original_casimir: split.map(|p| p.original_casimir.to_string()),
        }
    }
}
