//! Graded slices of the modules `Omega^k`, `X^k` (and their planar analogues)
//! and exact matrices of complex maps restricted to one slice.
//!
//! Grades are X-grades: a component at grade `g` is a polynomial of weighted
//! degree `g + offset`. The form grade of an element of `Omega^k` is its
//! X-grade plus `|w|`.

use std::fmt::Write as _;

use serde::Serialize;
use thiserror::Error;

use super::elimination::{kernel_of_rows, rank_of, transpose, SparseVec};
use crate::poisson::{self, Chain, GjpsStructure, PoissonError};
use crate::poly::{monomial_basis, GradedSliceBasis, Polynomial, WeightSystem};

/// Slices above this grade are refused.
pub const MAX_SLICE_GRADE: i64 = 512;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("{op}: image term of degree {degree} in component {component} lies outside the target slice")]
    InhomogeneousImage {
        op: String,
        component: usize,
        degree: i64,
    },
    #[error("image has {got} components, target space has {expected}")]
    ComponentCount { got: usize, expected: usize },
    #[error("grade {0} exceeds the slice limit")]
    GradeTooLarge(i64),
    #[error(transparent)]
    Poisson(#[from] PoissonError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum SpaceKind {
    Omega0,
    Omega1,
    Omega2,
    Omega3,
    X0,
    X1,
    X2,
    X3,
    PlanarB,
    PlanarB2,
}

impl SpaceKind {
    pub fn omega(k: u8) -> SpaceKind {
        [
            SpaceKind::Omega0,
            SpaceKind::Omega1,
            SpaceKind::Omega2,
            SpaceKind::Omega3,
        ][k as usize]
    }

    pub fn multivector(k: u8) -> SpaceKind {
        [SpaceKind::X0, SpaceKind::X1, SpaceKind::X2, SpaceKind::X3][k as usize]
    }

    pub fn is_planar(self) -> bool {
        matches!(self, SpaceKind::PlanarB | SpaceKind::PlanarB2)
    }

    /// Degree offsets of the components relative to the grade.
    /// For planar kinds `w` is the planar weight system.
    pub fn offsets(self, w: &WeightSystem) -> Vec<i64> {
        let wi = |i: usize| w.weight(i) as i64;
        match self {
            SpaceKind::Omega3 | SpaceKind::X0 | SpaceKind::PlanarB => vec![0],
            SpaceKind::Omega2 | SpaceKind::X1 => vec![wi(0), wi(1), wi(2)],
            SpaceKind::Omega1 | SpaceKind::X2 => vec![wi(1) + wi(2), wi(0) + wi(2), wi(0) + wi(1)],
            SpaceKind::Omega0 | SpaceKind::X3 => vec![w.total() as i64],
            SpaceKind::PlanarB2 => vec![wi(0), wi(1)],
        }
    }
}

/// Ordered concatenation of the component monomial bases of one slice.
#[derive(Debug, Clone)]
pub struct SliceBasis {
    kind: SpaceKind,
    grade: i64,
    weights: WeightSystem,
    components: Vec<GradedSliceBasis>,
    starts: Vec<usize>,
}

pub fn slice_basis(kind: SpaceKind, grade: i64, w: &WeightSystem) -> SliceBasis {
    let components: Vec<GradedSliceBasis> = kind
        .offsets(w)
        .into_iter()
        .map(|o| monomial_basis(grade + o, w))
        .collect();
    let mut starts = Vec::with_capacity(components.len());
    let mut acc = 0;
    for c in &components {
        starts.push(acc);
        acc += c.len();
    }
    SliceBasis {
        kind,
        grade,
        weights: w.clone(),
        components,
        starts,
    }
}

impl SliceBasis {
    pub fn kind(&self) -> SpaceKind {
        self.kind
    }

    pub fn grade(&self) -> i64 {
        self.grade
    }

    pub fn dim(&self) -> usize {
        self.components.iter().map(GradedSliceBasis::len).sum()
    }

    pub fn ncomponents(&self) -> usize {
        self.components.len()
    }

    pub fn component(&self, i: usize) -> &GradedSliceBasis {
        &self.components[i]
    }

    fn nvars(&self) -> usize {
        if self.kind.is_planar() {
            2
        } else {
            3
        }
    }

    /// Position of basis vector `j` as (component, index within component).
    pub fn locate(&self, j: usize) -> (usize, usize) {
        let c = self.starts.partition_point(|s| *s <= j) - 1;
        (c, j - self.starts[c])
    }

    /// Basis vector `j` as a list of component polynomials.
    pub fn element(&self, j: usize) -> Vec<Polynomial> {
        let (c, idx) = self.locate(j);
        let n = self.nvars();
        (0..self.components.len())
            .map(|i| {
                if i == c {
                    let m = self.components[c].monomials()[idx];
                    Polynomial::monomial(n, m, num_traits::One::one())
                } else {
                    Polynomial::zero(n)
                }
            })
            .collect()
    }

    /// Coordinates of a homogeneous element of this slice.
    pub fn coordinates(&self, comps: &[Polynomial], op: &str) -> Result<SparseVec, LinalgError> {
        if comps.len() != self.components.len() {
            return Err(LinalgError::ComponentCount {
                got: comps.len(),
                expected: self.components.len(),
            });
        }
        let mut out: SparseVec = Vec::new();
        for (i, p) in comps.iter().enumerate() {
            let basis = &self.components[i];
            for (m, c) in p.terms() {
                match basis.index_of(m) {
                    Some(idx) => out.push((self.starts[i] + idx, c.clone())),
                    None => {
                        return Err(LinalgError::InhomogeneousImage {
                            op: op.to_string(),
                            component: i,
                            degree: self.weights.degree_of(m) as i64,
                        })
                    }
                }
            }
        }
        out.sort_by_key(|(i, _)| *i);
        Ok(out)
    }

    /// Element with the given coordinates.
    pub fn combine(&self, coords: &SparseVec) -> Vec<Polynomial> {
        let n = self.nvars();
        let mut comps = vec![Polynomial::zero(n); self.components.len()];
        for (j, c) in coords {
            let (ci, idx) = self.locate(*j);
            comps[ci].add_term(self.components[ci].monomials()[idx], c.clone());
        }
        comps
    }
}

/// A complex map on one graded slice.
#[derive(Debug, Clone)]
pub struct GradedOperatorMatrix {
    pub label: String,
    pub source: SliceBasis,
    pub target: SliceBasis,
    /// Column `j` is the image of source basis vector `j`.
    pub columns: Vec<SparseVec>,
}

#[derive(Debug, Clone)]
pub struct RankKernel {
    pub rank: usize,
    pub kernel_dim: usize,
    pub kernel_basis: Vec<SparseVec>,
}

impl GradedOperatorMatrix {
    /// Builds the matrix of `f` from `source` to `target`, failing when an
    /// image leaves the target slice.
    pub fn build<F>(
        label: &str,
        source: SliceBasis,
        target: SliceBasis,
        f: F,
    ) -> Result<GradedOperatorMatrix, LinalgError>
    where
        F: Fn(Vec<Polynomial>) -> Result<Vec<Polynomial>, LinalgError>,
    {
        for g in [source.grade, target.grade] {
            if g > MAX_SLICE_GRADE {
                return Err(LinalgError::GradeTooLarge(g));
            }
        }
        let mut columns = Vec::with_capacity(source.dim());
        for j in 0..source.dim() {
            let image = f(source.element(j))?;
            columns.push(target.coordinates(&image, label)?);
        }
        Ok(GradedOperatorMatrix {
            label: label.to_string(),
            source,
            target,
            columns,
        })
    }

    pub fn nrows(&self) -> usize {
        self.target.dim()
    }

    pub fn ncols(&self) -> usize {
        self.source.dim()
    }

    pub fn rank(&self) -> usize {
        rank_of(&self.columns, self.nrows())
    }

    pub fn rank_kernel(&self) -> RankKernel {
        let rows = transpose(&self.columns, self.nrows());
        let kernel_basis = kernel_of_rows(&rows, self.ncols());
        let kernel_dim = kernel_basis.len();
        let rank = self.ncols() - kernel_dim;
        debug_assert_eq!(rank, self.rank());
        RankKernel {
            rank,
            kernel_dim,
            kernel_basis,
        }
    }

    /// Text dump: header `rows cols grade op`, then `row col num/den` per nonzero entry.
    pub fn dump(&self) -> String {
        let mut out = format!(
            "{} {} {} {}\n",
            self.nrows(),
            self.ncols(),
            self.source.grade,
            self.label
        );
        let mut entries: Vec<(usize, usize, String)> = Vec::new();
        for (j, col) in self.columns.iter().enumerate() {
            for (i, v) in col {
                let n = v.numer();
                let d = v.denom();
                entries.push((*i, j, format!("{n}/{d}")));
            }
        }
        entries.sort();
        for (i, j, v) in entries {
            let _ = writeln!(out, "{i} {j} {v}");
        }
        out
    }

    /// Product `other * self` (apply `self`, then `other`) as columns.
    pub fn then(&self, other: &GradedOperatorMatrix) -> Vec<SparseVec> {
        self.columns
            .iter()
            .map(|c| super::elimination::apply_sparse(&other.columns, other.nrows(), c))
            .collect()
    }
}

/// The named complex maps.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum ComplexMap {
    /// `d_k : Omega^k -> Omega^(k-1)`, `k` in 1..=3.
    Boundary(u8),
    /// `delta^k : X^k -> X^(k+1)`, `k` in 0..=2.
    Coboundary(u8),
    /// `d : Omega^k -> Omega^(k+1)`, `k` in 0..=2.
    DeRham(u8),
    /// Koszul map of `grad P`: `Omega^k -> Omega^(k+1)`, `k` in 0..=2.
    Koszul(u8),
}

impl ComplexMap {
    pub fn source_kind(self) -> SpaceKind {
        match self {
            ComplexMap::Boundary(k) | ComplexMap::DeRham(k) | ComplexMap::Koszul(k) => {
                SpaceKind::omega(k)
            }
            ComplexMap::Coboundary(k) => SpaceKind::multivector(k),
        }
    }

    pub fn target_kind(self) -> SpaceKind {
        match self {
            ComplexMap::Boundary(k) => SpaceKind::omega(k - 1),
            ComplexMap::DeRham(k) | ComplexMap::Koszul(k) => SpaceKind::omega(k + 1),
            ComplexMap::Coboundary(k) => SpaceKind::multivector(k + 1),
        }
    }

    pub fn shift(self, s: &GjpsStructure) -> i64 {
        match self {
            ComplexMap::Boundary(_) | ComplexMap::Coboundary(_) => s.shift(),
            ComplexMap::DeRham(_) => 0,
            ComplexMap::Koszul(_) => s.casimir_degree() as i64,
        }
    }

    pub fn label(self) -> String {
        match self {
            ComplexMap::Boundary(k) => format!("boundary_{k}"),
            ComplexMap::Coboundary(k) => format!("coboundary_{k}"),
            ComplexMap::DeRham(k) => format!("de_rham_{k}"),
            ComplexMap::Koszul(k) => format!("koszul_{k}"),
        }
    }

    fn valid(self) -> bool {
        match self {
            ComplexMap::Boundary(k) => (1..=3).contains(&k),
            ComplexMap::Coboundary(k) | ComplexMap::DeRham(k) | ComplexMap::Koszul(k) => k <= 2,
        }
    }

    pub fn apply(self, input: &Chain, s: &GjpsStructure) -> Result<Chain, PoissonError> {
        match self {
            ComplexMap::Boundary(k) => poisson::poisson_boundary(k, input, s),
            ComplexMap::Coboundary(k) => poisson::poisson_coboundary(k, input, s),
            ComplexMap::DeRham(k) => poisson::de_rham(k, input),
            ComplexMap::Koszul(k) => poisson::koszul(k, input, s.grad_casimir()),
        }
    }
}

/// Matrix of `op` from the source slice at X-grade `grade` to the target
/// slice at `grade + shift`.
pub fn operator_matrix(
    op: ComplexMap,
    grade: i64,
    s: &GjpsStructure,
) -> Result<GradedOperatorMatrix, LinalgError> {
    let index = match op {
        ComplexMap::Boundary(k)
        | ComplexMap::Coboundary(k)
        | ComplexMap::DeRham(k)
        | ComplexMap::Koszul(k) => k,
    };
    if !op.valid() {
        return Err(PoissonError::BadIndex(index).into());
    }
    let w = s.weights();
    let source = slice_basis(op.source_kind(), grade, w);
    let target = slice_basis(op.target_kind(), grade + op.shift(s), w);
    GradedOperatorMatrix::build(&op.label(), source, target, |comps| {
        let chain = Chain::from_components(comps)?;
        Ok(op.apply(&chain, s)?.into_components())
    })
}
