//! Grade-by-grade dimensions of Poisson homology and cohomology.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use rayon::prelude::*;

use super::series::{GradingConvention, SeriesTruncation};
use crate::linalg::{operator_matrix, slice_basis, ComplexMap, LinalgError};
use crate::poisson::GjpsStructure;

/// Environment variable capping the number of worker threads.
pub const THREADS_ENV: &str = "GJPS_THREADS";

fn pool() -> &'static rayon::ThreadPool {
    static POOL: OnceLock<rayon::ThreadPool> = OnceLock::new();
    POOL.get_or_init(|| {
        let mut builder = rayon::ThreadPoolBuilder::new();
        if let Some(n) = std::env::var(THREADS_ENV)
            .ok()
            .and_then(|v| v.parse::<usize>().ok())
        {
            builder = builder.num_threads(n.max(1));
        }
        builder.build().expect("thread pool")
    })
}

/// Runs `f` on the engine's thread pool.
pub fn in_pool<R: Send>(f: impl FnOnce() -> R + Send) -> R {
    pool().install(f)
}

/// Ranks of a family of complex maps at a set of X-grades, computed in parallel.
#[derive(Debug, Clone, Default)]
pub struct RankTable {
    ranks: BTreeMap<(ComplexMap, i64), (usize, usize)>,
}

impl RankTable {
    pub fn compute(
        jobs: Vec<(ComplexMap, i64)>,
        s: &GjpsStructure,
    ) -> Result<RankTable, LinalgError> {
        let results: Vec<Result<((ComplexMap, i64), (usize, usize)), LinalgError>> =
            in_pool(|| {
                jobs.par_iter()
                    .map(|(op, g)| {
                        let m = operator_matrix(*op, *g, s)?;
                        Ok(((*op, *g), (m.rank(), m.ncols())))
                    })
                    .collect()
            });
        let mut ranks = BTreeMap::new();
        for r in results {
            let (k, v) = r?;
            ranks.insert(k, v);
        }
        Ok(RankTable { ranks })
    }

    pub fn rank(&self, op: ComplexMap, grade: i64) -> usize {
        self.ranks[&(op, grade)].0
    }

    pub fn kernel_dim(&self, op: ComplexMap, grade: i64) -> usize {
        let (r, n) = self.ranks[&(op, grade)];
        n - r
    }
}

/// All four homology tables `PH_0..PH_3` in form grading, grades `0..=max_grade`.
pub fn homology_tables(
    max_grade: i64,
    s: &GjpsStructure,
) -> Result<Vec<SeriesTruncation>, LinalgError> {
    let total = s.weights().total() as i64;
    let sigma = s.shift();
    let mut jobs = Vec::new();
    for d in 0..=max_grade {
        let g = d - total;
        for k in 1..=3u8 {
            jobs.push((ComplexMap::Boundary(k), g));
            jobs.push((ComplexMap::Boundary(k), g - sigma));
        }
    }
    jobs.sort();
    jobs.dedup();
    let table = RankTable::compute(jobs, s)?;
    let w = s.weights();
    let tables = (0..=3u8)
        .map(|i| {
            let coefficients = (0..=max_grade)
                .map(|d| {
                    let g = d - total;
                    let ker = if i == 0 {
                        slice_basis(crate::linalg::SpaceKind::Omega0, g, w).dim()
                    } else {
                        table.kernel_dim(ComplexMap::Boundary(i), g)
                    };
                    let im = if i == 3 {
                        0
                    } else {
                        table.rank(ComplexMap::Boundary(i + 1), g - sigma)
                    };
                    (ker - im) as u64
                })
                .collect();
            SeriesTruncation {
                convention: GradingConvention::Form,
                offset: 0,
                max_grade,
                coefficients,
            }
        })
        .collect();
    Ok(tables)
}

pub fn homology_dims(
    i: u8,
    max_grade: i64,
    s: &GjpsStructure,
) -> Result<SeriesTruncation, LinalgError> {
    Ok(homology_tables(max_grade, s)?.swap_remove(i as usize))
}

/// All four cohomology tables `PH^0..PH^3` in X-grading, grades `-|w|..=max_grade`.
pub fn cohomology_tables(
    max_grade: i64,
    s: &GjpsStructure,
) -> Result<Vec<SeriesTruncation>, LinalgError> {
    let offset = -(s.weights().total() as i64);
    let sigma = s.shift();
    let mut jobs = Vec::new();
    for g in offset..=max_grade {
        for k in 0..=2u8 {
            jobs.push((ComplexMap::Coboundary(k), g));
            jobs.push((ComplexMap::Coboundary(k), g - sigma));
        }
    }
    jobs.sort();
    jobs.dedup();
    let table = RankTable::compute(jobs, s)?;
    let w = s.weights();
    let tables = (0..=3u8)
        .map(|i| {
            let coefficients = (offset..=max_grade)
                .map(|g| {
                    let ker = if i == 3 {
                        slice_basis(crate::linalg::SpaceKind::X3, g, w).dim()
                    } else {
                        table.kernel_dim(ComplexMap::Coboundary(i), g)
                    };
                    let im = if i == 0 {
                        0
                    } else {
                        table.rank(ComplexMap::Coboundary(i - 1), g - sigma)
                    };
                    (ker - im) as u64
                })
                .collect();
            SeriesTruncation {
                convention: GradingConvention::Multivector,
                offset,
                max_grade,
                coefficients,
            }
        })
        .collect();
    Ok(tables)
}

pub fn cohomology_dims(
    i: u8,
    max_grade: i64,
    s: &GjpsStructure,
) -> Result<SeriesTruncation, LinalgError> {
    Ok(cohomology_tables(max_grade, s)?.swap_remove(i as usize))
}

/// Form-graded dimensions of `Omega^k` for grades `0..=max_grade`.
pub fn omega_dims(k: u8, max_grade: i64, s: &GjpsStructure) -> Vec<u64> {
    let total = s.weights().total() as i64;
    (0..=max_grade)
        .map(|d| {
            slice_basis(crate::linalg::SpaceKind::omega(k), d - total, s.weights()).dim() as u64
        })
        .collect()
}

/// Checks `sum_i (-1)^i PH_i(d - i*shift) = sum_k (-1)^k Omega^k(d - k*shift)`
/// for every `d` in range.
pub fn euler_consistency(tables: &[SeriesTruncation], s: &GjpsStructure) -> bool {
    let max = tables[0].max_grade;
    let sigma = s.shift();
    let total = s.weights().total() as i64;
    (0..=max).all(|d| {
        let mut lhs = 0i64;
        let mut rhs = 0i64;
        for i in 0..=3u8 {
            let sign = if i % 2 == 0 { 1 } else { -1 };
            let g = d - i as i64 * sigma;
            lhs += sign * tables[i as usize].at(g) as i64;
            rhs += sign
                * slice_basis(crate::linalg::SpaceKind::omega(i), g - total, s.weights()).dim()
                    as i64;
        }
        lhs == rhs || (0..=3).any(|i| d - i * sigma > max)
    })
}
