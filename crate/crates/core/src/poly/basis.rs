use std::collections::HashMap;

use super::{Monomial, WeightSystem};

/// All monomials of one weighted degree, in descending monomial order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedSliceBasis {
    grade: i64,
    nvars: usize,
    monomials: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
}

impl GradedSliceBasis {
    pub fn grade(&self) -> i64 {
        self.grade
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn index_of(&self, m: &Monomial) -> Option<usize> {
        self.index.get(m).copied()
    }
}

/// Complete basis of the slice `A_grade` (empty for negative grades).
pub fn monomial_basis(grade: i64, w: &WeightSystem) -> GradedSliceBasis {
    let nvars = w.nvars();
    let mut monomials = Vec::new();
    if grade >= 0 {
        let mut exps = [0u32; 3];
        enumerate(0, grade as u64, w, &mut exps, &mut monomials);
    }
    monomials.sort_by(|a, b| b.cmp(a));
    let index = monomials.iter().enumerate().map(|(i, m)| (*m, i)).collect();
    GradedSliceBasis {
        grade,
        nvars,
        monomials,
        index,
    }
}

fn enumerate(
    var: usize,
    remaining: u64,
    w: &WeightSystem,
    exps: &mut [u32; 3],
    out: &mut Vec<Monomial>,
) {
    let wt = w.weight(var);
    if var + 1 == w.nvars() {
        if remaining.is_multiple_of(wt) {
            exps[var] = (remaining / wt) as u32;
            out.push(Monomial(*exps));
            exps[var] = 0;
        }
        return;
    }
    let mut e = 0u64;
    while e * wt <= remaining {
        exps[var] = e as u32;
        enumerate(var + 1, remaining - e * wt, w, exps, out);
        e += 1;
    }
    exps[var] = 0;
}

/// `dim A_d` for `d = 0..=max`, by the coin-change recurrence for
/// `prod 1/(1 - t^{w_i})`.
pub fn slice_dimensions(max: usize, w: &WeightSystem) -> Vec<u64> {
    let mut dims = vec![0u64; max + 1];
    dims[0] = 1;
    for &wt in w.as_slice() {
        let wt = wt as usize;
        for d in wt..=max {
            dims[d] += dims[d - wt];
        }
    }
    dims
}
