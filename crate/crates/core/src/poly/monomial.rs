use std::cmp::Ordering;

/// Maximum number of variables supported by the engine.
pub const MAX_VARS: usize = 3;

/// Exponent vector of a monomial in at most three variables.
///
/// Entries past the ambient arity are always zero, so a planar monomial
/// `x^a y^b` is stored as `[a, b, 0]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, serde::Serialize)]
pub struct Monomial(pub [u32; MAX_VARS]);

impl Monomial {
    pub const ONE: Monomial = Monomial([0; MAX_VARS]);

    pub fn new(exps: [u32; MAX_VARS]) -> Self {
        Monomial(exps)
    }

    /// The monomial `x_var`.
    pub fn var(var: usize) -> Self {
        let mut e = [0; MAX_VARS];
        e[var] = 1;
        Monomial(e)
    }

    pub fn exponent(&self, var: usize) -> u32 {
        self.0[var]
    }

    pub fn total_degree(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut e = self.0;
        for (a, b) in e.iter_mut().zip(other.0.iter()) {
            *a += *b;
        }
        Monomial(e)
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut e = self.0;
        for (a, b) in e.iter_mut().zip(other.0.iter()) {
            *a = a.checked_sub(*b)?;
        }
        Some(Monomial(e))
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a <= b)
    }

    /// Whether all exponents at positions `>= nvars` vanish.
    pub fn fits(&self, nvars: usize) -> bool {
        self.0[nvars..].iter().all(|&e| e == 0)
    }
}

/// Graded lexicographic order with `x > y > z`.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
