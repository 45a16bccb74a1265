use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{Monomial, PolyError, Rational, WeightSystem, MAX_VARS};

/// Default variable names for printing.
pub const SPATIAL_VARS: [&str; 3] = ["x", "y", "z"];
pub const PLANAR_VARS: [&str; 2] = ["x", "y"];

/// Sparse polynomial with exact rational coefficients in 2 or 3 variables.
///
/// Zero coefficients are never stored. Binary operators panic when the two
/// operands live in rings of different arity; the `checked_*` methods report
/// that as an error instead.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    nvars: usize,
    terms: BTreeMap<Monomial, Rational>,
}

/// Weighted degree of a polynomial. The zero polynomial has degree `-inf`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Degree {
    NegInfinity,
    Finite(u64),
}

impl Degree {
    pub fn finite(self) -> Option<u64> {
        match self {
            Degree::NegInfinity => None,
            Degree::Finite(d) => Some(d),
        }
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::NegInfinity => write!(f, "-inf"),
            Degree::Finite(d) => write!(f, "{d}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WeightedDegree {
    pub degree: Degree,
    pub homogeneous: bool,
}

impl Polynomial {
    pub fn zero(nvars: usize) -> Self {
        assert!((2..=MAX_VARS).contains(&nvars), "unsupported arity {nvars}");
        Polynomial {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        Self::monomial(nvars, Monomial::ONE, c)
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rational::one())
    }

    pub fn from_int(nvars: usize, c: i64) -> Self {
        Self::constant(nvars, Rational::from_integer(c.into()))
    }

    /// The coordinate function `x_var`.
    pub fn var(nvars: usize, var: usize) -> Self {
        assert!(var < nvars);
        Self::monomial(nvars, Monomial::var(var), Rational::one())
    }

    pub fn monomial(nvars: usize, m: Monomial, c: Rational) -> Self {
        let mut p = Self::zero(nvars);
        assert!(m.fits(nvars), "monomial outside the ring");
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn from_terms<I>(nvars: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, Rational)>,
    {
        let mut p = Self::zero(nvars);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        debug_assert!(m.fits(self.nvars));
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    fn check_arity(&self, other: &Polynomial) -> Result<(), PolyError> {
        if self.nvars == other.nvars {
            Ok(())
        } else {
            Err(PolyError::ArityMismatch {
                left: self.nvars,
                right: other.nvars,
            })
        }
    }

    pub fn checked_add(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.check_arity(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.check_arity(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, -c.clone());
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.check_arity(other)?;
        let mut out = Polynomial::zero(self.nvars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.nvars);
        }
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, v)| (*m, v * c)).collect(),
        }
    }

    pub fn scale_int(&self, c: i64) -> Polynomial {
        self.scale(&Rational::from_integer(c.into()))
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Polynomial {
        Polynomial {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(k, v)| (k.mul(m), v.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut result = Polynomial::one(self.nvars);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Formal partial derivative with respect to `x_var`.
    pub fn derivative(&self, var: usize) -> Polynomial {
        assert!(var < self.nvars, "variable index out of range");
        let mut out = Polynomial::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.exponent(var);
            if e == 0 {
                continue;
            }
            let mut exps = m.0;
            exps[var] -= 1;
            out.terms
                .insert(Monomial(exps), c * Rational::from_integer(BigInt::from(e)));
        }
        out
    }

    pub fn weight_degree(&self, w: &WeightSystem) -> WeightedDegree {
        let mut degrees = self.terms.keys().map(|m| w.degree_of(m));
        let Some(first) = degrees.next() else {
            return WeightedDegree {
                degree: Degree::NegInfinity,
                homogeneous: true,
            };
        };
        let (mut max, mut homogeneous) = (first, true);
        for d in degrees {
            if d != first {
                homogeneous = false;
            }
            max = max.max(d);
        }
        WeightedDegree {
            degree: Degree::Finite(max),
            homogeneous,
        }
    }

    /// Degree when `self` is nonzero and weight homogeneous.
    pub fn homogeneous_degree(&self, w: &WeightSystem) -> Option<u64> {
        let wd = self.weight_degree(w);
        if wd.homogeneous {
            wd.degree.finite()
        } else {
            None
        }
    }

    /// Whether no term involves `x_var`.
    pub fn is_free_of(&self, var: usize) -> bool {
        self.terms.keys().all(|m| m.exponent(var) == 0)
    }

    /// Reinterprets a z-free polynomial of `K[x,y,z]` as an element of `K[x,y]`.
    pub fn to_planar(&self) -> Result<Polynomial, PolyError> {
        if self.nvars == 2 {
            return Ok(self.clone());
        }
        if !self.is_free_of(2) {
            return Err(PolyError::NotPlanar);
        }
        Ok(Polynomial {
            nvars: 2,
            terms: self.terms.clone(),
        })
    }

    /// Embeds an element of `K[x,y]` into `K[x,y,z]`.
    pub fn to_spatial(&self) -> Polynomial {
        Polynomial {
            nvars: 3,
            terms: self.terms.clone(),
        }
    }

    /// Splits off the terms involving `x_var`: returns `(free, dependent)`.
    pub fn split_by_var(&self, var: usize) -> (Polynomial, Polynomial) {
        let mut free = Polynomial::zero(self.nvars);
        let mut dep = Polynomial::zero(self.nvars);
        for (m, c) in &self.terms {
            if m.exponent(var) == 0 {
                free.terms.insert(*m, c.clone());
            } else {
                dep.terms.insert(*m, c.clone());
            }
        }
        (free, dep)
    }

    /// Prints with the given variable names, terms in descending monomial order.
    pub fn to_string_with(&self, names: &[&str]) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            let mut factors: Vec<String> = Vec::new();
            if !abs.is_one() || *m == Monomial::ONE {
                factors.push(format_rational(&abs));
            }
            for (v, name) in names.iter().enumerate().take(self.nvars) {
                match m.exponent(v) {
                    0 => {}
                    1 => factors.push((*name).to_string()),
                    e => factors.push(format!("{name}^{e}")),
                }
            }
            out.push_str(&factors.join("*"));
        }
        out
    }
}

/// `a/b` form, or just `a` for integers.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: &[&str] = if self.nvars == 2 {
            &PLANAR_VARS
        } else {
            &SPATIAL_VARS
        };
        f.write_str(&self.to_string_with(names))
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.checked_add(rhs)
            .expect("arity mismatch in polynomial addition")
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.checked_sub(rhs)
            .expect("arity mismatch in polynomial subtraction")
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.checked_mul(rhs)
            .expect("arity mismatch in polynomial multiplication")
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (*m, -c.clone())).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: Polynomial) -> Polynomial {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: &Polynomial) -> Polynomial {
                (&self).$method(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}
