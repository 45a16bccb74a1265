//! Rational generating functions `N(t)/D(t)` with integer coefficients, and
//! truncated dimension series.

use std::fmt;

use serde::Serialize;

use crate::poly::WeightSystem;

/// `t^low * (n_0 + n_1 t + ...) / (1 + d_1 t + ...)`.
///
/// The denominator has constant term one, so expansion is exact in integers.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RationalSeries {
    pub low: i64,
    pub numerator: Vec<i64>,
    pub denominator: Vec<i64>,
}

fn trim(v: &mut Vec<i64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn poly_mul(a: &[i64], b: &[i64]) -> Vec<i64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0i64; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if *x == 0 {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(&mut out);
    out
}

/// `1 - t^k`.
pub fn one_minus_t_pow(k: u64) -> Vec<i64> {
    let mut v = vec![0i64; k as usize + 1];
    v[0] = 1;
    v[k as usize] -= 1;
    trim(&mut v);
    v
}

/// Exact quotient `a / b` when `b` divides `a`.
fn poly_div_exact(a: &[i64], b: &[i64]) -> Option<Vec<i64>> {
    let mut rem: Vec<i64> = a.to_vec();
    trim(&mut rem);
    let mut b = b.to_vec();
    trim(&mut b);
    let lead = *b.last()?;
    if rem.is_empty() {
        return Some(Vec::new());
    }
    if rem.len() < b.len() {
        return None;
    }
    let mut q = vec![0i64; rem.len() - b.len() + 1];
    for k in (0..q.len()).rev() {
        let c = rem[k + b.len() - 1];
        if c % lead != 0 {
            return None;
        }
        let f = c / lead;
        q[k] = f;
        for (j, bj) in b.iter().enumerate() {
            rem[k + j] -= f * bj;
        }
    }
    if rem.iter().all(|x| *x == 0) {
        trim(&mut q);
        Some(q)
    } else {
        None
    }
}

impl RationalSeries {
    pub fn new(low: i64, numerator: Vec<i64>, denominator: Vec<i64>) -> Self {
        assert_eq!(
            denominator.first(),
            Some(&1),
            "denominator must have constant term 1"
        );
        let mut s = RationalSeries {
            low,
            numerator,
            denominator,
        };
        s.normalize();
        s
    }

    pub fn zero() -> Self {
        RationalSeries::new(0, Vec::new(), vec![1])
    }

    /// `prod 1/(1 - t^{w_i})`.
    pub fn hilbert(w: &WeightSystem) -> Self {
        let den = w
            .as_slice()
            .iter()
            .fold(vec![1], |acc, wi| poly_mul(&acc, &one_minus_t_pow(*wi)));
        RationalSeries::new(0, vec![1], den)
    }

    fn normalize(&mut self) {
        trim(&mut self.numerator);
        trim(&mut self.denominator);
        if self.numerator.is_empty() {
            self.low = 0;
            return;
        }
        let lead_zeros = self.numerator.iter().take_while(|x| **x == 0).count();
        self.numerator.drain(..lead_zeros);
        self.low += lead_zeros as i64;
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.is_empty()
    }

    /// Coefficients of `t^from, ..., t^to`.
    pub fn expand(&self, from: i64, to: i64) -> Vec<i64> {
        if to < from {
            return Vec::new();
        }
        let len = (to - self.low + 1).max(0) as usize;
        let mut c = vec![0i64; len];
        for k in 0..len {
            let mut v = self.numerator.get(k).copied().unwrap_or(0);
            for j in 1..self.denominator.len().min(k + 1) {
                v -= self.denominator[j] * c[k - j];
            }
            c[k] = v;
        }
        (from..=to)
            .map(|g| {
                let k = g - self.low;
                if k < 0 {
                    0
                } else {
                    c[k as usize]
                }
            })
            .collect()
    }

    pub fn shifted(&self, by: i64) -> Self {
        let mut s = self.clone();
        if !s.is_zero() {
            s.low += by;
        }
        s
    }

    pub fn scaled(&self, c: i64) -> Self {
        RationalSeries::new(
            self.low,
            self.numerator.iter().map(|x| x * c).collect(),
            self.denominator.clone(),
        )
    }

    pub fn add(&self, other: &RationalSeries) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let low = self.low.min(other.low);
        let a = poly_mul(&pad(&self.numerator, self.low - low), &other.denominator);
        let b = poly_mul(&pad(&other.numerator, other.low - low), &self.denominator);
        let n = a.len().max(b.len());
        let num = (0..n)
            .map(|i| a.get(i).copied().unwrap_or(0) + b.get(i).copied().unwrap_or(0))
            .collect();
        let mut out =
            RationalSeries::new(low, num, poly_mul(&self.denominator, &other.denominator));
        out.reduce_common(&self.denominator, &other.denominator);
        out
    }

    pub fn sub(&self, other: &RationalSeries) -> Self {
        self.add(&other.scaled(-1))
    }

    /// Cancels a repeated factor when both summands had the same denominator.
    fn reduce_common(&mut self, a: &[i64], b: &[i64]) {
        if a == b {
            if let Some(n) = poly_div_exact(&self.numerator, a) {
                self.numerator = n;
                self.denominator = a.to_vec();
                self.normalize();
            }
        }
    }

    /// Equality as rational functions (cross multiplication).
    pub fn same_function(&self, other: &RationalSeries) -> bool {
        let low = self.low.min(other.low);
        let a = poly_mul(&pad(&self.numerator, self.low - low), &other.denominator);
        let b = poly_mul(&pad(&other.numerator, other.low - low), &self.denominator);
        a == b
    }

    /// The numerator over `den`: `Some(N')` when `self = t^low * N'/den` for a
    /// polynomial `N'`.
    pub fn numerator_over(&self, den: &[i64]) -> Option<RationalSeries> {
        let cross = poly_mul(&self.numerator, den);
        let n = poly_div_exact(&cross, &self.denominator)?;
        Some(RationalSeries::new(self.low, n, den.to_vec()))
    }

    /// Numerator as a Laurent polynomial string in `t`.
    pub fn numerator_string(&self) -> String {
        poly_string(self.low, &self.numerator)
    }
}

fn pad(v: &[i64], by: i64) -> Vec<i64> {
    let mut out = vec![0i64; by as usize];
    out.extend_from_slice(v);
    out
}

fn poly_string(low: i64, coeffs: &[i64]) -> String {
    let mut parts: Vec<String> = Vec::new();
    for (i, c) in coeffs.iter().enumerate() {
        if *c == 0 {
            continue;
        }
        let e = low + i as i64;
        let mag = c.abs();
        let body = match (e, mag) {
            (0, m) => m.to_string(),
            (1, 1) => "t".to_string(),
            (1, m) => format!("{m}*t"),
            (e, 1) => format!("t^{e}"),
            (e, m) => format!("{m}*t^{e}"),
        };
        if parts.is_empty() {
            parts.push(if *c < 0 { format!("-{body}") } else { body });
        } else {
            parts.push(format!("{} {body}", if *c < 0 { "-" } else { "+" }));
        }
    }
    if parts.is_empty() {
        "0".to_string()
    } else {
        parts.join(" ")
    }
}

impl fmt::Display for RationalSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        write!(
            f,
            "({}) / ({})",
            poly_string(self.low, &self.numerator),
            poly_string(0, &self.denominator)
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GradingConvention {
    /// Weighted degree of forms, `dx_i` carrying `w_i`.
    Form,
    /// The multivector grading in which `X^k_g` has components of degree `g + offset`.
    Multivector,
}

/// Dimensions of a graded space for grades `offset..=max_grade`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SeriesTruncation {
    pub convention: GradingConvention,
    pub offset: i64,
    pub max_grade: i64,
    pub coefficients: Vec<u64>,
}

impl SeriesTruncation {
    pub fn at(&self, grade: i64) -> u64 {
        if grade < self.offset || grade > self.max_grade {
            return 0;
        }
        self.coefficients[(grade - self.offset) as usize]
    }

    pub fn grades(&self) -> impl Iterator<Item = i64> {
        self.offset..=self.max_grade
    }

    pub fn matches(&self, series: &RationalSeries) -> bool {
        let e = series.expand(self.offset, self.max_grade);
        e.iter()
            .zip(&self.coefficients)
            .all(|(a, b)| *a == *b as i64)
    }
}

/// `(1 - t^2)(1 - t)`, the denominator of the quadratic closed forms.
pub fn quadratic_denominator() -> Vec<i64> {
    poly_mul(&one_minus_t_pow(2), &one_minus_t_pow(1))
}

/// The printed Poincare series of `PH_i` for weights `(1,1,1)`, `deg lambda = 1`, `deg P = 2`.
pub fn closed_form_series(i: u8) -> RationalSeries {
    let den = quadratic_denominator();
    match i {
        0 => RationalSeries::new(0, vec![1, 2, -1], den),
        1 => RationalSeries::new(0, vec![0, 1, 1, 2], den),
        2 => RationalSeries::new(0, vec![0, 0, 0, 2], den),
        _ => RationalSeries::zero(),
    }
}

/// `(1 - t^p) prod (1 - t^{w_i})`, which clears the denominator of every
/// series built from the exact sequences.
pub fn sequence_denominator(w: &WeightSystem, p_degree: u64) -> Vec<i64> {
    w.as_slice()
        .iter()
        .fold(one_minus_t_pow(p_degree), |acc, wi| {
            poly_mul(&acc, &one_minus_t_pow(*wi))
        })
}

/// `PH_1` numerator `3t + t^3` obtained from the exact sequences, quadratic case.
pub fn sequence_closed_form_ph1() -> RationalSeries {
    RationalSeries::new(0, vec![0, 3, 0, 1], quadratic_denominator())
}

/// Form-graded Poincare series of `Omega^k`.
pub fn omega_series(k: u8, w: &WeightSystem) -> RationalSeries {
    let h = RationalSeries::hilbert(w);
    let ws = w.as_slice();
    let shifts: Vec<u64> = match k {
        0 => vec![0],
        1 => ws.to_vec(),
        2 => vec![ws[1] + ws[2], ws[0] + ws[2], ws[0] + ws[1]],
        3 => vec![w.total()],
        _ => Vec::new(),
    };
    shifts.into_iter().fold(RationalSeries::zero(), |acc, s| {
        acc.add(&h.shifted(s as i64))
    })
}

/// Series of `ker d_k` from the exact sequences: `K_0 = A`,
/// `K_1 = A(-deg P) + A - K[P]`, `K_2 = A(-deg P) - K[P](-deg P)`, `K_3 = 0`.
pub fn kernel_series(k: u8, w: &WeightSystem, p_degree: u64) -> RationalSeries {
    let h = RationalSeries::hilbert(w);
    let casimirs = RationalSeries::new(0, vec![1], one_minus_t_pow(p_degree));
    let dp = p_degree as i64;
    match k {
        0 => h,
        1 => h.shifted(dp).add(&h).sub(&casimirs),
        2 => h.sub(&casimirs).shifted(dp),
        _ => RationalSeries::zero(),
    }
}

/// `P(PH_i) = K_i - t^shift (Omega^(i+1) - K_(i+1))`.
pub fn series_from_sequences(i: u8, w: &WeightSystem, p_degree: u64, shift: i64) -> RationalSeries {
    let k_i = kernel_series(i, w, p_degree);
    let image = omega_series(i + 1, w).sub(&kernel_series(i + 1, w, p_degree));
    k_i.sub(&image.shifted(shift))
}
