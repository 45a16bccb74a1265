#![allow(dead_code)]

use gjps::linalg::{operator_matrix, ComplexMap};
use gjps::poisson::GjpsStructure;
use gjps::poly::{
    monomial_basis, parse_polynomial, Monomial, Polynomial, Rational, WeightSystem, SPATIAL_VARS,
};
use gjps::vector_calculus::VectorField;
use num_bigint::BigInt;
use proptest::prelude::*;

pub fn p(s: &str) -> Polynomial {
    parse_polynomial(s, &SPATIAL_VARS).unwrap()
}

pub fn weights(w: [u64; 3]) -> WeightSystem {
    WeightSystem::new(&w).unwrap()
}

/// The three worked examples: name, casimir, weights.
pub const EXAMPLES: [(&str, &str, [u64; 3]); 3] = [
    ("quadric", "x*y + 1/2*z^2", [1, 1, 1]),
    ("fermat", "1/3*x^3 + 1/3*y^3 + 1/3*z^3", [1, 1, 1]),
    ("weighted", "x^2 + y^2 + z^3", [3, 3, 2]),
];

pub fn planar(casimir: &str, w: [u64; 3]) -> GjpsStructure {
    GjpsStructure::with_planar_split(p("z"), p(casimir), weights(w)).unwrap()
}

pub fn examples() -> Vec<(&'static str, GjpsStructure)> {
    EXAMPLES
        .iter()
        .map(|(name, c, w)| (*name, planar(c, *w)))
        .collect()
}

pub fn jps() -> GjpsStructure {
    GjpsStructure::new(p("1"), p("x^3 + y^3 + z^3"), weights([1, 1, 1])).unwrap()
}

pub fn coeff() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| Rational::new(BigInt::from(n), BigInt::from(d)))
}

/// Polynomials in `x, y, z` of standard degree at most `max_degree`.
pub fn poly(max_degree: u32) -> impl Strategy<Value = Polynomial> {
    prop::collection::vec(
        ((0..=max_degree, 0..=max_degree, 0..=max_degree), coeff()),
        0..7,
    )
    .prop_map(move |terms| {
        let mut out = Polynomial::zero(3);
        for ((a, b, c), k) in terms {
            if a + b + c <= max_degree {
                out.add_term(Monomial([a, b, c]), k);
            }
        }
        out
    })
}

pub fn field(max_degree: u32) -> impl Strategy<Value = VectorField> {
    (poly(max_degree), poly(max_degree), poly(max_degree))
        .prop_map(|(a, b, c)| VectorField::new(a, b, c).unwrap())
}

/// A weight system and a random polynomial homogeneous of degree `d` for it.
pub fn homogeneous() -> impl Strategy<Value = (WeightSystem, u64, Polynomial)> {
    ((1u64..=4, 1u64..=4, 1u64..=4), 0u64..=9).prop_flat_map(|((a, b, c), d)| {
        let w = WeightSystem::new(&[a, b, c]).unwrap();
        let monos = monomial_basis(d as i64, &w).monomials().to_vec();
        let n = monos.len();
        (prop::collection::vec(coeff(), n..=n)).prop_map(move |cs| {
            let mut out = Polynomial::zero(3);
            for (m, k) in monos.iter().zip(cs) {
                out.add_term(*m, k);
            }
            (w.clone(), d, out)
        })
    })
}

/// Every composable pair of `op` maps and whether `next . this` vanishes on
/// full slice bases at X-grades `-|w|..=max`.
pub fn composite_vanishes(
    s: &GjpsStructure,
    pairs: &[(ComplexMap, ComplexMap)],
    max: i64,
) -> Result<(), String> {
    for &(first, second) in pairs {
        for g in -(s.weights().total() as i64)..=max {
            let a = operator_matrix(first, g, s).map_err(|e| e.to_string())?;
            let b = operator_matrix(second, g + first.shift(s), s).map_err(|e| e.to_string())?;
            if a.then(&b).iter().any(|c| !c.is_empty()) {
                return Err(format!(
                    "{} then {} at X-grade {g}",
                    first.label(),
                    second.label()
                ));
            }
        }
    }
    Ok(())
}

pub fn complex_pairs() -> Vec<(ComplexMap, ComplexMap)> {
    vec![
        (ComplexMap::Boundary(3), ComplexMap::Boundary(2)),
        (ComplexMap::Boundary(2), ComplexMap::Boundary(1)),
        (ComplexMap::Coboundary(0), ComplexMap::Coboundary(1)),
        (ComplexMap::Coboundary(1), ComplexMap::Coboundary(2)),
        (ComplexMap::DeRham(0), ComplexMap::DeRham(1)),
        (ComplexMap::DeRham(1), ComplexMap::DeRham(2)),
        (ComplexMap::Koszul(0), ComplexMap::Koszul(1)),
        (ComplexMap::Koszul(1), ComplexMap::Koszul(2)),
    ]
}

/// Rank by textbook Gaussian elimination over the rationals.
pub fn naive_rank(rows: &[Vec<i64>], ncols: usize) -> usize {
    let mut m: Vec<Vec<Rational>> = rows
        .iter()
        .map(|r| {
            r.iter()
                .map(|v| Rational::from_integer(BigInt::from(*v)))
                .collect()
        })
        .collect();
    let mut rank = 0;
    for col in 0..ncols {
        let Some(pivot) = (rank..m.len()).find(|&i| m[i][col] != Rational::from_integer(0.into()))
        else {
            continue;
        };
        m.swap(rank, pivot);
        for i in 0..m.len() {
            if i != rank && m[i][col] != Rational::from_integer(0.into()) {
                let f = &m[i][col] / &m[rank][col];
                for j in 0..ncols {
                    let sub = &f * &m[rank][j];
                    m[i][j] -= sub;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Number of `(a, b, c)` with `w . (a, b, c) = d`, by direct enumeration.
pub fn count_monomials(w: [u64; 3], d: u64) -> u64 {
    let mut n = 0;
    for a in 0..=d / w[0] {
        for b in 0..=(d - a * w[0]) / w[1] {
            if (d - a * w[0] - b * w[1]).is_multiple_of(w[2]) {
                n += 1;
            }
        }
    }
    n
}
