mod common;

use common::*;
use gjps::linalg::{kernel_of_rows, rank_of, solve, SparseVec};
use gjps::poisson::bracket;
use gjps::poly::{parse_polynomial, slice_dimensions, Polynomial, Rational, SPATIAL_VARS};
use gjps::vector_calculus::{cross, curl, div, dot, grad, triple, VectorField};
use num_bigint::BigInt;
use proptest::prelude::*;

fn sparse(row: &[i64]) -> SparseVec {
    row.iter()
        .enumerate()
        .filter(|(_, v)| **v != 0)
        .map(|(i, v)| (i, Rational::from_integer(BigInt::from(*v))))
        .collect()
}

fn matrix() -> impl Strategy<Value = (usize, Vec<Vec<i64>>)> {
    (1usize..=6, 0usize..=7).prop_flat_map(|(ncols, nrows)| {
        (
            Just(ncols),
            prop::collection::vec(
                prop::collection::vec(-3i64..=3, ncols..=ncols),
                nrows..=nrows,
            ),
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn ring_axioms(a in poly(3), b in poly(3), c in poly(3)) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(&a * &Polynomial::one(3), a.clone());
    }

    #[test]
    fn derivative_leibniz(a in poly(4), b in poly(4), var in 0usize..3) {
        let lhs = (&a * &b).derivative(var);
        let rhs = &(&a.derivative(var) * &b) + &(&a * &b.derivative(var));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn euler_formula((w, d, f) in homogeneous()) {
        let e = VectorField::euler(&w);
        let lhs = dot(&e, &grad(&f).unwrap());
        prop_assert_eq!(lhs, f.scale_int(d as i64));
    }

    #[test]
    fn print_parse_fixed_point(a in poly(4)) {
        let text = a.to_string();
        let back = parse_polynomial(&text, &SPATIAL_VARS).unwrap();
        prop_assert_eq!(&back, &a);
        prop_assert_eq!(back.to_string(), text);
    }

    #[test]
    fn elimination_matches_gaussian((ncols, rows) in matrix()) {
        let sp: Vec<SparseVec> = rows.iter().map(|r| sparse(r)).collect();
        let rank = rank_of(&sp, ncols);
        prop_assert_eq!(rank, naive_rank(&rows, ncols));
        // The kernel of the row space: vectors orthogonal to every row.
        let kernel = kernel_of_rows(&sp, ncols);
        prop_assert_eq!(kernel.len(), ncols - rank);
        for v in &kernel {
            for r in &rows {
                let mut acc = Rational::from_integer(0.into());
                for (i, x) in v {
                    acc += Rational::from_integer(BigInt::from(r[*i])) * x;
                }
                prop_assert_eq!(acc, Rational::from_integer(0.into()));
            }
        }
    }

    #[test]
    fn solve_finds_preimages((ncols, rows) in matrix(), x in prop::collection::vec(-3i64..=3, 7)) {
        // Treat rows as columns of a map K^nrows -> K^ncols.
        let columns: Vec<SparseVec> = rows.iter().map(|r| sparse(r)).collect();
        let mut rhs = vec![0i64; ncols];
        for (j, r) in rows.iter().enumerate() {
            for i in 0..ncols {
                rhs[i] += x[j] * r[i];
            }
        }
        let sol = solve(&columns, ncols, &sparse(&rhs));
        prop_assert!(sol.is_some());
        let sol = sol.unwrap();
        for i in 0..ncols {
            let mut acc = Rational::from_integer(0.into());
            for (j, r) in rows.iter().enumerate() {
                acc += &sol[j] * Rational::from_integer(BigInt::from(r[i]));
            }
            prop_assert_eq!(acc, Rational::from_integer(BigInt::from(rhs[i])));
        }
    }

    #[test]
    fn slice_dimensions_match_counting(w in (1u64..=5, 1u64..=5, 1u64..=5)) {
        // Weights are stored with their gcd divided out.
        let ws = weights([w.0, w.1, w.2]);
        let w = [ws.weight(0), ws.weight(1), ws.weight(2)];
        let dims = slice_dimensions(30, &ws);
        for (d, n) in dims.iter().enumerate() {
            prop_assert_eq!(*n, count_monomials(w, d as u64), "grade {}", d);
        }
    }

    #[test]
    fn vector_identities(f in poly(3), g in field(3), h in field(3), k in field(3)) {
        prop_assert_eq!(curl(&g.scale(&f)), &curl(&g).scale(&f) + &cross(&grad(&f).unwrap(), &g));
        prop_assert_eq!(div(&g.scale(&f)), &dot(&grad(&f).unwrap(), &g) + &(&f * &div(&g)));
        prop_assert_eq!(div(&cross(&g, &h)), &dot(&h, &curl(&g)) - &dot(&g, &curl(&h)));
        prop_assert_eq!(dot(&g, &cross(&h, &k)), dot(&h, &cross(&k, &g)));
        prop_assert_eq!(triple(&g, &h, &k), dot(&g, &cross(&h, &k)));
    }

    #[test]
    fn bracket_is_poisson(idx in 0usize..3, f in poly(4), g in poly(4), h in poly(4)) {
        let s = planar(EXAMPLES[idx].1, EXAMPLES[idx].2);
        let b = |a: &Polynomial, c: &Polynomial| bracket(a, c, &s).unwrap();
        let jacobi = &(&b(&f, &b(&g, &h)) + &b(&g, &b(&h, &f))) + &b(&h, &b(&f, &g));
        prop_assert!(jacobi.is_zero());
        prop_assert_eq!(b(&f, &(&g * &h)), &(&b(&f, &g) * &h) + &(&g * &b(&f, &h)));
        prop_assert_eq!(b(&f, &g), -b(&g, &f));
        prop_assert!(b(&f, s.casimir()).is_zero());
    }
}

#[test]
fn complexes_square_to_zero() {
    for (name, s) in examples() {
        composite_vanishes(&s, &complex_pairs(), 10).unwrap_or_else(|e| panic!("{name}: {e}"));
    }
    composite_vanishes(&jps(), &complex_pairs(), 6).unwrap();
}
