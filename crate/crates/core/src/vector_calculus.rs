//! Vector operators on triples of polynomials in `K[x,y,z]` and on pairs in
//! `K[x,y]`.
//!
//! A single [`VectorField`] carries 1-forms, 2-forms, vector fields and
//! bivector fields alike; which space an element belongs to is tracked by
//! the grading layer, not by the value.

use std::ops::{Add, Neg, Sub};

use crate::poly::{PolyError, Polynomial, Rational, WeightSystem};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VectorField(pub [Polynomial; 3]);

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PlanarField(pub [Polynomial; 2]);

fn require_arity(p: &Polynomial, nvars: usize) -> Result<(), PolyError> {
    if p.nvars() == nvars {
        Ok(())
    } else {
        Err(PolyError::ArityMismatch {
            left: p.nvars(),
            right: nvars,
        })
    }
}

impl VectorField {
    pub fn new(a: Polynomial, b: Polynomial, c: Polynomial) -> Result<Self, PolyError> {
        for p in [&a, &b, &c] {
            require_arity(p, 3)?;
        }
        Ok(VectorField([a, b, c]))
    }

    pub fn zero() -> Self {
        VectorField([
            Polynomial::zero(3),
            Polynomial::zero(3),
            Polynomial::zero(3),
        ])
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Polynomial::is_zero)
    }

    pub fn components(&self) -> &[Polynomial; 3] {
        &self.0
    }

    pub fn scale(&self, f: &Polynomial) -> VectorField {
        VectorField(self.0.clone().map(|c| &c * f))
    }

    pub fn scale_rational(&self, c: &Rational) -> VectorField {
        VectorField(self.0.clone().map(|p| p.scale(c)))
    }

    /// Euler field `e_w = (w1 x, w2 y, w3 z)`.
    pub fn euler(w: &WeightSystem) -> VectorField {
        assert_eq!(w.nvars(), 3);
        VectorField(std::array::from_fn(|i| {
            Polynomial::var(3, i).scale_int(w.weight(i) as i64)
        }))
    }
}

impl Add for &VectorField {
    type Output = VectorField;
    fn add(self, rhs: &VectorField) -> VectorField {
        VectorField(std::array::from_fn(|i| &self.0[i] + &rhs.0[i]))
    }
}

impl Sub for &VectorField {
    type Output = VectorField;
    fn sub(self, rhs: &VectorField) -> VectorField {
        VectorField(std::array::from_fn(|i| &self.0[i] - &rhs.0[i]))
    }
}

impl Neg for &VectorField {
    type Output = VectorField;
    fn neg(self) -> VectorField {
        VectorField(std::array::from_fn(|i| -&self.0[i]))
    }
}

impl std::fmt::Display for VectorField {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}, {}, {})", self.0[0], self.0[1], self.0[2])
    }
}

impl PlanarField {
    pub fn new(a: Polynomial, b: Polynomial) -> Result<Self, PolyError> {
        require_arity(&a, 2)?;
        require_arity(&b, 2)?;
        Ok(PlanarField([a, b]))
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Polynomial::is_zero)
    }
}

/// `(dF/dx, dF/dy, dF/dz)`.
pub fn grad(f: &Polynomial) -> Result<VectorField, PolyError> {
    require_arity(f, 3)?;
    Ok(VectorField(std::array::from_fn(|i| f.derivative(i))))
}

pub fn curl(g: &VectorField) -> VectorField {
    let [a, b, c] = &g.0;
    VectorField([
        &c.derivative(1) - &b.derivative(2),
        &a.derivative(2) - &c.derivative(0),
        &b.derivative(0) - &a.derivative(1),
    ])
}

pub fn div(g: &VectorField) -> Polynomial {
    let [a, b, c] = &g.0;
    &(&a.derivative(0) + &b.derivative(1)) + &c.derivative(2)
}

pub fn cross(f: &VectorField, g: &VectorField) -> VectorField {
    let [f1, f2, f3] = &f.0;
    let [g1, g2, g3] = &g.0;
    VectorField([
        &(f2 * g3) - &(f3 * g2),
        &(f3 * g1) - &(f1 * g3),
        &(f1 * g2) - &(f2 * g1),
    ])
}

pub fn dot(f: &VectorField, g: &VectorField) -> Polynomial {
    let mut acc = Polynomial::zero(3);
    for (a, b) in f.0.iter().zip(g.0.iter()) {
        acc = &acc + &(a * b);
    }
    acc
}

/// `F . (G x H)`.
pub fn triple(f: &VectorField, g: &VectorField, h: &VectorField) -> Polynomial {
    dot(f, &cross(g, h))
}

/// The planar rotated gradient `(dF/dy, -dF/dx)`.
pub fn planar_box(f: &Polynomial) -> Result<PlanarField, PolyError> {
    require_arity(f, 2)?;
    Ok(PlanarField([f.derivative(1), -&f.derivative(0)]))
}

pub fn planar_grad(f: &Polynomial) -> Result<PlanarField, PolyError> {
    require_arity(f, 2)?;
    Ok(PlanarField([f.derivative(0), f.derivative(1)]))
}

/// `dK1/dx + dK2/dy`.
pub fn planar_div(k: &PlanarField) -> Polynomial {
    &k.0[0].derivative(0) + &k.0[1].derivative(1)
}

/// `dF2/dx - dF1/dy`.
pub fn planar_curl(f: &PlanarField) -> Polynomial {
    &f.0[1].derivative(0) - &f.0[0].derivative(1)
}

pub fn planar_dot(f: &PlanarField, g: &PlanarField) -> Polynomial {
    &(&f.0[0] * &g.0[0]) + &(&f.0[1] * &g.0[1])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse_polynomial, PLANAR_VARS, SPATIAL_VARS};

    fn p(s: &str) -> Polynomial {
        parse_polynomial(s, &SPATIAL_VARS).unwrap()
    }
    fn b(s: &str) -> Polynomial {
        parse_polynomial(s, &PLANAR_VARS).unwrap()
    }
    fn v(a: &str, b: &str, c: &str) -> VectorField {
        VectorField::new(p(a), p(b), p(c)).unwrap()
    }

    #[test]
    fn gradients() {
        assert_eq!(grad(&p("x*y + 1/2*z^2")).unwrap(), v("y", "x", "z"));
        assert!(grad(&p("1")).unwrap().is_zero());
        assert_eq!(grad(&p("z")).unwrap(), v("0", "0", "1"));
        assert!(grad(&b("x")).is_err());
    }

    #[test]
    fn curls() {
        assert!(curl(&grad(&p("x^2*y + z^3")).unwrap()).is_zero());
        assert_eq!(curl(&v("0", "0", "x*y")), v("x", "-y", "0"));
        assert!(curl(&v("y", "x", "z")).is_zero());
    }

    #[test]
    fn divergences() {
        let w = WeightSystem::new(&[3, 3, 2]).unwrap();
        assert_eq!(div(&VectorField::euler(&w)), p("8"));
        assert_eq!(div(&v("x^2", "0", "0")), p("2*x"));
        assert!(div(&curl(&v("x*y*z", "z^3 + x", "y^2*x"))).is_zero());
    }

    #[test]
    fn products() {
        let f = v("x", "y^2", "z + 1");
        assert!(cross(&f, &f).is_zero());
        let gx = grad(&p("x")).unwrap();
        let gy = grad(&p("y")).unwrap();
        let gz = grad(&p("z")).unwrap();
        assert_eq!(dot(&gz, &cross(&gx, &gy)), p("1"));
    }

    #[test]
    fn planar_operators() {
        assert_eq!(
            planar_box(&b("x^2 + y^2")).unwrap(),
            PlanarField([b("2*y"), b("-2*x")])
        );
        assert!(planar_div(&planar_box(&b("x^3*y + y^5")).unwrap()).is_zero());
        assert!(planar_curl(&planar_grad(&b("x^2*y^3")).unwrap()).is_zero());
        assert!(planar_box(&p("x")).is_err());
    }

    #[test]
    fn box_matches_modular_pairing() {
        // with lambda = z: (grad z x grad P) . grad Q = box(Q) . grad(P~) on z-free data
        let ptilde = b("x^2 + y^2");
        let q = b("x");
        let lhs = planar_dot(&planar_box(&q).unwrap(), &planar_grad(&ptilde).unwrap());
        let big_p = p("x^2 + y^2 + z^3");
        let m = cross(&grad(&p("z")).unwrap(), &grad(&big_p).unwrap());
        let rhs = dot(&m, &grad(&q.to_spatial()).unwrap());
        let (z_free, _) = rhs.split_by_var(2);
        assert_eq!(lhs.to_spatial(), z_free);
    }
}
