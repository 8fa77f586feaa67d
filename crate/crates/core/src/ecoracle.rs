// Licensed under the Apache License, Version 2.0 (the "License"); you may
// not use this file except in compliance with the License. You may obtain
// a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS, WITHOUT
// WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the
// License for the specific language governing permissions and limitations
// under the License.

//! Classical group law on ordinary binary curves `y^2 + xy = x^3 + a2 x^2 + a6`.
//!
//! Affine addition covers every branch and uses field inversion. López-Dahab
//! points `(X, Y, Z)` stand for `(X/Z, Y/Z^2)`; the identity is any `(X, 0, 0)`.

use rand::Rng;

use crate::error::{Error, Result};
use crate::gf2field::{FieldElem, IrreduciblePoly};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Curve {
    field: IrreduciblePoly,
    a2: FieldElem,
    a6: FieldElem,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum AffinePoint {
    Infinity,
    Finite { x: FieldElem, y: FieldElem },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LdPoint {
    pub x: FieldElem,
    pub y: FieldElem,
    pub z: FieldElem,
}

impl AffinePoint {
    /// A finite point; no curve membership check.
    pub fn new_unchecked(x: FieldElem, y: FieldElem) -> Result<Self> {
        if x.modulus() != y.modulus() {
            return Err(Error::ModulusMismatch);
        }
        Ok(AffinePoint::Finite { x, y })
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self, AffinePoint::Infinity)
    }

    pub fn coords(&self) -> Option<(&FieldElem, &FieldElem)> {
        match self {
            AffinePoint::Infinity => None,
            AffinePoint::Finite { x, y } => Some((x, y)),
        }
    }

    /// `-(x, y) = (x, x + y)`.
    pub fn negate(&self) -> AffinePoint {
        match self {
            AffinePoint::Infinity => AffinePoint::Infinity,
            AffinePoint::Finite { x, y } => AffinePoint::Finite { x: x.clone(), y: x + y },
        }
    }

    /// `(x, y, 1)`, or `(1, 0, 0)` for the identity. Needs the field for the latter.
    pub fn to_ld(&self, field: &IrreduciblePoly) -> LdPoint {
        match self {
            AffinePoint::Infinity => LdPoint {
                x: field.one(),
                y: field.zero(),
                z: field.zero(),
            },
            AffinePoint::Finite { x, y } => LdPoint {
                x: x.clone(),
                y: y.clone(),
                z: field.one(),
            },
        }
    }

    /// The representative `(l x, l^2 y, l)` for a nonzero `l`.
    pub fn to_ld_scaled(&self, lambda: &FieldElem) -> Result<LdPoint> {
        if lambda.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.to_ld(lambda.modulus()).scale(lambda))
    }
}

impl LdPoint {
    pub fn is_identity(&self) -> bool {
        self.z.is_zero()
    }

    /// `(l X, l^2 Y, l Z)`, the same projective class for `l != 0`.
    pub fn scale(&self, lambda: &FieldElem) -> LdPoint {
        LdPoint {
            x: lambda * &self.x,
            y: &lambda.square() * &self.y,
            z: lambda * &self.z,
        }
    }

    pub fn to_affine(&self) -> Result<AffinePoint> {
        if self.z.is_zero() {
            return Ok(AffinePoint::Infinity);
        }
        let zi = self.z.inverse()?;
        Ok(AffinePoint::Finite {
            x: &self.x * &zi,
            y: &self.y * &zi.square(),
        })
    }

    /// Projective equality; all points with `Z = 0` are the identity.
    pub fn ld_equal(&self, other: &LdPoint) -> bool {
        match (self.z.is_zero(), other.z.is_zero()) {
            (true, true) => true,
            (false, false) => {
                &self.x * &other.z == &other.x * &self.z && &self.y * &other.z.square() == &other.y * &self.z.square()
            }
            _ => false,
        }
    }
}

impl Curve {
    pub fn new(a2: FieldElem, a6: FieldElem) -> Result<Self> {
        if a2.modulus() != a6.modulus() {
            return Err(Error::ModulusMismatch);
        }
        if a6.is_zero() {
            return Err(Error::SingularCurve);
        }
        Ok(Curve {
            field: a2.modulus().clone(),
            a2,
            a6,
        })
    }

    pub fn field(&self) -> &IrreduciblePoly {
        &self.field
    }

    pub fn a2(&self) -> &FieldElem {
        &self.a2
    }

    pub fn a6(&self) -> &FieldElem {
        &self.a6
    }

    fn same_field(&self, e: &FieldElem) -> Result<()> {
        if e.modulus() != &self.field {
            return Err(Error::ModulusMismatch);
        }
        Ok(())
    }

    /// A finite point, rejected unless it lies on the curve.
    pub fn point(&self, x: FieldElem, y: FieldElem) -> Result<AffinePoint> {
        self.same_field(&x)?;
        let p = AffinePoint::new_unchecked(x, y)?;
        if !self.on_curve_affine(&p) {
            return Err(Error::OffCurve);
        }
        Ok(p)
    }

    pub fn on_curve_affine(&self, p: &AffinePoint) -> bool {
        match p {
            AffinePoint::Infinity => true,
            AffinePoint::Finite { x, y } => {
                if x.modulus() != &self.field || y.modulus() != &self.field {
                    return false;
                }
                let x2 = x.square();
                &y.square() + &(x * y) == &(&(&x2 * x) + &(&self.a2 * &x2)) + &self.a6
            }
        }
    }

    /// `Y^2 + XYZ = X^3 Z + a2 X^2 Z^2 + a6 Z^4`, excluding `(0, 0, 0)`.
    pub fn on_curve_ld(&self, p: &LdPoint) -> bool {
        if [&p.x, &p.y, &p.z].iter().any(|e| e.modulus() != &self.field) {
            return false;
        }
        if p.z.is_zero() {
            return p.y.is_zero() && !p.x.is_zero();
        }
        let (x2, z2) = (p.x.square(), p.z.square());
        let lhs = &p.y.square() + &(&(&p.x * &p.y) * &p.z);
        let rhs = &(&(&(&x2 * &p.x) * &p.z) + &(&(&self.a2 * &x2) * &z2)) + &(&self.a6 * &z2.square());
        lhs == rhs
    }

    /// The group law on affine points, every branch included.
    pub fn affine_add(&self, p1: &AffinePoint, p2: &AffinePoint) -> Result<AffinePoint> {
        if !self.on_curve_affine(p1) || !self.on_curve_affine(p2) {
            return Err(Error::OffCurve);
        }
        let ((x1, y1), (x2, y2)) = match (p1.coords(), p2.coords()) {
            (None, _) => return Ok(p2.clone()),
            (_, None) => return Ok(p1.clone()),
            (Some(a), Some(b)) => (a, b),
        };
        let (x3, y3) = if x1 == x2 {
            if &(y1 + y2) == x2 {
                return Ok(AffinePoint::Infinity);
            }
            // doubling; x2 != 0 here since (0, y) is its own negative
            let m = x2 + &(y2 * &x2.inverse()?);
            let x3 = &(&m.square() + &m) + &self.a2;
            let y3 = &x2.square() + &(&(&m + &self.field.one()) * &x3);
            (x3, y3)
        } else {
            let m = &(y1 + y2) * &(x1 + x2).inverse()?;
            let x3 = &(&(&(&m.square() + &m) + x1) + x2) + &self.a2;
            let y3 = &(&(&m * &(x1 + &x3)) + &x3) + y1;
            (x3, y3)
        };
        Ok(AffinePoint::Finite { x: x3, y: y3 })
    }

    /// Mixed addition of an LD point and an affine point through the Al-Daoud
    /// formulas, with the generic-branch precondition `O != P1 != +-P2` checked.
    pub fn aldaoud_madd(&self, p1: &LdPoint, p2: &AffinePoint) -> Result<LdPoint> {
        if !self.on_curve_ld(p1) || !self.on_curve_affine(p2) {
            return Err(Error::OffCurve);
        }
        let (x2, _) = p2.coords().ok_or(Error::GenericBranchViolation)?;
        if p1.is_identity() || p1.x == x2 * &p1.z {
            return Err(Error::GenericBranchViolation);
        }
        self.aldaoud_madd_unchecked(p1, p2)
    }

    /// The same polynomial map with no membership or branch checks.
    pub fn aldaoud_madd_unchecked(&self, p1: &LdPoint, p2: &AffinePoint) -> Result<LdPoint> {
        let (x2, y2) = p2.coords().ok_or(Error::GenericBranchViolation)?;
        let a = &p1.y + &(y2 * &p1.z.square());
        let b = &p1.x + &(x2 * &p1.z);
        let c = &b * &p1.z;
        let z3 = c.square();
        let d = x2 * &z3;
        let x3 = &a.square() + &(&c * &(&(&a + &b.square()) + &(&self.a2 * &c)));
        let y3 = &(&(&d + &x3) * &(&(&a * &c) + &z3)) + &(&(y2 + x2) * &z3.square());
        Ok(LdPoint { x: x3, y: y3, z: z3 })
    }

    /// Uniform over the finite points of the curve. Needs odd `n` or `n <= 16`.
    pub fn random_point<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<AffinePoint> {
        let n = self.field.degree();
        if n.is_multiple_of(2) && n > 16 {
            return Err(Error::Unsupported(format!("point sampling for even n = {n} > 16")));
        }
        loop {
            let x = self.field.random(rng);
            if x.is_zero() {
                // the single point over x = 0 has half the weight of a pair
                if rng.gen::<bool>() {
                    return Ok(AffinePoint::Finite { x, y: self.a6.sqrt() });
                }
                continue;
            }
            // y = x z with z^2 + z = x + a2 + a6 / x^2
            let rhs = &(&x + &self.a2) + &(&self.a6 * &x.square().inverse()?);
            if let Some(z) = rhs.solve_quadratic()? {
                let z = if rng.gen::<bool>() { &z + &self.field.one() } else { z };
                let y = &x * &z;
                return Ok(AffinePoint::Finite { x, y });
            }
        }
    }

    /// Every finite point, by enumeration of `x`. Needs `n <= 16`.
    pub fn affine_points(&self) -> Result<Vec<AffinePoint>> {
        let n = self.field.degree();
        if n > 16 {
            return Err(Error::Unsupported(format!("point enumeration for n = {n} > 16")));
        }
        let mut out = Vec::new();
        for x in self.field.elements()? {
            if x.is_zero() {
                out.push(AffinePoint::Finite { x, y: self.a6.sqrt() });
                continue;
            }
            let rhs = &(&x + &self.a2) + &(&self.a6 * &x.square().inverse()?);
            if let Some(z) = rhs.solve_quadratic()? {
                let z1 = &z + &self.field.one();
                out.push(AffinePoint::Finite {
                    x: x.clone(),
                    y: &x * &z,
                });
                out.push(AffinePoint::Finite { y: &x * &z1, x });
            }
        }
        Ok(out)
    }

    /// `k * P` by double-and-add over [`Curve::affine_add`].
    pub fn scalar_mul(&self, k: u64, p: &AffinePoint) -> Result<AffinePoint> {
        let mut acc = AffinePoint::Infinity;
        for bit in (0..64 - k.leading_zeros()).rev() {
            acc = self.affine_add(&acc, &acc)?;
            if (k >> bit) & 1 == 1 {
                acc = self.affine_add(&acc, p)?;
            }
        }
        Ok(acc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn f8_curve() -> Curve {
        let p = IrreduciblePoly::parse("1+x+x^3").unwrap();
        Curve::new(p.one(), p.one()).unwrap()
    }

    #[test]
    fn membership_examples() {
        let c = f8_curve();
        assert!(c.on_curve_affine(&AffinePoint::Infinity));
        let f = c.field().clone();
        let root = AffinePoint::Finite {
            x: f.zero(),
            y: c.a6().sqrt(),
        };
        assert!(c.on_curve_affine(&root));

        let f2 = IrreduciblePoly::parse("1+x").unwrap();
        let c2 = Curve::new(f2.one(), f2.one()).unwrap();
        let fixed = AffinePoint::new_unchecked(f2.one(), f2.one()).unwrap();
        // y^2 + xy = 0 but x^3 + x^2 + 1 = 1
        assert!(!c2.on_curve_affine(&fixed));
        assert_eq!(c2.point(f2.one(), f2.one()), Err(Error::OffCurve));
        assert_eq!(Curve::new(f2.one(), f2.zero()), Err(Error::SingularCurve));
    }

    #[test]
    fn identity_and_negation() {
        let c = f8_curve();
        for p in c.affine_points().unwrap() {
            assert_eq!(c.affine_add(&p, &AffinePoint::Infinity).unwrap(), p);
            assert_eq!(c.affine_add(&p, &p.negate()).unwrap(), AffinePoint::Infinity);
            assert_eq!(p.negate().negate(), p);
            assert_eq!(p.to_ld(c.field()).to_affine().unwrap(), p);
        }
    }

    #[test]
    fn f8_group_axioms() {
        let c = f8_curve();
        let mut pts = c.affine_points().unwrap();
        pts.push(AffinePoint::Infinity);
        for p in &pts {
            for q in &pts {
                let pq = c.affine_add(p, q).unwrap();
                assert!(c.on_curve_affine(&pq));
                assert_eq!(pq, c.affine_add(q, p).unwrap());
                for r in &pts {
                    let left = c.affine_add(&pq, r).unwrap();
                    let right = c.affine_add(p, &c.affine_add(q, r).unwrap()).unwrap();
                    assert_eq!(left, right);
                }
            }
        }
    }

    #[test]
    fn scalar_mul_by_order() {
        let c = f8_curve();
        let pts = c.affine_points().unwrap();
        for p in &pts {
            assert_eq!(c.scalar_mul(1, p).unwrap(), *p);
            // brute-force order
            let mut k = 1u64;
            let mut acc = p.clone();
            while !acc.is_infinity() {
                acc = c.affine_add(&acc, p).unwrap();
                k += 1;
            }
            assert_eq!(c.scalar_mul(k, p).unwrap(), AffinePoint::Infinity);
            assert_eq!((pts.len() as u64 + 1) % k, 0);
        }
    }

    #[test]
    fn madd_agrees_with_affine_law() {
        let c = f8_curve();
        let f = c.field().clone();
        let pts = c.affine_points().unwrap();
        let mut checked = 0;
        for p1 in &pts {
            for p2 in &pts {
                for lambda in f.elements().unwrap().filter(|l| !l.is_zero()) {
                    let ld = p1.to_ld_scaled(&lambda).unwrap();
                    let generic = p1.coords().unwrap().0 != p2.coords().unwrap().0;
                    match c.aldaoud_madd(&ld, p2) {
                        Ok(sum) => {
                            assert!(generic);
                            assert!(c.on_curve_ld(&sum));
                            assert_eq!(sum.z, (&(&ld.x + &(p2.coords().unwrap().0 * &ld.z)) * &ld.z).square());
                            assert_eq!(sum.to_affine().unwrap(), c.affine_add(p1, p2).unwrap());
                            let base = c.aldaoud_madd(&p1.to_ld(&f), p2).unwrap();
                            assert!(sum.ld_equal(&base));
                            checked += 1;
                        }
                        Err(e) => {
                            assert!(!generic);
                            assert_eq!(e, Error::GenericBranchViolation);
                        }
                    }
                }
            }
        }
        assert!(checked > 0);
    }

    #[test]
    fn ld_classes() {
        let c = f8_curve();
        let f = c.field().clone();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let p = c.random_point(&mut rng).unwrap();
        let base = p.to_ld(&f);
        for l in f.elements().unwrap().filter(|l| !l.is_zero()) {
            let s = base.scale(&l);
            assert!(s.ld_equal(&base));
            assert!(c.on_curve_ld(&s));
        }
        let ident = LdPoint {
            x: f.generator(),
            y: f.zero(),
            z: f.zero(),
        };
        assert_eq!(ident.to_affine().unwrap(), AffinePoint::Infinity);
        assert!(c.on_curve_ld(&ident));
        assert!(!base.ld_equal(&ident));
    }

    #[test]
    fn random_points_lie_on_curve() {
        let f = IrreduciblePoly::parse("1+x+x^7").unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        let c = Curve::new(f.random(&mut rng), f.random_nonzero(&mut rng)).unwrap();
        for _ in 0..1000 {
            assert!(c.on_curve_affine(&c.random_point(&mut rng).unwrap()));
        }
        let e = (1..18)
            .find_map(|m| IrreduciblePoly::from_exponents(&[0, m, 18]).ok())
            .unwrap();
        let ce = Curve::new(e.one(), e.one()).unwrap();
        assert!(matches!(ce.random_point(&mut rng), Err(Error::Unsupported(_))));
    }
}
