//! Affine maps and isometries of the plane, symmetry groups of curves and
//! the affine stabilizers of conics.

mod find;
mod pairs;
mod stabilizer;

use std::fmt;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::algebra::{AlgebraError, Interval, MPoly, Scalar};
use crate::curves::{xy, CurveError, PlaneCurve, Point};

pub use find::{find_symmetries, find_symmetries_with, SymmetryBudget};
pub use pairs::{isometry_from_point_pairs, reflection_in_line};
pub use stabilizer::{
    conic_stabilizer, conic_stabilizer_general, normal_form, reduce_conic, stabilizer_of, ConicNormalForm, StabilizerParam,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SymmetryError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Curve(#[from] CurveError),
    #[error("matrix is not invertible")]
    NotInvertible,
    #[error("matrix is not orthogonal")]
    NotOrthogonal,
    #[error("{what} {actual} exceeds the budget of {limit}")]
    Budget { what: &'static str, limit: usize, actual: usize },
    #[error("curve is invariant under a continuous family of isometries: {0}")]
    ContinuousFamily(String),
    #[error("conic is not in a supported normal form: {0}")]
    NotNormalForm(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("squared distances differ: {} vs {}", .0.0, .0.1)]
    DistanceMismatch(Box<(Scalar, Scalar)>),
    #[error("source points coincide")]
    CoincidentPoints,
    #[error("rotation is not rational-Pythagorean: {0}")]
    UnsupportedRotation(String),
}

/// `p ↦ M·p + t` with invertible `M`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AffineMap {
    pub matrix: [[Scalar; 2]; 2],
    pub translation: [Scalar; 2],
}

impl AffineMap {
    pub fn new(matrix: [[Scalar; 2]; 2], translation: [Scalar; 2]) -> Result<Self, SymmetryError> {
        let m = AffineMap { matrix, translation };
        if m.det()?.is_zero() {
            return Err(SymmetryError::NotInvertible);
        }
        Ok(m)
    }

    pub fn identity() -> Self {
        let (o, z) = (Scalar::one(), Scalar::zero());
        AffineMap { matrix: [[o.clone(), z.clone()], [z.clone(), o]], translation: [z.clone(), z] }
    }

    pub fn translation(t: [Scalar; 2]) -> Self {
        AffineMap { translation: t, ..Self::identity() }
    }

    pub fn linear(matrix: [[Scalar; 2]; 2]) -> Result<Self, SymmetryError> {
        Self::new(matrix, [Scalar::zero(), Scalar::zero()])
    }

    pub fn det(&self) -> Result<Scalar, SymmetryError> {
        let m = &self.matrix;
        Ok(m[0][0].checked_mul(&m[1][1])?.checked_sub(&m[0][1].checked_mul(&m[1][0])?)?)
    }

    pub fn apply(&self, p: &Point) -> Point {
        let m = &self.matrix;
        let t = &self.translation;
        Point::new(
            &(&(&m[0][0] * &p.x) + &(&m[0][1] * &p.y)) + &t[0],
            &(&(&m[1][0] * &p.x) + &(&m[1][1] * &p.y)) + &t[1],
        )
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &AffineMap) -> AffineMap {
        let a = &self.matrix;
        let b = &other.matrix;
        let mut m: [[Scalar; 2]; 2] = Default::default();
        for (i, row) in m.iter_mut().enumerate() {
            for (j, v) in row.iter_mut().enumerate() {
                *v = &(&a[i][0] * &b[0][j]) + &(&a[i][1] * &b[1][j]);
            }
        }
        let t = self.apply(&Point::new(other.translation[0].clone(), other.translation[1].clone()));
        AffineMap { matrix: m, translation: [t.x, t.y] }
    }

    pub fn inverse(&self) -> Result<AffineMap, SymmetryError> {
        let d = self.det()?;
        let inv_d = d.inv().map_err(|_| SymmetryError::NotInvertible)?;
        let m = &self.matrix;
        let mi = [
            [&m[1][1] * &inv_d, -&(&m[0][1] * &inv_d)],
            [-&(&m[1][0] * &inv_d), &m[0][0] * &inv_d],
        ];
        let lin = AffineMap { matrix: mi, translation: [Scalar::zero(), Scalar::zero()] };
        let t = lin.apply(&Point::new(self.translation[0].clone(), self.translation[1].clone()));
        Ok(AffineMap { matrix: lin.matrix, translation: [-t.x, -t.y] })
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity()
    }

    /// The polynomial `f ∘ M` as substitution `x ↦ m00·x + m01·y + t0`, etc.
    fn substitute(&self, f: &MPoly) -> Result<MPoly, SymmetryError> {
        let f = f.with_vars(xy())?;
        let x = MPoly::var_in(xy(), 0);
        let y = MPoly::var_in(xy(), 1);
        let c = |s: &Scalar| MPoly::constant_in(xy(), s.clone());
        let m = &self.matrix;
        let t = &self.translation;
        let images = [
            x.mul(&c(&m[0][0])).add(&y.mul(&c(&m[0][1]))).add(&c(&t[0])),
            x.mul(&c(&m[1][0])).add(&y.mul(&c(&m[1][1]))).add(&c(&t[1])),
        ];
        Ok(f.compose(&images))
    }
}

impl fmt::Display for AffineMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let m = &self.matrix;
        let t = &self.translation;
        write!(f, "(x, y) -> ({}*x + {}*y + {}, {}*x + {}*y + {})", m[0][0], m[0][1], t[0], m[1][0], m[1][1], t[1])
    }
}

/// Defining polynomial of `T(Z(f))`, namely `f ∘ T⁻¹`.
pub fn apply_to_poly(t: &AffineMap, f: &MPoly) -> Result<MPoly, SymmetryError> {
    t.inverse()?.substitute(f)
}

/// True iff `f ∘ T⁻¹` is a nonzero scalar multiple of `f`.
pub fn fixes_curve(t: &AffineMap, c: &PlaneCurve) -> bool {
    match apply_to_poly(t, c.poly()) {
        Ok(g) => g.proportional_to(c.poly()).is_some(),
        Err(_) => false,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum IsometryKind {
    Identity,
    Rotation,
    Translation,
    Reflection,
    Glide,
}

impl IsometryKind {
    pub fn name(self) -> &'static str {
        match self {
            IsometryKind::Identity => "identity",
            IsometryKind::Rotation => "rotation",
            IsometryKind::Translation => "translation",
            IsometryKind::Reflection => "reflection",
            IsometryKind::Glide => "glide",
        }
    }
}

impl fmt::Display for IsometryKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Isometry with matrix `(c, -σs; s, σc)` and translation `t`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Isometry {
    c: Scalar,
    s: Scalar,
    sigma: i8,
    t: [Scalar; 2],
    kind: IsometryKind,
}

impl Isometry {
    pub fn new(c: Scalar, s: Scalar, sigma: i8, t: [Scalar; 2]) -> Result<Self, SymmetryError> {
        if sigma != 1 && sigma != -1 {
            return Err(SymmetryError::InvalidParameter("sigma must be 1 or -1".into()));
        }
        let norm = c.checked_mul(&c)?.checked_add(&s.checked_mul(&s)?)?;
        if !norm.is_one() {
            return Err(SymmetryError::NotOrthogonal);
        }
        let mut iso = Isometry { c, s, sigma, t, kind: IsometryKind::Identity };
        iso.kind = iso.classify();
        Ok(iso)
    }

    pub fn identity() -> Self {
        Isometry::new(Scalar::one(), Scalar::zero(), 1, [Scalar::zero(), Scalar::zero()]).expect("identity")
    }

    /// Reads an isometry off an affine map with orthogonal matrix.
    pub fn from_affine(a: &AffineMap) -> Result<Self, SymmetryError> {
        let m = &a.matrix;
        let (c, s) = (m[0][0].clone(), m[1][0].clone());
        let sigma = if m[1][1] == c && m[0][1] == -&s {
            1
        } else if m[1][1] == -&c && m[0][1] == s {
            -1
        } else {
            return Err(SymmetryError::NotOrthogonal);
        };
        Isometry::new(c, s, sigma, a.translation.clone())
    }

    fn classify(&self) -> IsometryKind {
        let zero_t = self.t[0].is_zero() && self.t[1].is_zero();
        if self.sigma == 1 {
            if self.c.is_one() && self.s.is_zero() {
                if zero_t {
                    IsometryKind::Identity
                } else {
                    IsometryKind::Translation
                }
            } else {
                IsometryKind::Rotation
            }
        } else {
            // T∘T(p) = p + (A + I)t; a reflection squares to the identity
            let m = self.matrix();
            let u = &(&(&m[0][0] + &Scalar::one()) * &self.t[0]) + &(&m[0][1] * &self.t[1]);
            let v = &(&m[1][0] * &self.t[0]) + &(&(&m[1][1] + &Scalar::one()) * &self.t[1]);
            if u.is_zero() && v.is_zero() {
                IsometryKind::Reflection
            } else {
                IsometryKind::Glide
            }
        }
    }

    pub fn c(&self) -> &Scalar {
        &self.c
    }

    pub fn s(&self) -> &Scalar {
        &self.s
    }

    pub fn sigma(&self) -> i8 {
        self.sigma
    }

    pub fn translation(&self) -> &[Scalar; 2] {
        &self.t
    }

    pub fn kind(&self) -> IsometryKind {
        self.kind
    }

    pub fn matrix(&self) -> [[Scalar; 2]; 2] {
        let sg = Scalar::from_int(self.sigma as i64);
        [[self.c.clone(), -&(&sg * &self.s)], [self.s.clone(), &sg * &self.c]]
    }

    pub fn to_affine(&self) -> AffineMap {
        AffineMap { matrix: self.matrix(), translation: self.t.clone() }
    }

    pub fn apply(&self, p: &Point) -> Point {
        self.to_affine().apply(p)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Isometry) -> Isometry {
        Isometry::from_affine(&self.to_affine().compose(&other.to_affine())).expect("isometries compose")
    }

    pub fn inverse(&self) -> Isometry {
        Isometry::from_affine(&self.to_affine().inverse().expect("invertible")).expect("isometry")
    }

    pub fn fixes(&self, c: &PlaneCurve) -> bool {
        fixes_curve(&self.to_affine(), c)
    }
}

impl fmt::Display for Isometry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.kind, self.to_affine())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum InfiniteKind {
    Line,
    Circle,
}

/// A symmetry whose entries are not expressible in a single quadratic field.
/// It is verified exactly, but only reported through isolating boxes for
/// `c`, `s` and the translation, together with the defining algebraic number.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Unrepresentable {
    pub sigma: i8,
    pub c: Interval,
    pub s: Interval,
    pub translation: [Interval; 2],
    pub defining: String,
}

impl fmt::Display for Unrepresentable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "sigma={} c in {} s in {} t in ({}, {}); {}",
            self.sigma, self.c, self.s, self.translation[0], self.translation[1], self.defining
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SymmetryList {
    Finite { group: Vec<Isometry>, unrepresentable: Vec<Unrepresentable> },
    InfiniteFamily { kind: InfiniteKind, description: String },
}

impl SymmetryList {
    pub fn group(&self) -> Option<&[Isometry]> {
        match self {
            SymmetryList::Finite { group, .. } => Some(group),
            SymmetryList::InfiniteFamily { .. } => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_poly;

    fn s(n: i64, d: i64) -> Scalar {
        Scalar::from_ratio(n, d)
    }

    fn curve(t: &str) -> PlaneCurve {
        PlaneCurve::parse(t).unwrap()
    }

    #[test]
    fn apply_examples() {
        let half_turn = Isometry::new(s(-1, 1), s(0, 1), 1, [s(0, 1), s(0, 1)]).unwrap().to_affine();
        let f = parse_poly("x*y - 1", &["x", "y"]).unwrap();
        assert_eq!(apply_to_poly(&half_turn, &f).unwrap(), f);
        let shift = AffineMap::translation([s(1, 1), s(0, 1)]);
        let p = parse_poly("y - x^2", &["x", "y"]).unwrap();
        assert_eq!(apply_to_poly(&shift, &p).unwrap(), parse_poly("y - (x - 1)^2", &["x", "y"]).unwrap());
        let flip = AffineMap::linear([[s(1, 1), s(0, 1)], [s(0, 1), s(-1, 1)]]).unwrap();
        assert_eq!(apply_to_poly(&flip, &p).unwrap(), parse_poly("-y - x^2", &["x", "y"]).unwrap());
        assert!(matches!(
            AffineMap::linear([[s(1, 1), s(2, 1)], [s(2, 1), s(4, 1)]]),
            Err(SymmetryError::NotInvertible)
        ));
    }

    #[test]
    fn fixes_examples() {
        let half_turn = Isometry::new(s(-1, 1), s(0, 1), 1, [s(0, 1), s(0, 1)]).unwrap();
        assert!(half_turn.fixes(&curve("x*y - 1")));
        let t = AffineMap::linear([[s(2, 1), s(3, 2)], [s(0, 1), s(1, 2)]]).unwrap();
        assert!(fixes_curve(&t, &curve("y^2 + x*y - 1")));
        assert!(!fixes_curve(&AffineMap::translation([s(1, 1), s(0, 1)]), &curve("x^2 + y^2 - 1")));
    }

    #[test]
    fn kinds() {
        let z = s(0, 1);
        assert_eq!(Isometry::identity().kind(), IsometryKind::Identity);
        assert_eq!(Isometry::new(s(1, 1), z.clone(), 1, [s(2, 1), z.clone()]).unwrap().kind(), IsometryKind::Translation);
        assert_eq!(Isometry::new(s(3, 5), s(4, 5), 1, [z.clone(), z.clone()]).unwrap().kind(), IsometryKind::Rotation);
        // reflection in the x-axis, then shifted along it: a glide
        assert_eq!(Isometry::new(s(1, 1), z.clone(), -1, [z.clone(), z.clone()]).unwrap().kind(), IsometryKind::Reflection);
        assert_eq!(Isometry::new(s(1, 1), z.clone(), -1, [z.clone(), s(3, 1)]).unwrap().kind(), IsometryKind::Reflection);
        assert_eq!(Isometry::new(s(1, 1), z.clone(), -1, [s(3, 1), z.clone()]).unwrap().kind(), IsometryKind::Glide);
        assert!(matches!(Isometry::new(s(1, 1), s(1, 1), 1, [z.clone(), z]), Err(SymmetryError::NotOrthogonal)));
    }

    #[test]
    fn rotation_commutator_is_translation() {
        let z = s(0, 1);
        let about = |c: Scalar, sn: Scalar, center: Point| {
            let r = Isometry::new(c, sn, 1, [z.clone(), z.clone()]).unwrap();
            let moved = r.apply(&center);
            let t = center.sub(&moved);
            Isometry::new(r.c().clone(), r.s().clone(), 1, [t.x, t.y]).unwrap()
        };
        let ra = about(s(3, 5), s(4, 5), Point::from_ints(0, 0));
        let rb = about(s(5, 13), s(12, 13), Point::from_ints(2, 1));
        let comm = rb.inverse().compose(&ra.inverse()).compose(&rb).compose(&ra);
        assert_eq!(comm.kind(), IsometryKind::Translation);
    }
}
