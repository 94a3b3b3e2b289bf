//! Plane algebraic curves, points on them, conic classification and
//! intersections.

mod conic;
mod generate;
mod intersect;

use std::fmt;
use std::sync::OnceLock;

use num_rational::BigRational;
use num_traits::Zero;
use thiserror::Error;

use crate::algebra::{parse_poly_in, vars_of, AlgebraError, MPoly, Scalar, UPoly, Vars};

pub use conic::{classify_conic, ConicClass, DegenerateKind};
pub use generate::{generate_points, CurveFamily, Sampling};
pub use intersect::{box_may_vanish, intersect_curves, Coordinate, IntersectionPoint, IntersectionResult};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CurveError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("curve polynomial must be nonconstant")]
    Constant,
    #[error("polynomial does not match family '{family}': {reason}")]
    FamilyMismatch { family: String, reason: String },
    #[error("expected a conic, got degree {0}")]
    NotConic(u32),
    #[error("point {label} is not on the curve")]
    NotOnCurve { label: usize },
    #[error("duplicate label {0}")]
    DuplicateLabel(usize),
    #[error("points {first} and {second} coincide")]
    DuplicatePoint { first: usize, second: usize },
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("curve coefficients must be rational for this operation")]
    NotRational,
    #[error("no generic shear found for the intersection")]
    NoGenericShear,
}

/// The shared variable list `(x, y)`.
pub fn xy() -> &'static Vars {
    static XY: OnceLock<Vars> = OnceLock::new();
    XY.get_or_init(|| vars_of(&["x", "y"]))
}

/// Family tag of a plane curve.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    Line,
    Circle,
    Conic,
    /// `y = p(x)`.
    Graph(UPoly),
    General,
}

impl Family {
    pub fn name(&self) -> &'static str {
        match self {
            Family::Line => "line",
            Family::Circle => "circle",
            Family::Conic => "conic",
            Family::Graph(_) => "graph",
            Family::General => "general",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point {
    pub x: Scalar,
    pub y: Scalar,
}

impl Point {
    pub fn new(x: Scalar, y: Scalar) -> Self {
        Point { x, y }
    }

    pub fn from_ints(x: i64, y: i64) -> Self {
        Point::new(Scalar::from_int(x), Scalar::from_int(y))
    }

    pub fn from_rationals(x: BigRational, y: BigRational) -> Self {
        Point::new(Scalar::from_rational(x), Scalar::from_rational(y))
    }

    pub fn origin() -> Self {
        Point::from_ints(0, 0)
    }

    pub fn is_rational(&self) -> bool {
        self.x.is_rational() && self.y.is_rational()
    }

    /// Squared Euclidean distance.
    pub fn dist2(&self, other: &Point) -> Scalar {
        let dx = &self.x - &other.x;
        let dy = &self.y - &other.y;
        &(&dx * &dx) + &(&dy * &dy)
    }

    pub fn sub(&self, other: &Point) -> Point {
        Point::new(&self.x - &other.x, &self.y - &other.y)
    }

    pub fn add(&self, other: &Point) -> Point {
        Point::new(&self.x + &other.x, &self.y + &other.y)
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PlaneCurve {
    poly: MPoly,
    degree: u32,
    family: Family,
    irreducible: bool,
}

impl PlaneCurve {
    /// Builds a curve with an explicit family tag, checking the tag against the
    /// polynomial.
    pub fn new(poly: MPoly, family: Family, irreducible: bool) -> Result<Self, CurveError> {
        let poly = poly.with_vars(xy())?;
        if poly.is_constant() {
            return Err(CurveError::Constant);
        }
        let degree = poly.total_degree();
        let mismatch = |reason: &str| CurveError::FamilyMismatch { family: family.name().into(), reason: reason.into() };
        match &family {
            Family::Line if degree != 1 => return Err(mismatch("degree must be 1")),
            Family::Circle if circle_data(&poly).is_none() => {
                return Err(mismatch("not of the form (x-a)^2 + (y-b)^2 - r^2 with r^2 > 0"))
            }
            Family::Conic if degree != 2 => return Err(mismatch("degree must be 2")),
            Family::Graph(p) => {
                let expected = MPoly::var_in(xy(), 1).sub(&MPoly::from_upoly_in(xy(), 0, p));
                if poly.proportional_to(&expected).is_none() {
                    return Err(mismatch("not of the form y - p(x)"));
                }
            }
            _ => {}
        }
        Ok(PlaneCurve { poly, degree, family, irreducible })
    }

    /// Builds a curve and infers its family. Lines and circles are flagged
    /// irreducible; other curves are not unless asserted later.
    pub fn from_poly(poly: MPoly) -> Result<Self, CurveError> {
        let poly = poly.with_vars(xy())?;
        let family = detect_family(&poly);
        let irreducible = matches!(family, Family::Line | Family::Circle);
        Self::new(poly, family, irreducible)
    }

    pub fn parse(text: &str) -> Result<Self, CurveError> {
        Self::from_poly(parse_poly_in(text, xy())?)
    }

    pub fn with_irreducible(mut self, flag: bool) -> Self {
        self.irreducible = flag;
        self
    }

    pub fn poly(&self) -> &MPoly {
        &self.poly
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn family(&self) -> &Family {
        &self.family
    }

    pub fn irreducible(&self) -> bool {
        self.irreducible
    }

    pub fn is_line(&self) -> bool {
        self.degree == 1
    }

    pub fn is_circle(&self) -> bool {
        circle_data(&self.poly).is_some()
    }

    pub fn contains_point(&self, p: &Point) -> bool {
        self.poly.eval(&[p.x.clone(), p.y.clone()]).is_zero()
    }

    /// `(a, b, c)` with the line equal to `a·x + b·y + c = 0`.
    pub fn line_coeffs(&self) -> Option<(Scalar, Scalar, Scalar)> {
        (self.degree == 1).then(|| (self.poly.coeff(&[1, 0]), self.poly.coeff(&[0, 1]), self.poly.coeff(&[0, 0])))
    }

    /// Center and squared radius of a circle.
    pub fn circle(&self) -> Option<(Point, Scalar)> {
        circle_data(&self.poly)
    }
}

impl fmt::Display for PlaneCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.poly)
    }
}

fn circle_data(f: &MPoly) -> Option<(Point, Scalar)> {
    if f.total_degree() != 2 {
        return None;
    }
    let k = f.coeff(&[2, 0]);
    if k.is_zero() || f.coeff(&[0, 2]) != k || !f.coeff(&[1, 1]).is_zero() {
        return None;
    }
    let two = Scalar::from_int(2);
    let a = -(&f.coeff(&[1, 0]) / &(&two * &k));
    let b = -(&f.coeff(&[0, 1]) / &(&two * &k));
    let r2 = &(&(&a * &a) + &(&b * &b)) - &(&f.coeff(&[0, 0]) / &k);
    (r2.signum() > 0).then(|| (Point::new(a, b), r2))
}

fn detect_family(f: &MPoly) -> Family {
    match f.total_degree() {
        1 => return Family::Line,
        2 if circle_data(f).is_some() => return Family::Circle,
        _ => {}
    }
    // y - p(x), up to a scalar
    let ycoeffs = f.coeffs_in(1);
    if ycoeffs.len() == 2 && ycoeffs[1].is_constant() {
        let k = ycoeffs[1].constant_term();
        if let Ok(inv) = k.inv() {
            if let Ok(p) = ycoeffs[0].scale(&inv).neg().to_upoly(0) {
                if p.degree().unwrap_or(0) >= 2 {
                    return Family::Graph(p.with_var("x"));
                }
            }
        }
    }
    if f.total_degree() == 2 {
        Family::Conic
    } else {
        Family::General
    }
}

/// Labeled point; labels are positive and unique within a set.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LabeledPoint {
    pub label: usize,
    pub point: Point,
}

/// Distinct labeled points on a host curve.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointSet {
    curve: PlaneCurve,
    points: Vec<LabeledPoint>,
}

impl PointSet {
    pub fn new(curve: PlaneCurve, points: Vec<LabeledPoint>) -> Result<Self, CurveError> {
        let mut labels = std::collections::BTreeSet::new();
        let mut seen = std::collections::BTreeMap::new();
        for lp in &points {
            if !labels.insert(lp.label) {
                return Err(CurveError::DuplicateLabel(lp.label));
            }
            if !curve.contains_point(&lp.point) {
                return Err(CurveError::NotOnCurve { label: lp.label });
            }
            if let Some(&first) = seen.get(&lp.point) {
                return Err(CurveError::DuplicatePoint { first, second: lp.label });
            }
            seen.insert(lp.point.clone(), lp.label);
        }
        Ok(PointSet { curve, points })
    }

    /// Labels the points `1, 2, …` in the given order.
    pub fn from_points(curve: PlaneCurve, points: Vec<Point>) -> Result<Self, CurveError> {
        let pts = points.into_iter().enumerate().map(|(i, p)| LabeledPoint { label: i + 1, point: p }).collect();
        Self::new(curve, pts)
    }

    pub fn curve(&self) -> &PlaneCurve {
        &self.curve
    }

    pub fn points(&self) -> &[LabeledPoint] {
        &self.points
    }

    pub fn coords(&self) -> impl Iterator<Item = &Point> {
        self.points.iter().map(|lp| &lp.point)
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Keeps the points whose label satisfies `keep`.
    pub fn retain(&self, mut keep: impl FnMut(&LabeledPoint) -> bool) -> PointSet {
        PointSet { curve: self.curve.clone(), points: self.points.iter().filter(|p| keep(p)).cloned().collect() }
    }

    /// First `k` points and the rest.
    pub fn split_at(&self, k: usize) -> (PointSet, PointSet) {
        let k = k.min(self.points.len());
        (
            PointSet { curve: self.curve.clone(), points: self.points[..k].to_vec() },
            PointSet { curve: self.curve.clone(), points: self.points[k..].to_vec() },
        )
    }

    /// Replaces the host curve and every point (used by coordinate changes
    /// that map curve and points together).
    pub fn remap(&self, curve: PlaneCurve, f: impl Fn(&Point) -> Point) -> Result<PointSet, CurveError> {
        let pts = self.points.iter().map(|lp| LabeledPoint { label: lp.label, point: f(&lp.point) }).collect();
        PointSet::new(curve, pts)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn family_detection() {
        assert_eq!(PlaneCurve::parse("2*x - y + 1").unwrap().family(), &Family::Line);
        assert_eq!(PlaneCurve::parse("x^2 + y^2 - 1").unwrap().family(), &Family::Circle);
        assert_eq!(PlaneCurve::parse("x^2 + y^2 + 1").unwrap().family(), &Family::Conic);
        assert_eq!(PlaneCurve::parse("x*y - 1").unwrap().family(), &Family::Conic);
        assert!(matches!(PlaneCurve::parse("y - x^3").unwrap().family(), Family::Graph(_)));
        assert_eq!(PlaneCurve::parse("x^4 + y^4 - 1").unwrap().family(), &Family::General);
        assert!(matches!(PlaneCurve::parse("3"), Err(CurveError::Constant)));
    }

    #[test]
    fn membership() {
        let circle = PlaneCurve::parse("x^2 + y^2 - 1").unwrap();
        assert!(circle.contains_point(&Point::from_rationals(
            crate::algebra::scalar::rat(3, 5),
            crate::algebra::scalar::rat(4, 5)
        )));
        let parabola = PlaneCurve::parse("y - x^2").unwrap();
        assert!(!parabola.contains_point(&Point::from_ints(2, 5)));
        let cubic = PlaneCurve::parse("y - x^3").unwrap();
        assert!(cubic.contains_point(&Point::from_rationals(
            crate::algebra::scalar::rat(3, 2),
            crate::algebra::scalar::rat(27, 8)
        )));
    }

    #[test]
    fn point_set_validation() {
        let line = PlaneCurve::parse("y").unwrap();
        assert!(PointSet::from_points(line.clone(), vec![Point::from_ints(0, 0), Point::from_ints(1, 0)]).is_ok());
        assert!(matches!(
            PointSet::from_points(line.clone(), vec![Point::from_ints(0, 1)]),
            Err(CurveError::NotOnCurve { label: 1 })
        ));
        assert!(matches!(
            PointSet::from_points(line, vec![Point::from_ints(0, 0), Point::from_ints(0, 0)]),
            Err(CurveError::DuplicatePoint { first: 1, second: 2 })
        ));
    }
}
