use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{xy, CurveError, Family, PlaneCurve, Point, PointSet};
use crate::algebra::{MPoly, Scalar, UPoly};

/// A parametrizable curve family with rational points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CurveFamily {
    /// `a·x + b·y + c = 0`.
    Line { a: BigRational, b: BigRational, c: BigRational },
    Circle { center: (BigRational, BigRational), radius: BigRational },
    /// A conic through the given rational point; points come from chords
    /// through that point.
    Conic { poly: MPoly, point: (BigRational, BigRational) },
    /// `y = p(x)`.
    Graph(UPoly),
}

/// How parameter values are chosen.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Sampling {
    /// `start, start + step, start + 2·step, …`
    Arithmetic { start: BigRational, step: BigRational },
    Explicit(Vec<BigRational>),
    /// Seeded random rationals with numerators in `[-bound, bound]` and
    /// denominators in `[1, max_den]`.
    Random { seed: u64, bound: i64, max_den: i64 },
}

impl CurveFamily {
    pub fn curve(&self) -> Result<PlaneCurve, CurveError> {
        let vars = xy();
        let x = MPoly::var_in(vars, 0);
        let y = MPoly::var_in(vars, 1);
        let k = |q: &BigRational| MPoly::constant_in(vars, Scalar::from_rational(q.clone()));
        match self {
            CurveFamily::Line { a, b, c } => {
                if a.is_zero() && b.is_zero() {
                    return Err(CurveError::InvalidParameters("line needs a or b nonzero".into()));
                }
                PlaneCurve::new(x.mul(&k(a)).add(&y.mul(&k(b))).add(&k(c)), Family::Line, true)
            }
            CurveFamily::Circle { center, radius } => {
                if radius <= &BigRational::zero() {
                    return Err(CurveError::InvalidParameters("radius must be positive".into()));
                }
                let dx = x.sub(&k(&center.0));
                let dy = y.sub(&k(&center.1));
                let f = dx.mul(&dx).add(&dy.mul(&dy)).sub(&k(&(radius * radius)));
                PlaneCurve::new(f, Family::Circle, true)
            }
            CurveFamily::Conic { poly, point } => {
                let c = PlaneCurve::from_poly(poly.clone())?;
                if c.degree() != 2 {
                    return Err(CurveError::NotConic(c.degree()));
                }
                if !c.contains_point(&Point::from_rationals(point.0.clone(), point.1.clone())) {
                    return Err(CurveError::InvalidParameters("base point is not on the conic".into()));
                }
                Ok(c)
            }
            CurveFamily::Graph(p) => {
                let f = y.sub(&MPoly::from_upoly_in(vars, 0, p));
                PlaneCurve::from_poly(f)
            }
        }
    }

    /// The curve point for parameter `t`, if defined.
    fn point_at(&self, t: &BigRational) -> Option<Point> {
        match self {
            CurveFamily::Line { a, b, c } => Some(if !b.is_zero() {
                Point::from_rationals(t.clone(), -(a * t + c) / b)
            } else {
                Point::from_rationals(-c / a, t.clone())
            }),
            CurveFamily::Circle { center, radius } => {
                let one = BigRational::one();
                let d = &one + t * t;
                let px = (&one - t * t) / &d * radius + &center.0;
                let py = BigRational::from_integer(BigInt::from(2)) * t / &d * radius + &center.1;
                Some(Point::from_rationals(px, py))
            }
            CurveFamily::Conic { poly, point } => {
                // line (x0 + s, y0 + t·s); f = s·(q(t)·s + l(t))
                let (x0, y0) = point;
                let f = |xx: &BigRational, yy: &BigRational| {
                    poly.eval(&[Scalar::from_rational(xx.clone()), Scalar::from_rational(yy.clone())])
                        .as_rational()
                        .cloned()
                        .expect("rational conic")
                };
                let one = BigRational::one();
                let two = &one + &one;
                // f(s) at s = 1 and s = -1 give q + l and q - l (f(0) = 0)
                let f1 = f(&(x0 + &one), &(y0 + t));
                let fm = f(&(x0 - &one), &(y0 - t));
                let q = (&f1 + &fm) / &two;
                let l = (&f1 - &fm) / &two;
                if q.is_zero() || l.is_zero() {
                    return None;
                }
                let s = -l / q;
                Some(Point::from_rationals(x0 + &s, y0 + t * &s))
            }
            CurveFamily::Graph(p) => {
                let v = p.eval_rational(t);
                Some(Point::from_rationals(t.clone(), v))
            }
        }
    }
}

/// `count` distinct rational points on the family's curve, labeled `1..=count`.
pub fn generate_points(family: &CurveFamily, count: usize, sampling: &Sampling) -> Result<PointSet, CurveError> {
    if count == 0 {
        return Err(CurveError::InvalidParameters("count must be at least 1".into()));
    }
    let curve = family.curve()?;
    if let CurveFamily::Graph(p) = family {
        if !p.is_rational() {
            return Err(CurveError::NotRational);
        }
    }
    let mut acc = Collector { family, seen: BTreeSet::new(), points: Vec::with_capacity(count) };
    match sampling {
        Sampling::Arithmetic { start, step } => {
            if step.is_zero() {
                return Err(CurveError::InvalidParameters("step must be nonzero".into()));
            }
            let mut t = start.clone();
            let mut tries = 0usize;
            while acc.len() < count {
                acc.push(&t);
                t += step;
                tries += 1;
                if tries > 4 * count + 16 {
                    return Err(CurveError::InvalidParameters("parameters yield too few distinct points".into()));
                }
            }
        }
        Sampling::Explicit(ts) => {
            for t in ts {
                if acc.len() == count {
                    break;
                }
                acc.push(t);
            }
            if acc.len() < count {
                return Err(CurveError::InvalidParameters(format!(
                    "{} parameter values give only {} distinct points",
                    ts.len(),
                    acc.len()
                )));
            }
        }
        Sampling::Random { seed, bound, max_den } => {
            if *bound < 1 || *max_den < 1 {
                return Err(CurveError::InvalidParameters("random bounds must be positive".into()));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(*seed);
            let mut tries = 0usize;
            while acc.len() < count {
                let n = rng.gen_range(-*bound..=*bound);
                let d = rng.gen_range(1..=*max_den);
                acc.push(&BigRational::new(BigInt::from(n), BigInt::from(d)));
                tries += 1;
                if tries > 64 * count + 1024 {
                    return Err(CurveError::InvalidParameters("random range too small for the requested count".into()));
                }
            }
        }
    }
    PointSet::from_points(curve, acc.points)
}

struct Collector<'a> {
    family: &'a CurveFamily,
    seen: BTreeSet<Point>,
    points: Vec<Point>,
}

impl Collector<'_> {
    fn push(&mut self, t: &BigRational) {
        if let Some(p) = self.family.point_at(t) {
            if self.seen.insert(p.clone()) {
                self.points.push(p);
            }
        }
    }

    fn len(&self) -> usize {
        self.points.len()
    }
}
