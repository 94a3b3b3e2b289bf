use num_traits::Zero;

use super::{CurveError, PlaneCurve};
use crate::algebra::linalg::determinant;
use crate::algebra::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DegenerateKind {
    /// Two real lines crossing at a point.
    CrossingLines,
    ParallelLines,
    DoubleLine,
    /// A single real point.
    Point,
    /// No real points at all.
    Empty,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ConicClass {
    Ellipse { circle: bool },
    Parabola,
    Hyperbola,
    Degenerate(DegenerateKind),
}

/// Classifies a degree-2 curve by the quadratic-part discriminant and the
/// rank of its 3×3 symmetric matrix. An imaginary ellipse has a nonzero 3×3
/// determinant but no real points; it is reported as `Degenerate(Empty)`.
pub fn classify_conic(c: &PlaneCurve) -> Result<ConicClass, CurveError> {
    if c.degree() != 2 {
        return Err(CurveError::NotConic(c.degree()));
    }
    let f = c.poly();
    let half = Scalar::from_ratio(1, 2);
    let a = f.coeff(&[2, 0]);
    let b = &f.coeff(&[1, 1]) * &half;
    let cc = f.coeff(&[0, 2]);
    let d = &f.coeff(&[1, 0]) * &half;
    let e = &f.coeff(&[0, 1]) * &half;
    let g = f.coeff(&[0, 0]);
    let m = vec![
        vec![a.clone(), b.clone(), d.clone()],
        vec![b.clone(), cc.clone(), e.clone()],
        vec![d.clone(), e.clone(), g.clone()],
    ];
    let big = determinant(&m)?;
    let small = &(&a * &cc) - &(&b * &b);
    let ds = small.signum();
    if !big.is_zero() {
        return Ok(match ds {
            1 => {
                // real iff trace and determinant have opposite signs
                if (&a + &cc).signum() * big.signum() < 0 {
                    ConicClass::Ellipse { circle: a == cc && b.is_zero() }
                } else {
                    ConicClass::Degenerate(DegenerateKind::Empty)
                }
            }
            -1 => ConicClass::Hyperbola,
            _ => ConicClass::Parabola,
        });
    }
    let kind = match ds {
        -1 => DegenerateKind::CrossingLines,
        1 => DegenerateKind::Point,
        _ => {
            // sum of the principal 2×2 minors involving the constant term
            let k = &(&(&a * &g) - &(&d * &d)) + &(&(&cc * &g) - &(&e * &e));
            match k.signum() {
                -1 => DegenerateKind::ParallelLines,
                1 => DegenerateKind::Empty,
                _ => DegenerateKind::DoubleLine,
            }
        }
    };
    Ok(ConicClass::Degenerate(kind))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn class(s: &str) -> ConicClass {
        classify_conic(&PlaneCurve::parse(s).unwrap()).unwrap()
    }

    #[test]
    fn basic_classes() {
        assert_eq!(class("x^2 + y^2 - 1"), ConicClass::Ellipse { circle: true });
        assert_eq!(class("4*x^2 + 9*y^2 - 1"), ConicClass::Ellipse { circle: false });
        assert_eq!(class("y - x^2"), ConicClass::Parabola);
        assert_eq!(class("x*y - 1"), ConicClass::Hyperbola);
    }

    #[test]
    fn degenerate_kinds() {
        assert_eq!(class("x^2 - y^2"), ConicClass::Degenerate(DegenerateKind::CrossingLines));
        assert_eq!(class("x^2 - 1"), ConicClass::Degenerate(DegenerateKind::ParallelLines));
        assert_eq!(class("(x + y)^2"), ConicClass::Degenerate(DegenerateKind::DoubleLine));
        assert_eq!(class("x^2 + y^2"), ConicClass::Degenerate(DegenerateKind::Point));
        assert_eq!(class("x^2 + y^2 + 1"), ConicClass::Degenerate(DegenerateKind::Empty));
        assert_eq!(class("x^2 + 1"), ConicClass::Degenerate(DegenerateKind::Empty));
    }

    #[test]
    fn rejects_other_degrees() {
        assert!(matches!(classify_conic(&PlaneCurve::parse("y - x^3").unwrap()), Err(CurveError::NotConic(3))));
    }
}
