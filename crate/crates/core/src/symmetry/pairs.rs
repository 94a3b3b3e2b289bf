use num_traits::Zero;

use super::{Isometry, SymmetryError};
use crate::algebra::Scalar;
use crate::curves::Point;

/// The orientation-preserving isometry with `p_i ↦ p_j` and `p_k ↦ p_l`.
///
/// In complex notation `T(z) = ω(z - p_i) + p_j` with
/// `ω = (p_l - p_j)·conj(p_k - p_i) / |p_k - p_i|²`.
pub fn isometry_from_point_pairs(p_i: &Point, p_k: &Point, p_j: &Point, p_l: &Point) -> Result<Isometry, SymmetryError> {
    let src = p_k.sub(p_i);
    let dst = p_l.sub(p_j);
    let n = src.x.checked_mul(&src.x)?.checked_add(&src.y.checked_mul(&src.y)?)?;
    if n.is_zero() {
        return Err(SymmetryError::CoincidentPoints);
    }
    let m = dst.x.checked_mul(&dst.x)?.checked_add(&dst.y.checked_mul(&dst.y)?)?;
    if n != m {
        return Err(SymmetryError::DistanceMismatch(Box::new((n, m))));
    }
    let inv = n.inv()?;
    // dst · conj(src)
    let c = dst.x.checked_mul(&src.x)?.checked_add(&dst.y.checked_mul(&src.y)?)?.checked_mul(&inv)?;
    let s = dst.y.checked_mul(&src.x)?.checked_sub(&dst.x.checked_mul(&src.y)?)?.checked_mul(&inv)?;
    let rx = c.checked_mul(&p_i.x)?.checked_sub(&s.checked_mul(&p_i.y)?)?;
    let ry = s.checked_mul(&p_i.x)?.checked_add(&c.checked_mul(&p_i.y)?)?;
    let t = [p_j.x.checked_sub(&rx)?, p_j.y.checked_sub(&ry)?];
    Isometry::new(c, s, 1, t)
}

/// Reflection in the line through `p` and `q`: `z ↦ p + e²·conj(z - p)`
/// with `e² = (q - p)²/|q - p|²`.
pub fn reflection_in_line(p: &Point, q: &Point) -> Result<Isometry, SymmetryError> {
    let d = q.sub(p);
    let n = d.x.checked_mul(&d.x)?.checked_add(&d.y.checked_mul(&d.y)?)?;
    if n.is_zero() {
        return Err(SymmetryError::CoincidentPoints);
    }
    let inv = n.inv()?;
    let a = d.x.checked_mul(&d.x)?.checked_sub(&d.y.checked_mul(&d.y)?)?.checked_mul(&inv)?;
    let b = Scalar::from_int(2).checked_mul(&d.x)?.checked_mul(&d.y)?.checked_mul(&inv)?;
    // matrix (a, b; b, -a); the translation keeps p fixed
    let mx = a.checked_mul(&p.x)?.checked_add(&b.checked_mul(&p.y)?)?;
    let my = b.checked_mul(&p.x)?.checked_sub(&a.checked_mul(&p.y)?)?;
    Isometry::new(a, b, -1, [p.x.checked_sub(&mx)?, p.y.checked_sub(&my)?])
}

#[cfg(test)]
mod tests {
    use super::super::IsometryKind;
    use super::*;
    use crate::algebra::scalar::rat;

    #[test]
    fn quarter_turn() {
        let o = Point::from_ints(0, 0);
        let t = isometry_from_point_pairs(&o, &Point::from_ints(1, 0), &o, &Point::from_ints(0, 1)).unwrap();
        assert_eq!(t.kind(), IsometryKind::Rotation);
        assert_eq!((t.c().clone(), t.s().clone()), (Scalar::zero(), Scalar::from_int(1)));
    }

    #[test]
    fn pure_translation() {
        let t = isometry_from_point_pairs(
            &Point::from_ints(0, 0),
            &Point::from_ints(1, 0),
            &Point::from_ints(2, 3),
            &Point::from_ints(3, 3),
        )
        .unwrap();
        assert_eq!(t.kind(), IsometryKind::Translation);
        assert_eq!(t.translation(), &[Scalar::from_int(2), Scalar::from_int(3)]);
    }

    #[test]
    fn pythagorean_rotation() {
        let o = Point::from_ints(0, 0);
        let q = Point::from_rationals(rat(3, 5), rat(4, 5));
        let t = isometry_from_point_pairs(&o, &Point::from_ints(1, 0), &o, &q).unwrap();
        assert_eq!(
            t.matrix(),
            [
                [Scalar::from_ratio(3, 5), Scalar::from_ratio(-4, 5)],
                [Scalar::from_ratio(4, 5), Scalar::from_ratio(3, 5)]
            ]
        );
        assert_eq!(t.apply(&Point::from_ints(1, 0)), q);
    }

    #[test]
    fn errors_and_companion() {
        let (a, b) = (Point::from_ints(1, 1), Point::from_ints(4, 5));
        assert!(matches!(isometry_from_point_pairs(&a, &a, &a, &a), Err(SymmetryError::CoincidentPoints)));
        assert!(matches!(
            isometry_from_point_pairs(&a, &b, &a, &Point::from_ints(2, 1)),
            Err(SymmetryError::DistanceMismatch(_))
        ));
        let (c, d) = (Point::from_ints(-2, 0), Point::from_ints(3, 0));
        let t = isometry_from_point_pairs(&a, &b, &c, &d).unwrap();
        let m = reflection_in_line(&a, &b).unwrap();
        let tm = t.compose(&m);
        assert_eq!(tm.sigma(), -1);
        assert_eq!((tm.apply(&a), tm.apply(&b)), (c, d));
        assert_eq!(m.compose(&m), Isometry::identity());
    }
}
