use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use super::{Config, ElekesError};
use crate::algebra::Scalar;
use crate::curves::{LabeledPoint, PlaneCurve, Point, PointSet};
use crate::symmetry::{apply_to_poly, Isometry};

/// Pairs of curves for which `O(n)` distances are possible, so the
/// normalization refuses them.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ExcludedCase {
    ParallelLines,
    OrthogonalLines,
    ConcentricCircles,
}

impl fmt::Display for ExcludedCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ExcludedCase::ParallelLines => "parallel lines",
            ExcludedCase::OrthogonalLines => "orthogonal lines",
            ExcludedCase::ConcentricCircles => "concentric circles",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RemovalRule {
    /// The point lies in both sets.
    CommonPoint,
    /// The point is the center of the other set's circle.
    CircleCenter,
    /// Another point lies on the same circle concentric with the other curve.
    ConcentricCircle,
    /// Another point lies on the same union of a parallel to the other curve
    /// and its mirror image.
    ParallelLine,
    /// Another point lies on the same line orthogonal to the other curve.
    OrthogonalLine,
}

impl RemovalRule {
    pub fn name(self) -> &'static str {
        match self {
            RemovalRule::CommonPoint => "common-point",
            RemovalRule::CircleCenter => "circle-center",
            RemovalRule::ConcentricCircle => "concentric-circle",
            RemovalRule::ParallelLine => "parallel-line",
            RemovalRule::OrthogonalLine => "orthogonal-line",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Removal {
    /// 1 for `S₁`, 2 for `S₂`.
    pub set: u8,
    pub label: usize,
    /// Coordinates after the rotation.
    pub point: Point,
    pub rule: RemovalRule,
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct NormalizationReport {
    /// `(cos, sin)` of the rotation applied to everything, if any.
    pub rotation: Option<(Scalar, Scalar)>,
    pub removed: Vec<Removal>,
}

/// Establishes the standing assumptions: no vertical lines, disjoint sets,
/// no circle centers, and at most one point per concentric circle, per
/// parallel-line pair and per orthogonal line. Survivors are always the
/// lowest labels.
pub fn normalize_config(raw: &Config) -> Result<(Config, NormalizationReport), ElekesError> {
    check_excluded(raw.c1(), raw.c2())?;
    let mut report = NormalizationReport::default();
    let (mut s1, mut s2) = (raw.s1().clone(), raw.s2().clone());
    if is_vertical(raw.c1()) || is_vertical(raw.c2()) {
        let mut done = false;
        for (c, s, h) in [(3, 4, 5), (5, 12, 13)] {
            let rot = Isometry::new(Scalar::from_ratio(c, h), Scalar::from_ratio(s, h), 1, [Scalar::zero(), Scalar::zero()])?;
            let (r1, r2) = (rotate(&s1, &rot)?, rotate(&s2, &rot)?);
            if !is_vertical(r1.curve()) && !is_vertical(r2.curve()) {
                report.rotation = Some((rot.c().clone(), rot.s().clone()));
                s1 = r1;
                s2 = r2;
                done = true;
                break;
            }
        }
        debug_assert!(done, "two rotations cannot both produce a vertical line");
    }

    // (2) disjointness: each common point leaves the currently larger set
    let common: Vec<Point> = s1.coords().filter(|p| s2.coords().any(|q| q == *p)).cloned().collect();
    for p in common {
        let from_s1 = s1.len() > s2.len();
        let target = if from_s1 { &mut s1 } else { &mut s2 };
        remove_where(target, if from_s1 { 1 } else { 2 }, RemovalRule::CommonPoint, &mut report, |lp| lp.point == p);
    }

    // (3) circle centers
    if let Some((center, _)) = s2.curve().circle() {
        remove_where(&mut s1, 1, RemovalRule::CircleCenter, &mut report, |lp| lp.point == center);
    }
    if let Some((center, _)) = s1.curve().circle() {
        remove_where(&mut s2, 2, RemovalRule::CircleCenter, &mut report, |lp| lp.point == center);
    }

    // (4)-(6) against the other curve
    let c1 = s1.curve().clone();
    let c2 = s2.curve().clone();
    prune_against(&mut s1, 1, &c2, &mut report);
    prune_against(&mut s2, 2, &c1, &mut report);
    Ok((Config::new(s1, s2), report))
}

fn check_excluded(c1: &PlaneCurve, c2: &PlaneCurve) -> Result<(), ElekesError> {
    if let (Some((a1, b1, _)), Some((a2, b2, _))) = (c1.line_coeffs(), c2.line_coeffs()) {
        if (&(&a1 * &b2) - &(&a2 * &b1)).is_zero() {
            return Err(ElekesError::ExcludedPair(ExcludedCase::ParallelLines));
        }
        if (&(&a1 * &a2) + &(&b1 * &b2)).is_zero() {
            return Err(ElekesError::ExcludedPair(ExcludedCase::OrthogonalLines));
        }
    }
    if let (Some((o1, _)), Some((o2, _))) = (c1.circle(), c2.circle()) {
        if o1 == o2 {
            return Err(ElekesError::ExcludedPair(ExcludedCase::ConcentricCircles));
        }
    }
    Ok(())
}

fn is_vertical(c: &PlaneCurve) -> bool {
    c.line_coeffs().is_some_and(|(_, b, _)| b.is_zero())
}

fn rotate(s: &PointSet, rot: &Isometry) -> Result<PointSet, ElekesError> {
    let g = apply_to_poly(&rot.to_affine(), s.curve().poly())?;
    let curve = PlaneCurve::from_poly(g)?.with_irreducible(s.curve().irreducible());
    Ok(s.remap(curve, |p| rot.apply(p))?)
}

fn remove_where(
    s: &mut PointSet,
    set: u8,
    rule: RemovalRule,
    report: &mut NormalizationReport,
    mut drop: impl FnMut(&LabeledPoint) -> bool,
) {
    let mut gone = Vec::new();
    *s = s.retain(|lp| {
        if drop(lp) {
            gone.push(Removal { set, label: lp.label, point: lp.point.clone(), rule });
            false
        } else {
            true
        }
    });
    report.removed.extend(gone);
}

/// Keeps the lowest label in each class of `key`.
fn keep_one_per_class(s: &mut PointSet, set: u8, rule: RemovalRule, report: &mut NormalizationReport, key: impl Fn(&Point) -> Scalar) {
    let mut survivor: BTreeMap<Scalar, usize> = BTreeMap::new();
    for lp in s.points() {
        let e = survivor.entry(key(&lp.point)).or_insert(lp.label);
        *e = (*e).min(lp.label);
    }
    remove_where(s, set, rule, report, |lp| survivor[&key(&lp.point)] != lp.label);
}

fn prune_against(s: &mut PointSet, set: u8, other: &PlaneCurve, report: &mut NormalizationReport) {
    if let Some((center, _)) = other.circle() {
        keep_one_per_class(s, set, RemovalRule::ConcentricCircle, report, |p| p.dist2(&center));
    }
    if let Some((a, b, c)) = other.line_coeffs() {
        // (a x + b y + c)² is the squared distance up to the factor a² + b²
        keep_one_per_class(s, set, RemovalRule::ParallelLine, report, |p| {
            let v = &(&(&a * &p.x) + &(&b * &p.y)) + &c;
            &v * &v
        });
        keep_one_per_class(s, set, RemovalRule::OrthogonalLine, report, |p| &(&b * &p.x) - &(&a * &p.y));
    }
}
