use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{xy, CurveError, PlaneCurve, Point};
use crate::algebra::resultant::{resultant_at, subresultants};
use crate::algebra::{
    eval_interval, exact_real_roots, poly_gcd, AlgebraicReal, ExactRoot, Interval, MPoly, Scalar, UPoly,
};

/// One coordinate of an intersection point.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Coordinate {
    /// Rational or in ℚ(√k).
    Exact(Scalar),
    /// Irrational of higher degree: a root of a rational polynomial in an
    /// isolating interval.
    Algebraic(AlgebraicReal),
}

impl Coordinate {
    pub fn as_scalar(&self) -> Option<&Scalar> {
        match self {
            Coordinate::Exact(s) => Some(s),
            Coordinate::Algebraic(_) => None,
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Coordinate::Exact(s) => s.to_f64(),
            Coordinate::Algebraic(a) => a.to_f64(),
        }
    }

    /// Rational enclosure no wider than `width`.
    pub fn enclosure(&self, width: &BigRational) -> Interval {
        match self {
            Coordinate::Exact(s) => Interval::of_scalar(s, width),
            Coordinate::Algebraic(a) => {
                let mut a = a.clone();
                a.refine_to(width);
                a.bounds()
            }
        }
    }
}

impl fmt::Display for Coordinate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coordinate::Exact(s) => write!(f, "{s}"),
            Coordinate::Algebraic(a) => write!(f, "{a}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntersectionPoint {
    pub x: Coordinate,
    pub y: Coordinate,
}

impl IntersectionPoint {
    /// The point itself when both coordinates are exact.
    pub fn exact(&self) -> Option<Point> {
        Some(Point::new(self.x.as_scalar()?.clone(), self.y.as_scalar()?.clone()))
    }
}

impl fmt::Display for IntersectionPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IntersectionResult {
    /// The normalized gcd of the two defining polynomials.
    CommonComponent(MPoly),
    FinitePoints(Vec<IntersectionPoint>),
}

struct Candidate {
    alg: AlgebraicReal,
    exact: Option<Scalar>,
}

impl Candidate {
    fn coordinate(&self) -> Coordinate {
        match &self.exact {
            Some(s) => Coordinate::Exact(s.clone()),
            None => Coordinate::Algebraic(self.alg.clone()),
        }
    }
}

/// Real points common to both curves, or their common component.
pub fn intersect_curves(c1: &PlaneCurve, c2: &PlaneCurve) -> Result<IntersectionResult, CurveError> {
    let (f, g) = (c1.poly(), c2.poly());
    if !f.is_rational() || !g.is_rational() {
        return Err(CurveError::NotRational);
    }
    let h = poly_gcd(f, g)?;
    if !h.is_constant() {
        return Ok(IntersectionResult::CommonComponent(h));
    }
    let mut xs = candidates(f, g, 0)?;
    let mut ys = candidates(f, g, 1)?;
    if xs.is_empty() || ys.is_empty() {
        return Ok(IntersectionResult::FinitePoints(Vec::new()));
    }
    for lambda in shear_values() {
        if let Some(points) = try_shear(f, g, &lambda, &mut xs, &mut ys)? {
            debug_assert!(points.len() as u32 <= c1.degree() * c2.degree());
            return Ok(IntersectionResult::FinitePoints(points));
        }
    }
    Err(CurveError::NoGenericShear)
}

fn shear_values() -> Vec<BigRational> {
    let mut out = vec![BigRational::zero()];
    for n in 1..=6i64 {
        for d in 1..=3i64 {
            let q = BigRational::new(BigInt::from(n), BigInt::from(d));
            if !out.contains(&q) {
                out.push(q.clone());
                out.push(-q);
            }
        }
    }
    out
}

/// Possible values of coordinate `i` at common points.
fn candidates(f: &MPoly, g: &MPoly, i: usize) -> Result<Vec<Candidate>, CurveError> {
    let other = 1 - i;
    let p = if f.involves(other) && g.involves(other) {
        resultant_at(f, g, other)
    } else if !f.involves(other) {
        f.clone()
    } else {
        g.clone()
    };
    let p = p.to_upoly(i)?;
    if p.degree().unwrap_or(0) == 0 {
        return Ok(Vec::new());
    }
    let algs = AlgebraicReal::roots_of(&p)?;
    let exact = exact_real_roots(&p)?;
    debug_assert_eq!(algs.len(), exact.len());
    Ok(algs
        .into_iter()
        .zip(exact)
        .map(|(alg, e)| {
            let exact = match e {
                ExactRoot::Rational(q) => Some(Scalar::from_rational(q)),
                ExactRoot::Quadratic(s) => Some(s),
                ExactRoot::Other(_) => None,
            };
            Candidate { alg, exact }
        })
        .collect())
}

fn halve(a: &mut AlgebraicReal) {
    let w = a.bounds().width() / BigRational::from_integer(BigInt::from(2));
    a.refine_to(&w);
}

/// Index of the unique candidate matching a value whose enclosure is produced
/// by `enclose` (which may refine its own data when called again).
fn pick(cands: &mut [Candidate], mut enclose: impl FnMut() -> Option<Interval>) -> usize {
    loop {
        if let Some(e) = enclose() {
            let hits: Vec<usize> = (0..cands.len()).filter(|&k| cands[k].alg.bounds().overlaps(&e)).collect();
            if hits.len() == 1 {
                return hits[0];
            }
            for k in hits {
                halve(&mut cands[k].alg);
            }
        }
    }
}

/// On a fiber where the fibers of `f` and `g` share `k > 1` roots (the first
/// nonvanishing principal subresultant is `S_k`), `S_k(α, Y) = c_k (Y - β)^k`
/// when those roots are one point. Returns `β` as `num/den`, or `None` if the
/// fiber holds several distinct common points.
fn multiple_point(subs: &[Vec<MPoly>], alpha: &AlgebraicReal) -> Result<Option<(UPoly, UPoly)>, CurveError> {
    for (k, s) in subs.iter().enumerate().skip(1) {
        let c: Vec<UPoly> = s.iter().map(|p| p.to_upoly(0)).collect::<Result<_, _>>()?;
        if alpha.sign_of(&c[k]) == 0 {
            continue;
        }
        // c_{k-j}·(k·c_k)^j = binom(k, j)·c_k·c_{k-1}^j for a k-fold root
        let kc = c[k].scale(&Scalar::from_int(k as i64));
        let mut binom = 1i64;
        for j in 1..=k {
            binom = binom * (k - j + 1) as i64 / j as i64;
            if j < 2 {
                continue;
            }
            let lhs = c[k - j].mul(&kc.pow(j as u32));
            let rhs = c[k].mul(&c[k - 1].pow(j as u32)).scale(&Scalar::from_int(binom));
            if alpha.sign_of(&lhs.sub(&rhs)) != 0 {
                return Ok(None);
            }
        }
        return Ok(Some((c[k - 1].neg(), kc)));
    }
    Ok(None)
}

fn try_shear(
    f: &MPoly,
    g: &MPoly,
    lambda: &BigRational,
    xs: &mut [Candidate],
    ys: &mut [Candidate],
) -> Result<Option<Vec<IntersectionPoint>>, CurveError> {
    let vars = xy();
    let lam = Scalar::from_rational(lambda.clone());
    let images = [MPoly::var_in(vars, 0).sub(&MPoly::var_in(vars, 1).scale(&lam)), MPoly::var_in(vars, 1)];
    let sf = f.compose(&images);
    let sg = g.compose(&images);
    let lc_const = |p: &MPoly| p.coeffs_in(1).last().is_some_and(MPoly::is_constant);
    if !lc_const(&sf) || !lc_const(&sg) {
        return Ok(None);
    }
    let r = resultant_at(&sf, &sg, 1).to_upoly(0)?;
    if r.degree().unwrap_or(0) == 0 {
        return Ok(Some(Vec::new()));
    }
    // Y = num(X) / den(X) on each fiber with a common point
    let (num, den) = {
        let lin = if sf.degree_in(1) == 1 {
            Some(&sf)
        } else if sg.degree_in(1) == 1 {
            Some(&sg)
        } else {
            None
        };
        match lin {
            Some(p) => {
                let c = p.coeffs_in(1);
                (c[0].neg().to_upoly(0)?, c[1].to_upoly(0)?)
            }
            None => {
                let s1 = &subresultants(&sf, &sg, 1)[1];
                (s1[0].neg().to_upoly(0)?, s1[1].to_upoly(0)?)
            }
        }
    };
    let mut points = Vec::new();
    let mut chain: Option<Vec<Vec<MPoly>>> = None;
    for mut alpha in AlgebraicReal::roots_of(&r)? {
        let (num, den) = if alpha.sign_of(&den) != 0 {
            (num.clone(), den.clone())
        } else {
            // a common point of higher multiplicity on this fiber
            let subs = chain.get_or_insert_with(|| subresultants(&sf, &sg, 1));
            match multiple_point(subs, &alpha)? {
                Some(nd) => nd,
                None => return Ok(None),
            }
        };
        if let Some(a) = alpha.as_rational() {
            let beta = num.eval_rational(a) / den.eval_rational(a);
            let x = a - lambda * &beta;
            points.push(IntersectionPoint {
                x: Coordinate::Exact(Scalar::from_rational(x)),
                y: Coordinate::Exact(Scalar::from_rational(beta)),
            });
            continue;
        }
        let beta_encl = |alpha: &mut AlgebraicReal| -> Option<Interval> {
            let ia = alpha.bounds();
            let e = eval_interval(&num, &ia).mul(&eval_interval(&den, &ia).recip()?);
            Some(e)
        };
        let mut a1 = alpha.clone();
        let yi = pick(ys, || {
            let e = beta_encl(&mut a1);
            halve(&mut a1);
            e
        });
        let xi = pick(xs, || {
            let e = beta_encl(&mut alpha).map(|b| alpha.bounds().sub(&b.scale(lambda)));
            halve(&mut alpha);
            e
        });
        points.push(IntersectionPoint { x: xs[xi].coordinate(), y: ys[yi].coordinate() });
    }
    Ok(Some(points))
}

/// Interval refutation helper: does the box `bx × by` possibly meet `f = 0`?
pub fn box_may_vanish(f: &MPoly, bx: &Interval, by: &Interval) -> bool {
    let mut acc = Interval::point(BigRational::zero());
    let w = BigRational::new(BigInt::one(), BigInt::one() << 64);
    for (m, c) in f.terms() {
        let e = m.exps();
        let mut t = Interval::of_scalar(c, &w);
        for _ in 0..e[0] {
            t = t.mul(bx);
        }
        for _ in 0..e[1] {
            t = t.mul(by);
        }
        acc = acc.add(&t);
    }
    acc.contains_zero()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::scalar::rat;

    fn curve(s: &str) -> PlaneCurve {
        PlaneCurve::parse(s).unwrap()
    }

    fn finite(r: IntersectionResult) -> Vec<IntersectionPoint> {
        match r {
            IntersectionResult::FinitePoints(p) => p,
            other => panic!("expected points, got {other:?}"),
        }
    }

    #[test]
    fn circle_and_axis() {
        let pts = finite(intersect_curves(&curve("x^2 + y^2 - 1"), &curve("y")).unwrap());
        let mut exact: Vec<Point> = pts.iter().map(|p| p.exact().unwrap()).collect();
        exact.sort();
        assert_eq!(exact, vec![Point::from_ints(-1, 0), Point::from_ints(1, 0)]);
    }

    #[test]
    fn two_circles_meet_at_sqrt3() {
        let pts = finite(intersect_curves(&curve("x^2 + y^2 - 1"), &curve("(x - 1)^2 + y^2 - 1")).unwrap());
        assert_eq!(pts.len(), 2);
        let s3 = Scalar::quadratic(rat(0, 1), rat(1, 2), 3.into()).unwrap();
        let mut ys: Vec<Scalar> = pts.iter().map(|p| p.y.as_scalar().unwrap().clone()).collect();
        ys.sort();
        assert_eq!(ys, vec![-s3.clone(), s3]);
        assert!(pts.iter().all(|p| p.x == Coordinate::Exact(Scalar::from_ratio(1, 2))));
    }

    #[test]
    fn common_component() {
        match intersect_curves(&curve("x*(y - 1)"), &curve("x")).unwrap() {
            IntersectionResult::CommonComponent(g) => assert_eq!(g.to_string(), "x"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn vertical_line_and_cubic_roots() {
        let pts = finite(intersect_curves(&curve("y^3 - 2 - x"), &curve("x")).unwrap());
        assert_eq!(pts.len(), 1);
        assert!(matches!(pts[0].y, Coordinate::Algebraic(_)));
        assert!((pts[0].y.to_f64() - 2f64.cbrt()).abs() < 1e-9);
        let w = rat(1, 1 << 20);
        assert!(box_may_vanish(
            &curve("y^3 - 2 - x").poly().clone(),
            &pts[0].x.enclosure(&w),
            &pts[0].y.enclosure(&w)
        ));
    }

    #[test]
    fn crossing_and_tangent_circles() {
        // (x - 1/2)^2 + y^2 = 1 crosses the unit circle twice on x = 1/4
        let pts = finite(intersect_curves(&curve("x^2 + y^2 - 1"), &curve("4*x^2 - 4*x + 4*y^2 - 3")).unwrap());
        assert_eq!(pts.len(), 2);
        for p in &pts {
            assert_eq!(p.x, Coordinate::Exact(Scalar::from_ratio(1, 4)));
            let w = rat(1, 1 << 30);
            assert!(box_may_vanish(curve("x^2 + y^2 - 1").poly(), &p.x.enclosure(&w), &p.y.enclosure(&w)));
        }
        let pts = finite(intersect_curves(&curve("x^2 + y^2 - 1"), &curve("x^2 - x + y^2")).unwrap());
        assert_eq!(pts.len(), 1);
        assert_eq!(pts[0].exact().unwrap(), Point::from_ints(1, 0));
    }

    #[test]
    fn singular_common_point() {
        // f is singular at the origin, so every shear leaves a double
        // common root on the fiber through it
        let f = curve("-4*x^3*y + x*y^3 - 2*y^4 + 2*x^3 - x^2*y + 3*x^2");
        let g = curve("-4*x^3 + x*y^2 + 4*x^2");
        let pts = finite(intersect_curves(&f, &g).unwrap());
        assert!(pts.len() <= 16);
        assert!(pts.iter().any(|p| p.exact() == Some(Point::origin())));
        let w = rat(1, 1 << 30);
        for p in &pts {
            assert!(box_may_vanish(f.poly(), &p.x.enclosure(&w), &p.y.enclosure(&w)));
            assert!(box_may_vanish(g.poly(), &p.x.enclosure(&w), &p.y.enclosure(&w)));
        }
        // the node of y² = x²(x + 1) against a circle through it
        let pts = finite(intersect_curves(&curve("y^2 - x^3 - x^2"), &curve("x^2 + y^2 - 2*x")).unwrap());
        assert!(pts.iter().any(|p| p.exact() == Some(Point::origin())));
    }
}
