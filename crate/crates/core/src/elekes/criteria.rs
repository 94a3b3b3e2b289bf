//! Certificates bounding `|C_ij ∩ C_kl|` and `|C_ij ∩ C_kl ∩ C_qr|`.

use std::sync::OnceLock;

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{Config, ElekesError, FourCurve};
use crate::algebra::{vars_of, MPoly, Scalar, Vars};
use crate::curves::{xy, PlaneCurve, Point};
use crate::symmetry::{isometry_from_point_pairs, reflection_in_line, AffineMap, Isometry};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SameDistance {
    SymmetryFound(Isometry),
    /// Neither candidate fixes `C₂`, so `C_ij ∩ C_kl` is finite.
    NoSymmetry,
}

/// Looks for a symmetry of `c2` taking `p_i ↦ p_j` and `p_k ↦ p_l`. Only two
/// isometries do this: the direct one `T` and `T∘M` with `M` the reflection
/// in the line `p_i p_k`.
pub fn same_distance_symmetry(c2: &PlaneCurve, p_i: &Point, p_j: &Point, p_k: &Point, p_l: &Point) -> Result<SameDistance, ElekesError> {
    if p_i == p_k {
        return Err(ElekesError::Precondition("p_i and p_k coincide".into()));
    }
    let (d1, d2) = (p_i.dist2(p_k), p_j.dist2(p_l));
    if d1 != d2 {
        return Err(ElekesError::Precondition(format!("d²(p_i, p_k) = {d1} differs from d²(p_j, p_l) = {d2}")));
    }
    let t = isometry_from_point_pairs(p_i, p_k, p_j, p_l)?;
    let m = reflection_in_line(p_i, p_k)?;
    for cand in [t.clone(), t.compose(&m)] {
        if cand.fixes(c2) {
            return Ok(SameDistance::SymmetryFound(cand));
        }
    }
    Ok(SameDistance::NoSymmetry)
}

/// [`same_distance_symmetry`] for points of `S₁` given by index.
pub fn same_distance_symmetry_test(config: &Config, i: usize, j: usize, k: usize, l: usize) -> Result<SameDistance, ElekesError> {
    same_distance_symmetry(config.c2(), config.p(i)?, config.p(j)?, config.p(k)?, config.p(l)?)
}

/// Coefficients of `A u² + B v² + C uv + D u + E v + F`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadricCoeffs {
    pub uu: BigRational,
    pub vv: BigRational,
    pub uv: BigRational,
    pub u: BigRational,
    pub v: BigRational,
    pub one: BigRational,
}

impl QuadricCoeffs {
    fn quadratic_zero(&self) -> bool {
        self.uu.is_zero() && self.vv.is_zero() && self.uv.is_zero()
    }

    fn linear_zero(&self) -> bool {
        self.u.is_zero() && self.v.is_zero()
    }

    pub fn poly(&self) -> MPoly {
        let c = |q: &BigRational| Scalar::from_rational(q.clone());
        MPoly::from_terms_in(
            uv_vars(),
            [
                (vec![2, 0], c(&self.uu)),
                (vec![0, 2], c(&self.vv)),
                (vec![1, 1], c(&self.uv)),
                (vec![1, 0], c(&self.u)),
                (vec![0, 1], c(&self.v)),
                (vec![0, 0], c(&self.one)),
            ],
        )
    }

    pub fn eval(&self, u: &BigRational, v: &BigRational) -> BigRational {
        &self.uu * u * u + &self.vv * v * v + &self.uv * u * v + &self.u * u + &self.v * v + &self.one
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ConstraintKind {
    /// A genuine conic constraint.
    Quadric,
    /// Only the linear part survives.
    Linear,
    /// A nonzero constant: no `(u, v)` qualifies.
    Empty,
    /// `b = d = 0` and `c = aL`: the three distance equations are
    /// inconsistent.
    Contradiction,
    /// Every coefficient vanishes (only possible when `L = 1`, which the
    /// distance preconditions rule out).
    Unconstrained,
}

fn uv_vars() -> &'static Vars {
    static V: OnceLock<Vars> = OnceLock::new();
    V.get_or_init(|| vars_of(&["u", "v"]))
}

/// The quadric obtained by eliminating `(x, y)` from
/// `x²+y² = u²+v²`, `(x-1)²+y² = (u-L)²+v²`, `(x-a)²+(y-b)² = (u-c)²+(v-d)²`.
/// The first equation is multiplied by `b²` before substituting `by`.
pub fn constraint_coefficients(
    l: &BigRational,
    a: &BigRational,
    b: &BigRational,
    c: &BigRational,
    d: &BigRational,
) -> (QuadricCoeffs, ConstraintKind) {
    let two = BigRational::from_integer(2.into());
    let h = (BigRational::one() - l * l) / &two;
    let k = (a * a + b * b - c * c - d * d + a * l * l - a) / &two;
    let e = c - a * l;
    let b2 = b * b;
    let q = QuadricCoeffs {
        uu: &b2 * l * l + &e * &e - &b2,
        vv: d * d - &b2,
        uv: &two * d * &e,
        u: &two * &b2 * l * &h + &two * &k * &e,
        v: &two * d * &k,
        one: &b2 * &h * &h + &k * &k,
    };
    let kind = if b.is_zero() && d.is_zero() && e.is_zero() {
        ConstraintKind::Contradiction
    } else if !q.quadratic_zero() {
        ConstraintKind::Quadric
    } else if !q.linear_zero() {
        ConstraintKind::Linear
    } else if !q.one.is_zero() {
        ConstraintKind::Empty
    } else {
        ConstraintKind::Unconstrained
    };
    (q, kind)
}

/// The normalized data and the resulting constraint on the `(u, v)` point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstraintConic {
    pub l: BigRational,
    /// `p_q = (a, b)` after normalization.
    pub a: BigRational,
    pub b: BigRational,
    /// `p_r = (c, d)` after normalization.
    pub c: BigRational,
    pub d: BigRational,
    pub coeffs: QuadricCoeffs,
    pub kind: ConstraintKind,
    /// Similarity sending `p_i ↦ (0,0)`, `p_k ↦ (1,0)`.
    pub xy_map: AffineMap,
    /// Similarity with the same scale sending `p_j ↦ (0,0)`, `p_l ↦ (L,0)`.
    pub uv_map: AffineMap,
}

impl ConstraintConic {
    /// The constraint in normalized coordinates `(u, v)`.
    pub fn normalized_poly(&self) -> MPoly {
        self.coeffs.poly()
    }

    /// The constraint pulled back to the original coordinates `(x, y)` of
    /// the second point.
    pub fn quadric(&self) -> MPoly {
        let m = &self.uv_map.matrix;
        let t = &self.uv_map.translation;
        let x = MPoly::var_in(xy(), 0);
        let y = MPoly::var_in(xy(), 1);
        let k = |s: &Scalar| MPoly::constant_in(xy(), s.clone());
        let images = [
            x.scale(&m[0][0]).add(&y.scale(&m[0][1])).add(&k(&t[0])),
            x.scale(&m[1][0]).add(&y.scale(&m[1][1])).add(&k(&t[1])),
        ];
        self.coeffs.poly().compose(&images)
    }
}

fn rational(p: &Point) -> Result<(BigRational, BigRational), ElekesError> {
    match (p.x.as_rational(), p.y.as_rational()) {
        (Some(x), Some(y)) => Ok((x.clone(), y.clone())),
        _ => Err(ElekesError::Precondition(format!("point {p} is not rational"))),
    }
}

/// `z ↦ (z - o)·w̄·k`, a similarity written as an affine map of `ℝ²`.
fn similarity(o: &(BigRational, BigRational), w: &(BigRational, BigRational), k: &BigRational) -> AffineMap {
    let (re, im) = (&w.0 * k, -(&w.1 * k));
    // (z - o)·(re + i·im)
    let s = |q: &BigRational| Scalar::from_rational(q.clone());
    let matrix = [[s(&re), s(&-&im)], [s(&im), s(&re)]];
    let tx = -(&o.0 * &re - &o.1 * &im);
    let ty = -(&o.0 * &im + &o.1 * &re);
    AffineMap { matrix, translation: [s(&tx), s(&ty)] }
}

/// Normalizes `p_i, p_k, p_q` and `p_j, p_l, p_r` by similarities with one
/// common scale, then derives the constraint on the second point.
pub fn constraint_conic(
    p_i: &Point,
    p_k: &Point,
    p_q: &Point,
    p_j: &Point,
    p_l: &Point,
    p_r: &Point,
) -> Result<ConstraintConic, ElekesError> {
    for (name, (a, b), (c, d)) in [("(i,k)/(j,l)", (p_i, p_k), (p_j, p_l)), ("(i,q)/(j,r)", (p_i, p_q), (p_j, p_r)), ("(k,q)/(l,r)", (p_k, p_q), (p_l, p_r))] {
        if a.dist2(b) == c.dist2(d) {
            return Err(ElekesError::Precondition(format!("equal squared distances for the pairs {name}")));
        }
    }
    let (pi, pk, pj, pl) = (rational(p_i)?, rational(p_k)?, rational(p_j)?, rational(p_l)?);
    let w = (&pk.0 - &pi.0, &pk.1 - &pi.1);
    let w2 = &w.0 * &w.0 + &w.1 * &w.1;
    if w2.is_zero() {
        return Err(ElekesError::Precondition("p_i and p_k coincide".into()));
    }
    let xy_map = similarity(&pi, &w, &w2.recip());
    let wp = (&pl.0 - &pj.0, &pl.1 - &pj.1);
    let wp2 = &wp.0 * &wp.0 + &wp.1 * &wp.1;
    // L² = |w'|²/|w|² must be a rational square
    let (l, uv_map) = if wp2.is_zero() {
        let one = (BigRational::one(), BigRational::zero());
        (BigRational::zero(), similarity(&pj, &one, &Scalar::sqrt_rational(&w2.recip())?.as_rational().cloned().ok_or_else(|| unsupported(&w2))?))
    } else {
        let l2 = &wp2 / &w2;
        let l = Scalar::sqrt_rational(&l2)?.as_rational().cloned().ok_or_else(|| unsupported(&l2))?;
        // (z - p_j)·w̄'·L/|w'|² has scale L/|w'| = 1/|w|
        (l.clone(), similarity(&pj, &wp, &(&l / &wp2)))
    };
    let img = |m: &AffineMap, p: &Point| rational(&m.apply(p));
    let (a, b) = img(&xy_map, p_q)?;
    let (c, d) = img(&uv_map, p_r)?;
    debug_assert_eq!(img(&xy_map, p_k).ok(), Some((BigRational::one(), BigRational::zero())));
    let (coeffs, kind) = constraint_coefficients(&l, &a, &b, &c, &d);
    Ok(ConstraintConic { l, a, b, c, d, coeffs, kind, xy_map, uv_map })
}

fn unsupported(q: &BigRational) -> ElekesError {
    ElekesError::UnsupportedRotation(format!("scale ratio squared {q} is not a rational square"))
}

/// Solutions in the `xx'`-plane of `C_ij ∩ C_kl` when `C₂` is the x-axis:
/// `(x-a_i)² - (x'-a_j)² = b_j² - b_i²` and the same for `k, l`.
pub fn line_case_intersection(cij: &FourCurve, ckl: &FourCurve, config: &Config) -> Result<Vec<(Scalar, Scalar)>, ElekesError> {
    let axis = MPoly::var_in(xy(), 1);
    if config.c2().poly().proportional_to(&axis).is_none() {
        return Err(ElekesError::Precondition(format!("C2 = {} is not the x-axis", config.c2())));
    }
    line_case_points(&cij.p_i, &cij.p_j, &ckl.p_i, &ckl.p_j)
}

/// The same on raw anchor points; index equality is point equality.
pub fn line_case_points(p_i: &Point, p_j: &Point, p_k: &Point, p_l: &Point) -> Result<Vec<(Scalar, Scalar)>, ElekesError> {
    for p in [p_i, p_j, p_k, p_l] {
        rational(p)?;
    }
    if p_i.dist2(p_k) == p_j.dist2(p_l) {
        return Err(ElekesError::Precondition("d²(p_i, p_k) = d²(p_j, p_l)".into()));
    }
    let sq = |s: &Scalar| s * s;
    for (u, w, name) in [(p_i, p_j, "i, j"), (p_k, p_l, "k, l")] {
        if u != w && sq(&u.y) == sq(&w.y) {
            return Err(ElekesError::AssumptionViolation(format!("points {name} lie on one parallel-line pair")));
        }
    }
    for (u, w, name) in [(p_i, p_k, "i, k"), (p_j, p_l, "j, l")] {
        if u != w && u.x == w.x {
            return Err(ElekesError::AssumptionViolation(format!("points {name} lie on one orthogonal line")));
        }
    }
    let e1 = &sq(&p_j.y) - &sq(&p_i.y);
    let e2 = &sq(&p_l.y) - &sq(&p_k.y);
    // subtracting: α x + β x' = γ
    let two = Scalar::from_int(2);
    let alpha = &two * &(&p_k.x - &p_i.x);
    let beta = &two * &(&p_j.x - &p_l.x);
    let gamma = &(&(&(&e1 - &e2) - &sq(&p_i.x)) + &sq(&p_k.x)) + &(&sq(&p_j.x) - &sq(&p_l.x));
    // H1 restricted to the line, as a quadratic in the free coordinate
    let (free_is_x, slope, offset) = if !beta.is_zero() {
        (true, -(&alpha / &beta), &gamma / &beta)
    } else if !alpha.is_zero() {
        (false, -(&beta / &alpha), &gamma / &alpha)
    } else {
        return Err(ElekesError::AssumptionViolation("the two curves coincide in the xx'-plane".into()));
    };
    // dependent = slope·t + offset; H1(x, x') = (x-a_i)² - (x'-a_j)² - e1
    let (fa, da) = if free_is_x { (&p_i.x, &p_j.x) } else { (&p_j.x, &p_i.x) };
    let sign = if free_is_x { Scalar::one() } else { -Scalar::one() };
    // sign·[(t - fa)² - (slope·t + offset - da)²] - e1 = q2 t² + q1 t + q0
    let r = &offset - da;
    let q2 = &sign * &(&Scalar::one() - &sq(&slope));
    let q1 = &sign * &(&(-&(&two * fa)) - &(&two * &(&slope * &r)));
    let q0 = &(&sign * &(&sq(fa) - &sq(&r))) - &e1;
    let roots: Vec<Scalar> = if !q2.is_zero() {
        let disc = &sq(&q1) - &(&Scalar::from_int(4) * &(&q2 * &q0));
        let disc = disc.as_rational().cloned().expect("rational input");
        if disc < BigRational::zero() {
            vec![]
        } else {
            let s = Scalar::sqrt_rational(&disc)?;
            let den = &two * &q2;
            let mut v = vec![&(&(-&q1) - &s) / &den, &(&(-&q1) + &s) / &den];
            v.dedup();
            v
        }
    } else if !q1.is_zero() {
        vec![&(-&q0) / &q1]
    } else if q0.is_zero() {
        return Err(ElekesError::AssumptionViolation("the intersection is a whole line".into()));
    } else {
        vec![]
    };
    Ok(roots
        .into_iter()
        .map(|t| {
            let dep = &(&slope * &t) + &offset;
            if free_is_x {
                (t, dep)
            } else {
                (dep, t)
            }
        })
        .collect())
}
