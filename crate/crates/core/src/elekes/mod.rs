//! The reduction from distinct distances between `S₁ ⊂ C₁` and `S₂ ⊂ C₂` to
//! incidences between points `(q_s, q_t) ∈ S₂ × S₂` and curves `C_ij ⊂ ℝ⁴`.
//!
//! All distances are squared distances, so rational points give rational
//! values throughout.

mod criteria;
mod normalize;
mod partition;
mod projection;

use std::collections::{BTreeMap, BTreeSet};
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rayon::prelude::*;
use thiserror::Error;

use crate::algebra::{vars_of, AlgebraError, MPoly, Scalar, Vars};
use crate::curves::{CurveError, PlaneCurve, Point, PointSet};
use crate::symmetry::SymmetryError;

pub use criteria::{
    constraint_coefficients, constraint_conic, line_case_intersection, line_case_points, same_distance_symmetry,
    same_distance_symmetry_test, ConstraintConic, ConstraintKind, QuadricCoeffs, SameDistance,
};
pub use normalize::{normalize_config, ExcludedCase, NormalizationReport, Removal, RemovalRule};
pub use partition::{greedy_coloring, partition, partition_with, Partition, SidePartition};
pub use projection::{eliminate, generic_projection, project_with, Projection, ProjectionBudget};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ElekesError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Curve(#[from] CurveError),
    #[error(transparent)]
    Symmetry(#[from] SymmetryError),
    #[error("excluded pair of curves: {0}")]
    ExcludedPair(ExcludedCase),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("assumption violated: {0}")]
    AssumptionViolation(String),
    #[error("rotation is not rational-Pythagorean: {0}")]
    UnsupportedRotation(String),
    #[error("{what} {actual} exceeds the budget of {limit}")]
    Budget { what: &'static str, limit: usize, actual: usize },
    #[error("no generic projection found after {0} attempts")]
    RetriesExhausted(usize),
    #[error("index {index} out of range for a set of {len} points")]
    IndexOutOfRange { index: usize, len: usize },
}

/// Two point sets on their host curves. `C₁` and `C₂` may be the same curve.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Config {
    s1: PointSet,
    s2: PointSet,
}

impl Config {
    pub fn new(s1: PointSet, s2: PointSet) -> Self {
        Config { s1, s2 }
    }

    /// Splits one set into its first `⌈n/2⌉` points and the rest.
    pub fn same_curve(s: &PointSet) -> Self {
        let (a, b) = s.split_at(s.len().div_ceil(2));
        Config { s1: a, s2: b }
    }

    pub fn c1(&self) -> &PlaneCurve {
        self.s1.curve()
    }

    pub fn c2(&self) -> &PlaneCurve {
        self.s2.curve()
    }

    pub fn s1(&self) -> &PointSet {
        &self.s1
    }

    pub fn s2(&self) -> &PointSet {
        &self.s2
    }

    pub fn m(&self) -> usize {
        self.s1.len()
    }

    pub fn n(&self) -> usize {
        self.s2.len()
    }

    /// `d = max(deg C₁, deg C₂)`.
    pub fn degree(&self) -> u32 {
        self.c1().degree().max(self.c2().degree())
    }

    /// The `i`-th point of `S₁` (0-based).
    pub fn p(&self, i: usize) -> Result<&Point, ElekesError> {
        self.s1.points().get(i).map(|lp| &lp.point).ok_or(ElekesError::IndexOutOfRange { index: i, len: self.m() })
    }

    /// The `s`-th point of `S₂` (0-based).
    pub fn q(&self, s: usize) -> Result<&Point, ElekesError> {
        self.s2.points().get(s).map(|lp| &lp.point).ok_or(ElekesError::IndexOutOfRange { index: s, len: self.n() })
    }
}

/// Variables `(x, y, xp, yp)` of `ℝ⁴ = C₂ × C₂`'s ambient space.
pub fn four_vars() -> &'static Vars {
    static V: OnceLock<Vars> = OnceLock::new();
    V.get_or_init(|| vars_of(&["x", "y", "xp", "yp"]))
}

/// `C_ij = {(q, q') ∈ C₂ × C₂ : |p_i q| = |p_j q'|}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FourCurve {
    pub i: usize,
    pub j: usize,
    pub p_i: Point,
    pub p_j: Point,
    /// `f₂(x, y)`.
    pub f: MPoly,
    /// `f₂(x', y')`.
    pub f_primed: MPoly,
    /// `(x-a_i)² + (y-b_i)² - (x'-a_j)² - (y'-b_j)²`.
    pub big_f: MPoly,
}

impl FourCurve {
    pub fn new(i: usize, j: usize, p_i: &Point, p_j: &Point, c2: &PlaneCurve) -> Result<Self, ElekesError> {
        Self::build(i, j, p_i, p_j, c2, false)
    }

    /// `flip_sign` negates the `y'` term of `F`; it exists only so the
    /// verification driver can check that a broken `F` is caught.
    pub(crate) fn build(i: usize, j: usize, p_i: &Point, p_j: &Point, c2: &PlaneCurve, flip_sign: bool) -> Result<Self, ElekesError> {
        let v = four_vars();
        let var = |k| MPoly::var_in(v, k);
        let k = |s: &Scalar| MPoly::constant_in(v, s.clone());
        let sq = |p: MPoly| p.mul(&p);
        let f2 = c2.poly();
        let f = f2.compose(&[var(0), var(1)]);
        let f_primed = f2.compose(&[var(2), var(3)]);
        let yp = sq(var(3).sub(&k(&p_j.y)));
        let big_f = sq(var(0).sub(&k(&p_i.x)))
            .add(&sq(var(1).sub(&k(&p_i.y))))
            .sub(&sq(var(2).sub(&k(&p_j.x))));
        let big_f = if flip_sign { big_f.add(&yp) } else { big_f.sub(&yp) };
        Ok(FourCurve { i, j, p_i: p_i.clone(), p_j: p_j.clone(), f, f_primed, big_f })
    }

    pub fn eval_f(&self, q: &Point, qp: &Point) -> Scalar {
        self.big_f.eval(&[q.x.clone(), q.y.clone(), qp.x.clone(), qp.y.clone()])
    }

    /// All three defining polynomials vanish at `(q, q')`.
    pub fn contains(&self, q: &Point, qp: &Point) -> bool {
        let pt = [q.x.clone(), q.y.clone(), qp.x.clone(), qp.y.clone()];
        self.f.eval(&pt).is_zero() && self.f_primed.eval(&pt).is_zero() && self.big_f.eval(&pt).is_zero()
    }
}

/// The `m²` curves `C_ij` in row-major order of `(i, j)`.
pub fn build_four_curves(config: &Config) -> Result<Vec<FourCurve>, ElekesError> {
    let ps: Vec<&Point> = config.s1.coords().collect();
    let mut out = Vec::with_capacity(ps.len() * ps.len());
    for (i, p_i) in ps.iter().enumerate() {
        for (j, p_j) in ps.iter().enumerate() {
            out.push(FourCurve::new(i, j, p_i, p_j, config.c2())?);
        }
    }
    Ok(out)
}

/// `d²(p_i, q_s) = d²(p_j, q_t)`.
pub fn incidence(c: &FourCurve, q_s: &Point, q_t: &Point) -> bool {
    c.p_i.dist2(q_s) == c.p_j.dist2(q_t)
}

/// `I(P, Γ)`: the number of `(i, j, s, t)` with `q_s`, `q_t` equidistant from
/// `p_i`, `p_j`.
pub fn count_incidences(config: &Config) -> u64 {
    let d = distance_table(config);
    (0..d.len())
        .into_par_iter()
        .map(|i| {
            let mut acc = 0u64;
            for row_j in &d {
                for ds in &d[i] {
                    acc += row_j.iter().filter(|dt| *dt == ds).count() as u64;
                }
            }
            acc
        })
        .sum()
}

fn distance_table(config: &Config) -> Vec<Vec<Scalar>> {
    config.s1.coords().map(|p| config.s2.coords().map(|q| p.dist2(q)).collect()).collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadrupleReport {
    pub m: usize,
    pub n: usize,
    /// Squared distance ↦ `|E_d|`.
    pub histogram: BTreeMap<Scalar, u64>,
    /// `|Q| = Σ |E_d|²`.
    pub quadruples: u64,
    /// `|D|`.
    pub distinct: usize,
    /// `m²n² / |D|` (zero for empty sets).
    pub bound: BigRational,
}

impl QuadrupleReport {
    /// `|Q|·|D| ≥ m²n²`.
    pub fn cauchy_schwarz_holds(&self) -> bool {
        let mn = (self.m as u128) * (self.n as u128);
        (self.quadruples as u128) * (self.distinct as u128) >= mn * mn
    }
}

pub fn quadruple_report(config: &Config) -> QuadrupleReport {
    let mut histogram = BTreeMap::new();
    for p in config.s1.coords() {
        for q in config.s2.coords() {
            *histogram.entry(p.dist2(q)).or_insert(0u64) += 1;
        }
    }
    let quadruples = histogram.values().map(|e| e * e).sum();
    let distinct = histogram.len();
    let (m, n) = (config.m(), config.n());
    let mn = BigInt::from(m) * BigInt::from(n);
    let bound =
        if distinct == 0 { BigRational::zero() } else { BigRational::new(&mn * &mn, BigInt::from(distinct)) };
    QuadrupleReport { m, n, histogram, quadruples, distinct, bound }
}

/// Squared distances between distinct points of `S₁` and `S₂`. Passing one
/// set twice gives its own distance set.
pub fn distance_set(s1: &PointSet, s2: &PointSet) -> BTreeSet<Scalar> {
    let qs: Vec<&Point> = s2.coords().collect();
    let ps: Vec<&Point> = s1.coords().collect();
    ps.par_iter()
        .map(|p| qs.iter().filter(|q| *q != p).map(|q| p.dist2(q)).collect::<BTreeSet<_>>())
        .reduce(BTreeSet::new, |mut a, b| {
            a.extend(b);
            a
        })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_poly_in;

    fn set(curve: &str, pts: &[(i64, i64)]) -> PointSet {
        let c = PlaneCurve::parse(curve).unwrap();
        PointSet::from_points(c, pts.iter().map(|&(x, y)| Point::from_ints(x, y)).collect()).unwrap()
    }

    fn brute_quadruples(c: &Config) -> u64 {
        let ps: Vec<_> = c.s1().coords().collect();
        let qs: Vec<_> = c.s2().coords().collect();
        let mut n = 0;
        for pi in &ps {
            for pj in &ps {
                for qs_ in &qs {
                    for qt in &qs {
                        if pi.dist2(qs_) == pj.dist2(qt) {
                            n += 1;
                        }
                    }
                }
            }
        }
        n
    }

    #[test]
    fn four_curve_expansion() {
        let c2 = PlaneCurve::parse("y").unwrap();
        let c = FourCurve::new(0, 1, &Point::from_ints(0, 0), &Point::from_ints(1, 0), &c2).unwrap();
        let expect = parse_poly_in("x^2 + y^2 - (xp - 1)^2 - yp^2", four_vars()).unwrap();
        assert_eq!(c.big_f, expect);
        assert_eq!(c.f_primed, parse_poly_in("yp", four_vars()).unwrap());
    }

    #[test]
    fn curve_count_and_order() {
        let cfg = Config::new(set("y", &[(0, 0), (1, 0), (2, 0)]), set("y - 4", &[(0, 4)]));
        let cs = build_four_curves(&cfg).unwrap();
        assert_eq!(cs.len(), 9);
        assert_eq!((cs[5].i, cs[5].j), (1, 2));
    }

    #[test]
    fn incidence_examples() {
        let c2 = PlaneCurve::parse("x^2 + y^2 - 2").unwrap();
        let o = Point::from_ints(0, 0);
        let c = FourCurve::new(0, 0, &o, &o, &c2).unwrap();
        assert!(incidence(&c, &Point::from_ints(1, 1), &Point::from_ints(1, 1)));
        let c2 = PlaneCurve::parse("y^2 - y").unwrap();
        let c = FourCurve::new(0, 1, &o, &Point::from_ints(1, 0), &c2).unwrap();
        assert!(incidence(&c, &Point::from_ints(0, 1), &Point::from_ints(1, 1)));
        assert!(!incidence(&c, &Point::from_ints(2, 0), &Point::from_ints(2, 0)));
        assert!(c.contains(&Point::from_ints(0, 1), &Point::from_ints(1, 1)));
    }

    #[test]
    fn two_by_two_quadruples() {
        let cfg = Config::new(set("y", &[(0, 0), (3, 0)]), set("y - 4", &[(0, 4), (3, 4)]));
        assert_eq!(brute_quadruples(&cfg), 8);
        assert_eq!(count_incidences(&cfg), 8);
        let r = quadruple_report(&cfg);
        assert_eq!((r.quadruples, r.distinct), (8, 2));
        assert_eq!(r.bound, BigRational::from_integer(8.into()));
        assert!(r.cauchy_schwarz_holds());
    }

    #[test]
    fn single_pair() {
        let cfg = Config::new(set("y", &[(0, 0)]), set("y - 1", &[(0, 1)]));
        assert_eq!(count_incidences(&cfg), 1);
        let r = quadruple_report(&cfg);
        assert_eq!((r.quadruples, r.distinct), (1, 1));
    }

    #[test]
    fn split_collinear_is_strict() {
        let all = set("y", &(0..8).map(|i| (i, 0)).collect::<Vec<_>>());
        let cfg = Config::same_curve(&all);
        assert_eq!((cfg.m(), cfg.n()), (4, 4));
        let r = quadruple_report(&cfg);
        assert_eq!(r.quadruples, brute_quadruples(&cfg));
        assert_eq!(count_incidences(&cfg), r.quadruples);
        assert_eq!(r.histogram.values().sum::<u64>(), 16);
        let mn2 = BigRational::from_integer(256.into());
        assert!(BigRational::from_integer(r.quadruples.into()) * BigRational::from_integer(r.distinct.into()) > mn2);
    }

    #[test]
    fn distance_sets() {
        let line = set("y", &(0..6).map(|i| (i, 0)).collect::<Vec<_>>());
        let d = distance_set(&line, &line);
        assert_eq!(d.into_iter().collect::<Vec<_>>(), (1..6).map(|k| Scalar::from_int(k * k)).collect::<Vec<_>>());
        let s1 = set("y", &[(0, 0)]);
        let s2 = set("x^2 + y^2 - 25", &[(3, 4), (5, 0)]);
        assert_eq!(distance_set(&s1, &s2).into_iter().collect::<Vec<_>>(), vec![Scalar::from_int(25)]);
        let par = set("y - x^2", &[(1, 1), (2, 4), (3, 9)]);
        let d: Vec<_> = distance_set(&par, &par).into_iter().collect();
        assert_eq!(d, vec![Scalar::from_int(10), Scalar::from_int(26), Scalar::from_int(68)]);
    }
}
