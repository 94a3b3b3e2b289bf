//! Seeded property suites behind `curvedist verify`, and the random
//! generators they share with the acceptance tests.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::{io, run_scenario, Caps};
use crate::algebra::resultant::resultant_at;
use crate::algebra::{isolate_real_roots, parse_poly_in, poly_gcd, MPoly, Scalar, UPoly};
use crate::curves::{
    box_may_vanish, classify_conic, generate_points, intersect_curves, xy, CurveFamily, IntersectionResult,
    PlaneCurve, Point, PointSet, Sampling,
};
use crate::elekes::{
    count_incidences, incidence, line_case_points, normalize_config, partition, quadruple_report, same_distance_symmetry,
    constraint_conic, Config, ElekesError, FourCurve, SameDistance,
};
use crate::symmetry::{
    apply_to_poly, conic_stabilizer, find_symmetries, fixes_curve, isometry_from_point_pairs, AffineMap, Isometry,
    StabilizerParam, SymmetryList,
};

/// Enough for every suite.
pub const DEFAULT_BUDGET: u64 = 100;

const SEED: u64 = 0x5eed_c0de;

/// Deliberate defects used to check that the suites catch them.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mutation {
    /// Adds the `(y' - b_j)²` term of `F` instead of subtracting it.
    FlipFSign,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum SuiteStatus {
    Pass,
    Fail { counterexample: String },
    Skipped { reason: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteResult {
    pub name: &'static str,
    pub cost: u64,
    /// Cases checked; zero when skipped.
    pub cases: usize,
    #[serde(flatten)]
    pub status: SuiteStatus,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub budget: u64,
    pub mutation: Option<Mutation>,
    pub suites: Vec<SuiteResult>,
}

impl VerifyReport {
    pub fn passed(&self) -> usize {
        self.suites.iter().filter(|s| s.status == SuiteStatus::Pass).count()
    }

    pub fn failed(&self) -> usize {
        self.suites.iter().filter(|s| matches!(s.status, SuiteStatus::Fail { .. })).count()
    }

    pub fn skipped(&self) -> usize {
        self.suites.iter().filter(|s| matches!(s.status, SuiteStatus::Skipped { .. })).count()
    }

    /// 0 when everything passed, 1 on any failure, 3 when suites were
    /// skipped for lack of budget.
    pub fn exit_code(&self) -> i32 {
        if self.failed() > 0 {
            1
        } else if self.skipped() > 0 {
            3
        } else {
            0
        }
    }
}

type Outcome = Result<usize, String>;

struct Suite {
    name: &'static str,
    cost: u64,
    run: fn(&mut ChaCha8Rng, Option<Mutation>) -> Outcome,
}

const SUITES: &[Suite] = &[
    Suite { name: "scalar-field-axioms", cost: 1, run: scalar_field },
    Suite { name: "resultant-multiplicativity", cost: 4, run: resultants },
    Suite { name: "root-isolation-count", cost: 3, run: root_counts },
    Suite { name: "parse-roundtrip", cost: 1, run: parse_roundtrip },
    Suite { name: "bezout-bound", cost: 10, run: bezout },
    Suite { name: "generated-points-on-curve", cost: 2, run: generated_points },
    Suite { name: "conic-classification-invariance", cost: 2, run: conic_invariance },
    Suite { name: "symmetry-group-axioms", cost: 15, run: symmetry_groups },
    Suite { name: "conic-stabilizers", cost: 3, run: stabilizers },
    Suite { name: "isometry-pairs-preserve-distance", cost: 1, run: isometry_pairs },
    Suite { name: "rotation-commutator", cost: 1, run: commutator },
    Suite { name: "incidence-three-way", cost: 3, run: incidence_agreement },
    Suite { name: "quadruple-identity", cost: 3, run: quadruple_identity },
    Suite { name: "line-case-bound", cost: 2, run: line_case },
    Suite { name: "constraint-conic", cost: 3, run: constraint },
    Suite { name: "partition-invariants", cost: 10, run: partition_invariants },
    Suite { name: "normalization-retention", cost: 2, run: retention },
    Suite { name: "report-determinism", cost: 5, run: determinism },
];

/// Runs every suite whose cost fits in what is left of `budget`, in a fixed
/// order; the rest are reported as skipped.
pub fn verify_all(budget: u64, mutation: Option<Mutation>) -> VerifyReport {
    let mut left = budget;
    let plan: Vec<(usize, bool)> = SUITES
        .iter()
        .enumerate()
        .map(|(k, s)| {
            let fits = s.cost <= left;
            if fits {
                left -= s.cost;
            }
            (k, fits)
        })
        .collect();
    let suites = plan
        .par_iter()
        .map(|&(k, fits)| {
            let s = &SUITES[k];
            if !fits {
                return SuiteResult {
                    name: s.name,
                    cost: s.cost,
                    cases: 0,
                    status: SuiteStatus::Skipped { reason: "budget exhausted".into() },
                };
            }
            let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ k as u64);
            let (cases, status) = match (s.run)(&mut rng, mutation) {
                Ok(n) => (n, SuiteStatus::Pass),
                Err(c) => (0, SuiteStatus::Fail { counterexample: c }),
            };
            SuiteResult { name: s.name, cost: s.cost, cases, status }
        })
        .collect();
    VerifyReport { budget, mutation, suites }
}

fn check(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn rq(rng: &mut ChaCha8Rng, bound: i64, max_den: i64) -> BigRational {
    let den = rng.gen_range(1..=max_den);
    BigRational::new(rng.gen_range(-bound * den..=bound * den).into(), den.into())
}

fn nonzero_rq(rng: &mut ChaCha8Rng, bound: i64, max_den: i64) -> BigRational {
    loop {
        let q = rq(rng, bound, max_den);
        if !q.is_zero() {
            return q;
        }
    }
}

fn sc(q: BigRational) -> Scalar {
    Scalar::from_rational(q)
}

/// `(cos, sin)` of a random rational-Pythagorean angle.
fn pythagorean(rng: &mut ChaCha8Rng) -> (BigRational, BigRational) {
    let (p, q) = (rng.gen_range(1..=6i64), rng.gen_range(0..=6i64));
    let h = BigInt::from(p * p + q * q);
    let c = BigRational::new((p * p - q * q).into(), h.clone());
    let s = BigRational::new((2 * p * q).into(), h);
    let c = if rng.gen() { -c } else { c };
    let s = if rng.gen() { -s } else { s };
    (c, s)
}

fn rational_point(rng: &mut ChaCha8Rng, bound: i64, max_den: i64) -> Point {
    Point::from_rationals(rq(rng, bound, max_den), rq(rng, bound, max_den))
}

/// Dense random polynomial in `x, y` of total degree `deg` involving `x`.
fn random_poly(rng: &mut ChaCha8Rng, deg: u32, max_den: i64) -> MPoly {
    loop {
        let mut terms = Vec::new();
        for i in 0..=deg {
            for j in 0..=(deg - i) {
                if rng.gen_bool(0.6) {
                    terms.push((vec![i, j], sc(rq(rng, 3, max_den))));
                }
            }
        }
        let p = MPoly::from_terms_in(xy(), terms);
        if p.involves(0) && p.total_degree() == deg {
            return p;
        }
    }
}

fn random_poly_upto(rng: &mut ChaCha8Rng, degs: std::ops::RangeInclusive<u32>, max_den: i64) -> MPoly {
    let d = rng.gen_range(degs);
    random_poly(rng, d, max_den)
}

/// `m + n` points with distinct integer abscissas on `y = x³`; the first `m`
/// form `S₁`.
pub fn random_cubic_config(seed: u64, m: usize, n: usize) -> Config {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let curve = PlaneCurve::parse("y - x^3").expect("cubic parses");
    let span = (m + n) as i64 + 6;
    let mut xs: Vec<i64> = Vec::new();
    while xs.len() < m + n {
        let x = rng.gen_range(-span..=span);
        if !xs.contains(&x) {
            xs.push(x);
        }
    }
    let pts: Vec<Point> = xs.iter().map(|&x| Point::from_ints(x, x * x * x)).collect();
    let s = PointSet::from_points(curve, pts).expect("points lie on the cubic");
    let (s1, s2) = s.split_at(m);
    Config::new(s1, s2)
}

/// `[p_i, p_j, p_k, p_l]` with `p_i ≠ p_k`, `p_j ≠ p_l`, distinct abscissas
/// and distinct `y²` among the four, and `d²(p_i, p_k) ≠ d²(p_j, p_l)`.
pub fn line_case_quadruple(seed: u64) -> [Point; 4] {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let mut xs: Vec<i64> = Vec::new();
        let mut ys: Vec<i64> = Vec::new();
        while xs.len() < 4 {
            let x = rng.gen_range(-20..=20);
            let y = rng.gen_range(1..=20);
            if !xs.contains(&x) && !ys.iter().any(|v| v.abs() == y) {
                xs.push(x);
                ys.push(if rng.gen() { y } else { -y });
            }
        }
        let p: Vec<Point> = xs.iter().zip(&ys).map(|(&x, &y)| Point::from_ints(x, y)).collect();
        if p[0].dist2(&p[2]) != p[1].dist2(&p[3]) {
            return [p[0].clone(), p[1].clone(), p[2].clone(), p[3].clone()];
        }
    }
}

/// Six points meeting the constraint-conic preconditions together with one
/// known solution of the three distance equations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sextuple {
    /// `p_i, p_k, p_q, p_j, p_l, p_r`, in the argument order of
    /// `constraint_conic`.
    pub points: [Point; 6],
    /// `(x, y)` and `(u, v)` with `|xy - p_i| = |uv - p_j|`,
    /// `|xy - p_k| = |uv - p_l|`, `|xy - p_q| = |uv - p_r|`.
    pub solution: (Point, Point),
}

/// A seeded sextuple. It is built in normalized position around a chosen
/// solution, then moved by two similarities with one common scale.
pub fn constraint_sextuple(seed: u64) -> Sextuple {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let two = BigRational::from_integer(2.into());
    loop {
        let l = BigRational::new(rng.gen_range(1..=9i64).into(), rng.gen_range(1..=4i64).into());
        if l.is_one() {
            continue;
        }
        let u = rq(&mut rng, 4, 3);
        let x = &l * &u + (BigRational::one() - &l * &l) / &two;
        let dd = &u * &u - &x * &x;
        let k = nonzero_rq(&mut rng, 4, 3);
        // y² - v² = dd
        let y = (&k + &dd / &k) / &two;
        let v = (&dd / &k - &k) / &two;
        let q = (rq(&mut rng, 4, 2), rq(&mut rng, 4, 2));
        let (c, s) = pythagorean(&mut rng);
        let (dx, dy) = (&q.0 - &x, &q.1 - &y);
        let r = (&u + &c * &dx - &s * &dy, &v + &s * &dx + &c * &dy);
        let lambda = BigRational::new(rng.gen_range(1..=5i64).into(), rng.gen_range(1..=3i64).into());
        let sim = |rng: &mut ChaCha8Rng| {
            let (c, s) = pythagorean(rng);
            let t = (rq(rng, 5, 2), rq(rng, 5, 2));
            let (c, s) = (&c * &lambda, &s * &lambda);
            move |p: &(BigRational, BigRational)| Point::from_rationals(&c * &p.0 - &s * &p.1 + &t.0, &s * &p.0 + &c * &p.1 + &t.1)
        };
        let z = BigRational::zero();
        let s1 = sim(&mut rng);
        let s2 = sim(&mut rng);
        let points = [
            s1(&(z.clone(), z.clone())),
            s1(&(BigRational::one(), z.clone())),
            s1(&q),
            s2(&(z.clone(), z.clone())),
            s2(&(l.clone(), z.clone())),
            s2(&r),
        ];
        let [pi, pk, pq, pj, pl, pr] = &points;
        if pi.dist2(pk) == pj.dist2(pl) || pi.dist2(pq) == pj.dist2(pr) || pk.dist2(pq) == pl.dist2(pr) {
            continue;
        }
        let solution = (s1(&(x, y)), s2(&(u, v)));
        return Sextuple { points, solution };
    }
}

/// Brute-force solutions `(x, y, u, v)` of the normalized distance system
/// `|xy|² = |uv|²`, `|xy - (1,0)|² = |uv - (L,0)|²`,
/// `|xy - (a,b)|² = |uv - (c,d)|²` with `u` fixed.
fn normalized_solutions(
    l: &BigRational,
    a: &BigRational,
    b: &BigRational,
    c: &BigRational,
    d: &BigRational,
    u: &BigRational,
) -> Vec<[Scalar; 4]> {
    let two = BigRational::from_integer(2.into());
    let x = l * u + (BigRational::one() - l * l) / &two;
    // 2b·y - 2d·v = rr
    let rr = a * a + b * b - c * c - d * d - &two * a * &x + &two * c * u;
    let mut out = Vec::new();
    let mut push = |y: Scalar, v: Scalar| out.push([sc(x.clone()), y, sc(u.clone()), v]);
    if !b.is_zero() {
        // y = α + β·v
        let alpha = &rr / (&two * b);
        let beta = d / b;
        let q2 = &beta * &beta - BigRational::one();
        let q1 = &two * &alpha * &beta;
        let q0 = &x * &x + &alpha * &alpha - u * u;
        let vs: Vec<Scalar> = if !q2.is_zero() {
            let disc = &q1 * &q1 - BigRational::from_integer(4.into()) * &q2 * &q0;
            if disc.is_negative() {
                vec![]
            } else {
                let sq = Scalar::sqrt_rational(&disc).expect("nonnegative");
                let den = sc(&two * &q2);
                let mq1 = sc(-q1);
                let mut vs = vec![&(&mq1 - &sq) / &den, &(&mq1 + &sq) / &den];
                vs.dedup();
                vs
            }
        } else if !q1.is_zero() {
            vec![sc(-q0 / q1)]
        } else {
            vec![]
        };
        for v in vs {
            let y = &sc(alpha.clone()) + &(&sc(beta.clone()) * &v);
            push(y, v);
        }
    } else {
        let vs: Vec<BigRational> = if !d.is_zero() {
            vec![-&rr / (&two * d)]
        } else if rr.is_zero() {
            vec![BigRational::zero(), BigRational::one()]
        } else {
            vec![]
        };
        for v in vs {
            let y2 = u * u + &v * &v - &x * &x;
            if y2.is_negative() {
                continue;
            }
            let y = Scalar::sqrt_rational(&y2).expect("nonnegative");
            push(y.clone(), sc(v.clone()));
            if !y.is_zero() {
                push(-y, sc(v));
            }
        }
    }
    out
}

fn scalar_field(rng: &mut ChaCha8Rng, _: Option<Mutation>) -> Outcome {
    let cases = 200;
    for _ in 0..cases {
        let k = BigInt::from([2, 3, 5, 7][rng.gen_range(0..4)]);
        let mut r = || Scalar::quadratic(rq(rng, 5, 4), rq(rng, 5, 4), k.clone()).map_err(|e| e.to_string());
        let (a, b, c) = (r()?, r()?, r()?);
        check(&(&a + &b) + &c == &a + &(&b + &c), || format!("(a+b)+c != a+(b+c) for a={a}, b={b}, c={c}"))?;
        check(&a * &(&b + &c) == &(&a * &b) + &(&a * &c), || format!("distributivity fails for a={a}, b={b}, c={c}"))?;
        if !a.is_zero() {
            check((&a * &a.inv().map_err(|e| e.to_string())?).is_one(), || format!("a·a⁻¹ != 1 for a={a}"))?;
        }
    }
    Ok(cases)
}

fn resultants(rng: &mut ChaCha8Rng, _: Option<Mutation>) -> Outcome {
    let cases = 12;
    for _ in 0..cases {
        let f = random_poly_upto(rng, 1..=2, 1);
        let g = random_poly_upto(rng, 1..=2, 1);
        let h = random_poly_upto(rng, 1..=2, 1);
        let lhs = resultant_at(&f.mul(&g), &h, 0);
        let rhs = resultant_at(&f, &h, 0).mul(&resultant_at(&g, &h, 0));
        check(lhs == rhs || lhs == rhs.neg(), || format!("res(fg,h) != ±res(f,h)res(g,h) for f={f}, g={g}, h={h}"))?;
        check(resultant_at(&f.mul(&h), &g.mul(&h), 0).is_zero(), || format!("res(fh,gh) != 0 for f={f}, g={g}, h={h}"))?;
        let shared = poly_gcd(&f, &g).map_err(|e| e.to_string())?.involves(0);
        check(resultant_at(&f, &g, 0).is_zero() == shared, || format!("res(f,g) = 0 disagrees with gcd for f={f}, g={g}"))?;
    }
    Ok(cases)
}

fn root_counts(rng: &mut ChaCha8Rng, _: Option<Mutation>) -> Outcome {
    let cases = 40;
    for _ in 0..cases {
        // known roots: distinct rationals, optionally ±√k, optionally a
        // repeated root and an irreducible quadratic without real roots
        let mut roots: Vec<BigRational> = Vec::new();
        let mut p = UPoly::from_ints("x", &[1]);
        for _ in 0..rng.gen_range(1..=4) {
            let r = rq(rng, 5, 3);
            if !roots.contains(&r) {
                p = p.mul(&UPoly::new("x", vec![sc(-r.clone()), Scalar::one()]));
                roots.push(r);
            }
        }
        let mut expect = roots.len();
        if rng.gen() {
            p = p.mul(&UPoly::from_ints("x", &[-[2, 3, 5][rng.gen_range(0..3)], 0, 1]));
            expect += 2;
        }
        if rng.gen() {
            p = p.mul(&UPoly::from_ints("x", &[1, 0, 1]));
        }
        if rng.gen() {
            p = p.mul(&UPoly::new("x", vec![sc(-roots[0].clone()), Scalar::one()]));
        }
        let iso = isolate_real_roots(&p).map_err(|e| e.to_string())?;
        check(iso.len() == expect, || format!("{} roots isolated for {p}, expected {expect}", iso.len()))?;
        for r in &roots {
            let hits = iso.iter().filter(|i| i.bounds().contains(r)).count();
            check(hits == 1, || format!("root {r} of {p} lies in {hits} intervals"))?;
        }
    }
    Ok(cases)
}

fn parse_roundtrip(rng: &mut ChaCha8Rng, _: Option<Mutation>) -> Outcome {
    let cases = 100;
    for _ in 0..cases {
        let p = random_poly_upto(rng, 1..=4, 5);
        let text = p.to_string();
        let back = parse_poly_in(&text, xy()).map_err(|e| format!("{text}: {e}"))?;
        check(back == p, || format!("parse({text}) = {back}"))?;
    }
    Ok(cases)
}

/// `|points| ≤ d₁d₂`; exact points satisfy both equations; interval points
/// have enclosures on which neither polynomial is refuted.
pub(crate) fn bezout_case(f: &MPoly, g: &MPoly) -> Result<(), String> {
    let c1 = PlaneCurve::from_poly(f.clone()).map_err(|e| e.to_string())?;
    let c2 = PlaneCurve::from_poly(g.clone()).map_err(|e| e.to_string())?;
    match intersect_curves(&c1, &c2).map_err(|e| e.to_string())? {
        IntersectionResult::CommonComponent(h) => {
            let expect = poly_gcd(f, g).map_err(|e| e.to_string())?;
            check(h.proportional_to(&expect).is_some(), || format!("common component {h} of {f}, {g} is not the gcd"))
        }
        IntersectionResult::FinitePoints(pts) => {
            let bound = (c1.degree() * c2.degree()) as usize;
            check(pts.len() <= bound, || format!("{} points for {f}, {g} exceed {bound}", pts.len()))?;
            let w = BigRational::new(1.into(), BigInt::from(1u64 << 40));
            for p in &pts {
                if let Some(e) = p.exact() {
                    check(c1.contains_point(&e) && c2.contains_point(&e), || format!("{e} is off {f} or {g}"))?;
                } else {
                    let (bx, by) = (p.x.enclosure(&w), p.y.enclosure(&w));
                    check(box_may_vanish(f, &bx, &by) && box_may_vanish(g, &bx, &by), || {
                        format!("interval point ({}, {}) refuted for {f}, {g}", p.x.to_f64(), p.y.to_f64())
                    })?;
                }
            }
            Ok(())
        }
    }
}

fn bezout(rng: &mut ChaCha8Rng, _: Option<Mutation>) -> Outcome {
    let cases = 30;
    for k in 0..cases {
        let f = random_poly_upto(rng, 1..=3, 1);
        let g = random_poly_upto(rng, 1..=3, 1);
        if k % 5 == 0 {
            let h = random_poly(rng, 1, 1);
            bezout_case(&f.mul(&h), &g.mul(&h))?;
        } else {
            bezout_case(&f, &g)?;
        }
    }
    Ok(cases)
}

fn generated_points(rng: &mut ChaCha8Rng, _: Option<Mutation>) -> Outcome {
    let mut cases = 0;
    for _ in 0..8 {
        let fams = [
            CurveFamily::Line { a: nonzero_rq(rng, 4, 2), b: rq(rng, 4, 2), c: rq(rng, 4, 2) },
            CurveFamily::Circle { center: (rq(rng, 4, 2), rq(rng, 4, 2)), radius: BigRational::from_integer(rng.gen_range(1..=5).into()) },
            CurveFamily::Graph(UPoly::new("x", (0..4).map(|_| sc(rq(rng, 3, 2))).collect())),
            CurveFamily::Conic {
                poly: parse_poly_in("x^2 - 2*y^2 - 1", xy()).expect("conic parses"),
                point: (BigRational::one(), BigRational::zero()),
            },
            CurveFamily::Conic {
                poly: parse_poly_in("x^2 + 3*x*y + y^2 - 5", xy()).expect("conic parses"),
                point: (BigRational::one(), BigRational::one()),
            },
        ];
        for fam in fams {
            let sampling = Sampling::Random { seed: rng.gen(), bound: 20, max_den: 3 };
            let ps = generate_points(&fam, 6, &sampling).map_err(|e| format!("{fam:?}: {e}"))?;
            for p in ps.coords() {
                check(ps.curve().contains_point(p), || format!("{p} is off {}", ps.curve()))?;
            }
            cases += 1;
        }
    }
    Ok(cases)
}

fn conic_invariance(rng: &mut ChaCha8Rng, _: Option<Mutation>) -> Outcome {
    let mut cases = 0;
    while cases < 60 {
        let f = random_poly(rng, 2, 1);
        let Ok(c) = PlaneCurve::from_poly(f.clone()) else { continue };
        let Ok(class) = classify_conic(&c) else { continue };
        let (co, si) = pythagorean(rng);
        let t = AffineMap { matrix: [[sc(co.clone()), sc(-si.clone())], [sc(si), sc(co)]], translation: [sc(rq(rng, 5, 3)), sc(rq(rng, 5, 3))] };
        let g = apply_to_poly(&t, &f).map_err(|e| e.to_string())?;
        let moved = PlaneCurve::from_poly(g.clone()).map_err(|e| e.to_string())?;
        let again = classify_conic(&moved).map_err(|e| e.to_string())?;
        check(again == class, || format!("{f} is {class:?} but its image {g} is {again:?}"))?;
        cases += 1;
    }
    Ok(cases)
}

const SYMMETRY_CORPUS: &[&str] =
    &["x^4 + y^4 - 1", "y^2 - x^3 + x", "y - x^3", "y - x^2", "x*y - 1", "x^2 + 2*y^2 - 1", "x^3 + y^3 - 1", "y^2 - x^5 - x", "y - x", "x^2 + y^2 - 4"];

/// Group axioms, `fixes_curve` for every element and the `4d` size bound.
pub(crate) fn symmetry_case(text: &str) -> Result<(), String> {
    let c = PlaneCurve::parse(text).map_err(|e| e.to_string())?;
    match find_symmetries(&c).map_err(|e| format!("{text}: {e}"))? {
        SymmetryList::InfiniteFamily { .. } => check(c.is_line() || c.is_circle(), || format!("{text}: infinite family")),
        SymmetryList::Finite { group, unrepresentable } => {
            check(!c.is_line() && !c.is_circle(), || format!("{text}: finite list for a line or circle"))?;
            check(group.contains(&Isometry::identity()), || format!("{text}: identity missing"))?;
            for a in &group {
                check(a.fixes(&c), || format!("{text}: {a:?} does not fix the curve"))?;
                check(group.contains(&a.inverse()), || format!("{text}: inverse of {a:?} missing"))?;
                for b in &group {
                    check(group.contains(&a.compose(b)), || format!("{text}: {a:?} ∘ {b:?} missing"))?;
                }
            }
            let size = group.len() + unrepresentable.len();
            check(size <= 4 * c.degree() as usize, || format!("{text}: {size} symmetries exceed 4d"))
        }
    }
}

fn symmetry_groups(_: &mut ChaCha8Rng, _: Option<Mutation>) -> Outcome {
    for text in SYMMETRY_CORPUS {
        symmetry_case(text)?;
    }
    Ok(SYMMETRY_CORPUS.len())
}

fn stabilizers(rng: &mut ChaCha8Rng, _: Option<Mutation>) -> Outcome {
    let cases = 20;
    let k = |q: &BigRational| MPoly::constant_in(xy(), sc(q.clone()));
    let (x, y) = (MPoly::var_in(xy(), 0), MPoly::var_in(xy(), 1));
    for _ in 0..cases {
        let (s, t) = (nonzero_rq(rng, 4, 3), nonzero_rq(rng, 4, 3));
        let hyper = y.mul(&y).add(&x.mul(&y).scale(&sc(s.clone()))).sub(&k(&t));
        let ellipse = x.mul(&x).scale(&sc(&s * &s)).add(&y.mul(&y).scale(&sc(&t * &t))).sub(&k(&BigRational::one()));
        let parabola = y.sub(&x.mul(&x).scale(&sc(s.clone())));
        let (co, si) = pythagorean(rng);
        let params = [
            (hyper, StabilizerParam::Hyperbola { r: sc(nonzero_rq(rng, 4, 3)), second: rng.gen() }),
            (ellipse, StabilizerParam::Ellipse { cos: sc(co), sin: sc(si), upper: rng.gen() }),
            (parabola, StabilizerParam::Parabola { c: sc(rq(rng, 4, 3)), plus: rng.gen() }),
        ];
        for (f, param) in params {
            let c = PlaneCurve::from_poly(f).map_err(|e| e.to_string())?;
            let t = conic_stabilizer(&c, &param).map_err(|e| format!("{c}, {param:?}: {e}"))?;
            check(fixes_curve(&t, &c), || format!("{t:?} from {param:?} does not fix {c}"))?;
        }
    }
    Ok(3 * cases)
}

fn isometry_pairs(rng: &mut ChaCha8Rng, _: Option<Mutation>) -> Outcome {
    let cases = 30;
    for _ in 0..cases {
        let (c, s) = pythagorean(rng);
        let t = Isometry::new(sc(c), sc(s), 1, [sc(rq(rng, 5, 3)), sc(rq(rng, 5, 3))]).map_err(|e| e.to_string())?;
        let p_i = rational_point(rng, 5, 3);
        let p_k = loop {
            let p = rational_point(rng, 5, 3);
            if p != p_i {
                break p;
            }
        };
        let (p_j, p_l) = (t.apply(&p_i), t.apply(&p_k));
        let iso = isometry_from_point_pairs(&p_i, &p_k, &p_j, &p_l).map_err(|e| e.to_string())?;
        check(iso.apply(&p_i) == p_j && iso.apply(&p_k) == p_l, || format!("{iso:?} misses {p_i} ↦ {p_j}, {p_k} ↦ {p_l}"))?;
        for _ in 0..20 {
            let (a, b) = (rational_point(rng, 9, 4), rational_point(rng, 9, 4));
            check(a.dist2(&b) == iso.apply(&a).dist2(&iso.apply(&b)), || format!("{iso:?} changes |{a} - {b}|"))?;
        }
    }
    Ok(cases)
}

fn rotation_about(rng: &mut ChaCha8Rng, center: &Point) -> Result<Isometry, String> {
    let (c, s) = loop {
        let (c, s) = pythagorean(rng);
        if !s.is_zero() {
            break (c, s);
        }
    };
    let r = Isometry::new(sc(c), sc(s), 1, [Scalar::zero(), Scalar::zero()]).map_err(|e| e.to_string())?;
    let moved = r.apply(center);
    Isometry::new(r.c().clone(), r.s().clone(), 1, [&center.x - &moved.x, &center.y - &moved.y]).map_err(|e| e.to_string())
}

fn commutator(rng: &mut ChaCha8Rng, _: Option<Mutation>) -> Outcome {
    let cases = 50;
    for _ in 0..cases {
        let a = rational_point(rng, 5, 3);
        let b = loop {
            let p = rational_point(rng, 5, 3);
            if p != a {
                break p;
            }
        };
        let (ra, rb) = (rotation_about(rng, &a)?, rotation_about(rng, &b)?);
        let k = rb.inverse().compose(&ra.inverse().compose(&rb.compose(&ra)));
        check(k.c().is_one() && k.s().is_zero() && k.sigma() == 1, || format!("commutator {k:?} is not a translation"))?;
    }
    Ok(cases)
}

fn incidence_agreement(rng: &mut ChaCha8Rng, mutation: Option<Mutation>) -> Outcome {
    let flip = mutation == Some(Mutation::FlipFSign);
    let mut cases = 0;
    for _ in 0..10 {
        let config = random_cubic_config(rng.gen(), rng.gen_range(2..=5), rng.gen_range(2..=5));
        let qs: Vec<&Point> = config.s2().coords().collect();
        let mut count = 0u64;
        for i in 0..config.m() {
            for j in 0..config.m() {
                let (p_i, p_j) = (config.p(i).map_err(|e| e.to_string())?, config.p(j).map_err(|e| e.to_string())?);
                let c = FourCurve::build(i, j, p_i, p_j, config.c2(), flip).map_err(|e| e.to_string())?;
                for (s, q) in qs.iter().enumerate() {
                    for (t, qp) in qs.iter().enumerate() {
                        let by_distance = p_i.dist2(q) == p_j.dist2(qp);
                        let by_curve = c.contains(q, qp);
                        let by_incidence = incidence(&c, q, qp);
                        check(by_distance == by_curve && by_curve == by_incidence, || {
                            format!(
                                "(i,j,s,t) = ({i},{j},{s},{t}): d² equal = {by_distance}, F = {}, incidence = {by_incidence}",
                                c.eval_f(q, qp)
                            )
                        })?;
                        count += u64::from(by_curve);
                        cases += 1;
                    }
                }
            }
        }
        let total = count_incidences(&config);
        check(total == count, || format!("count_incidences = {total}, enumeration = {count}"))?;
    }
    Ok(cases)
}

fn quadruple_identity(rng: &mut ChaCha8Rng, _: Option<Mutation>) -> Outcome {
    let cases = 30;
    for _ in 0..cases {
        let (m, n) = (rng.gen_range(1..=8), rng.gen_range(1..=8));
        let config = random_cubic_config(rng.gen(), m, n);
        let q = quadruple_report(&config);
        let i = count_incidences(&config);
        let sum: u64 = q.histogram.values().sum();
        let squares: u64 = q.histogram.values().map(|e| e * e).sum();
        check(i == q.quadruples, || format!("I = {i} but |Q| = {} for m={m}, n={n}", q.quadruples))?;
        check(sum == (m * n) as u64 && squares == q.quadruples, || format!("histogram sums {sum}, {squares} for m={m}, n={n}"))?;
        check(q.cauchy_schwarz_holds(), || format!("|Q|·|D| < m²n² for m={m}, n={n}"))?;
    }
    Ok(cases)
}

/// At most four solutions, each on both hyperbolas.
pub(crate) fn line_case_check(p: &[Point; 4]) -> Result<(), String> {
    let [p_i, p_j, p_k, p_l] = p;
    let sols = line_case_points(p_i, p_j, p_k, p_l).map_err(|e| format!("{p_i}, {p_j}, {p_k}, {p_l}: {e}"))?;
    check(sols.len() <= 4, || format!("{} solutions for {p_i}, {p_j}, {p_k}, {p_l}", sols.len()))?;
    let sq = |s: &Scalar| s * s;
    for (x, xp) in &sols {
        for (a, b) in [(p_i, p_j), (p_k, p_l)] {
            let lhs = &sq(&(x - &a.x)) + &sq(&a.y);
            let rhs = &sq(&(xp - &b.x)) + &sq(&b.y);
            check(lhs == rhs, || format!("({x}, {xp}) is off the hyperbola of {a}, {b}"))?;
        }
    }
    Ok(())
}

fn line_case(rng: &mut ChaCha8Rng, _: Option<Mutation>) -> Outcome {
    let cases = 200;
    for _ in 0..cases {
        line_case_check(&line_case_quadruple(rng.gen()))?;
    }
    Ok(cases)
}

/// Every brute-force solution on a grid of `u` values, and the built-in
/// solution, satisfies the emitted quadric.
pub(crate) fn constraint_check(sx: &Sextuple) -> Result<usize, String> {
    let [pi, pk, pq, pj, pl, pr] = &sx.points;
    let cc = constraint_conic(pi, pk, pq, pj, pl, pr).map_err(|e| e.to_string())?;
    let q = cc.quadric();
    let (_, uv0) = &sx.solution;
    check(q.eval(&[uv0.x.clone(), uv0.y.clone()]).is_zero(), || format!("{uv0} is off the quadric {q}"))?;
    let poly = cc.normalized_poly();
    let mut seen = 1;
    for num in -8..=8 {
        let u = BigRational::new(num.into(), 2.into());
        for [x, y, u, v] in normalized_solutions(&cc.l, &cc.a, &cc.b, &cc.c, &cc.d, &u) {
            let at = poly.eval(&[u.clone(), v.clone()]);
            check(at.is_zero(), || format!("normalized solution ({x}, {y}, {u}, {v}) gives {at} on {poly}"))?;
            seen += 1;
        }
    }
    Ok(seen)
}

fn constraint(rng: &mut ChaCha8Rng, _: Option<Mutation>) -> Outcome {
    let mut seen = 0;
    for _ in 0..50 {
        seen += constraint_check(&constraint_sextuple(rng.gen()))?;
    }
    Ok(seen)
}

/// `|Γ₀| ≤ 4dm`, at most `d⁴ + 1` classes, and no pair of curves in one
/// class satisfies the same-distance criterion.
pub(crate) fn partition_check(config: &Config) -> Result<(), String> {
    let p = partition(config).map_err(|e| e.to_string())?;
    let (d, m) = (config.degree() as usize, config.m());
    let g = &p.gamma;
    check(g.gamma0.len() <= 4 * d * m, || format!("|Γ₀| = {} > 4dm", g.gamma0.len()))?;
    check(g.within_bound(), || format!("{} classes exceed d⁴ + 1", g.classes.len()))?;
    let pt = |i: usize| config.p(i).map_err(|e| e.to_string());
    for class in &g.classes {
        for (a, &(i, j)) in class.iter().enumerate() {
            for &(k, l) in &class[a + 1..] {
                let (p_i, p_j, p_k, p_l) = (pt(i)?, pt(j)?, pt(k)?, pt(l)?);
                if p_i == p_k || p_i.dist2(p_k) != p_j.dist2(p_l) {
                    continue;
                }
                let r = same_distance_symmetry(config.c2(), p_i, p_j, p_k, p_l).map_err(|e| e.to_string())?;
                check(matches!(r, SameDistance::NoSymmetry), || format!("C_{i}{j} and C_{k}{l} conflict inside one class"))?;
            }
        }
    }
    Ok(())
}

fn partition_invariants(rng: &mut ChaCha8Rng, _: Option<Mutation>) -> Outcome {
    let cases = 6;
    for _ in 0..cases {
        partition_check(&random_cubic_config(rng.gen(), rng.gen_range(2..=6), rng.gen_range(2..=4)))?;
    }
    Ok(cases)
}

fn retention(rng: &mut ChaCha8Rng, _: Option<Mutation>) -> Outcome {
    let circle: Vec<(i64, i64)> = vec![(3, 4), (-3, 4), (3, -4), (-3, -4), (4, 3), (-4, 3), (4, -3), (-4, -3), (5, 0), (-5, 0), (0, 5), (0, -5)];
    let pairs: [(&str, Vec<(i64, i64)>, &str, Vec<(i64, i64)>); 3] = [
        ("x^2 + y^2 - 25", circle.clone(), "y - x^2 + 13", (-6..=6).map(|x| (x, x * x - 13)).collect()),
        ("y - 1", (-8..=8).map(|x| (x, 1)).collect(), "x^2 + y^2 - 25", circle.clone()),
        ("y - x^2", (-6..=6).map(|x| (x, x * x)).collect(), "x - 2", (-6..=6).map(|y| (2, y)).collect()),
    ];
    let mut cases = 0;
    for _ in 0..10 {
        for (c1, v1, c2, v2) in &pairs {
            let pick = |rng: &mut ChaCha8Rng, v: &[(i64, i64)]| -> Vec<Point> {
                let mut out: Vec<Point> = v.iter().filter(|_| rng.gen_bool(0.7)).map(|&(x, y)| Point::from_ints(x, y)).collect();
                if out.is_empty() {
                    out.push(Point::from_ints(v[0].0, v[0].1));
                }
                out
            };
            let (a, b) = (pick(rng, v1), pick(rng, v2));
            let s1 = PointSet::from_points(PlaneCurve::parse(c1).map_err(|e| e.to_string())?, a).map_err(|e| e.to_string())?;
            let s2 = PointSet::from_points(PlaneCurve::parse(c2).map_err(|e| e.to_string())?, b).map_err(|e| e.to_string())?;
            let raw = Config::new(s1, s2);
            let d = raw.degree() as usize;
            let (norm, _) = match normalize_config(&raw) {
                Ok(r) => r,
                Err(ElekesError::ExcludedPair(_)) => continue,
                Err(e) => return Err(e.to_string()),
            };
            for (before, after) in [(raw.m(), norm.m()), (raw.n(), norm.n())] {
                check(after * 4 * d * d >= before, || format!("{c1} / {c2}: kept {after} of {before}"))?;
            }
            cases += 1;
        }
    }
    Ok(cases)
}

fn determinism(_: &mut ChaCha8Rng, _: Option<Mutation>) -> Outcome {
    let s = io::scenario_from_json(
        r#"{"name": "cubic", "regime": "superlinear", "seed": 3, "ladder": [[3, 3], [5, 5], [7, 7]],
            "template": {"curve": "y - x^3", "sampling": {"random": {"bound": 25}}}}"#,
    )
    .map_err(|e| e.to_string())?;
    let a = run_scenario(&s, &Caps::default()).map_err(|e| e.to_string())?;
    let b = run_scenario(&s, &Caps::default()).map_err(|e| e.to_string())?;
    let (ja, jb) = (io::report_to_json(&a), io::report_to_json(&b));
    check(ja == jb, || "JSON reports differ between runs".into())?;
    let (ca, cb) = (io::report_to_csv(&a).map_err(|e| e.to_string())?, io::report_to_csv(&b).map_err(|e| e.to_string())?);
    check(ca == cb, || "CSV reports differ between runs".into())?;
    check(a.invariants_hold, || format!("row invariants fail: {ja}"))?;
    Ok(a.rows.len())
}
