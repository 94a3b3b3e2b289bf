//! Symmetry enumeration by coefficient matching.
//!
//! A rotation or reflection part is written with the half-angle parameter
//! `u`: `c = (1-u²)/(1+u²)`, `s = 2u/(1+u²)`, plus the half-turn `u = ∞`.
//! Clearing denominators, `f(Ap + t) = μ·f(p)` becomes polynomial in `u`.
//! The top-degree form fixes `u` (as roots of a gcd), the next form is linear
//! in `t`, and the full identity is then checked exactly.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{InfiniteKind, Isometry, SymmetryError, SymmetryList, Unrepresentable};
use crate::algebra::linalg::{solve_linear, LinearSolution};
use crate::algebra::{exact_real_roots, eval_interval, vars_of, AlgebraError, AlgebraicReal, ExactRoot, Interval, MPoly, Scalar, UPoly, Vars};
use crate::curves::{xy, PlaneCurve, Point};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SymmetryBudget {
    /// Largest accepted curve degree.
    pub max_degree: u32,
    /// Largest accepted degree of an eliminant in the half-angle parameter.
    pub max_eliminant_degree: usize,
}

impl Default for SymmetryBudget {
    fn default() -> Self {
        SymmetryBudget { max_degree: 6, max_eliminant_degree: 96 }
    }
}

pub fn find_symmetries(c: &PlaneCurve) -> Result<SymmetryList, SymmetryError> {
    find_symmetries_with(c, &SymmetryBudget::default())
}

pub fn find_symmetries_with(curve: &PlaneCurve, budget: &SymmetryBudget) -> Result<SymmetryList, SymmetryError> {
    if curve.is_line() {
        return Ok(SymmetryList::InfiniteFamily {
            kind: InfiniteKind::Line,
            description: format!(
                "{}: translations along the line, reflections in it and in every perpendicular, half-turns about its points",
                curve.poly()
            ),
        });
    }
    if let Some((center, r2)) = curve.circle() {
        return Ok(SymmetryList::InfiniteFamily {
            kind: InfiniteKind::Circle,
            description: format!("center {center}, r^2 = {r2}: all rotations about the center and reflections in lines through it"),
        });
    }
    let f = curve.poly().with_vars(xy())?;
    if !f.is_rational() {
        return Err(AlgebraError::NotRational.into());
    }
    let d = curve.degree();
    if d > budget.max_degree {
        return Err(SymmetryError::Budget { what: "curve degree", limit: budget.max_degree as usize, actual: d as usize });
    }
    let mut s = Solver { curve, f, d, budget, group: Vec::new(), unrep: Vec::new() };
    if s.rotation_invariant_top() {
        s.centered()?;
    } else {
        s.general()?;
    }
    let mut group = s.group;
    group.sort_by(|a, b| {
        (a.kind(), -a.sigma(), a.c(), a.s(), &a.translation()[0], &a.translation()[1]).cmp(&(
            b.kind(),
            -b.sigma(),
            b.c(),
            b.s(),
            &b.translation()[0],
            &b.translation()[1],
        ))
    });
    Ok(SymmetryList::Finite { group, unrepresentable: s.unrep })
}

fn xyu() -> &'static Vars {
    static V: OnceLock<Vars> = OnceLock::new();
    V.get_or_init(|| vars_of(&["x", "y", "u"]))
}

fn xyt() -> &'static Vars {
    static V: OnceLock<Vars> = OnceLock::new();
    V.get_or_init(|| vars_of(&["x", "y", "t"]))
}

fn konst(vars: &Vars, s: Scalar) -> MPoly {
    MPoly::constant_in(vars, s)
}

/// `1 + u²` in `(x, y, u)`.
fn one_plus_u2() -> MPoly {
    let u = MPoly::var_in(xyu(), 2);
    u.mul(&u).add(&konst(xyu(), Scalar::one()))
}

/// `Ã(u)·(x, y)` with `A = Ã/(1+u²)`.
fn half_angle_images(sigma: i8) -> [MPoly; 2] {
    let v = xyu();
    let (x, y, u) = (MPoly::var_in(v, 0), MPoly::var_in(v, 1), MPoly::var_in(v, 2));
    let one = konst(v, Scalar::one());
    let sg = konst(v, Scalar::from_int(sigma as i64));
    let two = konst(v, Scalar::from_int(2));
    let om = one.sub(&u.mul(&u));
    [x.mul(&om).sub(&sg.mul(&two).mul(&u).mul(&y)), two.mul(&u).mul(&x).add(&sg.mul(&om).mul(&y))]
}

/// Coefficients with respect to `(x, y)`, as univariate polynomials in the
/// third variable.
fn coeff_polys(g: &MPoly) -> Vec<(Vec<u32>, UPoly)> {
    g.group_by(&[0, 1]).into_iter().map(|(k, c)| (k, c.to_upoly(2).expect("only the third variable remains"))).collect()
}

fn gcd_all<'a>(polys: impl IntoIterator<Item = &'a UPoly>, var: &str) -> UPoly {
    polys.into_iter().fold(UPoly::zero(var), |acc, p| acc.gcd(p))
}

fn coeff_of(map: &[(Vec<u32>, UPoly)], key: &[u32], var: &str) -> UPoly {
    map.iter().find(|(k, _)| k == key).map(|(_, p)| p.clone()).unwrap_or_else(|| UPoly::zero(var))
}

fn matrix(c: &Scalar, s: &Scalar, sigma: i8) -> [[Scalar; 2]; 2] {
    let sg = Scalar::from_int(sigma as i64);
    [[c.clone(), -&(&sg * s)], [s.clone(), &sg * c]]
}

/// `(x, y) ↦ A·(x, y) + t` as images in `vars` (first two variables).
fn linear_images(vars: &Vars, m: &[[Scalar; 2]; 2], t: [&MPoly; 2]) -> [MPoly; 2] {
    let (x, y) = (MPoly::var_in(vars, 0), MPoly::var_in(vars, 1));
    let row = |r: &[Scalar; 2], tt: &MPoly| x.scale(&r[0]).add(&y.scale(&r[1])).add(tt);
    [row(&m[0], t[0]), row(&m[1], t[1])]
}

fn half_angle_cs(u: &Scalar) -> (Scalar, Scalar) {
    let one = Scalar::one();
    let u2 = u * u;
    let den = (&one + &u2).inv().expect("1 + u^2 > 0");
    (&(&one - &u2) * &den, &(&Scalar::from_int(2) * u) * &den)
}

/// Encloses `num(α)/den(α)` in an interval narrower than 2^-40.
fn ratio_box(alpha: &AlgebraicReal, num: &UPoly, den: &UPoly) -> Interval {
    let eps = BigRational::new(BigInt::one(), BigInt::one() << 40u32);
    let mut a = alpha.clone();
    for _ in 0..400 {
        let iv = a.bounds();
        let dn = eval_interval(den, &iv);
        if let Some(r) = dn.recip() {
            let q = eval_interval(num, &iv).mul(&r);
            if q.width() < eps || iv.width().is_zero() {
                return q;
            }
        }
        let w = iv.width() / BigRational::from_integer(BigInt::from(4));
        a.refine_to(&w);
    }
    let iv = a.bounds();
    eval_interval(num, &iv).mul(&eval_interval(den, &iv).recip().expect("denominator is nonzero at the root"))
}

fn scalar_box(s: &Scalar) -> Interval {
    Interval::of_scalar(s, &BigRational::new(BigInt::one(), BigInt::one() << 40u32))
}

fn describe(alpha: &AlgebraicReal, name: &str) -> String {
    format!("{name} is the root of {} in {}", alpha.poly().with_var(name), alpha.bounds())
}

struct Solver<'a> {
    curve: &'a PlaneCurve,
    f: MPoly,
    d: u32,
    budget: &'a SymmetryBudget,
    group: Vec<Isometry>,
    unrep: Vec<Unrepresentable>,
}

impl Solver<'_> {
    fn part(&self, j: u32) -> MPoly {
        self.f.homogeneous_part(j)
    }

    fn rotation_invariant_top(&self) -> bool {
        if self.d % 2 == 1 {
            return false;
        }
        let v = xy();
        let r2 = MPoly::var_in(v, 0).pow(2).add(&MPoly::var_in(v, 1).pow(2));
        r2.pow(self.d / 2).proportional_to(&self.part(self.d)).is_some()
    }

    fn check_eliminant(&self, h: &UPoly) -> Result<(), SymmetryError> {
        let deg = h.degree().unwrap_or(0);
        if deg > self.budget.max_eliminant_degree {
            return Err(SymmetryError::Budget {
                what: "eliminant degree",
                limit: self.budget.max_eliminant_degree,
                actual: deg,
            });
        }
        Ok(())
    }

    /// Adds `p ↦ A·p + t` if it is an exact symmetry not yet listed.
    fn push(&mut self, c: Scalar, s: Scalar, sigma: i8, t: [Scalar; 2]) {
        let iso = match Isometry::new(c.clone(), s.clone(), sigma, t.clone()) {
            Ok(iso) => iso,
            Err(_) => {
                // entries from two different quadratic fields
                self.unrep.push(Unrepresentable {
                    sigma,
                    c: scalar_box(&c),
                    s: scalar_box(&s),
                    translation: [scalar_box(&t[0]), scalar_box(&t[1])],
                    defining: "entries lie in different quadratic fields".into(),
                });
                return;
            }
        };
        if !self.group.contains(&iso) && iso.fixes(self.curve) {
            self.group.push(iso);
        }
    }

    /// Leading form has no continuous symmetry: `u` comes from the top form
    /// and `t` from the next one.
    fn general(&mut self) -> Result<(), SymmetryError> {
        let fd = self.part(self.d).with_vars(xyu())?;
        let w = one_plus_u2().pow(self.d);
        for sigma in [1i8, -1] {
            let imgs = half_angle_images(sigma);
            let top = self.part(self.d).compose(&imgs);
            for mu in [1i8, -1] {
                let e = top.sub(&w.mul(&fd).scale(&Scalar::from_int(mu as i64)));
                let h = gcd_all(coeff_polys(&e).iter().map(|(_, p)| p), "u");
                if h.is_zero() {
                    return Err(SymmetryError::ContinuousFamily("leading form is invariant under all rotations".into()));
                }
                self.check_eliminant(&h)?;
                if h.degree().unwrap_or(0) > 0 {
                    for r in exact_real_roots(&h)? {
                        match r {
                            ExactRoot::Rational(q) => {
                                let (c, s) = half_angle_cs(&Scalar::from_rational(q));
                                self.with_matrix(c, s, sigma, mu)?;
                            }
                            ExactRoot::Quadratic(u) => {
                                let (c, s) = half_angle_cs(&u);
                                self.with_matrix(c, s, sigma, mu)?;
                            }
                            ExactRoot::Other(alpha) => self.general_algebraic(&alpha, sigma, mu)?,
                        }
                    }
                }
                // u = ∞: c = -1, s = 0
                let m = matrix(&-Scalar::one(), &Scalar::zero(), sigma);
                let z = MPoly::zero_in(xy());
                let moved = self.part(self.d).compose(&linear_images(xy(), &m, [&z, &z]));
                if moved == self.part(self.d).scale(&Scalar::from_int(mu as i64)) {
                    self.with_matrix(-Scalar::one(), Scalar::zero(), sigma, mu)?;
                }
            }
        }
        Ok(())
    }

    /// Solves for the translation once the linear part is known exactly.
    fn with_matrix(&mut self, c: Scalar, s: Scalar, sigma: i8, mu: i8) -> Result<(), SymmetryError> {
        let d = self.d;
        let m = matrix(&c, &s, sigma);
        let z = MPoly::zero_in(xy());
        let imgs = linear_images(xy(), &m, [&z, &z]);
        let fd = self.part(d);
        let gx = fd.derivative(0).compose(&imgs);
        let gy = fd.derivative(1).compose(&imgs);
        let low = self.part(d - 1);
        let r = low.compose(&imgs).sub(&low.scale(&Scalar::from_int(mu as i64)));
        let mut a = Vec::new();
        let mut b = Vec::new();
        for i in 0..d {
            let key = [i, d - 1 - i];
            a.push(vec![gx.coeff(&key), gy.coeff(&key)]);
            b.push(-r.coeff(&key));
        }
        match solve_linear(&a, &b)? {
            LinearSolution::Inconsistent => Ok(()),
            LinearSolution::Affine { particular, kernel } => match kernel.len() {
                0 => {
                    self.push(c, s, sigma, [particular[0].clone(), particular[1].clone()]);
                    Ok(())
                }
                1 => self.translation_line(c, s, sigma, mu, &particular, &kernel[0]),
                _ => Err(SymmetryError::ContinuousFamily("leading form is constant".into())),
            },
        }
    }

    /// The leading form is a power of a linear form, so the translation is
    /// only known up to `t0 + τ·v`; `τ` comes from the full identity.
    fn translation_line(&mut self, c: Scalar, s: Scalar, sigma: i8, mu: i8, t0: &[Scalar], v: &[Scalar]) -> Result<(), SymmetryError> {
        let vars = xyt();
        let tau = MPoly::var_in(vars, 2);
        let m = matrix(&c, &s, sigma);
        let tx = konst(vars, t0[0].clone()).add(&tau.scale(&v[0]));
        let ty = konst(vars, t0[1].clone()).add(&tau.scale(&v[1]));
        let moved = self.f.compose(&linear_images(vars, &m, [&tx, &ty]));
        let e = moved.sub(&self.f.with_vars(vars)?.scale(&Scalar::from_int(mu as i64)));
        let g = gcd_all(coeff_polys(&e).iter().map(|(_, p)| p), "t");
        if g.is_zero() {
            return Err(SymmetryError::ContinuousFamily(format!("invariant under translations along ({}, {})", v[0], v[1])));
        }
        if g.degree().unwrap_or(0) == 0 {
            return Ok(());
        }
        self.check_eliminant(&g)?;
        let roots = if g.is_rational() {
            exact_real_roots(&g)?
        } else {
            AlgebraicReal::roots_of(&g)?.into_iter().map(ExactRoot::Other).collect()
        };
        for r in roots {
            let step = match r {
                ExactRoot::Rational(q) => Scalar::from_rational(q),
                ExactRoot::Quadratic(q) => q,
                ExactRoot::Other(beta) => {
                    let one = UPoly::constant("t", Scalar::one());
                    let b = ratio_box(&beta, &UPoly::x("t"), &one);
                    let along = |k: usize| scalar_box(&t0[k]).add(&b.mul(&scalar_box(&v[k])));
                    let (tx, ty) = (along(0), along(1));
                    self.unrep.push(Unrepresentable {
                        sigma,
                        c: scalar_box(&c),
                        s: scalar_box(&s),
                        translation: [tx, ty],
                        defining: format!("translation t0 + tau*v, t0 = ({}, {}), v = ({}, {}); {}", t0[0], t0[1], v[0], v[1], describe(&beta, "tau")),
                    });
                    continue;
                }
            };
            let t = (|| -> Result<[Scalar; 2], AlgebraError> {
                Ok([t0[0].checked_add(&step.checked_mul(&v[0])?)?, t0[1].checked_add(&step.checked_mul(&v[1])?)?])
            })();
            match t {
                Ok(t) => self.push(c.clone(), s.clone(), sigma, t),
                Err(_) => self.unrep.push(Unrepresentable {
                    sigma,
                    c: scalar_box(&c),
                    s: scalar_box(&s),
                    translation: [
                        scalar_box(&t0[0]).add(&scalar_box(&step).mul(&scalar_box(&v[0]))),
                        scalar_box(&t0[1]).add(&scalar_box(&step).mul(&scalar_box(&v[1]))),
                    ],
                    defining: format!("translation step {step} and linear part lie in different quadratic fields"),
                }),
            }
        }
        Ok(())
    }

    /// `u` of degree at least three: the translation is a rational function
    /// of `u` (Cramer's rule), and the identity is checked at `u = α`.
    fn general_algebraic(&mut self, alpha: &AlgebraicReal, sigma: i8, mu: i8) -> Result<(), SymmetryError> {
        let d = self.d;
        let imgs = half_angle_images(sigma);
        let fd = self.part(d);
        let w1 = one_plus_u2();
        let mu_s = Scalar::from_int(mu as i64);
        let m1 = coeff_polys(&fd.derivative(0).compose(&imgs));
        let m2 = coeff_polys(&fd.derivative(1).compose(&imgs));
        let low = self.part(d - 1);
        let r = coeff_polys(
            &low.compose(&imgs).mul(&w1).sub(&w1.pow(d).mul(&low.with_vars(xyu())?).scale(&mu_s)),
        );
        let rows: Vec<[UPoly; 3]> = (0..d)
            .map(|i| {
                let key = [i, d - 1 - i];
                [coeff_of(&m1, &key, "u"), coeff_of(&m2, &key, "u"), coeff_of(&r, &key, "u")]
            })
            .collect();
        let mut pick = None;
        'outer: for i in 0..rows.len() {
            for j in i + 1..rows.len() {
                let det = rows[i][0].mul(&rows[j][1]).sub(&rows[i][1].mul(&rows[j][0]));
                if alpha.sign_of(&det) != 0 {
                    pick = Some((i, j, det));
                    break 'outer;
                }
            }
        }
        // a rank-one system means the leading form is a power of a rational
        // linear form, whose symmetries all have rational linear part
        let Some((i, j, det)) = pick else { return Ok(()) };
        let (ri, rj) = (&rows[i], &rows[j]);
        let n1 = rj[2].mul(&ri[1]).sub(&ri[2].mul(&rj[1]));
        let n2 = ri[2].mul(&rj[0]).sub(&rj[2].mul(&ri[0]));

        let lift = |p: &UPoly| MPoly::from_upoly_in(xyu(), 2, p);
        let det_m = lift(&det);
        let p = [imgs[0].mul(&det_m).add(&lift(&n1)), imgs[1].mul(&det_m).add(&lift(&n2))];
        let q = det_m.mul(&w1);
        let mut total = w1.pow(d).mul(&det_m.pow(d)).mul(&self.f.with_vars(xyu())?).scale(&-mu_s);
        for k in 0..=d {
            let fk = self.part(k);
            if !fk.is_zero() {
                total = total.add(&fk.compose(&p).mul(&q.pow(d - k)));
            }
        }
        if !coeff_polys(&total).iter().all(|(_, c)| alpha.is_root_of(c)) {
            return Ok(());
        }
        let u = UPoly::x("u");
        let one = UPoly::constant("u", Scalar::one());
        let den = one.add(&u.mul(&u));
        let tden = det.mul(&den);
        self.unrep.push(Unrepresentable {
            sigma,
            c: ratio_box(alpha, &one.sub(&u.mul(&u)), &den),
            s: ratio_box(alpha, &u.scale(&Scalar::from_int(2)), &den),
            translation: [ratio_box(alpha, &n1, &tden), ratio_box(alpha, &n2, &tden)],
            defining: describe(alpha, "u"),
        });
        Ok(())
    }

    /// Leading form `κ(x²+y²)^k`: every symmetry fixes one center, found by
    /// cancelling the `(x²+y²)^(k-1)·linear` component of the next form.
    fn centered(&mut self) -> Result<(), SymmetryError> {
        let d = self.d;
        let k = d / 2;
        let lap = |p: &MPoly| p.derivative(0).derivative(0).add(&p.derivative(1).derivative(1));
        let iterate = |p: MPoly| (1..k).fold(p, |acc, _| lap(&acc));
        let fd = self.part(d);
        let l = iterate(self.part(d - 1));
        let beta = iterate(fd.derivative(0)).coeff(&[1, 0]);
        let binv = beta.inv()?;
        let center = Point::new(-&(&l.coeff(&[1, 0]) * &binv), -&(&l.coeff(&[0, 1]) * &binv));
        let v = xy();
        let shift = [
            MPoly::var_in(v, 0).add(&konst(v, center.x.clone())),
            MPoly::var_in(v, 1).add(&konst(v, center.y.clone())),
        ];
        let g = self.f.compose(&shift);
        let w1 = one_plus_u2();
        for sigma in [1i8, -1] {
            let imgs = half_angle_images(sigma);
            let mut polys = Vec::new();
            for j in 1..d {
                let gj = g.homogeneous_part(j);
                if gj.is_zero() {
                    continue;
                }
                let e = gj.compose(&imgs).sub(&w1.pow(j).mul(&gj.with_vars(xyu())?));
                polys.extend(coeff_polys(&e).into_iter().map(|(_, p)| p));
            }
            let h = gcd_all(&polys, "u");
            if h.is_zero() {
                return Err(SymmetryError::ContinuousFamily(format!("invariant under all rotations about {center}")));
            }
            self.check_eliminant(&h)?;
            if h.degree().unwrap_or(0) > 0 {
                for r in exact_real_roots(&h)? {
                    match r {
                        ExactRoot::Rational(q) => {
                            let (c, s) = half_angle_cs(&Scalar::from_rational(q));
                            self.push_about(&center, c, s, sigma);
                        }
                        ExactRoot::Quadratic(u) => {
                            let (c, s) = half_angle_cs(&u);
                            self.push_about(&center, c, s, sigma);
                        }
                        ExactRoot::Other(alpha) => {
                            let u = UPoly::x("u");
                            let one = UPoly::constant("u", Scalar::one());
                            let den = one.add(&u.mul(&u));
                            let cb = ratio_box(&alpha, &one.sub(&u.mul(&u)), &den);
                            let sb = ratio_box(&alpha, &u.scale(&Scalar::from_int(2)), &den);
                            // t = center - A·center
                            let sg = BigRational::from_integer(BigInt::from(sigma));
                            let (px, py) = (center.x.as_rational().cloned().unwrap(), center.y.as_rational().cloned().unwrap());
                            let ax = cb.scale(&px).sub(&sb.scale(&(&sg * &py)));
                            let ay = sb.scale(&px).add(&cb.scale(&(&sg * &py)));
                            self.unrep.push(Unrepresentable {
                                sigma,
                                c: cb,
                                s: sb,
                                translation: [Interval::point(px).sub(&ax), Interval::point(py).sub(&ay)],
                                defining: describe(&alpha, "u"),
                            });
                        }
                    }
                }
            }
            let m = matrix(&-Scalar::one(), &Scalar::zero(), sigma);
            let z = MPoly::zero_in(v);
            if g.compose(&linear_images(v, &m, [&z, &z])) == g {
                self.push_about(&center, -Scalar::one(), Scalar::zero(), sigma);
            }
        }
        Ok(())
    }

    fn push_about(&mut self, center: &Point, c: Scalar, s: Scalar, sigma: i8) {
        let m = matrix(&c, &s, sigma);
        let ax = &(&m[0][0] * &center.x) + &(&m[0][1] * &center.y);
        let ay = &(&m[1][0] * &center.x) + &(&m[1][1] * &center.y);
        self.push(c, s, sigma, [&center.x - &ax, &center.y - &ay]);
    }
}

#[cfg(test)]
mod tests {
    use super::super::IsometryKind;
    use super::*;

    fn curve(t: &str) -> PlaneCurve {
        PlaneCurve::parse(t).unwrap()
    }

    fn group(t: &str) -> Vec<Isometry> {
        match find_symmetries(&curve(t)).unwrap() {
            SymmetryList::Finite { group, unrepresentable } => {
                assert!(unrepresentable.is_empty(), "{t}: {unrepresentable:?}");
                group
            }
            other => panic!("{t}: {other:?}"),
        }
    }

    #[test]
    fn fermat_quartic_has_eight() {
        let g = group("x^4 + y^4 - 1");
        assert_eq!(g.len(), 8);
        assert_eq!(g.iter().filter(|i| i.sigma() == -1).count(), 4);
        assert_eq!(g[0].kind(), IsometryKind::Identity);
    }

    #[test]
    fn elliptic_curve_has_one_reflection() {
        let g = group("y^2 - x^3 + x");
        assert_eq!(g.len(), 2);
        assert_eq!(g[1].matrix(), matrix(&Scalar::one(), &Scalar::zero(), -1));
    }

    #[test]
    fn infinite_families() {
        assert!(matches!(
            find_symmetries(&curve("x^2 + y^2 - 4*x")).unwrap(),
            SymmetryList::InfiniteFamily { kind: InfiniteKind::Circle, .. }
        ));
        assert!(matches!(
            find_symmetries(&curve("2*x - y + 1")).unwrap(),
            SymmetryList::InfiniteFamily { kind: InfiniteKind::Line, .. }
        ));
    }

    #[test]
    fn translated_and_rotated_curves() {
        // parabola with axis x = 1
        let g = group("y - x^2 + 2*x");
        assert_eq!(g.len(), 2);
        assert_eq!(g[1].translation(), &[Scalar::from_int(2), Scalar::zero()]);
        // cubic with centre of symmetry (1, 2)
        let g = group("y - 2 - (x - 1)^3");
        assert_eq!(g.len(), 2);
        assert_eq!(g[1].kind(), IsometryKind::Rotation);
        // hyperbola: the Klein four-group plus nothing else
        assert_eq!(group("x*y - 1").len(), 4);
        // ellipse with irrational axes ratio, off-centre
        assert_eq!(group("(x-1)^2 + 2*(y+3)^2 - 5").len(), 4);
    }

    #[test]
    fn rotation_invariant_leading_form() {
        // (x²+y²)² + x³ - 3xy²: threefold symmetry with entries in ℚ(√3)
        let g = group("(x^2 + y^2)^2 + x^3 - 3*x*y^2 - 1");
        assert_eq!(g.len(), 6);
        assert!(g.iter().any(|i| !i.c().is_rational() || !i.s().is_rational()));
        for a in &g {
            for b in &g {
                assert!(g.contains(&a.compose(b)));
            }
        }
        assert!(matches!(
            find_symmetries(&curve("(x^2 + y^2)^2 - 2")),
            Err(SymmetryError::ContinuousFamily(_))
        ));
    }

    #[test]
    fn fivefold_symmetry_is_reported_as_unrepresentable() {
        // Re((x+iy)^5) = 1
        let c = curve("x^5 - 10*x^3*y^2 + 5*x*y^4 - 1");
        let SymmetryList::Finite { group, unrepresentable } = find_symmetries(&c).unwrap() else { panic!() };
        assert_eq!(group.len() + unrepresentable.len(), 10);
        assert!(group.len() >= 2);
        assert!(unrepresentable.len() >= 4);
    }

    #[test]
    fn parallel_lines_are_a_continuous_family() {
        assert!(matches!(find_symmetries(&curve("x^2 - 2")), Err(SymmetryError::ContinuousFamily(_))));
    }

    #[test]
    fn budget_is_explicit() {
        let c = curve("y - x^7");
        assert!(matches!(find_symmetries(&c), Err(SymmetryError::Budget { .. })));
        let b = SymmetryBudget { max_degree: 7, ..Default::default() };
        assert!(find_symmetries_with(&c, &b).is_ok());
    }
}
