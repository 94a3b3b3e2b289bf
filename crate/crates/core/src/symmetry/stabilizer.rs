//! Affine maps fixing a conic, in closed form for the normal forms
//! `y² + sxy = t`, `s²x² + t²y² = 1` and `y = sx²`.

use num_traits::{One, Zero};

use super::{AffineMap, SymmetryError};
use crate::algebra::{MPoly, Scalar};
use crate::curves::{classify_conic, xy, ConicClass, PlaneCurve};

/// A conic in normal form, scaled so the listed coefficients are exact.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConicNormalForm {
    /// `y² + s·xy = t`, `s, t ≠ 0`.
    Hyperbola { s: Scalar, t: Scalar },
    /// `xy = t`: the hyperbola above after the shear `(x, y) ↦ (sx + y, y)`;
    /// a rotation cannot reach the first form when the asymptotes are
    /// perpendicular.
    Rectangular { t: Scalar },
    /// `a·x² + b·y² = 1` with `a = s²`, `b = t²` positive.
    Ellipse { a: Scalar, b: Scalar },
    /// `y = s·x²`.
    Parabola { s: Scalar },
}

/// Family member selector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StabilizerParam {
    /// `r ≠ 0`; `second` picks `(-rx - (r²-1)/(rs)·y, rsx + ry)` instead of
    /// `(rx + (r²-1)/(rs)·y, y/r)`.
    Hyperbola { r: Scalar, second: bool },
    /// A rational-Pythagorean (or quadratic) pair with `cos² + sin² = 1`;
    /// `upper` selects the `±`/`∓` signs.
    Ellipse { cos: Scalar, sin: Scalar, upper: bool },
    /// Shift `c` with `plus` selecting `±`.
    Parabola { c: Scalar, plus: bool },
}

/// The six coefficients `A x² + B xy + C y² + D x + E y + F`.
fn coefficients(f: &MPoly) -> [Scalar; 6] {
    [[2, 0], [1, 1], [0, 2], [1, 0], [0, 1], [0, 0]].map(|e| f.coeff(&e))
}

/// Recognizes a normal form up to a nonzero scalar multiple.
pub fn normal_form(c: &PlaneCurve) -> Result<ConicNormalForm, SymmetryError> {
    let f = c.poly().with_vars(xy())?;
    if c.degree() != 2 {
        return Err(SymmetryError::NotNormalForm(format!("degree {} is not a conic", c.degree())));
    }
    let [a, b, cc, d, e, g] = coefficients(&f);
    let nz = |v: &[&Scalar]| v.iter().map(|s| !s.is_zero()).collect::<Vec<_>>();
    let err = || SymmetryError::NotNormalForm(format!("{}", c.poly()));
    match nz(&[&a, &b, &cc, &d, &e, &g])[..] {
        [false, true, true, false, false, true] => {
            let inv = cc.inv()?;
            Ok(ConicNormalForm::Hyperbola { s: &b * &inv, t: -&(&g * &inv) })
        }
        [false, true, false, false, false, true] => Ok(ConicNormalForm::Rectangular { t: -&(&g * &b.inv()?) }),
        [true, false, true, false, false, true] => {
            let inv = -g.inv()?;
            let (aa, bb) = (&a * &inv, &cc * &inv);
            if aa.signum() > 0 && bb.signum() > 0 {
                Ok(ConicNormalForm::Ellipse { a: aa, b: bb })
            } else {
                Err(err())
            }
        }
        [true, false, false, false, true, false] => Ok(ConicNormalForm::Parabola { s: -&(&a * &e.inv()?) }),
        _ => Err(err()),
    }
}

fn map(m: [[Scalar; 2]; 2], t: [Scalar; 2]) -> Result<AffineMap, SymmetryError> {
    AffineMap::new(m, t)
}

/// The member of the affine stabilizer of a normal-form conic selected by
/// `param`.
pub fn conic_stabilizer(c: &PlaneCurve, param: &StabilizerParam) -> Result<AffineMap, SymmetryError> {
    let form = normal_form(c)?;
    stabilizer_of(&form, param)
}

pub fn stabilizer_of(form: &ConicNormalForm, param: &StabilizerParam) -> Result<AffineMap, SymmetryError> {
    let zero = || Scalar::zero();
    let one = Scalar::one();
    match (form, param) {
        (ConicNormalForm::Hyperbola { s, .. }, StabilizerParam::Hyperbola { r, second }) => {
            if r.is_zero() {
                return Err(SymmetryError::InvalidParameter("r must be nonzero".into()));
            }
            let r_inv = r.inv()?;
            let k = r.checked_mul(r)?.checked_sub(&one)?.checked_div(&r.checked_mul(s)?)?;
            if *second {
                map([[-r, -&k], [r.checked_mul(s)?, r.clone()]], [zero(), zero()])
            } else {
                map([[r.clone(), k], [zero(), r_inv]], [zero(), zero()])
            }
        }
        (ConicNormalForm::Rectangular { .. }, StabilizerParam::Hyperbola { r, second }) => {
            if r.is_zero() {
                return Err(SymmetryError::InvalidParameter("r must be nonzero".into()));
            }
            let r_inv = r.inv()?;
            if *second {
                map([[zero(), r_inv], [r.clone(), zero()]], [zero(), zero()])
            } else {
                map([[r.clone(), zero()], [zero(), r_inv]], [zero(), zero()])
            }
        }
        (ConicNormalForm::Ellipse { a, b }, StabilizerParam::Ellipse { cos, sin, upper }) => {
            if !cos.checked_mul(cos)?.checked_add(&sin.checked_mul(sin)?)?.is_one() {
                return Err(SymmetryError::InvalidParameter("cos^2 + sin^2 must equal 1".into()));
            }
            // t/s = sqrt(b/a)
            let ratio = b.checked_div(a)?;
            let ts = match ratio.as_rational() {
                Some(q) => Scalar::sqrt_rational(q)?,
                None => return Err(SymmetryError::InvalidParameter("axis ratio is not rational".into())),
            };
            let st = ts.inv()?;
            let sg = if *upper { one.clone() } else { -one.clone() };
            map(
                [
                    [cos.clone(), sg.checked_mul(&ts)?.checked_mul(sin)?],
                    [st.checked_mul(sin)?, -&sg.checked_mul(cos)?],
                ],
                [zero(), zero()],
            )
        }
        (ConicNormalForm::Parabola { s }, StabilizerParam::Parabola { c, plus }) => {
            let sg = if *plus { one.clone() } else { -one.clone() };
            let two = Scalar::from_int(2);
            map(
                [[sg.clone(), zero()], [sg.checked_mul(&two)?.checked_mul(s)?.checked_mul(c)?, one.clone()]],
                [c.clone(), s.checked_mul(c)?.checked_mul(c)?],
            )
        }
        _ => Err(SymmetryError::InvalidParameter(format!("parameter {param:?} does not match {form:?}"))),
    }
}

/// A map `Q` with `f ∘ Q` in normal form, so `Q⁻¹` carries the conic onto
/// the normal form. Only rotations with rational cosine and sine are used.
pub fn reduce_conic(c: &PlaneCurve) -> Result<(AffineMap, PlaneCurve), SymmetryError> {
    let class = classify_conic(c)?;
    let f = c.poly().with_vars(xy())?;
    if !f.is_rational() {
        return Err(SymmetryError::NotNormalForm("coefficients must be rational".into()));
    }
    let [a, b, cc, ..] = coefficients(&f);
    let unit = |d: [Scalar; 2]| -> Option<[Scalar; 2]> {
        let n2 = &(&d[0] * &d[0]) + &(&d[1] * &d[1]);
        let n = Scalar::sqrt_rational(n2.as_rational()?).ok()?;
        if !n.is_rational() {
            return None;
        }
        let inv = n.inv().ok()?;
        Some([&d[0] * &inv, &d[1] * &inv])
    };
    let rot = |u: &[Scalar; 2]| [[u[0].clone(), -&u[1]], [u[1].clone(), u[0].clone()]];
    let two = Scalar::from_int(2);
    // direction that the rotation sends to the x-axis (cos, sin)
    let candidates: Vec<[Scalar; 2]> = match class {
        ConicClass::Hyperbola => {
            // asymptote directions: A + B m + C m² = 0 with m = d2/d1, or d1 = 0
            let mut v = Vec::new();
            if a.is_zero() {
                v.push([Scalar::one(), Scalar::zero()]);
            }
            if cc.is_zero() {
                v.push([Scalar::zero(), Scalar::one()]);
                if !a.is_zero() {
                    v.push([b.clone(), -a.clone()]);
                }
            } else {
                let disc = &(&b * &b) - &(&(&Scalar::from_int(4) * &a) * &cc);
                if let Some(q) = disc.as_rational() {
                    if let Ok(r) = Scalar::sqrt_rational(q) {
                        if r.is_rational() {
                            let den = &two * &cc;
                            for sg in [1, -1] {
                                let m = &(&-&b + &(&Scalar::from_int(sg) * &r)) * &den.inv()?;
                                v.push([Scalar::one(), m]);
                            }
                        }
                    }
                }
            }
            v
        }
        ConicClass::Ellipse { .. } => {
            if b.is_zero() {
                vec![[Scalar::one(), Scalar::zero()]]
            } else {
                // eigenvectors (B/2, λ - A) of the quadratic form
                let disc = &(&(&a - &cc) * &(&a - &cc)) + &(&b * &b);
                let mut v = Vec::new();
                if let Some(q) = disc.as_rational() {
                    if let Ok(r) = Scalar::sqrt_rational(q) {
                        if r.is_rational() {
                            for sg in [1, -1] {
                                let lam = &(&(&a + &cc) + &(&Scalar::from_int(sg) * &r)) * &Scalar::from_ratio(1, 2);
                                v.push([&b * &Scalar::from_ratio(1, 2), &lam - &a]);
                            }
                        }
                    }
                }
                v
            }
        }
        ConicClass::Parabola => {
            // the null direction must become the y-axis
            let null = if a.is_zero() { [Scalar::one(), Scalar::zero()] } else { [-&(&b * &(&two * &a).inv()?), Scalar::one()] };
            vec![[null[1].clone(), -&null[0]]]
        }
        ConicClass::Degenerate(k) => return Err(SymmetryError::NotNormalForm(format!("degenerate conic ({k:?})"))),
    };
    let mut last = String::from("no rational axis direction");
    for d in candidates {
        let Some(u) = unit(d.clone()) else {
            last = format!("direction ({}, {}) has irrational length", d[0], d[1]);
            continue;
        };
        let q0 = AffineMap::linear(rot(&u))?;
        let g = q0.substitute(&f)?;
        let shift = centering(&g)?;
        let q = q0.compose(&shift);
        let h = q.substitute(&f)?;
        let curve = PlaneCurve::from_poly(h)?;
        if normal_form(&curve).is_ok() {
            return Ok((q, curve));
        }
        last = format!("rotation ({}, {}) does not reach a normal form", u[0], u[1]);
    }
    Err(SymmetryError::UnsupportedRotation(last))
}

/// Translation removing the linear terms (and, for a parabola, the constant).
fn centering(g: &MPoly) -> Result<AffineMap, SymmetryError> {
    let [a, b, c, d, e, f] = coefficients(g);
    let two = Scalar::from_int(2);
    let z = Scalar::zero();
    let t = if !b.is_zero() {
        // B·xy + C·y² + D·x + E·y: x-term needs B·k + D = 0, y-term B·h + 2C·k + E = 0
        let k = -&(&d * &b.inv()?);
        let h = -&(&(&e + &(&(&two * &c) * &k)) * &b.inv()?);
        [h, k]
    } else if !a.is_zero() && !c.is_zero() {
        [-&(&d * &(&two * &a).inv()?), -&(&e * &(&two * &c).inv()?)]
    } else if !a.is_zero() && !e.is_zero() {
        let h = -&(&d * &(&two * &a).inv()?);
        // constant after x ↦ x + h is A h² + D h + F; remove with y ↦ y + k
        let rest = &(&(&a * &h) * &h) + &(&(&d * &h) + &f);
        [h, -&(&rest * &e.inv()?)]
    } else {
        [z.clone(), z]
    };
    Ok(AffineMap::translation(t))
}

/// Stabilizer member of an arbitrary conic reducible by a rational rotation:
/// `Q ∘ T ∘ Q⁻¹` where `T` fixes the normal form `f ∘ Q`.
pub fn conic_stabilizer_general(c: &PlaneCurve, param: &StabilizerParam) -> Result<AffineMap, SymmetryError> {
    let (q, normal) = reduce_conic(c)?;
    let t = conic_stabilizer(&normal, param)?;
    Ok(q.compose(&t).compose(&q.inverse()?))
}

#[cfg(test)]
mod tests {
    use super::super::fixes_curve;
    use super::*;

    fn curve(t: &str) -> PlaneCurve {
        PlaneCurve::parse(t).unwrap()
    }

    fn q(n: i64, d: i64) -> Scalar {
        Scalar::from_ratio(n, d)
    }

    #[test]
    fn hyperbola_example() {
        let c = curve("y^2 + x*y - 1");
        let t = conic_stabilizer(&c, &StabilizerParam::Hyperbola { r: q(2, 1), second: false }).unwrap();
        assert_eq!(t.matrix, [[q(2, 1), q(3, 2)], [q(0, 1), q(1, 2)]]);
        assert!(fixes_curve(&t, &c));
        let t2 = conic_stabilizer(&c, &StabilizerParam::Hyperbola { r: q(2, 1), second: true }).unwrap();
        assert_eq!(t2.matrix, [[q(-2, 1), q(-3, 2)], [q(2, 1), q(2, 1)]]);
        assert!(fixes_curve(&t2, &c));
    }

    #[test]
    fn ellipse_example() {
        let c = curve("4*x^2 + 9*y^2 - 1");
        let p = StabilizerParam::Ellipse { cos: q(3, 5), sin: q(4, 5), upper: true };
        let t = conic_stabilizer(&c, &p).unwrap();
        assert_eq!(t.matrix, [[q(3, 5), q(6, 5)], [q(8, 15), q(-3, 5)]]);
        assert!(fixes_curve(&t, &c));
        let lower = StabilizerParam::Ellipse { cos: q(3, 5), sin: q(4, 5), upper: false };
        assert!(fixes_curve(&conic_stabilizer(&c, &lower).unwrap(), &c));
    }

    #[test]
    fn ellipse_with_irrational_ratio() {
        let c = curve("x^2 + 2*y^2 - 1");
        let p = StabilizerParam::Ellipse { cos: q(3, 5), sin: q(-4, 5), upper: false };
        let t = conic_stabilizer(&c, &p).unwrap();
        assert!(!t.matrix[0][1].is_rational());
        assert!(fixes_curve(&t, &c));
    }

    #[test]
    fn parabola_example() {
        let c = curve("y - 2*x^2");
        let t = conic_stabilizer(&c, &StabilizerParam::Parabola { c: q(1, 1), plus: true }).unwrap();
        assert_eq!(t.matrix, [[q(1, 1), q(0, 1)], [q(4, 1), q(1, 1)]]);
        assert_eq!(t.translation, [q(1, 1), q(2, 1)]);
        assert!(fixes_curve(&t, &c));
        let m = conic_stabilizer(&c, &StabilizerParam::Parabola { c: q(-3, 7), plus: false }).unwrap();
        assert!(fixes_curve(&m, &c));
    }

    #[test]
    fn rejects_bad_input() {
        let c = curve("y^2 + x*y - 1");
        assert!(matches!(
            conic_stabilizer(&c, &StabilizerParam::Hyperbola { r: q(0, 1), second: false }),
            Err(SymmetryError::InvalidParameter(_))
        ));
        assert!(matches!(
            conic_stabilizer(&c, &StabilizerParam::Parabola { c: q(1, 1), plus: true }),
            Err(SymmetryError::InvalidParameter(_))
        ));
        assert!(matches!(
            conic_stabilizer(&curve("x^2 + x*y + 3*y^2 - 1"), &StabilizerParam::Parabola { c: q(1, 1), plus: true }),
            Err(SymmetryError::NotNormalForm(_))
        ));
        let e = curve("4*x^2 + 9*y^2 - 1");
        assert!(matches!(
            conic_stabilizer(&e, &StabilizerParam::Ellipse { cos: q(1, 2), sin: q(1, 2), upper: true }),
            Err(SymmetryError::InvalidParameter(_))
        ));
    }

    #[test]
    fn general_position_conics() {
        // parabola y = x² rotated by (3/5, 4/5) and shifted
        let c = curve("(4*x - 3*y + 1)^2 + 5*(3*x + 4*y - 2)");
        let (qm, normal) = reduce_conic(&c).unwrap();
        assert!(matches!(normal_form(&normal).unwrap(), ConicNormalForm::Parabola { .. }));
        assert_eq!(qm.substitute(c.poly()).unwrap(), *normal.poly());
        let t = conic_stabilizer_general(&c, &StabilizerParam::Parabola { c: q(2, 3), plus: false }).unwrap();
        assert!(fixes_curve(&t, &c));

        let h = curve("-3*x^2 + x*y + 4*y^2 + x - 5");
        let t = conic_stabilizer_general(&h, &StabilizerParam::Hyperbola { r: q(3, 1), second: true }).unwrap();
        assert!(fixes_curve(&t, &h));

        let rect = curve("x*y + x - 2*y - 7");
        let t = conic_stabilizer_general(&rect, &StabilizerParam::Hyperbola { r: q(5, 2), second: false }).unwrap();
        assert!(fixes_curve(&t, &rect));

        let e = curve("34*x^2 - 24*x*y + 41*y^2 - 2*x + 3*y - 25");
        let t = conic_stabilizer_general(&e, &StabilizerParam::Ellipse { cos: q(5, 13), sin: q(12, 13), upper: true }).unwrap();
        assert!(fixes_curve(&t, &e));

        // axis direction (1, 1) has irrational length
        assert!(matches!(
            reduce_conic(&curve("x^2 + x*y + y^2 - 1")),
            Err(SymmetryError::UnsupportedRotation(_))
        ));
    }
}
