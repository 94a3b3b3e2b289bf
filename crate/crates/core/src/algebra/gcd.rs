//! Multivariate gcd by recursive content / primitive-part remainder sequences.

use super::mpoly::MPoly;
use super::resultant::{prem, trim};
use super::AlgebraError;

/// Greatest common divisor, normalized (primitive integer coefficients with
/// positive leading coefficient over ℚ, monic otherwise).
pub fn poly_gcd(f: &MPoly, g: &MPoly) -> Result<MPoly, AlgebraError> {
    let g = g.with_vars(f.vars())?;
    if f.is_zero() && g.is_zero() {
        return Err(AlgebraError::ZeroPolynomial);
    }
    Ok(gcd_rec(f, &g).normalized())
}

/// True when `f` and `g` share a nonconstant factor.
pub fn have_common_factor(f: &MPoly, g: &MPoly) -> Result<bool, AlgebraError> {
    Ok(!poly_gcd(f, g)?.is_constant())
}

fn one_like(f: &MPoly) -> MPoly {
    MPoly::constant_in(f.vars(), num_traits::One::one())
}

fn gcd_rec(f: &MPoly, g: &MPoly) -> MPoly {
    if f.is_zero() {
        return g.clone();
    }
    if g.is_zero() {
        return f.clone();
    }
    let v = match (0..f.nvars()).find(|&i| f.involves(i) || g.involves(i)) {
        Some(v) => v,
        None => return one_like(f),
    };
    if !f.involves(v) {
        return gcd_rec(f, &content(g, v));
    }
    if !g.involves(v) {
        return gcd_rec(&content(f, v), g);
    }
    let cf = content(f, v);
    let cg = content(g, v);
    let c = gcd_rec(&cf, &cg);
    let mut a = trim(f.div_exact(&cf).expect("content divides").coeffs_in(v));
    let mut b = trim(g.div_exact(&cg).expect("content divides").coeffs_in(v));
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    while !b.is_empty() {
        let r = prem(&a, &b);
        a = b;
        b = if r.is_empty() { r } else { primitive_dense(r, v) };
    }
    if a.len() == 1 {
        return c;
    }
    let pa = MPoly::from_coeffs_in(f.vars(), v, &a);
    let pa = pa.div_exact(&content(&pa, v)).expect("content divides");
    c.mul(&pa)
}

/// Gcd of the coefficients of `f` viewed as a polynomial in variable `v`.
pub(crate) fn content(f: &MPoly, v: usize) -> MPoly {
    let mut acc = MPoly::zero_in(f.vars());
    for c in f.coeffs_in(v) {
        if c.is_zero() {
            continue;
        }
        acc = gcd_rec(&acc, &c);
        if acc.is_constant() {
            return one_like(f);
        }
    }
    acc
}

fn primitive_dense(a: Vec<MPoly>, v: usize) -> Vec<MPoly> {
    let vars = a[0].vars().clone();
    let p = MPoly::from_coeffs_in(&vars, v, &a);
    let c = content(&p, v);
    a.iter().map(|x| x.div_exact(&c).expect("content divides")).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse::parse_poly;

    fn p(s: &str) -> MPoly {
        parse_poly(s, &["x", "y", "z"]).unwrap()
    }

    #[test]
    fn finds_shared_factor() {
        let a = p("(x - y)*(x^2 + y^2 - 1)");
        let b = p("(x - y)*(x + 2*y + 3)");
        assert_eq!(poly_gcd(&a, &b).unwrap(), p("x - y"));
    }

    #[test]
    fn coprime_and_content() {
        assert!(poly_gcd(&p("x^2 + y^2 - 1"), &p("x - y")).unwrap().is_constant());
        let a = p("(y + 1)*(x*z - 2)*(x - 1)");
        let b = p("(y + 1)*(x - 1)^2*z");
        assert_eq!(poly_gcd(&a, &b).unwrap(), p("(y + 1)*(x - 1)").normalized());
        assert!(matches!(poly_gcd(&p("0"), &p("0")), Err(AlgebraError::ZeroPolynomial)));
    }
}
