//! Resultants by the subresultant polynomial remainder sequence.
//!
//! Polynomials are viewed as univariate in the eliminated variable with
//! coefficients in the ring of polynomials in the remaining variables; every
//! division performed by the sequence is exact in that ring.

use num_traits::One;

use super::mpoly::{MPoly, Vars};
use super::scalar::Scalar;
use super::AlgebraError;

/// Coefficient list in the main variable, constant term first, trimmed.
pub(crate) type Dense = Vec<MPoly>;

pub(crate) fn trim(mut a: Dense) -> Dense {
    while a.last().is_some_and(MPoly::is_zero) {
        a.pop();
    }
    a
}

fn deg(a: &Dense) -> usize {
    a.len() - 1
}

fn lc(a: &Dense) -> &MPoly {
    a.last().expect("nonzero")
}

/// Pseudo-remainder `lc(b)^(deg a - deg b + 1) · a mod b`.
pub(crate) fn prem(a: &Dense, b: &Dense) -> Dense {
    let db = deg(b);
    let lb = lc(b).clone();
    let mut r = a.clone();
    let mut e = (deg(a) + 1).saturating_sub(db) as u32;
    while !r.is_empty() && r.len() > db {
        let lr = lc(&r).clone();
        let shift = deg(&r) - db;
        let mut next: Dense = r.iter().map(|c| c.mul(&lb)).collect();
        for (i, bc) in b.iter().enumerate() {
            next[shift + i] = next[shift + i].sub(&bc.mul(&lr));
        }
        next.pop();
        r = trim(next);
        e = e.saturating_sub(1);
    }
    if e > 0 {
        let k = lb.pow(e);
        r = r.iter().map(|c| c.mul(&k)).collect();
    }
    r
}

fn div_all(a: &Dense, d: &MPoly) -> Dense {
    a.iter()
        .map(|c| c.div_exact(d).expect("subresultant division is exact"))
        .collect()
}

/// Resultant of two dense polynomials over the coefficient ring.
pub(crate) fn dense_resultant(a: Dense, b: Dense, vars: &Vars) -> MPoly {
    let one = MPoly::constant_in(vars, Scalar::one());
    let (mut a, mut b) = (trim(a), trim(b));
    if a.is_empty() || b.is_empty() {
        return MPoly::zero_in(vars);
    }
    let mut sign = false;
    if deg(&a) < deg(&b) {
        if deg(&a) % 2 == 1 && deg(&b) % 2 == 1 {
            sign = true;
        }
        std::mem::swap(&mut a, &mut b);
    }
    if deg(&b) == 0 {
        let r = b[0].pow(deg(&a) as u32);
        return if sign { r.neg() } else { r };
    }
    let mut g = one.clone();
    let mut h = one.clone();
    loop {
        let delta = (deg(&a) - deg(&b)) as u32;
        if deg(&a) % 2 == 1 && deg(&b) % 2 == 1 {
            sign = !sign;
        }
        let r = prem(&a, &b);
        a = b;
        if r.is_empty() {
            return MPoly::zero_in(vars);
        }
        b = div_all(&r, &g.mul(&h.pow(delta)));
        g = lc(&a).clone();
        h = if delta == 0 { h } else { g.pow(delta).div_exact(&h.pow(delta - 1)).expect("exact") };
        if deg(&b) > 0 {
            continue;
        }
        let da = deg(&a) as u32;
        let res = lc(&b).pow(da).div_exact(&h.pow(da - 1)).expect("exact");
        return if sign { res.neg() } else { res };
    }
}

/// Resultant of `f` and `g` with respect to `var`; a polynomial in the
/// remaining variables (the variable list is kept, `var` no longer occurs).
///
/// Sign convention: `res(f, g) = lc(f)^deg(g) · Π g(α)` over the roots α of f.
pub fn resultant(f: &MPoly, g: &MPoly, var: &str) -> Result<MPoly, AlgebraError> {
    let i = f.var_index(var).ok_or_else(|| AlgebraError::VariableAbsent(var.to_string()))?;
    let g = g.with_vars(f.vars())?;
    if !f.involves(i) || !g.involves(i) {
        return Err(AlgebraError::VariableAbsent(var.to_string()));
    }
    Ok(resultant_at(f, &g, i))
}

/// Resultant with respect to variable index `i`. Inputs not involving `i`
/// are treated as degree-0 polynomials.
pub fn resultant_at(f: &MPoly, g: &MPoly, i: usize) -> MPoly {
    dense_resultant(f.coeffs_in(i), g.coeffs_in(i), f.vars())
}

/// Subresultants `S_j` of `f`, `g` in variable `i` from the determinant
/// definition, for `j` below the smaller degree (and `j` equal to it when the
/// degrees differ). `S_j` is returned as its coefficient list in the variable
/// (constant first, length j+1).
pub fn subresultants(f: &MPoly, g: &MPoly, i: usize) -> Vec<Vec<MPoly>> {
    let a = f.coeffs_in(i);
    let b = g.coeffs_in(i);
    let (m, n) = (a.len() - 1, b.len() - 1);
    let vars = f.vars().clone();
    let mut out = Vec::new();
    for j in 0..=m.min(n) {
        let rows = (n - j) + (m - j);
        if rows == 0 {
            break;
        }
        let cols = m + n - j;
        // row-major matrix, column c stands for power (cols - 1 - c)
        let mut mat = vec![vec![MPoly::zero_in(&vars); cols]; rows];
        for r in 0..(n - j) {
            // y^(n-j-1-r) * f
            let shift = n - j - 1 - r;
            for (k, c) in a.iter().enumerate() {
                let p = k + shift;
                mat[r][cols - 1 - p] = c.clone();
            }
        }
        for r in 0..(m - j) {
            let shift = m - j - 1 - r;
            for (k, c) in b.iter().enumerate() {
                let p = k + shift;
                mat[n - j + r][cols - 1 - p] = c.clone();
            }
        }
        let lead = rows - 1;
        let mut coeffs = Vec::with_capacity(j + 1);
        for pw in 0..=j {
            let col = cols - 1 - pw;
            let sub: Vec<Vec<MPoly>> = mat
                .iter()
                .map(|row| {
                    let mut r: Vec<MPoly> = row[..lead].to_vec();
                    r.push(row[col].clone());
                    r
                })
                .collect();
            coeffs.push(bareiss_det(sub, &vars));
        }
        out.push(coeffs);
    }
    out
}

/// Fraction-free determinant (Bareiss) over a polynomial ring.
pub fn bareiss_det(mut m: Vec<Vec<MPoly>>, vars: &Vars) -> MPoly {
    let n = m.len();
    if n == 0 {
        return MPoly::constant_in(vars, Scalar::one());
    }
    let mut sign = false;
    let mut prev = MPoly::constant_in(vars, Scalar::one());
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    sign = !sign;
                }
                None => return MPoly::zero_in(vars),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = m[i][j].mul(&m[k][k]).sub(&m[i][k].mul(&m[k][j]));
                m[i][j] = v.div_exact(&prev).expect("Bareiss division is exact");
            }
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if sign {
        d.neg()
    } else {
        d
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse::parse_poly;

    fn p(s: &str) -> MPoly {
        parse_poly(s, &["x", "y"]).unwrap()
    }

    #[test]
    fn circle_and_diagonal() {
        let r = resultant(&p("x^2 + y^2 - 1"), &p("x - y"), "x").unwrap();
        assert_eq!(r, p("2*y^2 - 1"));
    }

    #[test]
    fn constants_and_common_roots() {
        let r = resultant(&p("x - 1"), &p("x + 1"), "x").unwrap();
        assert_eq!(r, p("2"));
        let f = p("x^3 - x*y + 2");
        assert!(resultant(&f, &f, "x").unwrap().is_zero());
        assert!(matches!(resultant(&p("y"), &f, "x"), Err(AlgebraError::VariableAbsent(_))));
    }

    #[test]
    fn subresultant_zero_is_resultant() {
        let f = p("x^3 - 2*x*y + y^2 - 1");
        let g = p("x^2*y + x - 3");
        let s = subresultants(&f, &g, 0);
        let r = resultant(&f, &g, "x").unwrap();
        assert_eq!(s[0][0], r);
    }

    #[test]
    fn remainder_drops_to_a_constant() {
        // lc(f)^3 · h(0)² = -1 for f = -x², h = x³ + 1
        let r = resultant(&p("-x^2"), &p("x^3 + 1"), "x").unwrap();
        assert_eq!(r, p("-1"));
        let r = resultant(&p("2*x^2 + y"), &p("x^3 - y"), "x").unwrap();
        assert_eq!(r, p("y^3 + 8*y^2"));
    }
}
