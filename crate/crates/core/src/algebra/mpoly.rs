//! Sparse multivariate polynomials over [`Scalar`].

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::scalar::{lcm_denominators, Scalar};
use super::upoly::UPoly;
use super::AlgebraError;

/// Exponent vector ordered graded-lexicographically: total degree first, then
/// lexicographic with the first variable most significant.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        Monomial(exps)
    }

    pub fn one(n: usize) -> Self {
        Monomial(vec![0; n])
    }

    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    fn div(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Polynomial in an explicit, ordered list of variables. Zero coefficients are
/// never stored; terms iterate in ascending graded-lex order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MPoly {
    vars: Arc<[String]>,
    terms: BTreeMap<Monomial, Scalar>,
}

pub type Vars = Arc<[String]>;

pub fn vars_of(names: &[&str]) -> Vars {
    names.iter().map(|s| s.to_string()).collect::<Vec<_>>().into()
}

impl MPoly {
    pub fn zero(vars: &[&str]) -> Self {
        Self::zero_in(&vars_of(vars))
    }

    pub fn zero_in(vars: &Vars) -> Self {
        MPoly { vars: vars.clone(), terms: BTreeMap::new() }
    }

    pub fn constant_in(vars: &Vars, c: Scalar) -> Self {
        let mut p = Self::zero_in(vars);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(vars.len()), c);
        }
        p
    }

    pub fn constant(vars: &[&str], c: Scalar) -> Self {
        Self::constant_in(&vars_of(vars), c)
    }

    /// The polynomial consisting of variable `i`.
    pub fn var_in(vars: &Vars, i: usize) -> Self {
        let mut e = vec![0; vars.len()];
        e[i] = 1;
        Self::from_terms_in(vars, [(e, Scalar::one())])
    }

    pub fn var(vars: &[&str], name: &str) -> Self {
        let vs = vars_of(vars);
        let i = vars.iter().position(|v| *v == name).expect("variable in list");
        Self::var_in(&vs, i)
    }

    pub fn from_terms_in(vars: &Vars, terms: impl IntoIterator<Item = (Vec<u32>, Scalar)>) -> Self {
        let mut p = Self::zero_in(vars);
        for (e, c) in terms {
            assert_eq!(e.len(), vars.len(), "exponent vector length must match variables");
            p.add_term(Monomial(e), c);
        }
        p
    }

    pub fn from_terms(vars: &[&str], terms: impl IntoIterator<Item = (Vec<u32>, Scalar)>) -> Self {
        Self::from_terms_in(&vars_of(vars), terms)
    }

    fn add_term(&mut self, m: Monomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                *v += &c;
                if v.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn var_names(&self) -> Vec<&str> {
        self.vars.iter().map(String::as_str).collect()
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, exps: &[u32]) -> Scalar {
        self.terms.get(&Monomial(exps.to_vec())).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.degree() == 0)
    }

    pub fn constant_term(&self) -> Scalar {
        self.coeff(&vec![0; self.nvars()])
    }

    pub fn is_rational(&self) -> bool {
        self.terms.values().all(Scalar::is_rational)
    }

    /// Leading term under graded lex; `None` for zero.
    pub fn leading_term(&self) -> Option<(&Monomial, &Scalar)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coeff(&self) -> Scalar {
        self.leading_term().map(|(_, c)| c.clone()).unwrap_or_else(Scalar::zero)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn degree_in(&self, i: usize) -> u32 {
        self.terms.keys().map(|m| m.0[i]).max().unwrap_or(0)
    }

    pub fn involves(&self, i: usize) -> bool {
        self.terms.keys().any(|m| m.0[i] > 0)
    }

    /// Indices of variables that actually occur.
    pub fn support_vars(&self) -> Vec<usize> {
        (0..self.nvars()).filter(|&i| self.involves(i)).collect()
    }

    fn check_vars(&self, other: &MPoly) {
        assert!(
            Arc::ptr_eq(&self.vars, &other.vars) || self.vars == other.vars,
            "polynomials over different variable lists: {:?} vs {:?}",
            self.vars,
            other.vars
        );
    }

    pub fn add(&self, other: &MPoly) -> MPoly {
        self.check_vars(other);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &MPoly) -> MPoly {
        self.check_vars(other);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }

    pub fn neg(&self) -> MPoly {
        MPoly { vars: self.vars.clone(), terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }

    pub fn scale(&self, k: &Scalar) -> MPoly {
        if k.is_zero() {
            return Self::zero_in(&self.vars);
        }
        MPoly { vars: self.vars.clone(), terms: self.terms.iter().map(|(m, c)| (m.clone(), c * k)).collect() }
    }

    pub fn mul(&self, other: &MPoly) -> MPoly {
        self.check_vars(other);
        let mut out = Self::zero_in(&self.vars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> MPoly {
        let mut acc = Self::constant_in(&self.vars, Scalar::one());
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn eval(&self, point: &[Scalar]) -> Scalar {
        assert_eq!(point.len(), self.nvars());
        let mut acc = Scalar::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(&m.0) {
                if e > 0 {
                    t = &t * &x.pow(e);
                }
            }
            acc += &t;
        }
        acc
    }

    /// Substitutes the value `v` for variable `i` (the variable stays in the list).
    pub fn partial_eval(&self, i: usize, v: &Scalar) -> MPoly {
        let mut out = Self::zero_in(&self.vars);
        for (m, c) in &self.terms {
            let mut e = m.0.clone();
            let k = std::mem::replace(&mut e[i], 0);
            out.add_term(Monomial(e), c * &v.pow(k));
        }
        out
    }

    /// Replaces each variable `vars[i]` by `images[i]`; all images share one
    /// variable list, which becomes the variable list of the result.
    pub fn compose(&self, images: &[MPoly]) -> MPoly {
        assert_eq!(images.len(), self.nvars());
        let target = images
            .first()
            .map(|p| p.vars.clone())
            .unwrap_or_else(|| self.vars.clone());
        let mut powers: Vec<Vec<MPoly>> = images.iter().map(|p| vec![Self::constant_in(&target, Scalar::one()), p.clone()]).collect();
        let mut out = Self::zero_in(&target);
        for (m, c) in &self.terms {
            let mut t = Self::constant_in(&target, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                let e = e as usize;
                while powers[i].len() <= e {
                    let next = powers[i].last().unwrap().mul(&images[i]);
                    powers[i].push(next);
                }
                if e > 0 {
                    t = t.mul(&powers[i][e]);
                }
            }
            out = out.add(&t);
        }
        out
    }

    /// Coefficients with respect to variable `i`: `self = Σ coeffs[k] · v_i^k`.
    /// The coefficients keep the full variable list.
    pub fn coeffs_in(&self, i: usize) -> Vec<MPoly> {
        let d = self.degree_in(i) as usize;
        let mut out = vec![Self::zero_in(&self.vars); if self.is_zero() { 0 } else { d + 1 }];
        for (m, c) in &self.terms {
            let mut e = m.0.clone();
            let k = std::mem::replace(&mut e[i], 0) as usize;
            out[k].terms.insert(Monomial(e), c.clone());
        }
        out
    }

    pub fn from_coeffs_in(vars: &Vars, i: usize, coeffs: &[MPoly]) -> MPoly {
        let mut out = Self::zero_in(vars);
        for (k, c) in coeffs.iter().enumerate() {
            for (m, v) in &c.terms {
                let mut e = m.0.clone();
                e[i] += k as u32;
                out.add_term(Monomial(e), v.clone());
            }
        }
        out
    }

    pub fn homogeneous_part(&self, deg: u32) -> MPoly {
        MPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().filter(|(m, _)| m.degree() == deg).map(|(m, c)| (m.clone(), c.clone())).collect(),
        }
    }

    pub fn derivative(&self, i: usize) -> MPoly {
        let mut out = Self::zero_in(&self.vars);
        for (m, c) in &self.terms {
            let k = m.0[i];
            if k == 0 {
                continue;
            }
            let mut e = m.0.clone();
            e[i] -= 1;
            out.add_term(Monomial(e), c * &Scalar::from_int(k as i64));
        }
        out
    }

    /// Exact quotient `self / d`, or `None` if `d` does not divide `self`.
    pub fn div_exact(&self, d: &MPoly) -> Option<MPoly> {
        self.check_vars(d);
        let (dm, dc) = d.leading_term()?;
        let dc_inv = dc.inv().ok()?;
        let mut rem = self.clone();
        let mut quot = Self::zero_in(&self.vars);
        while let Some((m, c)) = rem.leading_term() {
            if !dm.divides(m) {
                return None;
            }
            let qm = m.div(dm);
            let qc = c * &dc_inv;
            for (m2, c2) in &d.terms {
                rem.add_term(qm.mul(m2), -(&qc * c2));
            }
            quot.add_term(qm, qc);
        }
        Some(quot)
    }

    /// Converts to a univariate polynomial in variable `i`; fails if any other
    /// variable occurs.
    pub fn to_upoly(&self, i: usize) -> Result<UPoly, AlgebraError> {
        let mut coeffs = vec![Scalar::zero(); self.degree_in(i) as usize + 1];
        for (m, c) in &self.terms {
            if m.0.iter().enumerate().any(|(j, &e)| j != i && e > 0) {
                return Err(AlgebraError::NotUnivariate(self.vars[i].clone()));
            }
            coeffs[m.0[i] as usize] = c.clone();
        }
        Ok(UPoly::new(self.vars[i].clone(), coeffs))
    }

    pub fn from_upoly(vars: &[&str], i: usize, p: &UPoly) -> MPoly {
        Self::from_upoly_in(&vars_of(vars), i, p)
    }

    pub fn from_upoly_in(vars: &Vars, i: usize, p: &UPoly) -> MPoly {
        let n = vars.len();
        Self::from_terms_in(
            vars,
            p.coeffs().iter().enumerate().map(|(k, c)| {
                let mut e = vec![0; n];
                e[i] = k as u32;
                (e, c.clone())
            }),
        )
    }

    /// Re-embeds into another variable list (matching by name).
    pub fn with_vars(&self, vars: &Vars) -> Result<MPoly, AlgebraError> {
        if &self.vars == vars {
            return Ok(self.clone());
        }
        let map: Vec<Option<usize>> = self.vars.iter().map(|v| vars.iter().position(|w| w == v)).collect();
        let mut out = Self::zero_in(vars);
        for (m, c) in &self.terms {
            let mut e = vec![0; vars.len()];
            for (j, &k) in m.0.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                match map[j] {
                    Some(t) => e[t] += k,
                    None => return Err(AlgebraError::UnknownVariable { name: self.vars[j].clone(), position: 0 }),
                }
            }
            out.add_term(Monomial(e), c.clone());
        }
        Ok(out)
    }

    /// Canonical associate: for rational coefficients, coprime integers with a
    /// positive leading coefficient; otherwise monic.
    pub fn normalized(&self) -> MPoly {
        if self.is_zero() {
            return self.clone();
        }
        if !self.is_rational() {
            let inv = self.leading_coeff().inv().expect("nonzero");
            return self.scale(&inv);
        }
        let l = lcm_denominators(self.terms.values().map(|c| c.as_rational().unwrap()));
        let lq = BigRational::from_integer(l);
        let ints: Vec<BigInt> = self.terms.values().map(|c| (c.as_rational().unwrap() * &lq).to_integer()).collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, v| acc.gcd(v));
        let mut k = lq / BigRational::from_integer(g);
        if self.leading_coeff().signum() < 0 {
            k = -k;
        }
        self.scale(&Scalar::from_rational(k))
    }

    /// Whether `self = λ·other` for some nonzero scalar λ; returns λ.
    pub fn proportional_to(&self, other: &MPoly) -> Option<Scalar> {
        self.check_vars(other);
        if self.terms.len() != other.terms.len() || self.is_zero() {
            return None;
        }
        let (m1, c1) = self.leading_term()?;
        let (m2, c2) = other.leading_term()?;
        if m1 != m2 {
            return None;
        }
        let lambda = c1.checked_div(c2).ok()?;
        for ((ma, ca), (mb, cb)) in self.terms.iter().zip(&other.terms) {
            if ma != mb || ca.checked_sub(&cb.checked_mul(&lambda).ok()?).ok()? != Scalar::zero() {
                return None;
            }
        }
        Some(lambda)
    }

    /// Coefficients as polynomials in the remaining variables, grouped by the
    /// monomial in the chosen variables `idx` (which are zeroed in the values).
    pub fn group_by(&self, idx: &[usize]) -> BTreeMap<Vec<u32>, MPoly> {
        let mut out: BTreeMap<Vec<u32>, MPoly> = BTreeMap::new();
        for (m, c) in &self.terms {
            let key: Vec<u32> = idx.iter().map(|&i| m.0[i]).collect();
            let mut e = m.0.clone();
            for &i in idx {
                e[i] = 0;
            }
            out.entry(key).or_insert_with(|| Self::zero_in(&self.vars)).add_term(Monomial(e), c.clone());
        }
        out
    }
}

fn write_coeff_body(c: &Scalar, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if c.is_rational() {
        write!(f, "{c}")
    } else {
        write!(f, "({c})")
    }
}

/// Canonical text: terms in descending graded-lex order, explicit `*`, `^`
/// exponents, rational literals as `p/q`.
impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let negative = c.is_rational() && c.signum() < 0;
            let mag = if negative { -c } else { c.clone() };
            if k == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else if negative {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let factors: Vec<String> = m
                .0
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| if e == 1 { self.vars[i].clone() } else { format!("{}^{}", self.vars[i], e) })
                .collect();
            if factors.is_empty() {
                write_coeff_body(&mag, f)?;
            } else {
                if !mag.is_one() {
                    write_coeff_body(&mag, f)?;
                    write!(f, "*")?;
                }
                write!(f, "{}", factors.join("*"))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xy() -> Vars {
        vars_of(&["x", "y"])
    }

    #[test]
    fn graded_lex_order_and_display() {
        let v = xy();
        let x = MPoly::var_in(&v, 0);
        let y = MPoly::var_in(&v, 1);
        let one = MPoly::constant_in(&v, Scalar::one());
        let p = y.add(&x.mul(&x).neg()).add(&one.scale(&Scalar::from_ratio(3, 2)));
        assert_eq!(p.to_string(), "-x^2 + y + 3/2");
        let q = x.mul(&y).add(&y.mul(&y)).sub(&one);
        assert_eq!(q.to_string(), "x*y + y^2 - 1");
        assert_eq!(q.total_degree(), 2);
    }

    #[test]
    fn exact_division() {
        let v = xy();
        let x = MPoly::var_in(&v, 0);
        let y = MPoly::var_in(&v, 1);
        let one = MPoly::constant_in(&v, Scalar::one());
        let a = x.add(&y);
        let b = x.sub(&y).add(&one);
        let prod = a.mul(&b);
        assert_eq!(prod.div_exact(&a), Some(b.clone()));
        assert_eq!(prod.div_exact(&b), Some(a));
        assert_eq!(prod.add(&one).div_exact(&b), None);
    }

    #[test]
    fn compose_and_coeffs() {
        let v = xy();
        let x = MPoly::var_in(&v, 0);
        let y = MPoly::var_in(&v, 1);
        let one = MPoly::constant_in(&v, Scalar::one());
        let f = y.sub(&x.mul(&x)); // y - x^2
        let g = f.compose(&[x.sub(&one), y.clone()]);
        assert_eq!(g.to_string(), "-x^2 + 2*x + y - 1");
        let cs = g.coeffs_in(0);
        assert_eq!(cs.len(), 3);
        assert_eq!(cs[2], MPoly::constant_in(&v, Scalar::from_int(-1)));
        assert_eq!(MPoly::from_coeffs_in(&v, 0, &cs), g);
    }

    #[test]
    fn normalization() {
        let v = xy();
        let x = MPoly::var_in(&v, 0);
        let p = x.scale(&Scalar::from_ratio(-2, 3)).add(&MPoly::constant_in(&v, Scalar::from_ratio(4, 9)));
        assert_eq!(p.normalized().to_string(), "3*x - 2");
        assert!(p.proportional_to(&p.normalized()).is_some());
    }
}
