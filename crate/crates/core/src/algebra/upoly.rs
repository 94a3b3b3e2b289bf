use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::scalar::{lcm_denominators, Scalar};
use super::AlgebraError;

/// Dense univariate polynomial, coefficients stored from the constant term up.
/// The zero polynomial has no coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct UPoly {
    var: String,
    coeffs: Vec<Scalar>,
}

impl UPoly {
    pub fn new(var: impl Into<String>, mut coeffs: Vec<Scalar>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UPoly { var: var.into(), coeffs }
    }

    pub fn from_ints(var: impl Into<String>, coeffs: &[i64]) -> Self {
        Self::new(var, coeffs.iter().map(|&c| Scalar::from_int(c)).collect())
    }

    pub fn from_rationals(var: impl Into<String>, coeffs: Vec<BigRational>) -> Self {
        Self::new(var, coeffs.into_iter().map(Scalar::from_rational).collect())
    }

    pub fn zero(var: impl Into<String>) -> Self {
        UPoly { var: var.into(), coeffs: Vec::new() }
    }

    pub fn constant(var: impl Into<String>, c: Scalar) -> Self {
        Self::new(var, vec![c])
    }

    /// The polynomial `var`.
    pub fn x(var: impl Into<String>) -> Self {
        Self::new(var, vec![Scalar::zero(), Scalar::one()])
    }

    pub fn var(&self) -> &str {
        &self.var
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Scalar {
        self.coeffs.get(i).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coeff(&self) -> Scalar {
        self.coeffs.last().cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn is_rational(&self) -> bool {
        self.coeffs.iter().all(Scalar::is_rational)
    }

    pub fn eval(&self, x: &Scalar) -> Scalar {
        let mut acc = Scalar::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    /// Horner evaluation specialised to rational coefficients and argument.
    pub fn eval_rational(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c.as_rational().expect("eval_rational needs rational coefficients");
        }
        acc
    }

    pub fn sign_at(&self, x: &BigRational) -> i32 {
        if self.is_rational() {
            let v = self.eval_rational(x);
            if v.is_positive() {
                1
            } else if v.is_negative() {
                -1
            } else {
                0
            }
        } else {
            self.eval(&Scalar::from_rational(x.clone())).signum()
        }
    }

    pub fn derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * &Scalar::from_int(i as i64))
            .collect();
        Self::new(self.var.clone(), coeffs)
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        Self::new(self.var.clone(), self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn neg(&self) -> Self {
        UPoly { var: self.var.clone(), coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| &self.coeff(i) + &other.coeff(i)).collect();
        Self::new(self.var.clone(), coeffs)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.var.clone());
        }
        let mut coeffs = vec![Scalar::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += &(a * b);
            }
        }
        Self::new(self.var.clone(), coeffs)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::constant(self.var.clone(), Scalar::one());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Composition `self(g)`.
    pub fn compose(&self, g: &Self) -> Self {
        let mut acc = Self::zero(g.var.clone());
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(g).add(&Self::constant(g.var.clone(), c.clone()));
        }
        acc
    }

    /// Division with remainder over the coefficient field.
    pub fn div_rem(&self, d: &Self) -> Result<(Self, Self), AlgebraError> {
        let dd = d.degree().ok_or(AlgebraError::DivisionByZero)?;
        let lc_inv = d.leading_coeff().inv()?;
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Scalar::zero(); rem.len().saturating_sub(dd)];
        while rem.len() > dd && !rem.is_empty() {
            let top = rem.len() - 1;
            let c = &rem[top] * &lc_inv;
            if !c.is_zero() {
                let shift = top - dd;
                for (i, dc) in d.coeffs.iter().enumerate() {
                    rem[shift + i] -= &(&c * dc);
                }
                quot[shift] = c;
            }
            rem.pop();
            while rem.last().is_some_and(Zero::is_zero) {
                rem.pop();
            }
        }
        Ok((Self::new(self.var.clone(), quot), Self::new(self.var.clone(), rem)))
    }

    pub fn rem(&self, d: &Self) -> Result<Self, AlgebraError> {
        Ok(self.div_rem(d)?.1)
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self.leading_coeff().inv().expect("nonzero leading coefficient");
        self.scale(&inv)
    }

    /// Monic gcd over the coefficient field (zero only if both inputs are).
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        if a.is_rational() && b.is_rational() {
            a = a.primitive();
            b = b.primitive();
        }
        while !b.is_zero() {
            let r = a.rem(&b).expect("nonzero divisor");
            a = b;
            b = if r.is_rational() { r.primitive() } else { r };
        }
        a.monic()
    }

    /// `self / gcd(self, self')`: same roots, all simple.
    pub fn square_free(&self) -> Self {
        if self.degree().unwrap_or(0) == 0 {
            return self.clone();
        }
        let g = self.gcd(&self.derivative());
        self.div_rem(&g).expect("gcd is nonzero").0
    }

    /// Positive rational multiple with coprime integer coefficients and
    /// positive leading coefficient. Only meaningful for rational
    /// coefficients; other polynomials are returned monic.
    pub fn primitive(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        if !self.is_rational() {
            return self.monic();
        }
        let qs: Vec<&BigRational> = self.coeffs.iter().map(|c| c.as_rational().unwrap()).collect();
        let l = lcm_denominators(qs.iter().copied());
        let ints: Vec<BigInt> = qs.iter().map(|q| (*q * BigRational::from_integer(l.clone())).to_integer()).collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, v| acc.gcd(v));
        let sign = if ints.last().unwrap().is_negative() { -BigInt::one() } else { BigInt::one() };
        let coeffs = ints.into_iter().map(|v| Scalar::from_bigint(v / &g * &sign)).collect();
        Self::new(self.var.clone(), coeffs)
    }

    /// Integer coefficients of the primitive form (rational input only).
    pub fn integer_coeffs(&self) -> Option<Vec<BigInt>> {
        if !self.is_rational() {
            return None;
        }
        Some(
            self.primitive()
                .coeffs
                .iter()
                .map(|c| c.as_rational().unwrap().to_integer())
                .collect(),
        )
    }

    /// Cauchy bound: every real root lies strictly inside `(-B, B)`.
    pub fn cauchy_bound(&self) -> BigRational {
        let lc = self.leading_coeff();
        let lc_abs_lower = lower_abs_bound(&lc);
        let mut m = BigRational::zero();
        for c in &self.coeffs[..self.coeffs.len().saturating_sub(1)] {
            let r = c.abs_upper_bound() / &lc_abs_lower;
            if r > m {
                m = r;
            }
        }
        m + BigRational::one()
    }

    pub fn with_var(&self, var: impl Into<String>) -> Self {
        UPoly { var: var.into(), coeffs: self.coeffs.clone() }
    }
}

/// A positive rational lower bound on `|c|` for nonzero `c`.
fn lower_abs_bound(c: &Scalar) -> BigRational {
    if let Some(q) = c.as_rational() {
        return q.abs();
    }
    let mut w = BigRational::one();
    loop {
        let (lo, hi) = c.enclosure(&w);
        if lo.is_positive() {
            return lo;
        }
        if hi.is_negative() {
            return -hi;
        }
        w /= BigRational::from_integer(BigInt::from(16));
    }
}

impl fmt::Display for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vars = [self.var.as_str()];
        let m = super::mpoly::MPoly::from_upoly(&vars, 0, self);
        write!(f, "{m}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn division_and_gcd() {
        // (x-1)^2 (x+3) = x^3 + x^2 - 5x + 3
        let p = UPoly::from_ints("x", &[3, -5, 1, 1]);
        let d = UPoly::from_ints("x", &[-1, 1]);
        let (q, r) = p.div_rem(&d).unwrap();
        assert!(r.is_zero());
        assert_eq!(q, UPoly::from_ints("x", &[-3, 2, 1]));
        let sf = p.square_free().primitive();
        assert_eq!(sf, UPoly::from_ints("x", &[-3, 2, 1]));
        let g = p.gcd(&UPoly::from_ints("x", &[-1, 0, 1]));
        assert_eq!(g, UPoly::from_ints("x", &[-1, 1]));
    }

    #[test]
    fn primitive_form() {
        let p = UPoly::new("x", vec![Scalar::from_ratio(1, 2), Scalar::from_ratio(-3, 4)]);
        assert_eq!(p.primitive(), UPoly::from_ints("x", &[-2, 3]));
    }

    #[test]
    fn cauchy_bound_contains_roots() {
        let p = UPoly::from_ints("x", &[-6, 1, 1]); // roots 2, -3
        assert!(p.cauchy_bound() > BigRational::from_integer(3.into()));
    }
}
