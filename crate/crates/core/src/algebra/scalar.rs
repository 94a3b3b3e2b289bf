//! Exact scalars: rationals, optionally extended by a single square root.

use std::cmp::Ordering;
use std::fmt;
use std::hash::Hash;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::AlgebraError;

/// Largest trial divisor used when stripping square factors from a radicand.
const TRIAL_DIVISION_LIMIT: u64 = 1 << 16;

/// An element `a + b·√k` of ℚ(√k), or a plain rational when `b = 0`.
///
/// Pure rationals never carry a surd part, so derived equality and hashing
/// are exact. Arithmetic between elements of two different extensions is
/// rejected: the checked operations return [`AlgebraError::MixedExtension`]
/// and the operator impls panic.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Scalar {
    rational: BigRational,
    surd: Option<Surd>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct Surd {
    coeff: BigRational,
    radicand: BigInt,
}

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Splits `n > 0` as `s² · k` with `k` free of prime-square factors up to the
/// trial division limit. Whatever cofactor remains above the limit is kept in
/// `k` unless it is a perfect square.
pub fn square_free_split(n: &BigInt) -> (BigInt, BigInt) {
    assert!(n.is_positive(), "square_free_split needs a positive integer");
    let mut rem = n.clone();
    let mut square = BigInt::one();
    let mut k = BigInt::one();
    let mut p: u64 = 2;
    while p <= TRIAL_DIVISION_LIMIT {
        let pb = BigInt::from(p);
        if &pb * &pb * &pb > rem {
            break;
        }
        let mut e = 0u32;
        while (&rem % &pb).is_zero() {
            rem /= &pb;
            e += 1;
        }
        if e > 0 {
            square *= pb.pow(e / 2);
            if e % 2 == 1 {
                k *= &pb;
            }
        }
        p += if p == 2 { 1 } else { 2 };
    }
    // rem now has no prime factor below p; if p^3 > rem it is 1, a prime,
    // a product of two distinct primes or a prime square.
    let r = rem.sqrt();
    if &r * &r == rem {
        square *= r;
    } else {
        k *= rem;
    }
    (square, k)
}

impl Scalar {
    pub fn from_rational(q: BigRational) -> Self {
        Scalar { rational: q, surd: None }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(int(n))
    }

    pub fn from_ratio(n: i64, d: i64) -> Self {
        Self::from_rational(rat(n, d))
    }

    pub fn from_bigint(n: BigInt) -> Self {
        Self::from_rational(BigRational::from_integer(n))
    }

    /// Builds `a + b·√k`. The radicand is reduced to its square-free part and
    /// must not be a perfect square after reduction.
    pub fn quadratic(a: BigRational, b: BigRational, k: BigInt) -> Result<Self, AlgebraError> {
        if !k.is_positive() {
            return Err(AlgebraError::InvalidRadicand(k));
        }
        let (s, kk) = square_free_split(&k);
        if kk.is_one() {
            return Ok(Self::from_rational(a + b * BigRational::from_integer(s)));
        }
        let coeff = b * BigRational::from_integer(s);
        Ok(Self::build(a, coeff, kk))
    }

    fn build(rational: BigRational, coeff: BigRational, radicand: BigInt) -> Self {
        if coeff.is_zero() {
            Scalar { rational, surd: None }
        } else {
            Scalar { rational, surd: Some(Surd { coeff, radicand }) }
        }
    }

    /// Exact square root of a nonnegative rational, in ℚ or in ℚ(√k).
    pub fn sqrt_rational(q: &BigRational) -> Result<Self, AlgebraError> {
        if q.is_negative() {
            return Err(AlgebraError::NegativeRadicand(q.clone()));
        }
        if q.is_zero() {
            return Ok(Self::zero());
        }
        // sqrt(n/d) = sqrt(n*d)/d
        let nd = q.numer() * q.denom();
        let (s, k) = square_free_split(&nd);
        let scale = BigRational::new(s, q.denom().clone());
        if k.is_one() {
            Ok(Self::from_rational(scale))
        } else {
            Ok(Self::build(BigRational::zero(), scale, k))
        }
    }

    pub fn is_rational(&self) -> bool {
        self.surd.is_none()
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        if self.surd.is_none() {
            Some(&self.rational)
        } else {
            None
        }
    }

    pub fn rational_part(&self) -> &BigRational {
        &self.rational
    }

    /// The `b` in `a + b·√k` (zero for rationals).
    pub fn surd_coeff(&self) -> BigRational {
        self.surd.as_ref().map(|s| s.coeff.clone()).unwrap_or_else(BigRational::zero)
    }

    pub fn radicand(&self) -> Option<&BigInt> {
        self.surd.as_ref().map(|s| &s.radicand)
    }

    fn common_radicand<'a>(&'a self, other: &'a Self) -> Result<Option<&'a BigInt>, AlgebraError> {
        match (self.radicand(), other.radicand()) {
            (Some(a), Some(b)) if a != b => Err(AlgebraError::MixedExtension {
                left: a.clone(),
                right: b.clone(),
            }),
            (Some(a), _) => Ok(Some(a)),
            (None, b) => Ok(b),
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, AlgebraError> {
        let k = self.common_radicand(other)?;
        let rational = &self.rational + &other.rational;
        match k {
            None => Ok(Self::from_rational(rational)),
            Some(k) => Ok(Self::build(rational, self.surd_coeff() + other.surd_coeff(), k.clone())),
        }
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.checked_add(&-other)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, AlgebraError> {
        let k = self.common_radicand(other)?;
        match k {
            None => Ok(Self::from_rational(&self.rational * &other.rational)),
            Some(k) => {
                let (a1, b1) = (&self.rational, self.surd_coeff());
                let (a2, b2) = (&other.rational, other.surd_coeff());
                let kq = BigRational::from_integer(k.clone());
                let rational = a1 * a2 + &b1 * &b2 * kq;
                let coeff = a1 * &b2 + a2 * &b1;
                Ok(Self::build(rational, coeff, k.clone()))
            }
        }
    }

    pub fn inv(&self) -> Result<Self, AlgebraError> {
        if self.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        match &self.surd {
            None => Ok(Self::from_rational(self.rational.recip())),
            Some(s) => {
                // (a - b√k) / (a² - b²k)
                let kq = BigRational::from_integer(s.radicand.clone());
                let norm = &self.rational * &self.rational - &s.coeff * &s.coeff * kq;
                Ok(Self::build(&self.rational / &norm, -&s.coeff / &norm, s.radicand.clone()))
            }
        }
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.checked_mul(&other.inv()?)
    }

    pub fn conjugate(&self) -> Self {
        match &self.surd {
            None => self.clone(),
            Some(s) => Self::build(self.rational.clone(), -&s.coeff, s.radicand.clone()),
        }
    }

    /// Exact sign: -1, 0 or 1.
    pub fn signum(&self) -> i32 {
        fn sgn(q: &BigRational) -> i32 {
            if q.is_positive() {
                1
            } else if q.is_negative() {
                -1
            } else {
                0
            }
        }
        match &self.surd {
            None => sgn(&self.rational),
            Some(s) => {
                let sa = sgn(&self.rational);
                let sb = sgn(&s.coeff);
                if sa == 0 || sa == sb {
                    return sb;
                }
                // opposite signs: compare a² with b²k
                let kq = BigRational::from_integer(s.radicand.clone());
                let a2 = &self.rational * &self.rational;
                let b2k = &s.coeff * &s.coeff * kq;
                if a2 > b2k {
                    sa
                } else {
                    sb
                }
            }
        }
    }

    pub fn abs(&self) -> Self {
        if self.signum() < 0 {
            -self
        } else {
            self.clone()
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn to_f64(&self) -> f64 {
        let a = self.rational.to_f64().unwrap_or(f64::NAN);
        match &self.surd {
            None => a,
            Some(s) => {
                a + s.coeff.to_f64().unwrap_or(f64::NAN) * s.radicand.to_f64().unwrap_or(f64::NAN).sqrt()
            }
        }
    }

    /// A rational upper bound on `|self|`.
    pub fn abs_upper_bound(&self) -> BigRational {
        match &self.surd {
            None => self.rational.abs(),
            Some(s) => {
                let root = s.radicand.sqrt() + BigInt::one();
                self.rational.abs() + s.coeff.abs() * BigRational::from_integer(root)
            }
        }
    }

    /// Rational enclosure `[lo, hi]` of the value with `hi - lo <= width`.
    pub fn enclosure(&self, width: &BigRational) -> (BigRational, BigRational) {
        match &self.surd {
            None => (self.rational.clone(), self.rational.clone()),
            Some(s) => {
                // bisect sqrt(k) until |b|·(hi - lo) <= width
                let k = BigRational::from_integer(s.radicand.clone());
                let r = s.radicand.sqrt();
                let mut lo = BigRational::from_integer(r.clone());
                let mut hi = BigRational::from_integer(r + BigInt::one());
                let two = int(2);
                let b = s.coeff.abs();
                while &b * (&hi - &lo) > *width {
                    let mid = (&lo + &hi) / &two;
                    if &mid * &mid <= k {
                        lo = mid;
                    } else {
                        hi = mid;
                    }
                }
                let (x, y) = (&self.rational + &s.coeff * &lo, &self.rational + &s.coeff * &hi);
                if x <= y {
                    (x, y)
                } else {
                    (y, x)
                }
            }
        }
    }
}

fn fmt_rational(q: &BigRational, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if q.denom().is_one() {
        write!(f, "{}", q.numer())
    } else {
        write!(f, "{}/{}", q.numer(), q.denom())
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.surd {
            None => fmt_rational(&self.rational, f),
            Some(s) => {
                if !self.rational.is_zero() {
                    fmt_rational(&self.rational, f)?;
                    if s.coeff.is_positive() {
                        write!(f, "+")?;
                    }
                }
                if s.coeff == -BigRational::one() {
                    write!(f, "-")?;
                } else if !s.coeff.is_one() {
                    fmt_rational(&s.coeff, f)?;
                    write!(f, "*")?;
                }
                write!(f, "sqrt({})", s.radicand)
            }
        }
    }
}

impl From<BigRational> for Scalar {
    fn from(q: BigRational) -> Self {
        Scalar::from_rational(q)
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl From<BigInt> for Scalar {
    fn from(n: BigInt) -> Self {
        Scalar::from_bigint(n)
    }
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

impl Zero for Scalar {
    fn zero() -> Self {
        Scalar::from_rational(BigRational::zero())
    }
    fn is_zero(&self) -> bool {
        self.surd.is_none() && self.rational.is_zero()
    }
}

impl One for Scalar {
    fn one() -> Self {
        Scalar::from_rational(BigRational::one())
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            rational: -&self.rational,
            surd: self.surd.as_ref().map(|s| Surd { coeff: -&s.coeff, radicand: s.radicand.clone() }),
        }
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                match self.$checked(rhs) {
                    Ok(v) => v,
                    Err(e) => panic!("scalar arithmetic failed: {e}"),
                }
            }
        }
        impl $trait<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                (&self).$method(rhs)
            }
        }
        impl $trait<Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);
forward_binop!(Div, div, checked_div);

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        *self = &*self - rhs;
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        *self = &*self * rhs;
    }
}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Total order on a single extension; panics when comparing elements of two
/// different extensions.
impl Ord for Scalar {
    fn cmp(&self, other: &Self) -> Ordering {
        if self.surd.is_none() && other.surd.is_none() {
            return self.rational.cmp(&other.rational);
        }
        (self - other).signum().cmp(&0)
    }
}

/// Parses `p`, `-p` or `p/q`.
pub fn parse_rational(text: &str) -> Option<BigRational> {
    let text = text.trim();
    let (n, d) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let n: BigInt = n.parse().ok()?;
    let d: BigInt = d.parse().ok()?;
    if d.is_zero() {
        return None;
    }
    Some(BigRational::new(n, d))
}

/// Integer content helper: lcm of denominators.
pub fn lcm_denominators<'a>(qs: impl IntoIterator<Item = &'a BigRational>) -> BigInt {
    qs.into_iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Scalar {
        Scalar::from_ratio(n, d)
    }

    #[test]
    fn rationals_canonicalize() {
        assert_eq!(q(2, 4), q(-1, -2));
        assert_eq!(q(3, -6).to_string(), "-1/2");
        assert_eq!(Scalar::from_int(7).to_string(), "7");
    }

    #[test]
    fn quadratic_arithmetic() {
        let r2 = Scalar::sqrt_rational(&int(2)).unwrap();
        assert_eq!(&r2 * &r2, Scalar::from_int(2));
        let x = &Scalar::from_int(1) + &r2;
        let y = x.inv().unwrap();
        assert_eq!(&x * &y, Scalar::one());
        assert_eq!(r2.to_string(), "sqrt(2)");
        assert_eq!(Scalar::sqrt_rational(&rat(3, 4)).unwrap().to_string(), "1/2*sqrt(3)");
        assert_eq!(Scalar::sqrt_rational(&rat(9, 4)).unwrap(), q(3, 2));
        assert_eq!(Scalar::sqrt_rational(&int(12)).unwrap().to_string(), "2*sqrt(3)");
    }

    #[test]
    fn mixed_extensions_rejected() {
        let r2 = Scalar::sqrt_rational(&int(2)).unwrap();
        let r3 = Scalar::sqrt_rational(&int(3)).unwrap();
        assert!(matches!(r2.checked_add(&r3), Err(AlgebraError::MixedExtension { .. })));
        assert!(r2.checked_mul(&q(1, 2)).is_ok());
    }

    #[test]
    fn signs_are_exact() {
        let r2 = Scalar::sqrt_rational(&int(2)).unwrap();
        // 1.414... - 7/5 > 0, 1.414... - 10/7 < 0
        assert_eq!((&r2 - &q(7, 5)).signum(), 1);
        assert_eq!((&r2 - &q(10, 7)).signum(), -1);
        assert!(r2 > q(7, 5));
        let (lo, hi) = r2.enclosure(&rat(1, 1000));
        assert!(lo <= hi && &hi - &lo <= rat(1, 1000));
        assert!(lo < rat(1415, 1000) && hi > rat(1414, 1000));
    }

    #[test]
    fn square_free_split_small() {
        let (s, k) = square_free_split(&BigInt::from(72));
        assert_eq!((s, k), (BigInt::from(6), BigInt::from(2)));
        let (s, k) = square_free_split(&BigInt::from(1_000_003i64 * 1_000_003i64));
        assert_eq!((s, k), (BigInt::from(1_000_003), BigInt::one()));
    }

    #[test]
    fn parse_rational_literals() {
        assert_eq!(parse_rational("3/5"), Some(rat(3, 5)));
        assert_eq!(parse_rational("-4"), Some(int(-4)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("x"), None);
    }
}
