//! Real root isolation with Sturm sequences, and exact arithmetic on the
//! resulting real algebraic numbers.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::scalar::Scalar;
use super::upoly::UPoly;
use super::AlgebraError;

/// Closed rational interval `[lo, hi]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Interval {
    pub lo: BigRational,
    pub hi: BigRational,
}

impl Interval {
    pub fn new(lo: BigRational, hi: BigRational) -> Self {
        debug_assert!(lo <= hi);
        Interval { lo, hi }
    }

    pub fn point(q: BigRational) -> Self {
        Interval { lo: q.clone(), hi: q }
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> BigRational {
        (&self.lo + &self.hi) / BigRational::from_integer(BigInt::from(2))
    }

    pub fn contains(&self, q: &BigRational) -> bool {
        &self.lo <= q && q <= &self.hi
    }

    pub fn overlaps(&self, other: &Interval) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    pub fn add(&self, other: &Interval) -> Interval {
        Interval { lo: &self.lo + &other.lo, hi: &self.hi + &other.hi }
    }

    pub fn neg(&self) -> Interval {
        Interval { lo: -&self.hi, hi: -&self.lo }
    }

    pub fn sub(&self, other: &Interval) -> Interval {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Interval) -> Interval {
        let c = [
            &self.lo * &other.lo,
            &self.lo * &other.hi,
            &self.hi * &other.lo,
            &self.hi * &other.hi,
        ];
        let lo = c.iter().min().unwrap().clone();
        let hi = c.iter().max().unwrap().clone();
        Interval { lo, hi }
    }

    pub fn scale(&self, k: &BigRational) -> Interval {
        self.mul(&Interval::point(k.clone()))
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    /// Enclosure of a scalar no wider than `width`.
    pub fn of_scalar(s: &Scalar, width: &BigRational) -> Interval {
        let (lo, hi) = s.enclosure(width);
        Interval { lo, hi }
    }

    /// `1 / self`; `None` when the interval contains zero.
    pub fn recip(&self) -> Option<Interval> {
        if self.contains_zero() {
            return None;
        }
        Some(Interval { lo: self.hi.recip(), hi: self.lo.recip() })
    }
}

/// Interval Horner evaluation of `p` over `iv`.
pub fn eval_interval(p: &UPoly, iv: &Interval) -> Interval {
    let w = iv.width().max(BigRational::new(BigInt::one(), BigInt::one() << 64));
    let mut acc = Interval::point(BigRational::zero());
    for c in p.coeffs().iter().rev() {
        acc = acc.mul(iv).add(&Interval::of_scalar(c, &w));
    }
    acc
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

/// One real root: either known exactly, or the unique root of its polynomial
/// in the open interval `(lo, hi)` (endpoints are never roots).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum RealRoot {
    Exact(BigRational),
    Isolated(Interval),
}

impl RealRoot {
    pub fn bounds(&self) -> Interval {
        match self {
            RealRoot::Exact(q) => Interval::point(q.clone()),
            RealRoot::Isolated(iv) => iv.clone(),
        }
    }

    /// The exact value, or the midpoint of the isolating interval.
    pub fn to_f64(&self) -> f64 {
        use num_traits::ToPrimitive;
        match self {
            RealRoot::Exact(q) => q.to_f64().unwrap_or(f64::NAN),
            RealRoot::Isolated(iv) => iv.midpoint().to_f64().unwrap_or(f64::NAN),
        }
    }
}

fn sign(v: &BigInt) -> i32 {
    if v.is_positive() {
        1
    } else if v.is_negative() {
        -1
    } else {
        0
    }
}

/// Sign of an integer polynomial (constant term first) at a rational point.
fn int_sign_at(p: &[BigInt], x: &BigRational) -> i32 {
    let Some((top, rest)) = p.split_last() else { return 0 };
    let (num, den) = (x.numer(), x.denom());
    let mut acc = top.clone();
    let mut pw = den.clone();
    for c in rest.iter().rev() {
        acc = acc * num + c * &pw;
        pw *= den;
    }
    sign(&acc)
}

fn int_derivative(p: &[BigInt]) -> Vec<BigInt> {
    p.iter().enumerate().skip(1).map(|(i, c)| c * BigInt::from(i)).collect()
}

fn int_trim(mut p: Vec<BigInt>) -> Vec<BigInt> {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

/// `lc(b)^e · a mod b` with `e = deg a - deg b + 1`, returned with the sign of
/// the true remainder (multiplied by a positive constant).
fn int_prem_signed(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let db = b.len() - 1;
    let lb = b[db].clone();
    let mut r = a.to_vec();
    let mut steps = 0usize;
    while r.len() > db && !r.is_empty() {
        let lr = r.last().unwrap().clone();
        let shift = r.len() - 1 - db;
        for c in r.iter_mut() {
            *c *= &lb;
        }
        for (i, bc) in b.iter().enumerate() {
            r[shift + i] -= bc * &lr;
        }
        r.pop();
        r = int_trim(r);
        steps += 1;
    }
    // every step multiplied by lb; a negative lb raised to an odd power flips the sign
    if lb.is_negative() && steps % 2 == 1 {
        for c in r.iter_mut() {
            *c = -&*c;
        }
    }
    r
}

fn int_primitive_positive(p: Vec<BigInt>) -> Vec<BigInt> {
    let g = p.iter().fold(BigInt::zero(), |acc, v| acc.gcd(v));
    if g.is_zero() || g.is_one() {
        return p;
    }
    p.into_iter().map(|v| v / &g).collect()
}

/// Sturm sequence of a polynomial with rational coefficients.
#[derive(Clone, Debug)]
pub struct SturmSequence {
    seq: Vec<Vec<BigInt>>,
}

impl SturmSequence {
    pub fn new(p: &UPoly) -> Result<Self, AlgebraError> {
        let ints = p.integer_coeffs().ok_or(AlgebraError::NotRational)?;
        if ints.is_empty() {
            return Err(AlgebraError::ZeroPolynomial);
        }
        Ok(Self::from_ints(ints))
    }

    fn from_ints(p: Vec<BigInt>) -> Self {
        let mut seq = vec![p.clone()];
        let d = int_primitive_positive(int_derivative(&p));
        if d.is_empty() {
            return SturmSequence { seq };
        }
        seq.push(d);
        loop {
            let n = seq.len();
            let r = int_prem_signed(&seq[n - 2], &seq[n - 1]);
            if r.is_empty() {
                break;
            }
            let next: Vec<BigInt> = r.into_iter().map(|c| -c).collect();
            seq.push(int_primitive_positive(next));
        }
        SturmSequence { seq }
    }

    fn variations(signs: impl Iterator<Item = i32>) -> usize {
        let mut last = 0;
        let mut count = 0;
        for s in signs {
            if s == 0 {
                continue;
            }
            if last != 0 && s != last {
                count += 1;
            }
            last = s;
        }
        count
    }

    pub fn variations_at(&self, x: &BigRational) -> usize {
        Self::variations(self.seq.iter().map(|p| int_sign_at(p, x)))
    }

    pub fn variations_at_neg_inf(&self) -> usize {
        Self::variations(self.seq.iter().map(|p| {
            let s = sign(p.last().unwrap());
            if (p.len() - 1) % 2 == 1 {
                -s
            } else {
                s
            }
        }))
    }

    pub fn variations_at_pos_inf(&self) -> usize {
        Self::variations(self.seq.iter().map(|p| sign(p.last().unwrap())))
    }

    /// Number of distinct real roots in `(lo, hi]`.
    pub fn count_in(&self, lo: &BigRational, hi: &BigRational) -> usize {
        self.variations_at(lo).saturating_sub(self.variations_at(hi))
    }

    pub fn count_real(&self) -> usize {
        self.variations_at_neg_inf().saturating_sub(self.variations_at_pos_inf())
    }
}

fn two() -> BigRational {
    BigRational::from_integer(BigInt::from(2))
}

/// A power of two strictly above the absolute value of every real root.
fn root_bound(p: &[BigInt]) -> BigRational {
    let lc = p.last().unwrap().abs();
    let m = p[..p.len() - 1].iter().map(|c| c.abs()).max().unwrap_or_default();
    let b = m.div_ceil(&lc) + BigInt::one();
    let mut pw = BigInt::one();
    while pw < b {
        pw <<= 1;
    }
    BigRational::from_integer(pw)
}

fn squarefree_ints(p: &UPoly) -> Result<Vec<BigInt>, AlgebraError> {
    if p.is_zero() {
        return Err(AlgebraError::ZeroPolynomial);
    }
    if !p.is_rational() {
        return Err(AlgebraError::NotRational);
    }
    Ok(p.square_free().integer_coeffs().expect("rational"))
}

/// All real roots of a nonzero polynomial with rational coefficients, in
/// increasing order. Rational roots are reported exactly.
pub fn isolate_real_roots(p: &UPoly) -> Result<Vec<RealRoot>, AlgebraError> {
    if !p.is_rational() {
        return Ok(isolate_general(p)?.into_iter().map(|a| a.root).collect());
    }
    let ints = squarefree_ints(p)?;
    Ok(isolate_ints(&ints))
}

fn isolate_ints(ints: &[BigInt]) -> Vec<RealRoot> {
    if ints.len() <= 1 {
        return Vec::new();
    }
    let sturm = SturmSequence::from_ints(ints.to_vec());
    let b = root_bound(ints);
    let mut found: Vec<RealRoot> = Vec::new();
    let mut stack = vec![(-b.clone(), b)];
    while let Some((lo, hi)) = stack.pop() {
        let n = sturm.count_in(&lo, &hi);
        if n == 0 {
            continue;
        }
        if n == 1 {
            found.push(RealRoot::Isolated(Interval::new(lo, hi)));
            continue;
        }
        let mid = (&lo + &hi) / two();
        if int_sign_at(ints, &mid) != 0 {
            stack.push((lo, mid.clone()));
            stack.push((mid, hi));
            continue;
        }
        found.push(RealRoot::Exact(mid.clone()));
        let mut delta = (&hi - &lo) / BigRational::from_integer(BigInt::from(4));
        loop {
            let (a, c) = (&mid - &delta, &mid + &delta);
            if int_sign_at(ints, &a) != 0 && int_sign_at(ints, &c) != 0 && sturm.count_in(&a, &c) == 1 {
                stack.push((lo.clone(), a));
                stack.push((c, hi.clone()));
                break;
            }
            delta /= two();
        }
    }
    let mut out: Vec<RealRoot> = found
        .into_iter()
        .map(|r| match r {
            RealRoot::Isolated(iv) => exactify(ints, iv),
            e => e,
        })
        .collect();
    out.sort_by(|a, b| a.bounds().lo.cmp(&b.bounds().lo));
    out
}

/// Bisect an isolating interval of a simple root; returns `Exact` if a
/// midpoint hits the root.
fn bisect(ints: &[BigInt], iv: Interval) -> RealRoot {
    let mid = iv.midpoint();
    let sm = int_sign_at(ints, &mid);
    if sm == 0 {
        return RealRoot::Exact(mid);
    }
    if sm == int_sign_at(ints, &iv.lo) {
        RealRoot::Isolated(Interval::new(mid, iv.hi))
    } else {
        RealRoot::Isolated(Interval::new(iv.lo, mid))
    }
}

fn refine_ints(ints: &[BigInt], mut root: RealRoot, width: &BigRational) -> RealRoot {
    while let RealRoot::Isolated(iv) = &root {
        if &iv.width() < width {
            break;
        }
        root = bisect(ints, iv.clone());
    }
    root
}

/// Report a root exactly when it is rational.
fn exactify(ints: &[BigInt], iv: Interval) -> RealRoot {
    let lc = ints.last().unwrap().abs();
    let w = BigRational::new(BigInt::one(), lc.clone());
    let root = refine_ints(ints, RealRoot::Isolated(iv), &w);
    let RealRoot::Isolated(iv) = &root else { return root };
    let l = BigRational::from_integer(lc.clone());
    let start = (&iv.lo * &l).ceil().to_integer();
    let end = (&iv.hi * &l).floor().to_integer();
    let mut n = start;
    while n <= end {
        let cand = BigRational::new(n.clone(), lc.clone());
        if int_sign_at(ints, &cand) == 0 {
            return RealRoot::Exact(cand);
        }
        n += 1;
    }
    root
}

/// A real algebraic number: the unique root of a squarefree rational
/// polynomial inside an isolating interval (or an exact rational).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AlgebraicReal {
    poly: UPoly,
    root: RealRoot,
}

impl AlgebraicReal {
    pub fn from_rational(q: BigRational) -> Self {
        let poly = UPoly::new("x", vec![Scalar::from_rational(-q.clone()), Scalar::one()]).primitive();
        AlgebraicReal { poly, root: RealRoot::Exact(q) }
    }

    /// `poly` must be squarefree with rational coefficients and have exactly one
    /// root in `root`'s interval, none at the endpoints.
    pub fn new(poly: UPoly, root: RealRoot) -> Self {
        AlgebraicReal { poly: poly.primitive(), root }
    }

    /// All real roots of `p` as algebraic numbers, in increasing order.
    pub fn roots_of(p: &UPoly) -> Result<Vec<AlgebraicReal>, AlgebraError> {
        if !p.is_rational() {
            return isolate_general(p);
        }
        let sf = p.square_free().primitive();
        Ok(isolate_real_roots(&sf)?
            .into_iter()
            .map(|r| match r {
                RealRoot::Exact(q) => AlgebraicReal::from_rational(q),
                iso => AlgebraicReal { poly: sf.clone(), root: iso },
            })
            .collect())
    }

    pub fn poly(&self) -> &UPoly {
        &self.poly
    }

    pub fn root(&self) -> &RealRoot {
        &self.root
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match &self.root {
            RealRoot::Exact(q) => Some(q),
            RealRoot::Isolated(_) => None,
        }
    }

    pub fn bounds(&self) -> Interval {
        self.root.bounds()
    }

    /// Floating-point approximation, for reporting only.
    pub fn to_f64(&self) -> f64 {
        let mut me = self.clone();
        me.refine_to(&BigRational::new(BigInt::one(), BigInt::one() << 64));
        me.root.to_f64()
    }

    fn ints(&self) -> Vec<BigInt> {
        self.poly.integer_coeffs().expect("rational defining polynomial")
    }

    /// Shrink the isolating interval below `width`.
    pub fn refine_to(&mut self, width: &BigRational) {
        if let RealRoot::Isolated(_) = self.root {
            let ints = self.ints();
            self.root = refine_ints(&ints, self.root.clone(), width);
            if let RealRoot::Exact(q) = &self.root {
                *self = AlgebraicReal::from_rational(q.clone());
            }
        }
    }

    fn halve(&mut self) {
        let w = self.bounds().width() / two();
        self.refine_to(&w);
    }

    /// Exact sign of `q(α)`.
    pub fn sign_of(&self, q: &UPoly) -> i32 {
        if q.is_zero() {
            return 0;
        }
        if !q.is_rational() {
            return self.sign_of_quadratic(q);
        }
        if let RealRoot::Exact(r) = &self.root {
            return q.sign_at(r);
        }
        let g = self.poly.gcd(&q.with_var(self.poly.var()));
        let iv = self.bounds();
        if g.degree().unwrap_or(0) > 0 {
            let s = SturmSequence::new(&g).expect("rational gcd");
            if s.count_in(&iv.lo, &iv.hi) > 0 {
                return 0;
            }
        }
        let qs = SturmSequence::new(&q.square_free()).expect("rational");
        let mut me = self.clone();
        loop {
            if let RealRoot::Exact(r) = &me.root {
                return q.sign_at(r);
            }
            let iv = me.bounds();
            let at_lo = q.sign_at(&iv.lo);
            if at_lo != 0 && qs.count_in(&iv.lo, &iv.hi) == 0 {
                return at_lo;
            }
            me.halve();
        }
    }

    /// Sign of `A(α) + sqrt(k)·B(α)` for `q = A + sqrt(k)·B`.
    fn sign_of_quadratic(&self, q: &UPoly) -> i32 {
        let (a, b, k) = split_quadratic(q);
        let sa = self.sign_of(&a);
        let sb = self.sign_of(&b);
        if sb == 0 {
            return sa;
        }
        if sa == 0 || sa == sb {
            return if sa == 0 { sb } else { sa };
        }
        let kk = Scalar::from_bigint(k);
        let diff = a.mul(&a).sub(&b.mul(&b).scale(&kk));
        match self.sign_of(&diff) {
            0 => 0,
            s if s > 0 => sa,
            _ => sb,
        }
    }

    pub fn is_root_of(&self, q: &UPoly) -> bool {
        self.sign_of(q) == 0
    }

    /// Exact comparison of two algebraic numbers.
    pub fn cmp_exact(&self, other: &AlgebraicReal) -> Ordering {
        if let (Some(a), Some(b)) = (self.as_rational(), other.as_rational()) {
            return a.cmp(b);
        }
        if let Some(a) = self.as_rational() {
            return other.cmp_rational(a).reverse();
        }
        if let Some(b) = other.as_rational() {
            return self.cmp_rational(b);
        }
        let (ia, ib) = (self.bounds(), other.bounds());
        if ia.overlaps(&ib) {
            let g = self.poly.gcd(&other.poly.with_var(self.poly.var()));
            if g.degree().unwrap_or(0) > 0 {
                let lo = (&ia.lo).max(&ib.lo);
                let hi = (&ia.hi).min(&ib.hi);
                if lo < hi {
                    let s = SturmSequence::new(&g).expect("rational");
                    if s.count_in(lo, hi) > 0 {
                        return Ordering::Equal;
                    }
                }
            }
        }
        let (mut a, mut b) = (self.clone(), other.clone());
        loop {
            let (ia, ib) = (a.bounds(), b.bounds());
            if ia.hi < ib.lo {
                return Ordering::Less;
            }
            if ib.hi < ia.lo {
                return Ordering::Greater;
            }
            if let (Some(x), Some(y)) = (a.as_rational(), b.as_rational()) {
                return x.cmp(y);
            }
            if ia.width() >= ib.width() {
                a.halve();
            } else {
                b.halve();
            }
        }
    }

    pub fn cmp_rational(&self, q: &BigRational) -> Ordering {
        let lin = UPoly::new(self.poly.var(), vec![Scalar::from_rational(-q.clone()), Scalar::one()]);
        match self.sign_of(&lin) {
            0 => Ordering::Equal,
            s if s > 0 => Ordering::Greater,
            _ => Ordering::Less,
        }
    }
}

impl fmt::Display for AlgebraicReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.root {
            RealRoot::Exact(q) => write!(f, "{q}"),
            RealRoot::Isolated(iv) => write!(f, "root of {} in {}", self.poly, iv),
        }
    }
}

/// Split `q` over ℚ(√k) as `A + √k·B` with rational `A`, `B`.
fn split_quadratic(q: &UPoly) -> (UPoly, UPoly, BigInt) {
    let k = q
        .coeffs()
        .iter()
        .find_map(|c| c.radicand().cloned())
        .expect("non-rational polynomial has a radicand");
    let a = q.coeffs().iter().map(|c| Scalar::from_rational(c.rational_part().clone())).collect();
    let b = q.coeffs().iter().map(|c| Scalar::from_rational(c.surd_coeff())).collect();
    (UPoly::new(q.var(), a), UPoly::new(q.var(), b), k)
}

/// Roots of a polynomial over ℚ(√k): isolate the roots of its norm and keep
/// those where the polynomial itself vanishes.
fn isolate_general(p: &UPoly) -> Result<Vec<AlgebraicReal>, AlgebraError> {
    if p.is_zero() {
        return Err(AlgebraError::ZeroPolynomial);
    }
    let conj = UPoly::new(p.var(), p.coeffs().iter().map(Scalar::conjugate).collect());
    let norm = p.mul(&conj);
    let cands = AlgebraicReal::roots_of(&norm)?;
    Ok(cands.into_iter().filter(|a| a.is_root_of(p)).collect())
}

/// Classification of a real root by the smallest field it is written in.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExactRoot {
    Rational(BigRational),
    /// Irrational root in some ℚ(√k).
    Quadratic(Scalar),
    /// Root of an irreducible factor of degree at least three.
    Other(AlgebraicReal),
}

impl ExactRoot {
    pub fn to_f64(&self) -> f64 {
        match self {
            ExactRoot::Rational(q) => Scalar::from_rational(q.clone()).to_f64(),
            ExactRoot::Quadratic(s) => s.to_f64(),
            ExactRoot::Other(a) => a.to_f64(),
        }
    }
}

/// Real roots of a rational polynomial in increasing order, written exactly
/// whenever they have degree at most two over ℚ.
pub fn exact_real_roots(p: &UPoly) -> Result<Vec<ExactRoot>, AlgebraError> {
    let ints = squarefree_ints(p)?;
    let roots = isolate_ints(&ints);
    let sf = UPoly::new(p.var(), ints.iter().cloned().map(Scalar::from_bigint).collect());
    let mut rest = sf.clone();
    for r in &roots {
        if let RealRoot::Exact(q) = r {
            let lin = UPoly::new(p.var(), vec![Scalar::from_rational(-q.clone()), Scalar::one()]);
            rest = rest.div_rem(&lin).expect("nonzero").0;
        }
    }
    let rest = rest.primitive();
    let ell = rest.integer_coeffs().and_then(|c| c.last().cloned()).unwrap_or_else(BigInt::one);

    let mut out: Vec<Option<ExactRoot>> = roots
        .iter()
        .map(|r| match r {
            RealRoot::Exact(q) => Some(ExactRoot::Rational(q.clone())),
            RealRoot::Isolated(_) => None,
        })
        .collect();
    let open: Vec<usize> = (0..roots.len()).filter(|&i| out[i].is_none()).collect();
    let mut alg: Vec<AlgebraicReal> = open
        .iter()
        .map(|&i| AlgebraicReal { poly: sf.clone(), root: roots[i].clone() })
        .collect();
    for x in 0..open.len() {
        if out[open[x]].is_some() {
            continue;
        }
        for y in x + 1..open.len() {
            if out[open[y]].is_some() {
                continue;
            }
            if let Some((lo, hi)) = quadratic_pair(&rest, &ell, &mut alg, x, y) {
                out[open[x]] = Some(ExactRoot::Quadratic(lo));
                out[open[y]] = Some(ExactRoot::Quadratic(hi));
                break;
            }
        }
    }
    Ok(out
        .into_iter()
        .zip(alg_iter(&open, alg, roots.len()))
        .map(|(e, a)| e.unwrap_or_else(|| ExactRoot::Other(a.expect("isolated root"))))
        .collect())
}

fn alg_iter(open: &[usize], alg: Vec<AlgebraicReal>, n: usize) -> Vec<Option<AlgebraicReal>> {
    let mut v: Vec<Option<AlgebraicReal>> = vec![None; n];
    for (i, a) in open.iter().zip(alg) {
        v[*i] = Some(a);
    }
    v
}

/// If roots `x < y` are the two roots of one rational quadratic factor of
/// `rest`, return them as ℚ(√k) numbers (smaller first).
fn quadratic_pair(
    rest: &UPoly,
    ell: &BigInt,
    alg: &mut [AlgebraicReal],
    x: usize,
    y: usize,
) -> Option<(Scalar, Scalar)> {
    let l = BigRational::from_integer(ell.clone());
    let one = BigRational::one();
    loop {
        let (ia, ib) = (alg[x].bounds(), alg[y].bounds());
        let s = ia.add(&ib).scale(&l);
        let pr = ia.mul(&ib).scale(&l);
        if s.width() < one && pr.width() < one {
            let ss = integers_in(&s);
            let ps = integers_in(&pr);
            for sv in &ss {
                for pv in &ps {
                    let quad = UPoly::new(
                        rest.var(),
                        vec![
                            Scalar::from_bigint(pv.clone()),
                            Scalar::from_bigint(-sv.clone()),
                            Scalar::from_bigint(ell.clone()),
                        ],
                    );
                    if !rest.rem(&quad).ok()?.is_zero() {
                        continue;
                    }
                    let disc = BigRational::from_integer(sv * sv - BigInt::from(4) * ell * pv);
                    let root = Scalar::sqrt_rational(&disc).ok()?;
                    if root.is_rational() {
                        continue;
                    }
                    let half = Scalar::from_rational(BigRational::new(sv.clone(), ell * 2));
                    let d = &root * &Scalar::from_rational(BigRational::new(BigInt::one(), ell * 2));
                    let (lo, hi) = (&half - &d, &half + &d);
                    if alg[x].is_root_of(&quad) && alg[y].is_root_of(&quad) {
                        return Some((lo, hi));
                    }
                }
            }
            return None;
        }
        if ia.width() >= ib.width() {
            alg[x].halve();
        } else {
            alg[y].halve();
        }
        if alg[x].as_rational().is_some() || alg[y].as_rational().is_some() {
            return None;
        }
    }
}

fn integers_in(iv: &Interval) -> Vec<BigInt> {
    let mut v = Vec::new();
    let mut n = iv.lo.ceil().to_integer();
    let end = iv.hi.floor().to_integer();
    while n <= end {
        v.push(n.clone());
        n += 1;
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::scalar::rat;

    fn up(c: &[i64]) -> UPoly {
        UPoly::from_ints("x", c)
    }

    #[test]
    fn isolates_and_detects_rationals() {
        // (x^2 - 2)(2x - 1)(x + 3)
        let roots = isolate_real_roots(&up(&[-2, 0, 1]).mul(&up(&[-1, 2])).mul(&up(&[3, 1]))).unwrap();
        assert_eq!(roots.len(), 4);
        assert_eq!(roots[0], RealRoot::Exact(rat(-3, 1)));
        assert!(matches!(roots[1], RealRoot::Isolated(_)));
        assert_eq!(roots[2], RealRoot::Exact(rat(1, 2)));
    }

    #[test]
    fn sturm_counts() {
        let s = SturmSequence::new(&up(&[0, -1, 0, 1])).unwrap();
        assert_eq!(s.count_real(), 3);
        assert_eq!(s.count_in(&rat(-1, 2), &rat(1, 2)), 1);
    }

    #[test]
    fn exact_classification() {
        // (x^2 - 2)(x - 1)(x^3 - 2)
        let p = up(&[-2, 0, 1]).mul(&up(&[-1, 1])).mul(&up(&[-2, 0, 0, 1]));
        let r = exact_real_roots(&p).unwrap();
        assert_eq!(r.len(), 4);
        assert_eq!(r[0], ExactRoot::Quadratic(Scalar::quadratic(rat(0, 1), rat(-1, 1), 2.into()).unwrap()));
        assert_eq!(r[1], ExactRoot::Rational(rat(1, 1)));
        assert!(matches!(r[2], ExactRoot::Other(_)));
        assert_eq!(r[3], ExactRoot::Quadratic(Scalar::quadratic(rat(0, 1), rat(1, 1), 2.into()).unwrap()));
    }

    #[test]
    fn signs_and_comparisons() {
        let a = &AlgebraicReal::roots_of(&up(&[-2, 0, 1])).unwrap()[1]; // sqrt 2
        assert_eq!(a.sign_of(&up(&[-2, 0, 1])), 0);
        assert_eq!(a.sign_of(&up(&[-3, 2])), -1); // 2√2 - 3 < 0
        assert_eq!(a.sign_of(&up(&[-4, 3])), 1);
        let b = &AlgebraicReal::roots_of(&up(&[-8, 0, 1])).unwrap()[1]; // 2√2
        assert_eq!(a.cmp_exact(b), Ordering::Less);
        let c = &AlgebraicReal::roots_of(&up(&[-2, 0, 1]).mul(&up(&[-5, 1]))).unwrap()[1];
        assert_eq!(a.cmp_exact(c), Ordering::Equal);
        // √2 - √2 = 0 via the quadratic-field sign path
        let s2 = Scalar::quadratic(rat(0, 1), rat(1, 1), 2.into()).unwrap();
        let q = UPoly::new("x", vec![-s2, Scalar::one()]);
        assert_eq!(a.sign_of(&q), 0);
    }

    #[test]
    fn roots_over_quadratic_field() {
        let s2 = Scalar::quadratic(rat(0, 1), rat(1, 1), 2.into()).unwrap();
        let q = UPoly::new("x", vec![-s2, Scalar::one()]);
        let r = AlgebraicReal::roots_of(&q).unwrap();
        assert_eq!(r.len(), 1);
        assert!((r[0].to_f64() - 2f64.sqrt()).abs() < 1e-9);
    }
}
