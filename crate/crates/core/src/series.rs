//! Exact truncated Laurent series in `q`.
//!
//! A [`LaurentSeries`] stores a contiguous run of coefficients starting at
//! exponent `start` and is known modulo `O(q^precision)` with
//! `precision = start + coeffs.len()`. Arithmetic tracks precision: a sum is
//! known up to the smaller precision, and a product `f g` with valuations
//! `v_f, v_g` is known up to `min(v_f + prec_g, v_g + prec_f)`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::cyclotomic::Cyclotomic;
use crate::error::{Error, Result};

/// Ring operations needed by series coefficients.
pub trait Coefficient: Clone + PartialEq + fmt::Debug + fmt::Display {
    fn zero_coefficient() -> Self;
    fn unit() -> Self;
    fn vanishes(&self) -> bool;
    fn plus(&self, other: &Self) -> Self;
    fn minus(&self, other: &Self) -> Self;
    fn times(&self, other: &Self) -> Self;
    fn negated(&self) -> Self;
}

impl Coefficient for BigRational {
    fn zero_coefficient() -> Self {
        Zero::zero()
    }
    fn unit() -> Self {
        One::one()
    }
    fn vanishes(&self) -> bool {
        Zero::is_zero(self)
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn minus(&self, other: &Self) -> Self {
        self - other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn negated(&self) -> Self {
        -self
    }
}

impl Coefficient for Cyclotomic {
    fn zero_coefficient() -> Self {
        Cyclotomic::zero()
    }
    fn unit() -> Self {
        Cyclotomic::one()
    }
    fn vanishes(&self) -> bool {
        Cyclotomic::is_zero(self)
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn minus(&self, other: &Self) -> Self {
        self - other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn negated(&self) -> Self {
        -self
    }
}

/// `sum_{k >= start} c_k q^k + O(q^precision)`.
#[derive(Clone, Debug)]
pub struct LaurentSeries<C = BigRational> {
    start: i64,
    coeffs: Vec<C>,
}

impl<C: Coefficient> LaurentSeries<C> {
    pub fn new(start: i64, coeffs: Vec<C>) -> Self {
        Self { start, coeffs }
    }

    /// `O(q^precision)`.
    pub fn zero(precision: i64) -> Self {
        Self {
            start: precision,
            coeffs: Vec::new(),
        }
    }

    /// `c q^exponent + O(q^precision)`; zero if `exponent >= precision`.
    pub fn monomial(c: C, exponent: i64, precision: i64) -> Self {
        if exponent >= precision {
            return Self::zero(precision);
        }
        let mut coeffs = vec![C::zero_coefficient(); (precision - exponent) as usize];
        coeffs[0] = c;
        Self {
            start: exponent,
            coeffs,
        }
    }

    /// First stored exponent (not necessarily a nonzero coefficient).
    pub fn start(&self) -> i64 {
        self.start
    }

    /// Exclusive bound of the known range: the series is known mod `q^precision`.
    pub fn precision(&self) -> i64 {
        self.start + self.coeffs.len() as i64
    }

    /// Coefficient of `q^k`, or `None` when `k` is beyond the known range.
    pub fn coefficient(&self, k: i64) -> Option<C> {
        if k >= self.precision() {
            None
        } else if k < self.start {
            Some(C::zero_coefficient())
        } else {
            Some(self.coeffs[(k - self.start) as usize].clone())
        }
    }

    /// Like [`Self::coefficient`] but reports the missing exponent as an error.
    pub fn coeff(&self, k: i64) -> Result<C> {
        self.coefficient(k).ok_or(Error::InsufficientPrecision(k))
    }

    /// Exponent of the first nonzero coefficient in the known range.
    pub fn valuation(&self) -> Option<i64> {
        self.coeffs
            .iter()
            .position(|c| !c.vanishes())
            .map(|i| self.start + i as i64)
    }

    /// Nonzero terms `(exponent, coefficient)` in increasing order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &C)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.vanishes())
            .map(move |(i, c)| (self.start + i as i64, c))
    }

    /// Every `(exponent, coefficient)` in the known range, zeros included.
    pub fn coefficients(&self) -> impl Iterator<Item = (i64, &C)> {
        self.coeffs
            .iter()
            .enumerate()
            .map(move |(i, c)| (self.start + i as i64, c))
    }

    /// Forgets everything at or above `precision`.
    pub fn truncate(&self, precision: i64) -> Self {
        if precision >= self.precision() {
            return self.clone();
        }
        if precision <= self.start {
            return Self::zero(precision);
        }
        Self {
            start: self.start,
            coeffs: self.coeffs[..(precision - self.start) as usize].to_vec(),
        }
    }

    /// Drops leading zero coefficients.
    pub fn trimmed(&self) -> Self {
        match self.valuation() {
            Some(v) => Self {
                start: v,
                coeffs: self.coeffs[(v - self.start) as usize..].to_vec(),
            },
            None => Self::zero(self.precision()),
        }
    }

    /// Multiplication by `q^k`.
    pub fn shift(&self, k: i64) -> Self {
        Self {
            start: self.start + k,
            coeffs: self.coeffs.clone(),
        }
    }

    pub fn scale(&self, c: &C) -> Self {
        Self {
            start: self.start,
            coeffs: self.coeffs.iter().map(|x| x.times(c)).collect(),
        }
    }

    /// Substitutes `q -> q^m`.
    pub fn substitute_power(&self, m: u32) -> Self {
        assert!(m >= 1);
        let m = m as usize;
        let mut coeffs = vec![C::zero_coefficient(); self.coeffs.len() * m];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i * m] = c.clone();
        }
        Self {
            start: self.start * m as i64,
            coeffs,
        }
    }

    pub fn map<D: Coefficient>(&self, f: impl Fn(&C) -> D) -> LaurentSeries<D> {
        LaurentSeries {
            start: self.start,
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.valuation().is_none()
    }

    /// Coefficientwise equality on `[min start, bound)`; fails if either
    /// series is not known that far.
    pub fn agrees_below(&self, other: &Self, bound: i64) -> Result<bool> {
        for s in [self, other] {
            if s.precision() < bound {
                return Err(Error::InsufficientPrecision(s.precision()));
            }
        }
        let lo = self.start.min(other.start);
        Ok((lo..bound).all(|k| self.coefficient(k) == other.coefficient(k)))
    }

    fn combine(&self, other: &Self, f: impl Fn(&C, &C) -> C) -> Self {
        let start = self.start.min(other.start);
        let precision = self.precision().min(other.precision());
        if precision <= start {
            return Self::zero(precision);
        }
        let zero = C::zero_coefficient();
        let coeffs = (start..precision)
            .map(|k| {
                let a = self.coeff_or(k, &zero);
                let b = other.coeff_or(k, &zero);
                f(a, b)
            })
            .collect();
        Self { start, coeffs }
    }

    fn coeff_or<'a>(&'a self, k: i64, zero: &'a C) -> &'a C {
        if k < self.start || k >= self.precision() {
            zero
        } else {
            &self.coeffs[(k - self.start) as usize]
        }
    }

    fn product(&self, other: &Self) -> Self {
        let va = self.valuation().unwrap_or(self.precision());
        let vb = other.valuation().unwrap_or(other.precision());
        let precision = (va + other.precision()).min(vb + self.precision());
        let start = va + vb;
        if precision <= start {
            return Self::zero(precision);
        }
        let len = (precision - start) as usize;
        let mut coeffs = vec![C::zero_coefficient(); len];
        let a_off = (va - self.start) as usize;
        let b_off = (vb - other.start) as usize;
        let a = &self.coeffs[a_off.min(self.coeffs.len())..];
        let b = &other.coeffs[b_off.min(other.coeffs.len())..];
        for (i, x) in a.iter().enumerate().take(len) {
            if x.vanishes() {
                continue;
            }
            for (j, y) in b.iter().enumerate().take(len - i) {
                if !y.vanishes() {
                    coeffs[i + j] = coeffs[i + j].plus(&x.times(y));
                }
            }
        }
        Self { start, coeffs }
    }
}

impl<C: Coefficient> PartialEq for LaurentSeries<C> {
    /// Equality over the range where both series are known.
    fn eq(&self, other: &Self) -> bool {
        let lo = self.start.min(other.start);
        let hi = self.precision().min(other.precision());
        (lo..hi).all(|k| self.coefficient(k) == other.coefficient(k))
    }
}

impl<C: Coefficient> Add for &LaurentSeries<C> {
    type Output = LaurentSeries<C>;
    fn add(self, rhs: Self) -> LaurentSeries<C> {
        self.combine(rhs, C::plus)
    }
}

impl<C: Coefficient> Sub for &LaurentSeries<C> {
    type Output = LaurentSeries<C>;
    fn sub(self, rhs: Self) -> LaurentSeries<C> {
        self.combine(rhs, C::minus)
    }
}

impl<C: Coefficient> Mul for &LaurentSeries<C> {
    type Output = LaurentSeries<C>;
    fn mul(self, rhs: Self) -> LaurentSeries<C> {
        self.product(rhs)
    }
}

impl<C: Coefficient> Neg for &LaurentSeries<C> {
    type Output = LaurentSeries<C>;
    fn neg(self) -> LaurentSeries<C> {
        LaurentSeries {
            start: self.start,
            coeffs: self.coeffs.iter().map(C::negated).collect(),
        }
    }
}

impl LaurentSeries<BigRational> {
    /// Integer coefficients starting at `start`; precision `start + len`.
    pub fn from_integers(start: i64, coeffs: &[i64]) -> Self {
        Self::new(
            start,
            coeffs
                .iter()
                .map(|&c| BigRational::from_integer(c.into()))
                .collect(),
        )
    }

    pub fn from_bigints(start: i64, coeffs: Vec<BigInt>) -> Self {
        Self::new(start, coeffs.into_iter().map(BigRational::from_integer).collect())
    }

    /// Adds a rational constant.
    pub fn add_constant(&self, c: i64) -> Self {
        let mut out = self.clone();
        if out.precision() <= 0 {
            return out;
        }
        if out.start > 0 {
            let pad = out.start as usize;
            out.coeffs.splice(0..0, std::iter::repeat_n(<BigRational as Zero>::zero(), pad));
            out.start = 0;
        }
        let idx = (-out.start) as usize;
        out.coeffs[idx] += BigRational::from_integer(c.into());
        out
    }

    /// Multiplicative inverse; needs a nonzero coefficient in the known range.
    pub fn inverse(&self) -> Result<Self> {
        let v = self.valuation().ok_or(Error::NotInvertible)?;
        let unit = &self.coeffs[(v - self.start) as usize..];
        let len = unit.len();
        let inv0 = unit[0].recip();
        let mut out: Vec<BigRational> = Vec::with_capacity(len);
        out.push(inv0.clone());
        for n in 1..len {
            let mut acc = <BigRational as Zero>::zero();
            for k in 1..=n {
                if !Zero::is_zero(&unit[k]) {
                    acc += &unit[k] * &out[n - k];
                }
            }
            out.push(-acc * &inv0);
        }
        Ok(Self {
            start: -v,
            coeffs: out,
        })
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self * &other.inverse()?)
    }

    /// Integer power; negative exponents go through [`Self::inverse`].
    pub fn pow(&self, n: i64) -> Result<Self> {
        let base = if n < 0 { self.inverse()? } else { self.clone() };
        let mut k = n.unsigned_abs();
        if k == 0 {
            let rel = match self.valuation() {
                Some(v) => self.precision() - v,
                None => return Err(Error::NotInvertible),
            };
            return Ok(Self::monomial(<BigRational as One>::one(), 0, rel));
        }
        let mut acc: Option<Self> = None;
        let mut sq = base;
        loop {
            if k & 1 == 1 {
                acc = Some(match acc {
                    Some(a) => &a * &sq,
                    None => sq.clone(),
                });
            }
            k >>= 1;
            if k == 0 {
                break;
            }
            sq = &sq * &sq;
        }
        Ok(acc.expect("k > 0"))
    }

    /// All known coefficients are integers.
    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    /// Integer coefficients, or `None` if some coefficient is fractional.
    pub fn integer_coefficients(&self) -> Option<Vec<(i64, BigInt)>> {
        self.coefficients()
            .map(|(k, c)| c.is_integer().then(|| (k, c.to_integer())))
            .collect()
    }

    pub fn to_cyclotomic(&self) -> LaurentSeries<Cyclotomic> {
        self.map(|c| Cyclotomic::rational(c.clone()))
    }
}

impl LaurentSeries<Cyclotomic> {
    /// The same series over `Q`, if every known coefficient is rational.
    pub fn to_rational(&self) -> Option<LaurentSeries<BigRational>> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| c.to_rational().cloned())
            .collect::<Option<Vec<_>>>()?;
        Some(LaurentSeries::new(self.start, coeffs))
    }

    /// Coefficientwise complex conjugate.
    pub fn conj(&self) -> Self {
        self.map(Cyclotomic::conj)
    }
}

impl<C: Coefficient> fmt::Display for LaurentSeries<C> {
    /// Renders as `q^-1 + 196884q + ... + O(q^N)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.terms() {
            let mut text = c.to_string();
            let negative = text.starts_with('-') && !text[1..].contains(['+', '-']);
            if negative {
                text.remove(0);
            }
            if text.contains(['+', '-', '*']) {
                text = format!("({text})");
            }
            let mono = match k {
                0 => String::new(),
                1 => "q".to_string(),
                _ => format!("q^{k}"),
            };
            let body = match (text.as_str(), mono.is_empty()) {
                (_, true) => text.clone(),
                ("1", false) => mono.clone(),
                (_, false) => format!("{text}{mono}"),
            };
            match (first, negative) {
                (true, true) => write!(f, "-{body}")?,
                (true, false) => write!(f, "{body}")?,
                (false, true) => write!(f, " - {body}")?,
                (false, false) => write!(f, " + {body}")?,
            }
            first = false;
        }
        if !first {
            write!(f, " + ")?;
        }
        write!(f, "O(q^{})", self.precision())
    }
}

/// `a/b` as an exact rational.
pub fn rational(a: i64, b: i64) -> BigRational {
    BigRational::new(a.into(), b.into())
}

/// Coefficient rendered as a plain decimal string when integral, `p/q` otherwise.
pub fn render_rational(c: &BigRational) -> String {
    if c.is_integer() {
        c.to_integer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom().abs())
    }
}
