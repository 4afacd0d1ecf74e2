//! Exact arithmetic in cyclotomic fields `Q(zeta_m)`.
//!
//! An element is stored in the power basis `1, z, .., z^(phi(m)-1)` of
//! `Q(zeta_m)`, reduced modulo the `m`-th cyclotomic polynomial. Elements with
//! different moduli are combined by embedding both into `Q(zeta_lcm)`.
//! Rational values are always normalized to modulus 1, so the common case of
//! integer character values never touches polynomial arithmetic.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::Value;

use crate::error::{Error, Result};

/// Integer coefficients of the `m`-th cyclotomic polynomial, lowest degree first.
pub fn cyclotomic_polynomial(m: u32) -> Arc<Vec<i64>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<Vec<i64>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(p) = cache.lock().unwrap().get(&m) {
        return Arc::clone(p);
    }
    assert!(m >= 1, "cyclotomic modulus must be positive");
    // x^m - 1 divided by every Phi_d with d | m, d < m
    let mut num = vec![0i64; m as usize + 1];
    num[0] = -1;
    num[m as usize] = 1;
    for d in 1..m {
        if m.is_multiple_of(d) {
            num = divide_monic(&num, &cyclotomic_polynomial(d));
        }
    }
    let p = Arc::new(num);
    cache.lock().unwrap().insert(m, Arc::clone(&p));
    p
}

fn divide_monic(num: &[i64], den: &[i64]) -> Vec<i64> {
    let dn = den.len() - 1;
    let mut rem = num.to_vec();
    let mut quot = vec![0i64; num.len() - dn];
    for k in (0..quot.len()).rev() {
        let c = rem[k + dn];
        quot[k] = c;
        for (i, &d) in den.iter().enumerate() {
            rem[k + i] -= c * d;
        }
    }
    debug_assert!(rem.iter().all(|&x| x == 0), "inexact cyclotomic division");
    quot
}

/// Euler's totient, the degree of `Q(zeta_m)` over `Q`.
pub fn totient(m: u32) -> usize {
    cyclotomic_polynomial(m).len() - 1
}

/// An exact element of `Q(zeta_m)`.
#[derive(Clone, Debug)]
pub struct Cyclotomic {
    modulus: u32,
    coeffs: Vec<BigRational>,
}

impl Cyclotomic {
    pub fn zero() -> Self {
        Self::rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Self::from_integer(1)
    }

    pub fn from_integer(n: i64) -> Self {
        Self::rational(BigRational::from_integer(n.into()))
    }

    pub fn rational(q: BigRational) -> Self {
        Self {
            modulus: 1,
            coeffs: vec![q],
        }
    }

    /// `zeta_m^k` with `zeta_m = exp(2 pi i / m)`.
    pub fn root_of_unity(m: u32, k: i64) -> Self {
        assert!(m >= 1);
        let k = k.rem_euclid(i64::from(m)) as usize;
        let mut poly = vec![BigRational::zero(); m as usize];
        poly[k] = BigRational::one();
        Self::from_power_coeffs(m, poly)
    }

    /// Element `sum_k coeffs[k] zeta_m^k`; any length is accepted and reduced.
    pub fn from_power_coeffs(m: u32, coeffs: Vec<BigRational>) -> Self {
        assert!(m >= 1);
        let mut folded = vec![BigRational::zero(); m as usize];
        for (k, c) in coeffs.into_iter().enumerate() {
            if !c.is_zero() {
                folded[k % m as usize] += c;
            }
        }
        let mut out = Self {
            modulus: m,
            coeffs: reduce(folded, m),
        };
        out.normalize();
        out
    }

    /// Sum of roots of unity `zeta_m^k` with integer multiplicities.
    pub fn from_root_multiplicities(m: u32, mult: &[i64]) -> Self {
        let coeffs = mult
            .iter()
            .map(|&c| BigRational::from_integer(c.into()))
            .collect();
        Self::from_power_coeffs(m, coeffs)
    }

    fn normalize(&mut self) {
        if self.modulus != 1 && self.coeffs.iter().skip(1).all(Zero::is_zero) {
            let c0 = self.coeffs.swap_remove(0);
            self.modulus = 1;
            self.coeffs = vec![c0];
        }
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    /// Power-basis coordinates, length `phi(modulus)`.
    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.is_rational() && self.coeffs[0].is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.is_rational() && self.coeffs[0].is_one()
    }

    pub fn is_rational(&self) -> bool {
        self.modulus == 1 || self.coeffs.iter().skip(1).all(Zero::is_zero)
    }

    pub fn to_rational(&self) -> Option<&BigRational> {
        self.is_rational().then(|| &self.coeffs[0])
    }

    pub fn to_integer(&self) -> Option<BigInt> {
        self.to_rational()
            .filter(|q| q.is_integer())
            .map(|q| q.to_integer())
    }

    /// Same value expressed in `Q(zeta_target)`; `modulus` must divide `target`.
    pub fn lift_to(&self, target: u32) -> Self {
        assert!(
            target.is_multiple_of(self.modulus),
            "cannot embed Q(zeta_{}) in Q(zeta_{target})",
            self.modulus
        );
        if target == self.modulus {
            return self.clone();
        }
        let step = (target / self.modulus) as usize;
        let mut poly = vec![BigRational::zero(); target as usize];
        for (k, c) in self.coeffs.iter().enumerate() {
            poly[k * step] = c.clone();
        }
        Self {
            modulus: target,
            coeffs: reduce(poly, target),
        }
    }

    fn common(&self, other: &Self) -> (std::borrow::Cow<'_, Self>, Self, u32) {
        let m = self.modulus.lcm(&other.modulus);
        let a = if m == self.modulus {
            std::borrow::Cow::Borrowed(self)
        } else {
            std::borrow::Cow::Owned(self.lift_to(m))
        };
        (a, other.lift_to(m), m)
    }

    /// Complex conjugate: `zeta_m -> zeta_m^-1`.
    pub fn conj(&self) -> Self {
        if self.is_rational() {
            return self.clone();
        }
        let m = self.modulus as usize;
        let mut poly = vec![BigRational::zero(); m];
        for (k, c) in self.coeffs.iter().enumerate() {
            poly[(m - k) % m] = c.clone();
        }
        Self::from_power_coeffs(self.modulus, poly)
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        if q.is_zero() {
            return Self::zero();
        }
        Self {
            modulus: self.modulus,
            coeffs: self.coeffs.iter().map(|c| c * q).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Lexicographic comparison of power-basis coordinates after embedding
    /// both values in `Q(zeta_modulus)`.
    pub fn cmp_in(&self, other: &Self, modulus: u32) -> Ordering {
        let a = self.lift_to(modulus);
        let b = other.lift_to(modulus);
        a.coeffs.cmp(&b.coeffs)
    }

    /// Numerical value as `(re, im)`, for display and sanity checks only.
    pub fn to_complex(&self) -> (f64, f64) {
        let m = f64::from(self.modulus);
        self.coeffs
            .iter()
            .enumerate()
            .fold((0.0, 0.0), |(re, im), (k, c)| {
                let x = c.to_f64().unwrap_or(f64::NAN);
                let t = std::f64::consts::TAU * k as f64 / m;
                (re + x * t.cos(), im + x * t.sin())
            })
    }

    /// JSON form: decimal string for rationals, else `{"m": .., "coeffs": [..]}`.
    pub fn to_json(&self) -> Value {
        match self.to_rational() {
            Some(q) => Value::String(q.to_string()),
            None => serde_json::json!({
                "m": self.modulus.to_string(),
                "coeffs": self.coeffs.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
            }),
        }
    }

    /// Accepts a JSON integer, a string rational `"p"`/`"p/q"`, or
    /// `{"m": int, "coeffs": [string rational]}`.
    pub fn from_json(v: &Value) -> Result<Self> {
        match v {
            Value::Number(n) => n
                .as_i64()
                .map(Self::from_integer)
                .ok_or_else(|| Error::Parse(format!("non-integer number {n}"))),
            Value::String(s) => parse_rational(s).map(Self::rational),
            Value::Object(map) => {
                let m = map
                    .get("m")
                    .and_then(|m| match m {
                        Value::String(s) => s.trim().parse::<u64>().ok(),
                        other => other.as_u64(),
                    })
                    .filter(|&m| m >= 1 && m <= u64::from(u32::MAX))
                    .ok_or_else(|| Error::Parse("cyclotomic object needs a positive `m`".into()))?;
                let coeffs = map
                    .get("coeffs")
                    .and_then(Value::as_array)
                    .ok_or_else(|| Error::Parse("cyclotomic object needs `coeffs`".into()))?
                    .iter()
                    .map(|c| match c {
                        Value::String(s) => parse_rational(s),
                        Value::Number(n) => n
                            .as_i64()
                            .map(|i| BigRational::from_integer(i.into()))
                            .ok_or_else(|| Error::Parse(format!("bad coefficient {n}"))),
                        other => Err(Error::Parse(format!("bad coefficient {other}"))),
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok(Self::from_power_coeffs(m as u32, coeffs))
            }
            other => Err(Error::Parse(format!("cannot read a cyclotomic from {other}"))),
        }
    }
}

pub(crate) fn parse_rational(s: &str) -> Result<BigRational> {
    BigRational::from_str(s.trim()).map_err(|_| Error::Parse(format!("bad rational `{s}`")))
}

/// Reduces a polynomial of degree `< m` modulo `Phi_m`.
fn reduce(mut poly: Vec<BigRational>, m: u32) -> Vec<BigRational> {
    let phi = cyclotomic_polynomial(m);
    let deg = phi.len() - 1;
    for k in (deg..poly.len()).rev() {
        if poly[k].is_zero() {
            continue;
        }
        let c = std::mem::take(&mut poly[k]);
        for (i, &p) in phi[..deg].iter().enumerate() {
            if p != 0 {
                poly[k - deg + i] -= &c * BigRational::from_integer(p.into());
            }
        }
    }
    poly.resize(deg, BigRational::zero());
    poly
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        if self.modulus == other.modulus {
            return self.coeffs == other.coeffs;
        }
        let (a, b, _) = self.common(other);
        a.coeffs == b.coeffs
    }
}

impl Eq for Cyclotomic {}

impl From<i64> for Cyclotomic {
    fn from(n: i64) -> Self {
        Self::from_integer(n)
    }
}

impl From<BigRational> for Cyclotomic {
    fn from(q: BigRational) -> Self {
        Self::rational(q)
    }
}

impl<'a> Add<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, rhs: &Cyclotomic) -> Cyclotomic {
        if rhs.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return rhs.clone();
        }
        if self.modulus == 1 && rhs.modulus == 1 {
            return Cyclotomic::rational(&self.coeffs[0] + &rhs.coeffs[0]);
        }
        let (a, b, m) = self.common(rhs);
        let coeffs = a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x + y).collect();
        let mut out = Cyclotomic { modulus: m, coeffs };
        out.normalize();
        out
    }
}

impl<'a> Sub<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, rhs: &Cyclotomic) -> Cyclotomic {
        self + &(-rhs)
    }
}

impl Neg for &Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        Cyclotomic {
            modulus: self.modulus,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        -&self
    }
}

impl<'a> Mul<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, rhs: &Cyclotomic) -> Cyclotomic {
        if self.is_zero() || rhs.is_zero() {
            return Cyclotomic::zero();
        }
        if self.modulus == 1 {
            return rhs.scale(&self.coeffs[0]);
        }
        if rhs.modulus == 1 {
            return self.scale(&rhs.coeffs[0]);
        }
        let (a, b, m) = self.common(rhs);
        let mut prod = vec![BigRational::zero(); m as usize];
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                if !y.is_zero() {
                    prod[(i + j) % m as usize] += x * y;
                }
            }
        }
        let mut out = Cyclotomic {
            modulus: m,
            coeffs: reduce(prod, m),
        };
        out.normalize();
        out
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr<Cyclotomic> for Cyclotomic {
            type Output = Cyclotomic;
            fn $method(self, rhs: Cyclotomic) -> Cyclotomic {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $tr<&'a Cyclotomic> for Cyclotomic {
            type Output = Cyclotomic;
            fn $method(self, rhs: &Cyclotomic) -> Cyclotomic {
                (&self).$method(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl std::iter::Sum for Cyclotomic {
    fn sum<I: Iterator<Item = Cyclotomic>>(iter: I) -> Self {
        iter.fold(Cyclotomic::zero(), |acc, x| &acc + &x)
    }
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(q) = self.to_rational() {
            return write!(f, "{q}");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let root = match k {
                0 => String::new(),
                1 => format!("E({})", self.modulus),
                _ => format!("E({})^{k}", self.modulus),
            };
            let mag = c.abs();
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            match (root.is_empty(), mag.is_one()) {
                (true, _) => write!(f, "{mag}")?,
                (false, true) => write!(f, "{root}")?,
                (false, false) => write!(f, "{mag}*{root}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(*cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(*cyclotomic_polynomial(2), vec![1, 1]);
        assert_eq!(*cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(*cyclotomic_polynomial(6), vec![1, -1, 1]);
        assert_eq!(*cyclotomic_polynomial(8), vec![1, 0, 0, 0, 1]);
        assert_eq!(totient(7), 6);
        assert_eq!(totient(12), 4);
    }

    #[test]
    fn roots_of_unity() {
        let i = Cyclotomic::root_of_unity(4, 1);
        assert_eq!(&i * &i, Cyclotomic::from_integer(-1));
        assert_eq!(i.conj(), -&i);
        let w = Cyclotomic::root_of_unity(3, 1);
        // 1 + w + w^2 = 0
        let s = &(&Cyclotomic::one() + &w) + &(&w * &w);
        assert!(s.is_zero());
        assert_eq!(Cyclotomic::root_of_unity(8, 2), i);
        assert_eq!(Cyclotomic::root_of_unity(6, 3), Cyclotomic::from_integer(-1));
        assert_eq!(Cyclotomic::root_of_unity(1, 0), Cyclotomic::one());
    }

    #[test]
    fn mixed_moduli() {
        let i = Cyclotomic::root_of_unity(4, 1);
        let w = Cyclotomic::root_of_unity(3, 1);
        let z12 = Cyclotomic::root_of_unity(12, 1);
        // zeta_12^7 = zeta_4^1 * zeta_3^1 (7 = 3 + 4 mod 12)
        assert_eq!(&i * &w, z12.pow(7));
        let (re, im) = (&i + &w).to_complex();
        assert!((re + 0.5).abs() < 1e-12 && (im - (1.0 + 3f64.sqrt() / 2.0)).abs() < 1e-12);
    }

    #[test]
    fn json_forms() {
        let v: Value = serde_json::json!(-2);
        assert_eq!(Cyclotomic::from_json(&v).unwrap(), Cyclotomic::from_integer(-2));
        let v: Value = serde_json::json!("3/4");
        assert_eq!(Cyclotomic::from_json(&v).unwrap(), Cyclotomic::rational(q(3, 4)));
        let i = Cyclotomic::root_of_unity(4, 1);
        assert_eq!(Cyclotomic::from_json(&i.to_json()).unwrap(), i);
        assert_eq!(Cyclotomic::from_integer(5).to_json(), Value::String("5".into()));
    }

    #[test]
    fn display() {
        assert_eq!(Cyclotomic::from_integer(-2).to_string(), "-2");
        assert_eq!(Cyclotomic::root_of_unity(4, 3).to_string(), "-E(4)");
        let x = &Cyclotomic::from_integer(1) + &Cyclotomic::root_of_unity(8, 1).scale(&q(3, 2));
        assert_eq!(x.to_string(), "1 + 3/2*E(8)");
    }

    fn arb_cyclo() -> impl Strategy<Value = Cyclotomic> {
        (
            prop::sample::select(vec![1u32, 2, 3, 4, 5, 6, 8, 12]),
            prop::collection::vec((-6i64..6, 1i64..4), 1..12),
        )
            .prop_map(|(m, cs)| {
                let coeffs = cs.into_iter().map(|(n, d)| q(n, d)).collect();
                Cyclotomic::from_power_coeffs(m, coeffs)
            })
    }

    proptest! {
        #[test]
        fn conj_is_an_involutive_ring_homomorphism(a in arb_cyclo(), b in arb_cyclo()) {
            prop_assert_eq!(a.conj().conj(), a.clone());
            prop_assert_eq!((&a * &b).conj(), &a.conj() * &b.conj());
            prop_assert_eq!((&a + &b).conj(), &a.conj() + &b.conj());
        }

        #[test]
        fn field_axioms(a in arb_cyclo(), b in arb_cyclo(), c in arb_cyclo()) {
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert!((&a - &a).is_zero());
        }

        #[test]
        fn lifting_preserves_value(a in arb_cyclo(), k in 1u32..4) {
            let lifted = a.lift_to(a.modulus() * k);
            prop_assert_eq!(&lifted, &a);
            let (re1, im1) = a.to_complex();
            let (re2, im2) = lifted.to_complex();
            prop_assert!((re1 - re2).abs() < 1e-9 && (im1 - im2).abs() < 1e-9);
        }
    }
}
