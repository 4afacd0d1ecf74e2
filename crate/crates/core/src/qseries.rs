//! Eta products, Eisenstein series and the Hauptmoduln of levels 1, 2 and 4.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::series::LaurentSeries;

/// Default exclusive upper exponent for computed expansions.
pub const DEFAULT_PRECISION: i64 = 16;

/// Extra terms carried through divisions by a series with leading `q`.
const WORKING_HEADROOM: i64 = 2;

/// `prod_{n>=1} (1 - q^n) + O(q^precision)`, i.e. `eta(tau) / q^(1/24)`.
pub fn eta_over_q24(precision: i64) -> LaurentSeries {
    let len = precision.max(0) as usize;
    let mut c = vec![BigInt::from(0); len];
    if len > 0 {
        c[0] = BigInt::from(1);
    }
    // multiply by (1 - q^n) in place, highest exponent first
    for n in 1..len {
        for k in (n..len).rev() {
            let sub = c[k - n].clone();
            c[k] -= sub;
        }
    }
    LaurentSeries::from_bigints(0, c)
}

/// One factor `eta(M tau)^E` of an eta quotient.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EtaFactor {
    pub multiplier: u32,
    pub exponent: i64,
}

impl EtaFactor {
    pub fn new(multiplier: u32, exponent: i64) -> Self {
        Self {
            multiplier,
            exponent,
        }
    }
}

impl fmt::Display for EtaFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.multiplier, self.exponent)
    }
}

impl FromStr for EtaFactor {
    type Err = Error;

    /// Parses `M:E`, e.g. `2:-24`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("eta factor `{s}` is not of the form M:E"));
        let (m, e) = s.trim().split_once(':').ok_or_else(bad)?;
        let multiplier: u32 = m.trim().parse().map_err(|_| bad())?;
        let exponent: i64 = e.trim().parse().map_err(|_| bad())?;
        if multiplier == 0 {
            return Err(bad());
        }
        Ok(Self::new(multiplier, exponent))
    }
}

/// Parses a comma-separated list such as `1:24,2:-24`.
pub fn parse_eta_factors(s: &str) -> Result<Vec<EtaFactor>> {
    s.split(',')
        .filter(|p| !p.trim().is_empty())
        .map(str::parse)
        .collect()
}

/// Exponent of the leading `q`-power of `prod eta(M tau)^E`.
pub fn eta_quotient_order(factors: &[EtaFactor]) -> Result<i64> {
    let total: i64 = factors
        .iter()
        .map(|f| f.multiplier as i64 * f.exponent)
        .sum();
    if total % 24 != 0 {
        return Err(Error::FractionalPower(total));
    }
    Ok(total / 24)
}

/// `prod eta(M tau)^E + O(q^precision)`.
pub fn eta_quotient(factors: &[EtaFactor], precision: i64) -> Result<LaurentSeries> {
    let shift = eta_quotient_order(factors)?;
    let rel = precision - shift;
    if rel <= 0 {
        return Ok(LaurentSeries::zero(precision));
    }
    let mut acc = LaurentSeries::from_integers(0, &vec![0; rel as usize]).add_constant(1);
    for f in factors {
        if f.exponent == 0 {
            continue;
        }
        // eta(M tau)/q^(M/24) = prod (1 - q^(M n)), which has constant term 1
        let base = eta_over_q24((rel + f.multiplier as i64 - 1) / f.multiplier as i64)
            .substitute_power(f.multiplier)
            .truncate(rel);
        acc = &acc * &base.pow(f.exponent)?;
    }
    Ok(acc.shift(shift))
}

fn sigma3(n: u64) -> BigInt {
    let mut s = BigInt::from(0);
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            s += BigInt::from(d).pow(3);
            let e = n / d;
            if e != d {
                s += BigInt::from(e).pow(3);
            }
        }
        d += 1;
    }
    s
}

/// `E4 = 1 + 240 sum sigma_3(n) q^n + O(q^precision)`.
pub fn eisenstein_e4(precision: i64) -> LaurentSeries {
    let len = precision.max(0) as usize;
    let c = (0..len)
        .map(|n| {
            if n == 0 {
                BigInt::from(1)
            } else {
                sigma3(n as u64) * 240
            }
        })
        .collect();
    LaurentSeries::from_bigints(0, c)
}

/// `Delta = q prod (1 - q^n)^24 + O(q^precision)`.
pub fn discriminant(precision: i64) -> LaurentSeries {
    eta_quotient(&[EtaFactor::new(1, 24)], precision).expect("24 * 1 is divisible by 24")
}

/// `J = E4^3 / Delta - 744 + O(q^precision)`.
pub fn j_function(precision: i64) -> LaurentSeries {
    let work = precision + WORKING_HEADROOM;
    let e4 = eisenstein_e4(work);
    let e4_cubed = &(&e4 * &e4) * &e4;
    let delta_inv = discriminant(work)
        .inverse()
        .expect("Delta has leading coefficient 1");
    (&e4_cubed * &delta_inv)
        .add_constant(-744)
        .truncate(precision)
}

/// The genus-zero generators used as McKay-Thompson series.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Hauptmodul {
    /// `J = j - 744`, level 1.
    F1,
    /// `(eta(tau)/eta(2 tau))^24 + 24`, level 2.
    F2,
    /// `(eta(tau)/eta(4 tau))^8 + 8`, level 4.
    F4,
}

impl Hauptmodul {
    pub const ALL: [Hauptmodul; 3] = [Hauptmodul::F1, Hauptmodul::F2, Hauptmodul::F4];

    pub fn from_level(level: u64) -> Result<Self> {
        match level {
            1 => Ok(Self::F1),
            2 => Ok(Self::F2),
            4 => Ok(Self::F4),
            other => Err(Error::UnsupportedLevel(other)),
        }
    }

    pub fn level(self) -> u64 {
        match self {
            Self::F1 => 1,
            Self::F2 => 2,
            Self::F4 => 4,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Self::F1 => "f1",
            Self::F2 => "f2",
            Self::F4 => "f4",
        }
    }

    /// Eta-quotient part and additive constant; `None` for level 1.
    pub fn eta_form(self) -> Option<(Vec<EtaFactor>, i64)> {
        match self {
            Self::F1 => None,
            Self::F2 => Some((vec![EtaFactor::new(1, 24), EtaFactor::new(2, -24)], 24)),
            Self::F4 => Some((vec![EtaFactor::new(1, 8), EtaFactor::new(4, -8)], 8)),
        }
    }

    /// `q`-expansion modulo `O(q^precision)`; always has integer coefficients.
    pub fn expansion(self, precision: i64) -> LaurentSeries {
        match self.eta_form() {
            None => j_function(precision),
            Some((factors, constant)) => eta_quotient(&factors, precision)
                .expect("catalog eta quotients have integral order")
                .add_constant(constant),
        }
    }
}

impl fmt::Display for Hauptmodul {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Hauptmodul of the given level to `O(q^precision)`.
pub fn hauptmodul(level: u64, precision: i64) -> Result<LaurentSeries> {
    Ok(Hauptmodul::from_level(level)?.expansion(precision))
}

/// Exponents `k >= 2` below the precision where `f4` has a nonzero even
/// coefficient. Expected empty: `f4(tau) - q^-1` is odd in `q`.
pub fn f4_even_coefficient_violations(f4: &LaurentSeries) -> Vec<i64> {
    f4.terms()
        .filter(|(k, _)| *k >= 2 && k % 2 == 0)
        .map(|(k, _)| k)
        .collect()
}

/// Coefficients as `(exponent, decimal string)` pairs.
pub fn coefficient_strings(s: &LaurentSeries) -> Vec<(i64, String)> {
    s.coefficients()
        .map(|(k, c)| (k, crate::series::render_rational(c)))
        .collect()
}

/// `c` as an exact integer if it is one.
pub fn as_integer(c: &BigRational) -> Option<BigInt> {
    c.is_integer().then(|| c.to_integer())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ints(s: &LaurentSeries, from: i64, to: i64) -> Vec<i64> {
        (from..to)
            .map(|k| {
                let c = s.coeff(k).unwrap();
                assert!(c.is_integer(), "q^{k} coefficient {c} is not integral");
                i64::try_from(c.to_integer()).unwrap()
            })
            .collect()
    }

    /// Euler's pentagonal theorem: sum over k of (-1)^k q^(k(3k-1)/2).
    fn pentagonal(n: i64) -> Vec<i64> {
        let mut c = vec![0; n as usize];
        for k in -(n + 1)..=(n + 1) {
            let e = k * (3 * k - 1) / 2;
            if (0..n).contains(&e) {
                c[e as usize] += if k % 2 == 0 { 1 } else { -1 };
            }
        }
        c
    }

    #[test]
    fn eta_matches_pentagonal_numbers() {
        let n = 120;
        assert_eq!(ints(&eta_over_q24(n), 0, n), pentagonal(n));
        assert_eq!(ints(&eta_over_q24(8), 0, 8), [1, -1, -1, 0, 0, 1, 0, 1]);
    }

    #[test]
    fn discriminant_starts_like_ramanujan_tau() {
        // tau(1..6)
        assert_eq!(ints(&discriminant(7), 0, 7), [0, 1, -24, 252, -1472, 4830, -6048]);
    }

    #[test]
    fn e4_uses_divisor_cubes() {
        let e4 = eisenstein_e4(6);
        assert_eq!(ints(&e4, 0, 6), [1, 240, 2160, 6720, 17520, 30240]);
    }

    #[test]
    fn eta_quotient_orders() {
        let f2 = eta_quotient(&[EtaFactor::new(1, 24), EtaFactor::new(2, -24)], 3).unwrap();
        assert_eq!(f2.valuation(), Some(-1));
        let f4 = eta_quotient(&[EtaFactor::new(1, 8), EtaFactor::new(4, -8)], 3).unwrap();
        assert_eq!(f4.valuation(), Some(-1));
        let one = eta_quotient(&[EtaFactor::new(1, 24), EtaFactor::new(1, -24)], 5).unwrap();
        assert_eq!(ints(&one, 0, 5), [1, 0, 0, 0, 0]);
        assert!(matches!(
            eta_quotient(&[EtaFactor::new(1, 1)], 5),
            Err(Error::FractionalPower(1))
        ));
    }

    #[test]
    fn golden_hauptmoduln() {
        let f1 = hauptmodul(1, 5).unwrap();
        assert_eq!(f1.precision(), 5);
        assert_eq!(ints(&f1, -1, 5), [1, 0, 196884, 21493760, 864299970, 20245856256]);
        let f2 = hauptmodul(2, 6).unwrap();
        assert_eq!(ints(&f2, -1, 6), [1, 0, 276, -2048, 11202, -49152, 184024]);
        let f4 = hauptmodul(4, 13).unwrap();
        assert_eq!(
            ints(&f4, -1, 13),
            [1, 0, 20, 0, -62, 0, 216, 0, -641, 0, 1636, 0, -3778, 0]
        );
        assert!(f4_even_coefficient_violations(&hauptmodul(4, 60).unwrap()).is_empty());
        assert!(matches!(hauptmodul(3, 5), Err(Error::UnsupportedLevel(3))));
    }

    #[test]
    fn hauptmoduln_are_integral_far_out() {
        for h in Hauptmodul::ALL {
            let s = h.expansion(60);
            assert!(s.is_integral(), "{h}");
            assert_eq!(s.precision(), 60);
            assert_eq!(s.start(), -1);
        }
    }

    #[test]
    fn parses_factor_lists() {
        assert_eq!(
            parse_eta_factors("1:24, 2:-24").unwrap(),
            [EtaFactor::new(1, 24), EtaFactor::new(2, -24)]
        );
        assert!(parse_eta_factors("1:24,x").is_err());
        assert!(parse_eta_factors("0:24").is_err());
    }

    proptest! {
        #[test]
        fn j_is_stable_under_precision(n in 2i64..30) {
            let j = j_function(n);
            prop_assert_eq!(j.precision(), n);
            prop_assert_eq!(j.coeff(0).unwrap(), BigRational::from_integer(0.into()));
            prop_assert_eq!(j.coeff(1).unwrap(), BigRational::from_integer(196884.into()));
            prop_assert!(j == j_function(30));
        }
    }
}
