//! Exact arithmetic over rational Laurent polynomials in π.
//!
//! An [`ExactReal`] is a finite sum `Σ c_d·π^d` with rational coefficients.
//! Because π is transcendental, two such sums denote the same real number
//! exactly when their coefficients agree, so equality is structural. Order
//! is decided by evaluating on a dyadic enclosure of π whose precision is
//! doubled until the enclosure excludes zero.

mod pi;

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub use pi::validate_pi_source;
use pi::{ceil_div, pi_enclosure, Dyadic};

/// Arbitrary-precision rational, always kept in lowest terms with a positive denominator.
pub type Rational = BigRational;

pub(crate) const START_BITS: u64 = 64;
pub(crate) const MAX_BITS: u64 = 4096;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ExactError {
    #[error("sign undecided at the {bits}-bit precision cap")]
    PrecisionExhausted { bits: u64 },
    #[error("π enclosure at {bits} bits disagrees with the reference digits")]
    PiReferenceMismatch { bits: u64 },
    #[error("malformed rational literal {0:?}")]
    BadRational(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    pub fn of_rational(r: &Rational) -> Sign {
        if r.is_zero() {
            Sign::Zero
        } else if r.is_positive() {
            Sign::Positive
        } else {
            Sign::Negative
        }
    }

    pub fn of_integer(v: i128) -> Sign {
        match v.cmp(&0) {
            core::cmp::Ordering::Less => Sign::Negative,
            core::cmp::Ordering::Equal => Sign::Zero,
            core::cmp::Ordering::Greater => Sign::Positive,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Negative => "negative",
            Sign::Zero => "zero",
            Sign::Positive => "positive",
        })
    }
}

/// Shorthand for `n/d`. Panics on `d == 0`.
pub fn rat(n: i128, d: i128) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i128) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Renders `r` as `"num/den"`, always with an explicit denominator.
pub fn rational_to_string(r: &Rational) -> String {
    alloc::format!("{}/{}", r.numer(), r.denom())
}

/// Parses `"num/den"` or a bare integer.
pub fn parse_rational(s: &str) -> Result<Rational, ExactError> {
    let bad = || ExactError::BadRational(String::from(s));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let n = BigInt::parse_bytes(n.trim().as_bytes(), 10).ok_or_else(bad)?;
    let d = BigInt::parse_bytes(d.trim().as_bytes(), 10).ok_or_else(bad)?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(n, d))
}

/// A finite sum `Σ c_d·π^d`, `c_d ∈ ℚ`, `d ∈ ℤ`. No stored coefficient is zero.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct ExactReal {
    terms: BTreeMap<i64, Rational>,
}

impl ExactReal {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_rational(Rational::one())
    }

    pub fn from_rational(c: Rational) -> Self {
        Self::monomial(c, 0)
    }

    pub fn from_int(c: i128) -> Self {
        Self::from_rational(rat_int(c))
    }

    /// `π^degree`.
    pub fn pi_pow(degree: i64) -> Self {
        Self::monomial(Rational::one(), degree)
    }

    /// `c·π^degree`.
    pub fn monomial(c: Rational, degree: i64) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(degree, c);
        }
        ExactReal { terms }
    }

    /// Builds from `(degree, coefficient)` pairs, merging repeated degrees.
    pub fn from_terms<I: IntoIterator<Item = (i64, Rational)>>(terms: I) -> Self {
        let mut out = ExactReal::zero();
        for (d, c) in terms {
            out.add_term(d, c);
        }
        out
    }

    fn add_term(&mut self, degree: i64, c: Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(degree).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&degree);
        }
    }

    /// Terms in ascending degree.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &Rational)> + '_ {
        self.terms.iter().map(|(d, c)| (*d, c))
    }

    pub fn coefficient(&self, degree: i64) -> Rational {
        self.terms.get(&degree).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The value as a rational, if no power of π survives.
    pub fn as_rational(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&0).cloned(),
            _ => None,
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        ExactReal {
            terms: self.terms.iter().map(|(d, v)| (*d, v * c)).collect(),
        }
    }

    /// Canonical-form check: every stored coefficient is nonzero and in lowest terms.
    pub fn is_canonical(&self) -> bool {
        self.terms.values().all(|c| {
            !c.is_zero() && c.denom().is_positive() && c.numer().gcd(c.denom()).is_one()
        })
    }

    /// Certified sign. Exact for rational values; otherwise refines a
    /// π enclosure from 64 bits, doubling up to 4096.
    pub fn sign(&self) -> Result<Sign, ExactError> {
        if let Some(r) = self.as_rational() {
            return Ok(Sign::of_rational(&r));
        }
        let mut prec = START_BITS;
        loop {
            let enc = self.enclose(prec);
            if enc.lo.is_positive() {
                return Ok(Sign::Positive);
            }
            if enc.hi.is_negative() {
                return Ok(Sign::Negative);
            }
            if prec >= MAX_BITS {
                return Err(ExactError::PrecisionExhausted { bits: prec });
            }
            prec *= 2;
        }
    }

    /// `Ok(true)` iff `self > other`.
    pub fn gt(&self, other: &ExactReal) -> Result<bool, ExactError> {
        Ok((self - other).sign()? == Sign::Positive)
    }

    /// `Ok(true)` iff `self ≥ other`.
    pub fn ge(&self, other: &ExactReal) -> Result<bool, ExactError> {
        Ok((self - other).sign()? != Sign::Negative)
    }

    /// Encloses the value times `2^prec` between two integers.
    fn enclose(&self, prec: u64) -> Dyadic {
        let pi = pi_enclosure(prec);
        let unit = BigInt::one() << prec;
        let max_deg = self.terms.keys().next_back().copied().unwrap_or(0).max(0);
        let min_deg = self.terms.keys().next().copied().unwrap_or(0).min(0);

        let mut pos = Vec::new();
        pos.push(Dyadic { lo: unit.clone(), hi: unit.clone() });
        for k in 1..=max_deg as usize {
            let next = mul_positive(&pos[k - 1], &pi, prec);
            pos.push(next);
        }
        let inv_pi = Dyadic {
            lo: (&unit * &unit).div_floor(&pi.hi),
            hi: ceil_div(&(&unit * &unit), &pi.lo),
        };
        let mut neg = Vec::new();
        neg.push(pos[0].clone());
        for k in 1..=(-min_deg) as usize {
            let next = mul_positive(&neg[k - 1], &inv_pi, prec);
            neg.push(next);
        }

        let mut acc = Dyadic { lo: BigInt::zero(), hi: BigInt::zero() };
        for (d, c) in &self.terms {
            let base = if *d >= 0 { &pos[*d as usize] } else { &neg[(-*d) as usize] };
            let (n, den) = (c.numer(), c.denom());
            let (lo, hi) = if n.is_positive() {
                ((&base.lo * n).div_floor(den), ceil_div(&(&base.hi * n), den))
            } else {
                ((&base.hi * n).div_floor(den), ceil_div(&(&base.lo * n), den))
            };
            acc.lo += lo;
            acc.hi += hi;
        }
        acc
    }

    /// Decimal rendering with `digits` places after the point, truncated
    /// toward zero. Always terminates for canonical values.
    pub fn to_decimal(&self, digits: usize) -> DecimalApprox {
        let digits = digits.max(1);
        let negative = match self.as_rational() {
            Some(r) => r.is_negative(),
            None => self.sign().map(|s| s == Sign::Negative).unwrap_or_else(|_| {
                unreachable!("nonzero Laurent polynomial in π has a decidable sign")
            }),
        };
        let magnitude = if negative { -self } else { self.clone() };
        let scaled = magnitude.scale(&Rational::from_integer(num_traits::pow(
            BigInt::from(10u32),
            digits,
        )));
        let (whole, rounding) = match scaled.as_rational() {
            Some(r) => {
                let t = r.floor().to_integer();
                let exact = Rational::from_integer(t.clone()) == r;
                (t, if exact { Rounding::Exact } else { Rounding::TowardZero })
            }
            None => {
                // an irrational value is never an integer, so the floors eventually agree
                let mut prec = START_BITS.max(digits as u64 * 4 + 64);
                loop {
                    let enc = scaled.enclose(prec);
                    let unit = BigInt::one() << prec;
                    let lo = enc.lo.div_floor(&unit);
                    let hi = enc.hi.div_floor(&unit);
                    if lo == hi {
                        break (lo, Rounding::TowardZero);
                    }
                    prec *= 2;
                }
            }
        };
        let text = whole.to_str_radix(10);
        let padded = if text.len() <= digits {
            let mut s = String::from("0");
            s.extend(core::iter::repeat_n('0', digits - text.len()));
            s.push_str(&text);
            s
        } else {
            text
        };
        let split = padded.len() - digits;
        let mut out = String::new();
        if negative {
            out.push('-');
        }
        out.push_str(&padded[..split]);
        out.push('.');
        out.push_str(&padded[split..]);
        DecimalApprox { text: out, rounding }
    }
}

fn mul_positive(a: &Dyadic, b: &Dyadic, prec: u64) -> Dyadic {
    let unit = BigInt::one() << prec;
    Dyadic {
        lo: (&a.lo * &b.lo).div_floor(&unit),
        hi: ceil_div(&(&a.hi * &b.hi), &unit),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Rounding {
    Exact,
    TowardZero,
}

/// A decimal string plus how it relates to the exact value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecimalApprox {
    pub text: String,
    pub rounding: Rounding,
}

impl fmt::Display for DecimalApprox {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.text)
    }
}

impl fmt::Debug for ExactReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ExactReal({})", self)
    }
}

impl fmt::Display for ExactReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (d, c)) in self.terms.iter().enumerate() {
            let (neg, mag) = if c.is_negative() { (true, -c) } else { (false, c.clone()) };
            if i == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            match *d {
                0 => write!(f, "{}", mag)?,
                1 => write!(f, "{}·π", mag)?,
                d => write!(f, "{}·π^{}", mag, d)?,
            }
        }
        Ok(())
    }
}

impl Neg for &ExactReal {
    type Output = ExactReal;
    fn neg(self) -> ExactReal {
        ExactReal {
            terms: self.terms.iter().map(|(d, c)| (*d, -c)).collect(),
        }
    }
}

impl Neg for ExactReal {
    type Output = ExactReal;
    fn neg(self) -> ExactReal {
        -&self
    }
}

impl Add for &ExactReal {
    type Output = ExactReal;
    fn add(self, rhs: &ExactReal) -> ExactReal {
        let mut out = self.clone();
        for (d, c) in &rhs.terms {
            out.add_term(*d, c.clone());
        }
        out
    }
}

impl Sub for &ExactReal {
    type Output = ExactReal;
    fn sub(self, rhs: &ExactReal) -> ExactReal {
        let mut out = self.clone();
        for (d, c) in &rhs.terms {
            out.add_term(*d, -c);
        }
        out
    }
}

impl Mul for &ExactReal {
    type Output = ExactReal;
    fn mul(self, rhs: &ExactReal) -> ExactReal {
        let mut out = ExactReal::zero();
        for (da, ca) in &self.terms {
            for (db, cb) in &rhs.terms {
                out.add_term(da + db, ca * cb);
            }
        }
        out
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for ExactReal {
            type Output = ExactReal;
            fn $m(self, rhs: ExactReal) -> ExactReal {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&ExactReal> for ExactReal {
            type Output = ExactReal;
            fn $m(self, rhs: &ExactReal) -> ExactReal {
                (&self).$m(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn pi2() -> ExactReal {
        ExactReal::pi_pow(2)
    }

    #[test]
    fn additive_inverse_vanishes() {
        let s = &pi2() + &(-pi2());
        assert!(s.is_zero());
        assert!(s.is_canonical());
    }

    #[test]
    fn disjoint_degrees_merge() {
        let a = ExactReal::from_int(3) + ExactReal::monomial(rat_int(2), 2);
        let b = ExactReal::from_rational(rat(1, 2));
        let expected = ExactReal::from_terms([(0, rat(7, 2)), (2, rat_int(2))]);
        assert_eq!(&a + &b, expected);
    }

    #[test]
    fn adding_zero_is_identity() {
        let a = ExactReal::from_int(16 * 4);
        assert_eq!(&a + &ExactReal::zero(), ExactReal::from_int(64));
    }

    #[test]
    fn products() {
        let four_pi = ExactReal::monomial(rat_int(4), 1);
        assert_eq!(&four_pi * &four_pi, ExactReal::monomial(rat_int(16), 2));

        let inv = ExactReal::monomial(rat(1, 54), -2);
        let up = ExactReal::monomial(rat_int(256), 2);
        assert_eq!(&inv * &up, ExactReal::from_rational(rat(128, 27)));

        let x = ExactReal::from_terms([(-1, rat(3, 7)), (2, rat(-5, 2))]);
        assert_eq!(&x * &ExactReal::one(), x);
    }

    #[test]
    fn signs() {
        assert_eq!(ExactReal::zero().sign().unwrap(), Sign::Zero);
        let r = ExactReal::from_int(52) - ExactReal::from_rational(rat(512, 27));
        assert_eq!(r.sign().unwrap(), Sign::Positive);
        // π² = 9.8696044010893..., so π² − 9.869604401 > 0
        let close = pi2() - ExactReal::from_rational(rat(9_869_604_401, 1_000_000_000));
        assert_eq!(close.sign().unwrap(), Sign::Positive);
        assert_eq!((-close).sign().unwrap(), Sign::Negative);
    }

    #[test]
    fn sign_of_tight_cancellation_needs_refinement() {
        // 355/113 − π ≈ 2.67e-7; the rational is a continued-fraction convergent
        let d = ExactReal::from_rational(rat(355, 113)) - ExactReal::pi_pow(1);
        assert_eq!(d.sign().unwrap(), Sign::Positive);
        // π − 3.14159265358979323846264338327950288 (truncated at 35 places) > 0
        let t = ExactReal::pi_pow(1)
            - ExactReal::from_rational(parse_rational(
                "314159265358979323846264338327950288/100000000000000000000000000000000000",
            )
            .unwrap());
        assert_eq!(t.sign().unwrap(), Sign::Positive);
    }

    #[test]
    fn decimals() {
        let v = ExactReal::from_rational(rat(128, 27)).scale(&rat_int(4));
        let d = v.to_decimal(4);
        assert_eq!(d.text, "18.9629");
        assert_eq!(d.rounding, Rounding::TowardZero);
        assert_eq!(ExactReal::zero().to_decimal(3).text, "0.000");
        assert_eq!(ExactReal::zero().to_decimal(3).rounding, Rounding::Exact);
        assert_eq!(pi2().to_decimal(5).text, "9.86960");
        assert_eq!((-pi2()).to_decimal(5).text, "-9.86960");
        assert_eq!(ExactReal::from_rational(rat(1, 8)).to_decimal(3).to_string(), "0.125");
        assert_eq!(ExactReal::pi_pow(-1).to_decimal(6).text, "0.318309");
    }

    #[test]
    fn decimal_of_pi_matches_reference_prefix() {
        let d = ExactReal::pi_pow(1).to_decimal(200).text;
        let reference = pi::PI_REFERENCE.trim();
        assert_eq!(d, &reference[..202]);
    }

    #[test]
    fn rational_strings() {
        assert_eq!(rational_to_string(&rat_int(1024)), "1024/1");
        assert_eq!(rational_to_string(&rat(-6, 4)), "-3/2");
        assert_eq!(parse_rational("128/27").unwrap(), rat(128, 27));
        assert_eq!(parse_rational("-7").unwrap(), rat_int(-7));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn display() {
        let x = ExactReal::from_terms([(0, rat(7, 2)), (2, rat_int(-2)), (-1, rat(1, 3))]);
        assert_eq!(x.to_string(), "1/3·π^-1 + 7/2 - 2·π^2");
    }
}
