//! Rigorous enclosures of π from Machin's formula
//! `π = 16·atan(1/5) − 4·atan(1/239)`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::ExactError;

/// `⌊π·10^1000⌋` as decimal text, used to audit the series.
pub(crate) const PI_REFERENCE: &str = include_str!("pi_1000.txt");

const GUARD_BITS: u64 = 32;

/// Scaled integer enclosure: the true value lies in `[lo, hi] / 2^prec`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Dyadic {
    pub lo: BigInt,
    pub hi: BigInt,
}

/// `2^scale · atan(1/x)` truncated, together with an absolute error bound.
fn atan_inv_scaled(x: u32, scale: u64) -> (BigInt, BigInt) {
    let x = BigInt::from(x);
    let x2 = &x * &x;
    let mut power = (BigInt::one() << scale).div_floor(&x);
    let mut sum = BigInt::zero();
    let mut k: u64 = 0;
    while !power.is_zero() {
        let term = power.div_floor(&BigInt::from(2 * k + 1));
        if k.is_multiple_of(2) {
            sum += term;
        } else {
            sum -= term;
        }
        power = power.div_floor(&x2);
        k += 1;
    }
    // each term is off by < 2 and the alternating tail is < 1
    (sum, BigInt::from(2 * k + 1))
}

/// Enclosure of π at `prec` fractional bits.
pub(crate) fn pi_enclosure(prec: u64) -> Dyadic {
    let scale = prec + GUARD_BITS;
    let (a5, e5) = atan_inv_scaled(5, scale);
    let (a239, e239) = atan_inv_scaled(239, scale);
    let centre: BigInt = a5 * 16 - a239 * 4;
    let err: BigInt = e5 * 16 + e239 * 4;
    let unit = BigInt::one() << GUARD_BITS;
    let lo: BigInt = (&centre - &err).div_floor(&unit);
    let hi = ceil_div(&(&centre + &err), &unit);
    Dyadic { lo, hi }
}

pub(crate) fn ceil_div(a: &BigInt, b: &BigInt) -> BigInt {
    -((-a).div_floor(b))
}

fn reference_scaled() -> (BigInt, usize) {
    let digits: alloc::string::String = PI_REFERENCE
        .trim()
        .chars()
        .filter(|c| c.is_ascii_digit())
        .collect();
    let places = digits.len() - 1;
    let value = BigInt::parse_bytes(digits.as_bytes(), 10).expect("reference digits");
    (value, places)
}

/// Checks every precision of the refinement schedule against the embedded
/// 1000-digit reference value of π.
pub fn validate_pi_source() -> Result<(), ExactError> {
    let (reference, places) = reference_scaled();
    let ten_pow = num_traits::pow(BigInt::from(10u32), places);
    let mut prec = super::START_BITS;
    while prec <= super::MAX_BITS {
        let enc = pi_enclosure(prec);
        let two_pow = BigInt::one() << prec;
        // reference interval [R, R+1] / 10^places must meet [lo, hi] / 2^prec
        let meets = &enc.lo * &ten_pow <= (&reference + 1u32) * &two_pow
            && &enc.hi * &ten_pow >= &reference * &two_pow;
        // and the enclosure must be tight: width ≤ 2^-(prec-2)
        let tight = &enc.hi - &enc.lo <= BigInt::from(4u32);
        if !meets || !tight {
            return Err(ExactError::PiReferenceMismatch { bits: prec });
        }
        prec *= 2;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn enclosure_contains_pi_at_64_bits() {
        let enc = pi_enclosure(64);
        // 3.14159265358979323846 * 2^64 ≈ 57952155664616982739.0
        let approx = BigInt::parse_bytes(b"57952155664616982739", 10).unwrap();
        assert!(enc.lo <= approx + 1u32);
        assert!(enc.hi >= BigInt::parse_bytes(b"57952155664616982738", 10).unwrap());
        assert!(&enc.hi - &enc.lo <= BigInt::from(4u32));
    }

    #[test]
    fn reference_has_thousand_places() {
        let (_, places) = reference_scaled();
        assert_eq!(places, 1000);
    }

    #[test]
    fn series_agrees_with_reference() {
        validate_pi_source().unwrap();
    }
}
