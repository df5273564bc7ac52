//! Independent floating-point evaluation of `Σ c_d·π^d` at about 210 decimal
//! digits, with π taken from astro-float rather than from `exactnum`.

use astro_float_num::{BigFloat, Consts, Radix, RoundingMode};
use m4_core::exactnum::{ExactReal, Rational, Sign};

/// Working precision in bits (≈ 210 decimal digits).
pub const PREC: usize = 700;
const RM: RoundingMode = RoundingMode::ToEven;

pub struct PiOracle {
    cc: Consts,
    pi: BigFloat,
}

impl PiOracle {
    pub fn new() -> Self {
        let mut cc = Consts::new().expect("constants cache");
        let pi = cc.pi(PREC, RM);
        PiOracle { cc, pi }
    }

    fn rational(&mut self, r: &Rational) -> BigFloat {
        let n = BigFloat::parse(&r.numer().to_string(), Radix::Dec, PREC, RM, &mut self.cc);
        let d = BigFloat::parse(&r.denom().to_string(), Radix::Dec, PREC, RM, &mut self.cc);
        n.div(&d, PREC, RM)
    }

    pub fn eval(&mut self, x: &ExactReal) -> BigFloat {
        let mut acc = BigFloat::from_i32(0, PREC);
        let one = BigFloat::from_i32(1, PREC);
        for (deg, c) in x.terms() {
            let mut p = self.pi.powi(deg.unsigned_abs() as usize, PREC, RM);
            if deg < 0 {
                p = one.div(&p, PREC, RM);
            }
            let term = self.rational(c).mul(&p, PREC, RM);
            acc = acc.add(&term, PREC, RM);
        }
        acc
    }

    pub fn sign(&mut self, x: &ExactReal) -> Sign {
        let v = self.eval(x);
        if v.is_zero() {
            Sign::Zero
        } else if v.is_negative() {
            Sign::Negative
        } else {
            Sign::Positive
        }
    }
}
