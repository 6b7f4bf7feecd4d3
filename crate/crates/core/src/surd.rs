//! Exact arithmetic in the quadratic field `Q(sqrt 5)`.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, Zero};

/// `rational + surd * sqrt(5)` with rational parts.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SurdNumber {
    rational: BigRational,
    surd: BigRational,
}

impl SurdNumber {
    pub fn new(rational: BigRational, surd: BigRational) -> Self {
        SurdNumber { rational, surd }
    }

    /// `(a + b sqrt 5) / d`.
    pub fn from_parts(a: i64, b: i64, d: i64) -> Self {
        let den = BigInt::from(d);
        SurdNumber {
            rational: BigRational::new(BigInt::from(a), den.clone()),
            surd: BigRational::new(BigInt::from(b), den),
        }
    }

    pub fn from_integer(a: impl Into<BigInt>) -> Self {
        SurdNumber {
            rational: BigRational::from_integer(a.into()),
            surd: BigRational::zero(),
        }
    }

    pub fn from_rational(q: BigRational) -> Self {
        SurdNumber {
            rational: q,
            surd: BigRational::zero(),
        }
    }

    pub fn zero() -> Self {
        Self::from_integer(0)
    }

    pub fn one() -> Self {
        Self::from_integer(1)
    }

    pub fn rational_part(&self) -> &BigRational {
        &self.rational
    }

    pub fn surd_part(&self) -> &BigRational {
        &self.surd
    }

    pub fn is_rational(&self) -> bool {
        self.surd.is_zero()
    }

    /// The value as an integer when the `sqrt 5` part vanishes and the
    /// rational part is integral.
    pub fn to_integer(&self) -> Option<BigInt> {
        (self.is_rational() && self.rational.is_integer()).then(|| self.rational.to_integer())
    }

    pub fn conjugate(&self) -> Self {
        SurdNumber {
            rational: self.rational.clone(),
            surd: -&self.surd,
        }
    }

    /// `x * conj(x) = a^2 - 5 b^2`, always rational.
    pub fn norm(&self) -> BigRational {
        &self.rational * &self.rational
            - BigRational::from_integer(BigInt::from(5)) * &self.surd * &self.surd
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        SurdNumber {
            rational: &self.rational * q,
            surd: &self.surd * q,
        }
    }

    pub fn pow(&self, mut exp: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            exp >>= 1;
            if exp > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn is_negative(&self) -> bool {
        self.floor_scaled(0).is_negative()
    }

    /// `floor(value * 10^digits)`, computed exactly.
    fn floor_scaled(&self, digits: u32) -> BigInt {
        let scale = BigInt::from(10u32).pow(digits);
        let den = self.rational.denom().lcm(self.surd.denom());
        let a = self.rational.numer() * (&den / self.rational.denom()) * &scale;
        let b = self.surd.numer() * (&den / self.surd.denom()) * &scale;
        // floor(b * sqrt 5); 5 b^2 is never a nonzero perfect square
        let root = BigInt::from_biguint(Sign::Plus, (BigUint::from(5u32) * b.magnitude() * b.magnitude()).sqrt());
        let b_floor = if b.is_negative() { -(root + BigInt::one()) } else { root };
        (a + b_floor).div_floor(&den)
    }

    /// Decimal expansion with `digits` places, rounded toward negative
    /// infinity.
    pub fn to_decimal(&self, digits: u32) -> String {
        let scaled = self.floor_scaled(digits);
        format_scaled(&scaled, digits)
    }

    /// Decimal expansion with `digits` places, rounded half up.
    pub fn to_decimal_rounded(&self, digits: u32) -> String {
        let half = BigRational::new(BigInt::one(), BigInt::from(2u32) * BigInt::from(10u32).pow(digits));
        let shifted = SurdNumber {
            rational: &self.rational + half,
            surd: self.surd.clone(),
        };
        shifted.to_decimal(digits)
    }

    pub fn abs(&self) -> Self {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.to_decimal(20).parse().unwrap_or(f64::NAN)
    }
}

/// Render `scaled / 10^digits` as a decimal string.
pub(crate) fn format_scaled(scaled: &BigInt, digits: u32) -> String {
    use core::fmt::Write;
    let negative = scaled.is_negative();
    let mut text = scaled.magnitude().to_str_radix(10);
    let digits = digits as usize;
    if text.len() <= digits {
        let pad: String = core::iter::repeat_n('0', digits + 1 - text.len()).collect();
        text.insert_str(0, &pad);
    }
    let (int_part, frac_part) = text.split_at(text.len() - digits);
    let mut out = String::new();
    if negative {
        out.push('-');
    }
    out.push_str(int_part);
    if digits > 0 {
        let _ = write!(out, ".{}", frac_part);
    }
    out
}

impl Add for &SurdNumber {
    type Output = SurdNumber;

    fn add(self, rhs: &SurdNumber) -> SurdNumber {
        SurdNumber {
            rational: &self.rational + &rhs.rational,
            surd: &self.surd + &rhs.surd,
        }
    }
}

impl Sub for &SurdNumber {
    type Output = SurdNumber;

    fn sub(self, rhs: &SurdNumber) -> SurdNumber {
        SurdNumber {
            rational: &self.rational - &rhs.rational,
            surd: &self.surd - &rhs.surd,
        }
    }
}

impl Mul for &SurdNumber {
    type Output = SurdNumber;

    fn mul(self, rhs: &SurdNumber) -> SurdNumber {
        let five = BigRational::from_integer(BigInt::from(5));
        SurdNumber {
            rational: &self.rational * &rhs.rational + five * &self.surd * &rhs.surd,
            surd: &self.rational * &rhs.surd + &self.surd * &rhs.rational,
        }
    }
}

impl Neg for &SurdNumber {
    type Output = SurdNumber;

    fn neg(self) -> SurdNumber {
        SurdNumber {
            rational: -&self.rational,
            surd: -&self.surd,
        }
    }
}

impl Add for SurdNumber {
    type Output = SurdNumber;
    fn add(self, rhs: SurdNumber) -> SurdNumber {
        &self + &rhs
    }
}

impl Sub for SurdNumber {
    type Output = SurdNumber;
    fn sub(self, rhs: SurdNumber) -> SurdNumber {
        &self - &rhs
    }
}

impl Mul for SurdNumber {
    type Output = SurdNumber;
    fn mul(self, rhs: SurdNumber) -> SurdNumber {
        &self * &rhs
    }
}

impl core::iter::Sum for SurdNumber {
    fn sum<I: Iterator<Item = SurdNumber>>(iter: I) -> Self {
        iter.fold(SurdNumber::zero(), |acc, x| acc + x)
    }
}

impl fmt::Display for SurdNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = [(&self.rational, ""), (&self.surd, "*sqrt(5)")]
            .iter()
            .filter(|(q, _)| !q.is_zero())
            .map(|(q, suffix)| alloc::format!("({}){}", q, suffix))
            .collect();
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn roots_of_phi_characteristic() {
        // 3 +- sqrt 5 are the roots of x^2 - 6x + 4
        for r in [SurdNumber::from_parts(3, 1, 1), SurdNumber::from_parts(3, -1, 1)] {
            let value = &(&r * &r) - &(&r.scale(&BigRational::from_integer(6.into())) - &SurdNumber::from_integer(4));
            assert_eq!(value, SurdNumber::zero());
        }
    }

    #[test]
    fn decimals() {
        assert_eq!(SurdNumber::from_parts(0, 1, 1).to_decimal(10), "2.2360679774");
        assert_eq!(SurdNumber::from_parts(0, -1, 1).to_decimal(3), "-2.237");
        assert_eq!(SurdNumber::from_parts(-5, 6, 5).to_decimal(7), "1.6832815");
        assert_eq!(SurdNumber::from_parts(5, 37, 40).to_decimal(7), "2.1933628");
        assert_eq!(SurdNumber::from_parts(1, 0, 4).to_decimal(3), "0.250");
        assert_eq!(SurdNumber::from_parts(-1, 0, 4).to_decimal(1), "-0.3");
        assert_eq!(SurdNumber::from_parts(-5, 6, 5).to_decimal_rounded(7), "1.6832816");
        assert_eq!(SurdNumber::from_parts(5, 37, 40).to_decimal_rounded(7), "2.1933629");
        assert_eq!(SurdNumber::from_parts(0, -1, 1).abs(), SurdNumber::from_parts(0, 1, 1));
        assert!((SurdNumber::from_parts(-5, 6, 5).to_f64() - 1.683_281_572_999_748).abs() < 1e-12);
    }

    proptest! {
        #[test]
        fn conjugate_product_is_rational(a in -100i64..100, b in -100i64..100, d in 1i64..50) {
            let x = SurdNumber::from_parts(a, b, d);
            let prod = &x * &x.conjugate();
            prop_assert!(prod.is_rational());
            prop_assert_eq!(prod.rational_part().clone(), x.norm());
        }

        #[test]
        fn multiplication_associates(a in -20i64..20, b in -20i64..20, c in -20i64..20, e in 0u32..6) {
            let x = SurdNumber::from_parts(a, b, 3);
            let y = SurdNumber::from_parts(c, 1, 1);
            prop_assert_eq!((&x * &y).pow(e), &x.pow(e) * &y.pow(e));
        }
    }
}
