//! Scalar types that rule metrics can be expressed in.
//!
//! Supports are always counted as integers. A [`Scalar`] is the numeric type
//! those counts are converted into once they become ratios: `f64` for
//! ordinary reports, `f32` for compact storage, or an exact rational when
//! metric identities need to hold with no rounding at all.

use std::fmt::Debug;

use num_rational::Ratio;
use num_traits::{Num, Signed, ToPrimitive, Zero};

/// Exact rational scalar.
pub type Rational = Ratio<i128>;

pub trait Scalar: Num + Clone + PartialOrd + Debug + Send + Sync + 'static {
    /// Builds `num / den` with a single rounding step (none for exact types).
    ///
    /// `den` must be non-zero.
    fn from_ratio(num: i128, den: i128) -> Self;

    fn to_f64(&self) -> f64;

    /// Fixed-point decimal rendering, rounding half to even.
    fn to_fixed(&self, decimals: usize) -> String;
}

impl Scalar for f64 {
    fn from_ratio(num: i128, den: i128) -> Self {
        debug_assert!(den != 0);
        num as f64 / den as f64
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn to_fixed(&self, decimals: usize) -> String {
        // std formatting rounds the exact binary value, ties to even.
        let s = format!("{:.*}", decimals, self);
        normalize_negative_zero(s)
    }
}

impl Scalar for f32 {
    fn from_ratio(num: i128, den: i128) -> Self {
        debug_assert!(den != 0);
        (num as f64 / den as f64) as f32
    }

    fn to_f64(&self) -> f64 {
        f64::from(*self)
    }

    fn to_fixed(&self, decimals: usize) -> String {
        normalize_negative_zero(format!("{:.*}", decimals, self))
    }
}

impl Scalar for Rational {
    fn from_ratio(num: i128, den: i128) -> Self {
        Ratio::new(num, den)
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn to_fixed(&self, decimals: usize) -> String {
        let scale = 10i128.pow(decimals as u32);
        let scaled = self * Ratio::from_integer(scale);
        let negative = scaled.is_negative();
        let abs = scaled.abs();
        let floor = abs.to_integer();
        let frac = abs - Ratio::from_integer(floor);
        let half = Ratio::new(1, 2);
        let rounded = if frac > half || (frac == half && floor % 2 == 1) {
            floor + 1
        } else {
            floor
        };
        let int_part = rounded / scale;
        let frac_part = rounded % scale;
        let sign = if negative && !rounded.is_zero() { "-" } else { "" };
        if decimals == 0 {
            format!("{sign}{int_part}")
        } else {
            format!("{sign}{int_part}.{frac_part:0width$}", width = decimals)
        }
    }
}

fn normalize_negative_zero(s: String) -> String {
    if s.starts_with('-') && s[1..].chars().all(|c| c == '0' || c == '.') {
        s[1..].to_string()
    } else {
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn float_fixed_rounds_half_even_on_exact_ties() {
        assert_eq!(0.125f64.to_fixed(2), "0.12");
        assert_eq!(0.375f64.to_fixed(2), "0.38");
        assert_eq!(2.5f64.to_fixed(0), "2");
        assert_eq!((-0.00001f64).to_fixed(4), "0.0000");
    }

    #[test]
    fn rational_fixed_rounds_half_even() {
        assert_eq!(Rational::new(1, 8).to_fixed(2), "0.12");
        assert_eq!(Rational::new(3, 8).to_fixed(2), "0.38");
        assert_eq!(Rational::new(5, 2).to_fixed(0), "2");
        assert_eq!(Rational::new(7, 2).to_fixed(0), "4");
        assert_eq!(Rational::new(-1, 3).to_fixed(4), "-0.3333");
        assert_eq!(Rational::new(-1, 100_000).to_fixed(4), "0.0000");
        assert_eq!(Rational::new(1157, 1686).to_fixed(4), "0.6862");
    }

    #[test]
    fn from_ratio_is_single_division() {
        assert_eq!(f64::from_ratio(2, 4), 0.5);
        assert_eq!(f64::from_ratio(1, 3), 1.0 / 3.0);
        assert_eq!(Rational::from_ratio(2, 4), Rational::new(1, 2));
    }
}
