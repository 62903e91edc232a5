//! Scalar abstraction shared by the exact (rational) and floating code paths.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{FromPrimitive, Num, Signed, ToPrimitive, Zero};

/// A totally ordered field element usable for spectra, linear forms and pivots.
///
/// Exact types (`BigRational`, `Rational64`) are compared with zero tolerance;
/// floating types carry a tolerance chosen by the caller.
pub trait Scalar: Num + Signed + Clone + PartialOrd + Debug + Send + Sync + 'static {
    /// True when arithmetic on this type never rounds.
    const EXACT: bool;

    fn from_int(v: i64) -> Self;

    /// `num / den`; `den` must be nonzero.
    fn from_ratio(num: i64, den: i64) -> Self;

    fn as_f64(&self) -> f64;

    /// Nearest value of the form `k / max_den` for exact types, identity for floats.
    fn rounded_from_f64(x: f64, max_den: u64) -> Self;

    /// Text form: `p/q` for rationals, 12 significant digits for floats.
    fn render(&self) -> String;
}

macro_rules! impl_float_scalar {
    ($t:ty) => {
        impl Scalar for $t {
            const EXACT: bool = false;

            fn from_int(v: i64) -> Self {
                v as $t
            }

            fn from_ratio(num: i64, den: i64) -> Self {
                num as $t / den as $t
            }

            fn as_f64(&self) -> f64 {
                *self as f64
            }

            fn rounded_from_f64(x: f64, _max_den: u64) -> Self {
                x as $t
            }

            fn render(&self) -> String {
                format_significant(*self as f64, 12)
            }
        }
    };
}

impl_float_scalar!(f32);
impl_float_scalar!(f64);

impl Scalar for BigRational {
    const EXACT: bool = true;

    fn from_int(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }

    fn as_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn rounded_from_f64(x: f64, max_den: u64) -> Self {
        let den = max_den.max(1);
        let scaled = (x * den as f64).round();
        let num = BigInt::from_f64(scaled).unwrap_or_else(BigInt::zero);
        BigRational::new(num, BigInt::from(den))
    }

    fn render(&self) -> String {
        format!("{}/{}", self.numer(), self.denom())
    }
}

impl Scalar for Ratio<i64> {
    const EXACT: bool = true;

    fn from_int(v: i64) -> Self {
        Ratio::from_integer(v)
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        Ratio::new(num, den)
    }

    fn as_f64(&self) -> f64 {
        *self.numer() as f64 / *self.denom() as f64
    }

    fn rounded_from_f64(x: f64, max_den: u64) -> Self {
        let den = max_den.max(1) as i64;
        Ratio::new((x * den as f64).round() as i64, den)
    }

    fn render(&self) -> String {
        format!("{}/{}", self.numer(), self.denom())
    }
}

/// Comparison tolerances for membership tests.
#[derive(Clone, Debug, PartialEq)]
pub struct Tolerance<T> {
    /// Allowed positive value of an inequality form (and negative chamber gap).
    pub slack: T,
    /// Allowed absolute deviation of the total trace from zero.
    pub trace: T,
}

impl<T: Scalar> Tolerance<T> {
    pub fn exact() -> Self {
        Tolerance {
            slack: T::zero(),
            trace: T::zero(),
        }
    }

    /// Zero for exact scalars; `1e-8` slack and `1e-9` trace otherwise.
    pub fn standard() -> Self {
        if T::EXACT {
            Self::exact()
        } else {
            Tolerance {
                slack: T::rounded_from_f64(1e-8, 1),
                trace: T::rounded_from_f64(1e-9, 1),
            }
        }
    }
}

/// `x <= tol`
pub(crate) fn le_tol<T: Scalar>(x: &T, tol: &T) -> bool {
    x <= tol
}

/// `|x| <= tol`
pub(crate) fn near_zero<T: Scalar>(x: &T, tol: &T) -> bool {
    &x.abs() <= tol
}

pub(crate) fn sum<'a, T: Scalar>(xs: impl IntoIterator<Item = &'a T>) -> T {
    xs.into_iter().fold(T::zero(), |acc, x| acc + x.clone())
}

/// Formats `x` with `digits` significant digits, dropping trailing zeros.
pub fn format_significant(x: f64, digits: usize) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    let s = format!("{:.*e}", digits.saturating_sub(1), x);
    let (mantissa, exp) = s.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..16).contains(&exp) {
        let decimals = (digits as i32 - 1 - exp).max(0) as usize;
        let fixed = format!("{:.*}", decimals, x);
        trim_fraction(&fixed)
    } else {
        format!("{}e{}", trim_fraction(mantissa), exp)
    }
}

fn trim_fraction(s: &str) -> String {
    if s.contains('.') {
        let t = s.trim_end_matches('0').trim_end_matches('.');
        if t == "-0" {
            "0".to_string()
        } else {
            t.to_string()
        }
    } else {
        s.to_string()
    }
}

/// Parses `p/q`, an integer, or a finite decimal into an exact rational.
pub fn parse_rational(text: &str) -> Option<BigRational> {
    let t = text.trim();
    if t.is_empty() {
        return None;
    }
    if let Some((p, q)) = t.split_once('/') {
        let p: BigInt = p.trim().parse().ok()?;
        let q: BigInt = q.trim().parse().ok()?;
        if q.is_zero() {
            return None;
        }
        return Some(BigRational::new(p, q));
    }
    if let Some((int_part, frac_part)) = t.split_once('.') {
        let negative = int_part.trim_start().starts_with('-');
        let digits = frac_part.len() as u32;
        if !frac_part.chars().all(|c| c.is_ascii_digit()) {
            return None;
        }
        let whole: BigInt = match int_part {
            "" | "-" | "+" => BigInt::zero(),
            s => s.parse().ok()?,
        };
        let frac: BigInt = if frac_part.is_empty() {
            BigInt::zero()
        } else {
            frac_part.parse().ok()?
        };
        let scale = num_traits::pow(BigInt::from(10), digits as usize);
        let magnitude = whole.abs() * &scale + frac;
        let num = if negative { -magnitude } else { magnitude };
        return Some(BigRational::new(num, scale));
    }
    let v: BigInt = t.parse().ok()?;
    Some(BigRational::from_integer(v))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_render_is_reduced() {
        let x = BigRational::from_ratio(6, -4);
        assert_eq!(x.render(), "-3/2");
        assert_eq!(BigRational::from_int(5).render(), "5/1");
        assert_eq!(BigRational::zero().render(), "0/1");
    }

    #[test]
    fn float_render_has_twelve_digits() {
        assert_eq!(1.0f64.render(), "1");
        assert_eq!((1.0f64 / 3.0).render(), "0.333333333333");
        assert_eq!((-2.5f64).render(), "-2.5");
        assert_eq!(123456789.123_456_8_f64.render(), "123456789.123");
        assert_eq!(1e-7f64.render(), "1e-7");
    }

    #[test]
    fn parse_forms() {
        assert_eq!(parse_rational("3/6"), Some(BigRational::from_ratio(1, 2)));
        assert_eq!(parse_rational("-4"), Some(BigRational::from_int(-4)));
        assert_eq!(
            parse_rational("-0.25"),
            Some(BigRational::from_ratio(-1, 4))
        );
        assert_eq!(parse_rational("1.5"), Some(BigRational::from_ratio(3, 2)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("abc"), None);
    }

    #[test]
    fn rounding_to_denominator() {
        let x = BigRational::rounded_from_f64(0.3333334, 1_000_000);
        assert_eq!(x, BigRational::from_ratio(333333, 1_000_000));
    }

    #[test]
    fn tolerances() {
        assert_eq!(Tolerance::<BigRational>::standard(), Tolerance::exact());
        let t = Tolerance::<f64>::standard();
        assert_eq!(t.slack, 1e-8);
        assert_eq!(t.trace, 1e-9);
    }
}
