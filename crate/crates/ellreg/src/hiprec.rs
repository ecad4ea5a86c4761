//! Fixed-point decimal evaluation of logarithms and exponentials at a
//! configurable number of significant digits.
//!
//! Values are big integers scaled by `10^(digits + GUARD)`. The natural log
//! of a positive rational is computed by binary argument reduction plus the
//! odd atanh series; the exponential by reduction modulo `ln 2` plus the
//! Taylor series. Truncation loses at most one unit in the last place per
//! operation and the series lengths are a few hundred terms, so the guard
//! digits absorb every rounding while the requested digits stay honest. All
//! results are deterministic: same input and precision, same digits.

use std::fmt;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::rational::Rational;

/// Guard digits kept beyond the requested precision.
const GUARD: usize = 25;
/// Most significant decimal digits a caller may request.
pub const MAX_DIGITS: usize = 10_000;
/// Binary magnitude cap for exponentials: `|x/ln2|` beyond this is refused.
const MAX_EXP_BITS: i64 = 4_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EvalError {
    NonPositiveLog,
    MagnitudeOutOfRange,
    DigitsOutOfRange,
}

impl fmt::Display for EvalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EvalError::NonPositiveLog => write!(f, "logarithm of a non-positive value"),
            EvalError::MagnitudeOutOfRange => write!(f, "magnitude out of evaluable range"),
            EvalError::DigitsOutOfRange => {
                write!(f, "requested digits outside 1..={MAX_DIGITS}")
            }
        }
    }
}

impl std::error::Error for EvalError {}

/// A fixed-point value tied to an [`Evaluator`]'s scale.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Fixed(BigInt);

impl Fixed {
    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn abs(&self) -> Fixed {
        Fixed(self.0.abs())
    }
}

/// Shared scale and cached constants for one precision level.
pub struct Evaluator {
    digits: usize,
    scale_digits: usize,
    scale: BigInt,
    ln2: BigInt,
}

impl Evaluator {
    pub fn new(digits: usize) -> Result<Self, EvalError> {
        if digits == 0 || digits > MAX_DIGITS {
            return Err(EvalError::DigitsOutOfRange);
        }
        let scale_digits = digits + GUARD;
        let scale = BigInt::from(10u8).pow(scale_digits as u32);
        let ln2 = ln2_at_scale(&scale);
        Ok(Evaluator {
            digits,
            scale_digits,
            scale,
            ln2,
        })
    }

    pub fn digits(&self) -> usize {
        self.digits
    }

    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        (a * b).div_floor(&self.scale)
    }

    pub fn from_rational(&self, q: &Rational) -> Fixed {
        Fixed((q.numer() * &self.scale).div_floor(q.denom()))
    }

    pub fn zero(&self) -> Fixed {
        Fixed(BigInt::zero())
    }

    pub fn add(&self, a: &Fixed, b: &Fixed) -> Fixed {
        Fixed(&a.0 + &b.0)
    }

    pub fn sub(&self, a: &Fixed, b: &Fixed) -> Fixed {
        Fixed(&a.0 - &b.0)
    }

    /// `a * q` for a rational coefficient, truncating at the scale.
    pub fn mul_rational(&self, a: &Fixed, q: &Rational) -> Fixed {
        Fixed((&a.0 * q.numer()).div_floor(q.denom()))
    }

    /// `a / b` in fixed point; `b` must be nonzero.
    pub fn div_fixed(&self, a: &Fixed, b: &Fixed) -> Fixed {
        assert!(!b.0.is_zero(), "fixed-point division by zero");
        Fixed((&a.0 * &self.scale).div_floor(&b.0))
    }

    /// One unit in the last guarded place, as a comparison yardstick.
    pub fn ulps(&self, count: u64) -> Fixed {
        Fixed(BigInt::from(count))
    }

    /// `10^(-places)` as a fixed-point value, for tolerance thresholds.
    pub fn pow10_neg(&self, places: usize) -> Fixed {
        if places >= self.scale_digits {
            return Fixed(BigInt::from(1u8));
        }
        Fixed(BigInt::from(10u8).pow((self.scale_digits - places) as u32))
    }

    /// Natural logarithm of a positive rational.
    pub fn ln_rational(&self, q: &Rational) -> Result<Fixed, EvalError> {
        if !q.is_positive() {
            return Err(EvalError::NonPositiveLog);
        }
        let num = self.ln_big_uint(q.numer())?;
        let den = self.ln_big_uint(q.denom())?;
        Ok(Fixed(num - den))
    }

    /// `ln m` for an integer `m >= 1`: write `m = 2^e * f` with `f` in `[1, 2)`
    /// and use the odd atanh series on `f`.
    fn ln_big_uint(&self, m: &BigInt) -> Result<BigInt, EvalError> {
        assert!(m.is_positive());
        let e = m.bits() - 1;
        // f at scale: (m * scale) >> e, in [scale, 2*scale)
        let f = (m * &self.scale) >> e;
        let ln_f = self.ln_mantissa(&f);
        Ok(BigInt::from(e) * &self.ln2 + ln_f)
    }

    /// `ln f` for `f` in `[1, 2)` at scale: `2 * atanh((f-1)/(f+1))`, with
    /// the argument in `[0, 1/3)`.
    fn ln_mantissa(&self, f_scaled: &BigInt) -> BigInt {
        let t = ((f_scaled - &self.scale) * &self.scale).div_floor(&(f_scaled + &self.scale));
        atanh_series(&t, &self.scale)
    }

    /// `e^x` at scale: reduce `x = q*ln2 + rem` with `rem` in `[0, ln2)`,
    /// evaluate the Taylor series on `rem`, and shift by `2^q`.
    pub fn exp(&self, x: &Fixed) -> Result<Fixed, EvalError> {
        let q = x.0.div_floor(&self.ln2);
        let q_i64 = q.to_i64().ok_or(EvalError::MagnitudeOutOfRange)?;
        if q_i64.abs() > MAX_EXP_BITS {
            return Err(EvalError::MagnitudeOutOfRange);
        }
        let rem = &x.0 - &q * &self.ln2;
        debug_assert!(!rem.is_negative() && rem < self.ln2);
        let mut acc = self.scale.clone();
        let mut term = self.scale.clone();
        let mut k = 1u64;
        loop {
            term = self.mul(&term, &rem) / BigInt::from(k);
            if term.is_zero() {
                break;
            }
            acc += &term;
            k += 1;
        }
        let shifted = if q_i64 >= 0 {
            acc << (q_i64 as usize)
        } else {
            acc >> ((-q_i64) as usize)
        };
        Ok(Fixed(shifted))
    }

    /// Render with `sig_digits` significant digits in scientific notation,
    /// round-half-up on the digit after the last kept one.
    pub fn to_decimal_string(&self, x: &Fixed, sig_digits: usize) -> String {
        let sig_digits = sig_digits.max(1);
        if x.0.is_zero() {
            return "0".to_string();
        }
        let (sign, mag) = match x.0.sign() {
            Sign::Minus => ("-", -x.0.clone()),
            _ => ("", x.0.clone()),
        };
        let digits_str = mag.to_string();
        let ndigits = digits_str.len();
        // value = digits_str * 10^(-scale_digits)
        let exp10 = ndigits as i64 - 1 - self.scale_digits as i64;
        let (kept, carry) = round_digits(&digits_str, sig_digits);
        let exp10 = exp10 + i64::from(carry);
        let mantissa = if kept.len() > 1 {
            format!("{}.{}", &kept[..1], &kept[1..])
        } else {
            kept.clone()
        };
        format!("{sign}{mantissa}e{exp10:+}")
    }
}

/// `atanh(t) * 2` at scale, for `t` in `[0, 1/3]` scaled: the odd series
/// `2 * sum t^(2j+1) / (2j+1)`.
fn atanh_series(t: &BigInt, scale: &BigInt) -> BigInt {
    let t2 = (t * t).div_floor(scale);
    let mut acc = t.clone();
    let mut power = t.clone();
    let mut j = 1u64;
    loop {
        power = (&power * &t2).div_floor(scale);
        if power.is_zero() {
            break;
        }
        acc += &power / BigInt::from(2 * j + 1);
        j += 1;
    }
    acc * BigInt::from(2u8)
}

fn ln2_at_scale(scale: &BigInt) -> BigInt {
    // ln 2 = 2 * atanh(1/3)
    let t = scale.div_floor(&BigInt::from(3u8));
    atanh_series(&t, scale)
}

/// Keep `keep` leading digits of a decimal string, rounding half-up; returns
/// the kept digits and whether the rounding carried past the leading digit.
fn round_digits(digits: &str, keep: usize) -> (String, bool) {
    if digits.len() <= keep {
        // pad to the requested width; no rounding information lost
        let mut s = digits.to_string();
        while s.len() < keep {
            s.push('0');
        }
        return (s, false);
    }
    let kept: Vec<u8> = digits.as_bytes()[..keep].iter().map(|b| b - b'0').collect();
    let next = digits.as_bytes()[keep] - b'0';
    let mut kept = kept;
    if next >= 5 {
        let mut i = keep;
        loop {
            if i == 0 {
                // 999..9 rounded up: becomes 100..0 with exponent bump
                let mut s = String::from("1");
                for _ in 1..keep {
                    s.push('0');
                }
                return (s, true);
            }
            i -= 1;
            if kept[i] == 9 {
                kept[i] = 0;
            } else {
                kept[i] += 1;
                break;
            }
        }
    }
    (kept.iter().map(|d| (d + b'0') as char).collect(), false)
}

/// Approximate `ln` of a positive rational in f64, safe for magnitudes far
/// outside the f64 range: top 53 bits of numerator and denominator plus
/// exact bit-length offsets.
pub fn approx_ln_f64(q: &Rational) -> f64 {
    assert!(q.is_positive(), "ln of non-positive rational");
    ln_bigint_f64(q.numer()) - ln_bigint_f64(q.denom())
}

fn ln_bigint_f64(x: &BigInt) -> f64 {
    let bits = x.bits();
    if bits <= 52 {
        return (x.to_f64().expect("fits")).ln();
    }
    let shift = bits - 52;
    let top: BigInt = x >> shift;
    let top_f = top.to_f64().expect("52 bits fit");
    top_f.ln() + (shift as f64) * std::f64::consts::LN_2
}
