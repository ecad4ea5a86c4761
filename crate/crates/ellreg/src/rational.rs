//! Exact rational scalars and the extended line with `+inf`.
//!
//! Every exponent, determinant, slowness and margin in this crate is a
//! [`Rational`]. Results of arithmetic are always fully reduced with a
//! positive denominator, so equality is structural and hashing/serialization
//! are canonical.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Longest accepted textual rational literal. Inputs are untrusted; parsing a
/// multi-megabyte numerator is never legitimate for this tool.
pub const MAX_LITERAL_LEN: usize = 4096;

/// Arbitrary-precision rational, reduced with positive denominator.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rational(BigRational);

impl Rational {
    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn from_int(v: i64) -> Self {
        Rational(BigRational::from_integer(BigInt::from(v)))
    }

    /// `num/den` as a reduced rational. `den` must be nonzero.
    pub fn new(num: i64, den: i64) -> Self {
        assert!(den != 0, "rational with zero denominator");
        Rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn from_big(num: BigInt, den: BigInt) -> Result<Self, ParseRationalError> {
        if den.is_zero() {
            return Err(ParseRationalError::ZeroDenominator);
        }
        Ok(Rational(BigRational::new(num, den)))
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    pub fn floor(&self) -> BigInt {
        self.0.floor().to_integer()
    }

    /// Multiplicative inverse; `None` for zero (division by zero is a hard
    /// error at every call site, never a saturating value).
    pub fn checked_recip(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(Rational(self.0.recip()))
        }
    }

    pub fn recip(&self) -> Self {
        self.checked_recip().expect("reciprocal of zero")
    }

    pub fn checked_div(&self, rhs: &Self) -> Option<Self> {
        if rhs.is_zero() {
            None
        } else {
            Some(Rational(&self.0 / &rhs.0))
        }
    }

    pub fn pow(&self, exp: i32) -> Self {
        if exp < 0 {
            assert!(!self.is_zero(), "zero to a negative power");
        }
        Rational(self.0.pow(exp))
    }

    pub fn min(self, other: Self) -> Self {
        if self <= other {
            self
        } else {
            other
        }
    }

    pub fn max(self, other: Self) -> Self {
        if self >= other {
            self
        } else {
            other
        }
    }

    /// Approximate value for diagnostics only; exact comparisons never use it.
    pub fn approx_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or_else(|| {
            // magnitude outside f64 range: sign * inf is good enough for display
            if self.is_negative() {
                f64::NEG_INFINITY
            } else {
                f64::INFINITY
            }
        })
    }

    /// Parse `"a"` or `"a/b"`. Decimal literals are rejected: a decimal would
    /// silently move an instance across a strict critical inequality.
    pub fn parse(text: &str) -> Result<Self, ParseRationalError> {
        let s = text.trim();
        if s.is_empty() {
            return Err(ParseRationalError::Empty);
        }
        if s.len() > MAX_LITERAL_LEN {
            return Err(ParseRationalError::TooLong);
        }
        if s.contains('.') {
            return Err(ParseRationalError::DecimalNotExact);
        }
        let (num_str, den_str) = match s.split_once('/') {
            Some((a, b)) => (a, b),
            None => (s, "1"),
        };
        let num = BigInt::from_str(num_str.trim()).map_err(|_| ParseRationalError::Malformed)?;
        let den = BigInt::from_str(den_str.trim()).map_err(|_| ParseRationalError::Malformed)?;
        Self::from_big(num, den)
    }

    /// The rational with the smallest denominator (then smallest numerator
    /// magnitude) strictly inside `(lo, hi)`. Used to keep certificate
    /// slownesses compact: any value in the admissible window is sound, so we
    /// pick the simplest one.
    pub fn simplest_in_open(lo: &Rational, hi: &Rational) -> Rational {
        assert!(lo < hi, "empty interval");
        if lo.is_negative() && hi.is_positive() {
            return Rational::zero();
        }
        if !hi.is_positive() {
            // mirror into the positive half line
            return -Self::simplest_in_open(&-hi.clone(), &-lo.clone());
        }
        // 0 <= lo < hi
        let fl = Rational(BigRational::from_integer(lo.floor()));
        let next_int = &fl + &Rational::one();
        if next_int < *hi {
            return next_int;
        }
        let a = lo - &fl;
        let b = hi - &fl;
        if a.is_zero() {
            // (fl, fl + b): take fl + 1/m for the smallest integer m > 1/b
            let m = Rational(BigRational::from_integer(b.recip().floor())) + Rational::one();
            return &fl + &m.recip();
        }
        &fl + &Self::simplest_in_open(&b.recip(), &a.recip()).recip()
    }
}

impl fmt::Display for Rational {
    /// Canonical `num/den` form, including a unit denominator (`5/1`), to
    /// match the on-disk document grammar exactly.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.0.numer(), self.0.denom())
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $op:tt) => {
        impl $trait for &Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational(&self.0 $op &rhs.0)
            }
        }
        impl $trait for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational(self.0 $op rhs.0)
            }
        }
    };
}

binop!(Add, add, +);
binop!(Sub, sub, -);
binop!(Mul, mul, *);

impl Div for &Rational {
    type Output = Rational;
    fn div(self, rhs: &Rational) -> Rational {
        self.checked_div(rhs).expect("division by zero")
    }
}

impl Div for Rational {
    type Output = Rational;
    fn div(self, rhs: Rational) -> Rational {
        (&self).div(&rhs)
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0.clone())
    }
}

impl AddAssign<&Rational> for Rational {
    fn add_assign(&mut self, rhs: &Rational) {
        self.0 += &rhs.0;
    }
}

impl SubAssign<&Rational> for Rational {
    fn sub_assign(&mut self, rhs: &Rational) {
        self.0 -= &rhs.0;
    }
}

impl MulAssign<&Rational> for Rational {
    fn mul_assign(&mut self, rhs: &Rational) {
        self.0 *= &rhs.0;
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseRationalError {
    Empty,
    TooLong,
    DecimalNotExact,
    Malformed,
    ZeroDenominator,
}

impl fmt::Display for ParseRationalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseRationalError::Empty => write!(f, "empty rational literal"),
            ParseRationalError::TooLong => write!(f, "rational literal too long"),
            ParseRationalError::DecimalNotExact => {
                write!(f, "exact rational required (decimal literals are not accepted)")
            }
            ParseRationalError::Malformed => write!(f, "malformed rational literal"),
            ParseRationalError::ZeroDenominator => write!(f, "zero denominator"),
        }
    }
}

impl std::error::Error for ParseRationalError {}

/// A rational extended with a single point at `+inf`.
///
/// `inf` compares strictly above every finite value and equal only to itself;
/// its reciprocal is exactly `0`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum ExtRational {
    Finite(Rational),
    Infinity,
}

impl ExtRational {
    pub fn from_int(v: i64) -> Self {
        ExtRational::Finite(Rational::from_int(v))
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, ExtRational::Infinity)
    }

    pub fn as_finite(&self) -> Option<&Rational> {
        match self {
            ExtRational::Finite(q) => Some(q),
            ExtRational::Infinity => None,
        }
    }

    /// `1/x` with `1/inf = 0`. Reciprocal of finite zero is a hard error.
    pub fn recip(&self) -> Rational {
        match self {
            ExtRational::Finite(q) => q.recip(),
            ExtRational::Infinity => Rational::zero(),
        }
    }

    pub fn is_positive(&self) -> bool {
        match self {
            ExtRational::Finite(q) => q.is_positive(),
            ExtRational::Infinity => true,
        }
    }

    pub fn parse(text: &str) -> Result<Self, ParseRationalError> {
        let s = text.trim();
        if s == "inf" {
            return Ok(ExtRational::Infinity);
        }
        Rational::parse(s).map(ExtRational::Finite)
    }
}

impl PartialOrd for ExtRational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExtRational {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (ExtRational::Infinity, ExtRational::Infinity) => Ordering::Equal,
            (ExtRational::Infinity, ExtRational::Finite(_)) => Ordering::Greater,
            (ExtRational::Finite(_), ExtRational::Infinity) => Ordering::Less,
            (ExtRational::Finite(a), ExtRational::Finite(b)) => a.cmp(b),
        }
    }
}

impl PartialEq<Rational> for ExtRational {
    fn eq(&self, other: &Rational) -> bool {
        matches!(self, ExtRational::Finite(q) if q == other)
    }
}

impl PartialOrd<Rational> for ExtRational {
    fn partial_cmp(&self, other: &Rational) -> Option<Ordering> {
        match self {
            ExtRational::Finite(q) => q.partial_cmp(other),
            ExtRational::Infinity => Some(Ordering::Greater),
        }
    }
}

impl fmt::Display for ExtRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtRational::Finite(q) => write!(f, "{q}"),
            ExtRational::Infinity => write!(f, "inf"),
        }
    }
}

impl fmt::Debug for ExtRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
