//! Exact truth degrees in `[0, 1]` and the finite truth lattices used for
//! search.
//!
//! Every comparison in the engine goes through [`Truth`], which wraps a
//! reduced `i128` fraction. Satisfaction is an exact test against `1`, so
//! there is no floating point anywhere in the semantics.

use alloc::format;
use alloc::string::{String, ToString};
use core::fmt;
use core::str::FromStr;

use num_rational::Ratio;
use num_traits::{CheckedAdd, CheckedMul, CheckedSub, One, Zero};

use crate::error::{Error, Result};

/// A truth degree: an exact rational number in `[0, 1]`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Truth(Ratio<i128>);

impl Truth {
    pub const ZERO: Truth = Truth(Ratio::new_raw(0, 1));
    pub const ONE: Truth = Truth(Ratio::new_raw(1, 1));

    /// `numerator / denominator`, reduced. Fails outside `[0, 1]`.
    pub fn new(numerator: i128, denominator: i128) -> Result<Truth> {
        if denominator == 0 {
            return Err(Error::InvalidTruth(format!("{numerator}/{denominator}")));
        }
        Self::from_ratio(Ratio::new(numerator, denominator))
    }

    pub(crate) fn from_ratio(r: Ratio<i128>) -> Result<Truth> {
        if r < Ratio::zero() || r > Ratio::one() {
            return Err(Error::InvalidTruth(format!("{}/{}", r.numer(), r.denom())));
        }
        Ok(Truth(r))
    }

    /// Builds a truth value from arithmetic that is known to stay in range.
    fn clamped(r: Ratio<i128>) -> Truth {
        debug_assert!(r >= Ratio::zero() && r <= Ratio::one());
        Truth(r)
    }

    pub fn numer(&self) -> i128 {
        *self.0.numer()
    }

    pub fn denom(&self) -> i128 {
        *self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    /// `1 - x`.
    pub fn complement(self) -> Truth {
        Truth::clamped(Ratio::new_raw(self.denom() - self.numer(), self.denom()))
    }

    pub(crate) fn checked_add(self, other: Truth) -> Result<Ratio<i128>> {
        self.0.checked_add(&other.0).ok_or(Error::Overflow)
    }

    pub(crate) fn checked_mul(self, other: Truth) -> Result<Truth> {
        self.0
            .checked_mul(&other.0)
            .map(Truth::clamped)
            .ok_or(Error::Overflow)
    }

    /// `max(x + y - 1, 0)`
    pub(crate) fn lukasiewicz_and(self, other: Truth) -> Result<Truth> {
        let sum = self.checked_add(other)?;
        let one = Ratio::one();
        if sum <= one {
            Ok(Truth::ZERO)
        } else {
            Ok(Truth::clamped(
                sum.checked_sub(&one).ok_or(Error::Overflow)?,
            ))
        }
    }

    /// `min(x + y, 1)`
    pub(crate) fn lukasiewicz_or(self, other: Truth) -> Result<Truth> {
        let sum = self.checked_add(other)?;
        if sum >= Ratio::one() {
            Ok(Truth::ONE)
        } else {
            Ok(Truth::clamped(sum))
        }
    }

    /// `x + y - x*y`
    pub(crate) fn probabilistic_sum(self, other: Truth) -> Result<Truth> {
        let sum = self.checked_add(other)?;
        let prod = self.0.checked_mul(&other.0).ok_or(Error::Overflow)?;
        Ok(Truth::clamped(
            sum.checked_sub(&prod).ok_or(Error::Overflow)?,
        ))
    }

    /// `min(1 - x + y, 1)`
    pub(crate) fn lukasiewicz_implication(self, other: Truth) -> Result<Truth> {
        if self <= other {
            return Ok(Truth::ONE);
        }
        let diff = other.0.checked_sub(&self.0).ok_or(Error::Overflow)?;
        Ok(Truth::clamped(
            Ratio::one().checked_add(&diff).ok_or(Error::Overflow)?,
        ))
    }

    /// Decimal rendering, available when the reduced denominator divides a
    /// power of ten.
    pub fn to_decimal(&self) -> Option<String> {
        let (mut twos, mut fives) = (0u32, 0u32);
        let mut d = self.denom();
        while d % 2 == 0 {
            d /= 2;
            twos += 1;
        }
        while d % 5 == 0 {
            d /= 5;
            fives += 1;
        }
        if d != 1 {
            return None;
        }
        let digits = twos.max(fives);
        if digits == 0 {
            return Some(self.numer().to_string());
        }
        let scale = 10i128.checked_pow(digits)?;
        let scaled = self.numer().checked_mul(scale / self.denom())?;
        let int_part = scaled / scale;
        let frac_part = scaled % scale;
        Some(format!(
            "{int_part}.{frac:0width$}",
            frac = frac_part,
            width = digits as usize
        ))
    }

    /// Decimal when exact, reduced fraction otherwise.
    pub fn to_display_string(&self) -> String {
        self.to_decimal().unwrap_or_else(|| self.to_string())
    }

    /// Lossy conversion for reporting only.
    pub fn to_f64(&self) -> f64 {
        self.numer() as f64 / self.denom() as f64
    }
}

impl Default for Truth {
    fn default() -> Self {
        Truth::ZERO
    }
}

/// Canonical form: a reduced fraction, `0` and `1` without denominator.
impl fmt::Display for Truth {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denom() == 1 {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

impl fmt::Debug for Truth {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn parse_uint(s: &str) -> Option<i128> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    s.parse().ok()
}

/// Accepts decimals (`0.56`, `1`, `.5`) and fractions (`14/25`).
impl FromStr for Truth {
    type Err = Error;

    fn from_str(text: &str) -> Result<Truth> {
        let s = text.trim();
        let bad = || Error::InvalidTruth(s.into());
        if let Some((n, d)) = s.split_once('/') {
            let n = parse_uint(n.trim()).ok_or_else(bad)?;
            let d = parse_uint(d.trim()).ok_or_else(bad)?;
            return Truth::new(n, d).map_err(|_| bad());
        }
        let (int_part, frac_part) = match s.split_once('.') {
            Some((i, f)) => (i, f),
            None => (s, ""),
        };
        if int_part.is_empty() && frac_part.is_empty() {
            return Err(bad());
        }
        let int = if int_part.is_empty() {
            0
        } else {
            parse_uint(int_part).ok_or_else(bad)?
        };
        if frac_part.is_empty() {
            if s.ends_with('.') {
                return Err(bad());
            }
            return Truth::new(int, 1).map_err(|_| bad());
        }
        let frac = parse_uint(frac_part).ok_or_else(bad)?;
        let scale = 10i128.checked_pow(frac_part.len() as u32).ok_or_else(bad)?;
        let num = int
            .checked_mul(scale)
            .and_then(|v| v.checked_add(frac))
            .ok_or_else(bad)?;
        Truth::new(num, scale).map_err(|_| bad())
    }
}

/// The finite truth set `{0, 1/D, ..., 1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Lattice {
    denominator: u32,
}

impl Lattice {
    pub fn new(denominator: u32) -> Result<Lattice> {
        if denominator == 0 {
            return Err(Error::Usage("lattice denominator must be positive".into()));
        }
        Ok(Lattice { denominator })
    }

    /// `{0, 1}`
    pub const BOOLEAN: Lattice = Lattice { denominator: 1 };

    pub fn denominator(&self) -> u32 {
        self.denominator
    }

    /// Number of points, `D + 1`.
    pub fn len(&self) -> usize {
        self.denominator as usize + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn point(&self, k: u32) -> Truth {
        assert!(k <= self.denominator, "lattice index out of range");
        Truth(Ratio::new(k as i128, self.denominator as i128))
    }

    /// Ascending.
    pub fn points(&self) -> impl DoubleEndedIterator<Item = Truth> + Clone + '_ {
        (0..=self.denominator).map(move |k| self.point(k))
    }

    /// The index `k` with `point(k) == t`, if `t` lies on the lattice.
    pub fn index_of(&self, t: Truth) -> Option<u32> {
        let d = self.denominator as i128;
        if d % t.denom() != 0 {
            return None;
        }
        Some((t.numer() * (d / t.denom())) as u32)
    }

    pub fn contains(&self, t: Truth) -> bool {
        self.index_of(t).is_some()
    }
}

#[cfg(feature = "serde")]
mod serde_impl {
    use super::Truth;
    use alloc::string::{String, ToString};
    use core::str::FromStr;
    use serde::{de, Deserialize, Deserializer, Serialize, Serializer};

    impl Serialize for Truth {
        fn serialize<S: Serializer>(&self, s: S) -> core::result::Result<S::Ok, S::Error> {
            s.serialize_str(&self.to_string())
        }
    }

    impl<'de> Deserialize<'de> for Truth {
        fn deserialize<D: Deserializer<'de>>(d: D) -> core::result::Result<Truth, D::Error> {
            let s = String::deserialize(d)?;
            Truth::from_str(&s).map_err(de::Error::custom)
        }
    }
}
