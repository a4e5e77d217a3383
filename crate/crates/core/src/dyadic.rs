//! Exact dyadic rationals `num / 2^bits`, used for the scale parameter κ̂
//! and for outward-rounded enclosures of condition sums.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_rational::{BigRational, Ratio};
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Dyadic {
    num: BigUint,
    bits: u32,
}

impl Dyadic {
    pub fn new(num: BigUint, bits: u32) -> Self {
        Dyadic { num, bits }
    }

    pub fn numerator(&self) -> &BigUint {
        &self.num
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    /// Nearest dyadic with denominator `2^bits` to `n^(-1/4)`, ties rounded up.
    ///
    /// Computed in integers: with `x = 2^bits · n^(-1/4)` and `r = floor(x)`,
    /// `x ≥ r + 1/2` iff `16 · 2^(4·bits) ≥ n · (2r + 1)^4`.
    pub fn nearest_inv_fourth_root(n: u64, bits: u32) -> Self {
        assert!(n >= 1, "n must be positive");
        let n_big = BigUint::from(n);
        let scale = BigUint::one() << (4 * bits as usize);
        let r = (&scale / &n_big).nth_root(4);
        let odd = (&r << 1usize) + 1u32;
        let lhs = scale << 4usize;
        let rhs = &n_big * odd.pow(4);
        let num = if lhs >= rhs { r + 1u32 } else { r };
        Dyadic { num, bits }
    }

    pub fn to_rational(&self) -> BigRational {
        Ratio::new(
            BigInt::from(self.num.clone()),
            BigInt::from(BigUint::one() << self.bits as usize),
        )
    }

    pub fn to_f64(&self) -> f64 {
        ratio_to_f64(&self.num, &(BigUint::one() << self.bits as usize))
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/2^{}", self.num, self.bits)
    }
}

impl FromStr for Dyadic {
    type Err = Error;

    /// Parses `"<decimal>/2^<bits>"`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("expected \"<num>/2^<bits>\", got {s:?}"));
        let (num, den) = s.split_once('/').ok_or_else(bad)?;
        let bits = den.strip_prefix("2^").ok_or_else(bad)?;
        let num = parse_decimal(num).ok_or_else(bad)?;
        if bits.is_empty() || !bits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let bits: u32 = bits.parse().map_err(|_| bad())?;
        if bits > 1024 {
            return Err(Error::Parse(format!("dyadic exponent {bits} too large")));
        }
        Ok(Dyadic { num, bits })
    }
}

/// Strict decimal parser: ASCII digits only, no sign, no whitespace.
pub fn parse_decimal(s: &str) -> Option<BigUint> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    BigUint::parse_bytes(s.as_bytes(), 10)
}

/// Correctly rounded `num / den` as an `f64`.
pub fn ratio_to_f64(num: &BigUint, den: &BigUint) -> f64 {
    if num.is_zero() {
        return 0.0;
    }
    Ratio::new_raw(BigInt::from(num.clone()), BigInt::from(den.clone()))
        .to_f64()
        .unwrap_or(f64::NAN)
}

/// Outward-rounded enclosure `[lo, hi] / 2^bits` of a nonnegative real.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Enclosure {
    pub lo: BigUint,
    pub hi: BigUint,
    pub bits: u32,
}

impl Enclosure {
    pub fn zero(bits: u32) -> Self {
        Enclosure {
            lo: BigUint::zero(),
            hi: BigUint::zero(),
            bits,
        }
    }

    /// Encloses `num / den` by floor and ceiling on the `2^-bits` grid.
    pub fn of_ratio(num: &BigUint, den: &BigUint, bits: u32) -> Self {
        let scaled = num << bits as usize;
        let (q, r) = num_integer::Integer::div_rem(&scaled, den);
        let hi = if r.is_zero() { q.clone() } else { &q + 1u32 };
        Enclosure { lo: q, hi, bits }
    }

    pub fn add(&mut self, other: &Enclosure) {
        assert_eq!(self.bits, other.bits);
        self.lo += &other.lo;
        self.hi += &other.hi;
    }

    /// Certified `value < 1`.
    pub fn certified_below_one(&self) -> bool {
        self.hi < (BigUint::one() << self.bits as usize)
    }

    pub fn lo_rational(&self) -> BigRational {
        Ratio::new(BigInt::from(self.lo.clone()), self.denominator())
    }

    pub fn hi_rational(&self) -> BigRational {
        Ratio::new(BigInt::from(self.hi.clone()), self.denominator())
    }

    fn denominator(&self) -> BigInt {
        BigInt::from(BigUint::one() << self.bits as usize)
    }

    pub fn contains(&self, x: &BigRational) -> bool {
        &self.lo_rational() <= x && x <= &self.hi_rational()
    }

    pub fn hi_f64(&self) -> f64 {
        ratio_to_f64(&self.hi, &(BigUint::one() << self.bits as usize))
    }

    pub fn mid_f64(&self) -> f64 {
        ratio_to_f64(
            &(&self.lo + &self.hi),
            &(BigUint::one() << (self.bits as usize + 1)),
        )
    }

    /// `"p/q"` with both parts in decimal.
    pub fn lo_string(&self) -> String {
        format!("{}/{}", self.lo, BigUint::one() << self.bits as usize)
    }

    pub fn hi_string(&self) -> String {
        format!("{}/{}", self.hi, BigUint::one() << self.bits as usize)
    }

    /// Parses the pair written by [`lo_string`](Self::lo_string) and
    /// [`hi_string`](Self::hi_string); the denominator must be a power of two.
    pub fn from_strings(lo: &str, hi: &str) -> Result<Self> {
        let (lo, d1) = parse_fraction(lo)?;
        let (hi, d2) = parse_fraction(hi)?;
        if d1 != d2 {
            return Err(Error::Parse("enclosure denominators differ".into()));
        }
        let bits = d1.bits().saturating_sub(1);
        if d1.is_zero() || d1 != BigUint::one() << bits as usize {
            return Err(Error::Parse(
                "enclosure denominator is not a power of two".into(),
            ));
        }
        if lo > hi {
            return Err(Error::Parse("enclosure lower end exceeds upper end".into()));
        }
        let bits = u32::try_from(bits).map_err(|_| Error::Parse("denominator too large".into()))?;
        Ok(Enclosure { lo, hi, bits })
    }
}

/// Parses a nonnegative `"p/q"` string with decimal parts.
pub fn parse_fraction(s: &str) -> Result<(BigUint, BigUint)> {
    let bad = || Error::Parse(format!("expected \"p/q\", got {s:?}"));
    let (p, q) = s.split_once('/').ok_or_else(bad)?;
    let p = parse_decimal(p).ok_or_else(bad)?;
    let q = parse_decimal(q).ok_or_else(bad)?;
    if q.is_zero() {
        return Err(bad());
    }
    Ok((p, q))
}
