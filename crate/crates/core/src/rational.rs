//! Exact rational scalars.
//!
//! Values are kept in lowest terms with a positive denominator. Small values
//! live in a machine-word representation and overflow transparently into
//! arbitrary precision; a value is stored in the big representation only when
//! it does not fit the small one, so structural equality is value equality.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::{BigRational, Ratio};
use num_traits::{CheckedAdd, CheckedDiv, CheckedMul, CheckedSub, Signed, ToPrimitive, Zero};

/// Magnitude bound for the small representation. Keeping well inside `i64`
/// means intermediate products in `Ratio<i64>` checked arithmetic never touch
/// `i64::MIN`.
const SMALL_LIMIT: i64 = 1 << 53;

#[derive(Clone)]
enum Repr {
    Small(Ratio<i64>),
    Big(BigRational),
}

/// An exact rational number.
#[derive(Clone)]
pub struct Rational(Repr);

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseRationalError {
    #[error("empty rational literal")]
    Empty,
    #[error("malformed rational literal `{0}` (expected `p` or `p/q` with integer p, q)")]
    Malformed(String),
    #[error("zero denominator in `{0}`")]
    ZeroDenominator(String),
}

fn fits(r: &Ratio<i64>) -> bool {
    r.numer().abs() < SMALL_LIMIT && *r.denom() < SMALL_LIMIT
}

impl Rational {
    fn from_small(r: Ratio<i64>) -> Self {
        if fits(&r) {
            Rational(Repr::Small(r))
        } else {
            Self::from_big(big_of(&r))
        }
    }

    fn from_big(r: BigRational) -> Self {
        if let (Some(n), Some(d)) = (r.numer().to_i64(), r.denom().to_i64()) {
            if n.abs() < SMALL_LIMIT && d < SMALL_LIMIT {
                return Rational(Repr::Small(Ratio::new_raw(n, d)));
            }
        }
        Rational(Repr::Big(r))
    }

    /// `numer / denom`, reduced.
    ///
    /// Panics if `denom` is zero.
    pub fn new(numer: i64, denom: i64) -> Self {
        assert!(denom != 0, "zero denominator");
        Self::from_big(BigRational::new(BigInt::from(numer), BigInt::from(denom)))
    }

    pub fn from_bigints(numer: BigInt, denom: BigInt) -> Option<Self> {
        if denom.is_zero() {
            return None;
        }
        Some(Self::from_big(BigRational::new(numer, denom)))
    }

    pub fn from_integer(n: i64) -> Self {
        Self::from_big(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn zero() -> Self {
        Rational(Repr::Small(Ratio::new_raw(0, 1)))
    }

    pub fn one() -> Self {
        Rational(Repr::Small(Ratio::new_raw(1, 1)))
    }

    pub fn is_zero(&self) -> bool {
        match &self.0 {
            Repr::Small(r) => r.is_zero(),
            Repr::Big(r) => r.is_zero(),
        }
    }

    pub fn is_integer(&self) -> bool {
        match &self.0 {
            Repr::Small(r) => r.is_integer(),
            Repr::Big(r) => r.is_integer(),
        }
    }

    pub fn is_negative(&self) -> bool {
        match &self.0 {
            Repr::Small(r) => r.is_negative(),
            Repr::Big(r) => r.is_negative(),
        }
    }

    pub fn is_positive(&self) -> bool {
        match &self.0 {
            Repr::Small(r) => r.is_positive(),
            Repr::Big(r) => r.is_positive(),
        }
    }

    pub fn numer(&self) -> BigInt {
        match &self.0 {
            Repr::Small(r) => BigInt::from(*r.numer()),
            Repr::Big(r) => r.numer().clone(),
        }
    }

    pub fn denom(&self) -> BigInt {
        match &self.0 {
            Repr::Small(r) => BigInt::from(*r.denom()),
            Repr::Big(r) => r.denom().clone(),
        }
    }

    /// Whether the numerator is an even integer (used for halving in ℤ).
    pub fn is_even_integer(&self) -> bool {
        self.is_integer() && self.numer().is_even()
    }

    pub fn abs(&self) -> Self {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    pub fn half(&self) -> Self {
        self / &Rational::from_integer(2)
    }

    fn to_big(&self) -> BigRational {
        match &self.0 {
            Repr::Small(r) => big_of(r),
            Repr::Big(r) => r.clone(),
        }
    }
}

fn big_of(r: &Ratio<i64>) -> BigRational {
    BigRational::new_raw(BigInt::from(*r.numer()), BigInt::from(*r.denom()))
}

macro_rules! binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl<'a> $trait<&'a Rational> for &'a Rational {
            type Output = Rational;
            fn $method(self, rhs: &'a Rational) -> Rational {
                if let (Repr::Small(a), Repr::Small(b)) = (&self.0, &rhs.0) {
                    if let Some(r) = a.$checked(b) {
                        return Rational::from_small(r);
                    }
                }
                Rational::from_big(self.to_big().$method(rhs.to_big()))
            }
        }
        impl $trait for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                (&self).$method(&rhs)
            }
        }
    };
}

binop!(Add, add, checked_add);
binop!(Sub, sub, checked_sub);
binop!(Mul, mul, checked_mul);
binop!(Div, div, checked_div);

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        match &self.0 {
            Repr::Small(r) => Rational(Repr::Small(-r)),
            Repr::Big(r) => Rational(Repr::Big(-r)),
        }
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        -&self
    }
}

impl PartialEq for Rational {
    fn eq(&self, other: &Self) -> bool {
        match (&self.0, &other.0) {
            (Repr::Small(a), Repr::Small(b)) => a.numer() == b.numer() && a.denom() == b.denom(),
            (Repr::Big(a), Repr::Big(b)) => a.numer() == b.numer() && a.denom() == b.denom(),
            _ => false,
        }
    }
}

impl Eq for Rational {}

impl Hash for Rational {
    fn hash<H: Hasher>(&self, state: &mut H) {
        match &self.0 {
            Repr::Small(r) => {
                0u8.hash(state);
                r.numer().hash(state);
                r.denom().hash(state);
            }
            Repr::Big(r) => {
                1u8.hash(state);
                r.numer().hash(state);
                r.denom().hash(state);
            }
        }
    }
}

impl Ord for Rational {
    fn cmp(&self, other: &Self) -> Ordering {
        match (&self.0, &other.0) {
            (Repr::Small(a), Repr::Small(b)) => {
                // |n|, d < 2^53, so cross products fit in i128.
                let lhs = *a.numer() as i128 * *b.denom() as i128;
                let rhs = *b.numer() as i128 * *a.denom() as i128;
                lhs.cmp(&rhs)
            }
            _ => self.to_big().cmp(&other.to_big()),
        }
    }
}

impl PartialOrd for Rational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Small(r) if r.is_integer() => write!(f, "{}", r.numer()),
            Repr::Small(r) => write!(f, "{}/{}", r.numer(), r.denom()),
            Repr::Big(r) if r.is_integer() => write!(f, "{}", r.numer()),
            Repr::Big(r) => write!(f, "{}/{}", r.numer(), r.denom()),
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::from_integer(n)
    }
}

fn parse_int(s: &str, whole: &str) -> Result<BigInt, ParseRationalError> {
    let digits = s.strip_prefix('-').or_else(|| s.strip_prefix('+')).unwrap_or(s);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(ParseRationalError::Malformed(whole.to_string()));
    }
    BigInt::from_str(s).map_err(|_| ParseRationalError::Malformed(whole.to_string()))
}

impl FromStr for Rational {
    type Err = ParseRationalError;

    /// Accepts `p` or `p/q`; decimal points and exponents are rejected.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        if t.is_empty() {
            return Err(ParseRationalError::Empty);
        }
        match t.split_once('/') {
            None => Ok(Rational::from_big(BigRational::from_integer(parse_int(t, s)?))),
            Some((n, d)) => {
                let n = parse_int(n.trim(), s)?;
                let d = parse_int(d.trim(), s)?;
                if d.is_zero() {
                    return Err(ParseRationalError::ZeroDenominator(s.to_string()));
                }
                Ok(Rational::from_big(BigRational::new(n, d)))
            }
        }
    }
}

/// Shorthand for building rationals in tests and examples: `q(1, 2)`.
pub fn q(numer: i64, denom: i64) -> Rational {
    Rational::new(numer, denom)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn add_thirds_and_halves() {
        assert_eq!(&q(1, 2) + &q(1, 3), q(5, 6));
    }

    #[test]
    fn normalizes_sign_and_terms() {
        let r = q(6, -8);
        assert_eq!(r.numer(), BigInt::from(-3));
        assert_eq!(r.denom(), BigInt::from(4));
        assert_eq!(r.to_string(), "-3/4");
    }

    #[test]
    fn parse_rejects_floats() {
        assert!("1.5".parse::<Rational>().is_err());
        assert!("1e3".parse::<Rational>().is_err());
        assert!("1/0".parse::<Rational>().is_err());
        assert_eq!("-6/4".parse::<Rational>().unwrap(), q(-3, 2));
        assert_eq!(" 7 ".parse::<Rational>().unwrap(), Rational::from_integer(7));
    }

    #[test]
    fn overflow_promotes_and_demotes() {
        let big = Rational::from_integer(SMALL_LIMIT - 1);
        let sq = &big * &big;
        assert!(matches!(sq.0, Repr::Big(_)));
        let back = &sq / &big;
        assert!(matches!(back.0, Repr::Small(_)));
        assert_eq!(back, big);
    }

    fn arb() -> impl Strategy<Value = Rational> {
        (-1_000_000i64..1_000_000, 1i64..10_000).prop_map(|(n, d)| q(n, d))
    }

    fn arb_big() -> impl Strategy<Value = Rational> {
        (arb(), 0u32..4).prop_map(|(r, k)| {
            let f = Rational::from_integer(SMALL_LIMIT - 3);
            let mut out = r;
            for _ in 0..k {
                out = &out * &f;
            }
            out
        })
    }

    proptest! {
        #[test]
        fn field_laws_hold(a in arb_big(), b in arb_big(), c in arb()) {
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&(&a - &b) + &b, a.clone());
            if !b.is_zero() {
                prop_assert_eq!(&(&a / &b) * &b, a.clone());
            }
        }

        #[test]
        fn order_matches_bigrational(a in arb_big(), b in arb_big()) {
            prop_assert_eq!(a.cmp(&b), a.to_big().cmp(&b.to_big()));
        }

        #[test]
        fn display_parse_roundtrip(a in arb_big()) {
            prop_assert_eq!(a.to_string().parse::<Rational>().unwrap(), a);
        }
    }
}
