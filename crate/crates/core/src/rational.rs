//! Exact rationals with an inline small representation.
//!
//! Values whose numerator and denominator both fit in 62 bits are stored
//! inline and combined with `i128` intermediates; anything larger promotes to
//! [`BigRational`]. Results are always normalized (lowest terms, positive
//! denominator, small whenever they fit), so equality is structural.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Div, Mul, Neg, Rem, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Num, One, Signed, ToPrimitive, Zero};

use crate::scalar::{Coeff, Scalar};

const SMALL_BOUND: i128 = 1 << 62;

#[derive(Clone)]
enum Repr {
    /// `num / den`, `den > 0`, `gcd(num, den) = 1`, both below 2⁶².
    Small(i64, i64),
    Big(Box<BigRational>),
}

/// Arbitrary-precision rational number.
#[derive(Clone)]
pub struct Rational(Repr);

fn gcd_u128(mut a: u128, mut b: u128) -> u128 {
    if a == 0 {
        return b;
    }
    if b == 0 {
        return a;
    }
    let shift = (a | b).trailing_zeros();
    a >>= a.trailing_zeros();
    loop {
        b >>= b.trailing_zeros();
        if a > b {
            std::mem::swap(&mut a, &mut b);
        }
        b -= a;
        if b == 0 {
            return a << shift;
        }
    }
}

impl Rational {
    /// Normalizes `num/den` computed in `i128`.
    fn from_i128(num: i128, den: i128) -> Rational {
        debug_assert!(den != 0);
        let (mut num, mut den) = if den < 0 { (-num, -den) } else { (num, den) };
        let g = gcd_u128(num.unsigned_abs(), den as u128) as i128;
        if g > 1 {
            num /= g;
            den /= g;
        }
        if num.abs() < SMALL_BOUND && den < SMALL_BOUND {
            Rational(Repr::Small(num as i64, den as i64))
        } else {
            Rational(Repr::Big(Box::new(BigRational::new_raw(BigInt::from(num), BigInt::from(den)))))
        }
    }

    /// Demotes to the small form when it fits. `r` must be reduced.
    pub fn from_big(r: BigRational) -> Rational {
        match (r.numer().to_i64(), r.denom().to_i64()) {
            (Some(n), Some(d)) if (n as i128).abs() < SMALL_BOUND && (d as i128) < SMALL_BOUND => {
                Rational(Repr::Small(n, d))
            }
            _ => Rational(Repr::Big(Box::new(r))),
        }
    }

    pub fn new(num: i64, den: i64) -> Rational {
        assert!(den != 0, "zero denominator");
        Rational::from_i128(num as i128, den as i128)
    }

    pub fn integer(n: i64) -> Rational {
        Rational::from_i128(n as i128, 1)
    }

    pub fn to_big(&self) -> BigRational {
        match &self.0 {
            Repr::Small(n, d) => BigRational::new_raw(BigInt::from(*n), BigInt::from(*d)),
            Repr::Big(b) => (**b).clone(),
        }
    }

    pub fn numer(&self) -> BigInt {
        match &self.0 {
            Repr::Small(n, _) => BigInt::from(*n),
            Repr::Big(b) => b.numer().clone(),
        }
    }

    pub fn denom(&self) -> BigInt {
        match &self.0 {
            Repr::Small(_, d) => BigInt::from(*d),
            Repr::Big(b) => b.denom().clone(),
        }
    }

    pub fn is_integer(&self) -> bool {
        match &self.0 {
            Repr::Small(_, d) => *d == 1,
            Repr::Big(b) => b.is_integer(),
        }
    }

    pub fn is_negative(&self) -> bool {
        match &self.0 {
            Repr::Small(n, _) => *n < 0,
            Repr::Big(b) => b.is_negative(),
        }
    }

    pub fn abs(&self) -> Rational {
        if self.is_negative() {
            -self.clone()
        } else {
            self.clone()
        }
    }

    pub fn recip(&self) -> Rational {
        assert!(!self.is_zero(), "reciprocal of zero");
        match &self.0 {
            Repr::Small(n, d) => Rational::from_i128(*d as i128, *n as i128),
            Repr::Big(b) => Rational::from_big(b.recip()),
        }
    }

    pub fn to_f64(&self) -> f64 {
        match &self.0 {
            Repr::Small(n, d) => *n as f64 / *d as f64,
            Repr::Big(b) => b.to_f64().unwrap_or(f64::NAN),
        }
    }

    /// Residue mod `p`, or `None` when `p` divides the denominator.
    pub fn mod_p(&self, p: u64) -> Option<u64> {
        let (n, d) = match &self.0 {
            Repr::Small(n, d) => ((*n as i128).rem_euclid(p as i128) as u64, (*d as u64) % p),
            Repr::Big(b) => {
                let pb = BigInt::from(p);
                (b.numer().mod_floor(&pb).to_u64().unwrap(), b.denom().mod_floor(&pb).to_u64().unwrap())
            }
        };
        if d == 0 {
            return None;
        }
        Some(crate::oracles::finite::mul_mod(n, crate::oracles::finite::inv_mod(d, p), p))
    }

    fn binop(
        &self,
        rhs: &Rational,
        small: impl Fn(i128, i128, i128, i128) -> (i128, i128),
        big: impl Fn(BigRational, BigRational) -> BigRational,
    ) -> Rational {
        match (&self.0, &rhs.0) {
            (Repr::Small(a, b), Repr::Small(c, d)) => {
                let (n, m) = small(*a as i128, *b as i128, *c as i128, *d as i128);
                Rational::from_i128(n, m)
            }
            _ => Rational::from_big(big(self.to_big(), rhs.to_big())),
        }
    }
}

impl Zero for Rational {
    fn zero() -> Self {
        Rational(Repr::Small(0, 1))
    }

    fn is_zero(&self) -> bool {
        matches!(self.0, Repr::Small(0, _))
    }
}

impl One for Rational {
    fn one() -> Self {
        Rational(Repr::Small(1, 1))
    }

    fn is_one(&self) -> bool {
        matches!(self.0, Repr::Small(1, 1))
    }
}

impl Add for Rational {
    type Output = Rational;

    fn add(self, rhs: Rational) -> Rational {
        &self + &rhs
    }
}

impl Add<&Rational> for &Rational {
    type Output = Rational;

    fn add(self, rhs: &Rational) -> Rational {
        self.binop(
            rhs,
            |a, b, c, d| if b == d { (a + c, b) } else { (a * d + c * b, b * d) },
            |x, y| x + y,
        )
    }
}

impl Sub for Rational {
    type Output = Rational;

    fn sub(self, rhs: Rational) -> Rational {
        &self - &rhs
    }
}

impl Sub<&Rational> for &Rational {
    type Output = Rational;

    fn sub(self, rhs: &Rational) -> Rational {
        self.binop(
            rhs,
            |a, b, c, d| if b == d { (a - c, b) } else { (a * d - c * b, b * d) },
            |x, y| x - y,
        )
    }
}

impl Mul for Rational {
    type Output = Rational;

    fn mul(self, rhs: Rational) -> Rational {
        &self * &rhs
    }
}

impl Mul<&Rational> for &Rational {
    type Output = Rational;

    fn mul(self, rhs: &Rational) -> Rational {
        self.binop(rhs, |a, b, c, d| (a * c, b * d), |x, y| x * y)
    }
}

impl Div for Rational {
    type Output = Rational;

    fn div(self, rhs: Rational) -> Rational {
        &self / &rhs
    }
}

impl Div<&Rational> for &Rational {
    type Output = Rational;

    fn div(self, rhs: &Rational) -> Rational {
        assert!(!rhs.is_zero(), "division by zero");
        self.binop(rhs, |a, b, c, d| (a * d, b * c), |x, y| x / y)
    }
}

impl Rem for Rational {
    type Output = Rational;

    fn rem(self, rhs: Rational) -> Rational {
        Rational::from_big(self.to_big() % rhs.to_big())
    }
}

impl Neg for Rational {
    type Output = Rational;

    fn neg(self) -> Rational {
        match self.0 {
            Repr::Small(n, d) => Rational(Repr::Small(-n, d)),
            Repr::Big(b) => Rational::from_big(-*b),
        }
    }
}

impl PartialEq for Rational {
    fn eq(&self, other: &Rational) -> bool {
        match (&self.0, &other.0) {
            (Repr::Small(a, b), Repr::Small(c, d)) => a == c && b == d,
            (Repr::Big(x), Repr::Big(y)) => x == y,
            _ => false,
        }
    }
}

impl Eq for Rational {}

impl Hash for Rational {
    fn hash<H: Hasher>(&self, state: &mut H) {
        match &self.0 {
            Repr::Small(n, d) => (0u8, n, d).hash(state),
            Repr::Big(b) => (1u8, b.numer(), b.denom()).hash(state),
        }
    }
}

impl PartialOrd for Rational {
    fn partial_cmp(&self, other: &Rational) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Rational {
    fn cmp(&self, other: &Rational) -> Ordering {
        match (&self.0, &other.0) {
            (Repr::Small(a, b), Repr::Small(c, d)) => (*a as i128 * *d as i128).cmp(&(*c as i128 * *b as i128)),
            _ => self.to_big().cmp(&other.to_big()),
        }
    }
}

impl Num for Rational {
    type FromStrRadixErr = <BigRational as Num>::FromStrRadixErr;

    fn from_str_radix(s: &str, radix: u32) -> Result<Self, Self::FromStrRadixErr> {
        BigRational::from_str_radix(s, radix).map(Rational::from_big)
    }
}

impl FromPrimitive for Rational {
    fn from_i64(n: i64) -> Option<Self> {
        Some(Rational::integer(n))
    }

    fn from_u64(n: u64) -> Option<Self> {
        Some(Rational::from_i128(n as i128, 1))
    }

    fn from_f64(f: f64) -> Option<Self> {
        BigRational::from_float(f).map(Rational::from_big)
    }
}

impl Coeff for Rational {
    fn from_int(v: i64) -> Self {
        Rational::integer(v)
    }

    fn div_int(&self, d: i64) -> Self {
        assert!(d != 0, "division by zero");
        match &self.0 {
            Repr::Small(n, m) => Rational::from_i128(*n as i128, *m as i128 * d as i128),
            Repr::Big(b) => Rational::from_big(&**b / BigInt::from(d)),
        }
    }

    fn add_ref(&mut self, other: &Self) {
        *self = &*self + other;
    }

    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }

    fn scale_int(&self, k: i64) -> Self {
        match &self.0 {
            Repr::Small(n, d) => Rational::from_i128(*n as i128 * k as i128, *d as i128),
            Repr::Big(b) => Rational::from_big(&**b * BigInt::from(k)),
        }
    }
}

impl Scalar for Rational {}

impl From<i64> for Rational {
    fn from(n: i64) -> Rational {
        Rational::integer(n)
    }
}

impl From<BigRational> for Rational {
    fn from(r: BigRational) -> Rational {
        Rational::from_big(r)
    }
}

impl fmt::Display for Rational {
    /// `"num/den"`, or `"num"` for integers.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Small(n, 1) => write!(f, "{n}"),
            Repr::Small(n, d) => write!(f, "{n}/{d}"),
            Repr::Big(b) if b.is_integer() => write!(f, "{}", b.numer()),
            Repr::Big(b) => write!(f, "{}/{}", b.numer(), b.denom()),
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Rational {
    type Err = crate::Error;

    /// `"p/q"` or `"p"` with arbitrary-size integers.
    fn from_str(s: &str) -> Result<Rational, crate::Error> {
        let bad = || crate::Error::Parse(format!("bad rational {s:?}"));
        let t = s.trim();
        let (n, d) = match t.split_once('/') {
            Some((a, b)) => (a.trim(), b.trim()),
            None => (t, "1"),
        };
        let n: BigInt = n.parse().map_err(|_| bad())?;
        let d: BigInt = d.parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        Ok(Rational::from_big(BigRational::new(n, d)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn big(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn arb_i64() -> impl Strategy<Value = i64> {
        prop_oneof![-20i64..20, any::<i64>().prop_map(|v| v / 3), Just(i64::MAX), Just(i64::MIN + 1)]
    }

    fn arb_den() -> impl Strategy<Value = i64> {
        arb_i64().prop_filter("nonzero", |d| *d != 0)
    }

    proptest! {
        #[test]
        fn agrees_with_bigrational(a in arb_i64(), b in arb_den(), c in arb_i64(), d in arb_den(), k in arb_den()) {
            let (x, y) = (Rational::new(a, b), Rational::new(c, d));
            let (bx, by) = (big(a, b), big(c, d));
            prop_assert_eq!((&x + &y).to_big(), &bx + &by);
            prop_assert_eq!((&x - &y).to_big(), &bx - &by);
            prop_assert_eq!((&x * &y).to_big(), &bx * &by);
            if c != 0 {
                prop_assert_eq!((&x / &y).to_big(), &bx / &by);
            }
            prop_assert_eq!(x.scale_int(k).to_big(), &bx * BigInt::from(k));
            prop_assert_eq!(x.div_int(k).to_big(), &bx / BigInt::from(k));
            prop_assert_eq!(x.cmp(&y), bx.cmp(&by));
            // canonical: structural equality matches value equality
            if c != 0 {
                prop_assert_eq!(Rational::from_big((&bx * &by) / &by) == x, true);
            }
        }

        #[test]
        fn chains_stay_exact(vals in proptest::collection::vec((arb_i64(), arb_den()), 1..12)) {
            let mut acc = Rational::zero();
            let mut bacc = BigRational::zero();
            for (n, d) in vals {
                acc = &(&acc * &Rational::new(n, d)) + &Rational::new(d, 7);
                bacc = &bacc * big(n, d) + big(d, 7);
            }
            prop_assert_eq!(acc.to_big(), bacc);
        }
    }

    #[test]
    fn normalization() {
        assert_eq!(Rational::new(2, -4), Rational::new(-1, 2));
        assert_eq!(Rational::new(0, -5), Rational::zero());
        assert!(Rational::new(6, 3).is_integer());
        let huge = Rational::integer(i64::MAX).scale_int(4);
        assert_eq!(huge.to_string(), (BigInt::from(i64::MAX) * BigInt::from(4)).to_string());
        assert_eq!(huge.div_int(4), Rational::integer(i64::MAX));
        assert!(matches!(huge.div_int(4).0, Repr::Big(_)));
        assert!(matches!((&huge - &huge).0, Repr::Small(0, 1)));
    }

    #[test]
    fn parse_display_and_mod_p() {
        let r: Rational = "-6/4".parse().unwrap();
        assert_eq!(r.to_string(), "-3/2");
        assert!("1/0".parse::<Rational>().is_err());
        let big: Rational = "123456789012345678901234567891/7".parse().unwrap();
        assert_eq!(big.to_string(), "123456789012345678901234567891/7");
        // 3/5 mod 7 = 3 · 3 = 9 ≡ 2
        assert_eq!(Rational::new(3, 5).mod_p(7), Some(2));
        assert_eq!(Rational::new(-1, 2).mod_p(5), Some(2));
        assert_eq!(Rational::new(1, 7).mod_p(7), None);
    }
}
