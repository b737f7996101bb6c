//! The ring of Eisenstein integers `Z[ω]`, `ω² + ω + 1 = 0`.
//!
//! Elements are stored as `a + bω` with machine integers. Every operation is
//! exact; overflow panics instead of wrapping.

use std::fmt;
use std::iter::{Product, Sum};
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::AlgebraError;

/// `a + bω` with `ω` a primitive cube root of unity.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct EisensteinInt {
    pub a: i64,
    pub b: i64,
}

/// A λ-adic valuation; `Infinite` is the valuation of zero.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Valuation {
    Finite(u32),
    Infinite,
}

impl Valuation {
    pub fn is_at_least(self, k: u32) -> bool {
        self >= Valuation::Finite(k)
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(k) => write!(f, "{k}"),
            Valuation::Infinite => f.write_str("inf"),
        }
    }
}

#[inline]
fn mul_checked(x: i64, y: i64) -> i64 {
    x.checked_mul(y).expect("Eisenstein integer overflow")
}

#[inline]
fn add_checked(x: i64, y: i64) -> i64 {
    x.checked_add(y).expect("Eisenstein integer overflow")
}

#[inline]
fn sub_checked(x: i64, y: i64) -> i64 {
    x.checked_sub(y).expect("Eisenstein integer overflow")
}

impl EisensteinInt {
    pub const ZERO: Self = Self { a: 0, b: 0 };
    pub const ONE: Self = Self { a: 1, b: 0 };
    pub const OMEGA: Self = Self { a: 0, b: 1 };
    /// `λ = 1 − ω`, the prime above 3.
    pub const LAMBDA: Self = Self { a: 1, b: -1 };

    pub const fn new(a: i64, b: i64) -> Self {
        Self { a, b }
    }

    pub const fn from_int(a: i64) -> Self {
        Self { a, b: 0 }
    }

    /// `ω^k` for any integer `k`.
    pub fn omega_pow(k: i64) -> Self {
        match k.rem_euclid(3) {
            0 => Self::ONE,
            1 => Self::OMEGA,
            _ => Self::new(-1, -1),
        }
    }

    /// The six units `±ω^k`, in a fixed order.
    pub fn units() -> [Self; 6] {
        [Self::ONE, Self::OMEGA, Self::omega_pow(2), -Self::ONE, -Self::OMEGA, -Self::omega_pow(2)]
    }

    pub fn is_zero(&self) -> bool {
        self.a == 0 && self.b == 0
    }

    pub fn is_unit(&self) -> bool {
        self.norm() == 1
    }

    /// Complex conjugation: `a + bω ↦ (a − b) − bω`.
    pub fn conj(self) -> Self {
        Self::new(sub_checked(self.a, self.b), -self.b)
    }

    /// `N(a + bω) = a² − ab + b²`.
    pub fn norm(self) -> i64 {
        let (a, b) = (self.a, self.b);
        add_checked(sub_checked(mul_checked(a, a), mul_checked(a, b)), mul_checked(b, b))
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide `self`.
    pub fn div_exact(self, d: Self) -> Option<Self> {
        let n = d.norm();
        if n == 0 {
            return None;
        }
        let p = self * d.conj();
        if p.a % n == 0 && p.b % n == 0 {
            Some(Self::new(p.a / n, p.b / n))
        } else {
            None
        }
    }

    pub fn divides(self, x: Self) -> bool {
        if self.is_zero() {
            return x.is_zero();
        }
        x.div_exact(self).is_some()
    }

    /// Largest `k` with `λᵏ | self`, by repeated exact division.
    pub fn lambda_valuation(self) -> Valuation {
        if self.is_zero() {
            return Valuation::Infinite;
        }
        let mut x = self;
        let mut k = 0;
        while let Some(q) = x.div_exact(Self::LAMBDA) {
            x = q;
            k += 1;
        }
        Valuation::Finite(k)
    }

    pub fn pow(self, mut e: u32) -> Self {
        let mut base = self;
        let mut acc = Self::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc *= base;
            }
            base *= base;
            e >>= 1;
        }
        acc
    }

    pub fn to_complex(self) -> Complex64 {
        let s = 3f64.sqrt() / 2.0;
        Complex64::new(self.a as f64 - 0.5 * self.b as f64, s * self.b as f64)
    }
}

impl From<i64> for EisensteinInt {
    fn from(a: i64) -> Self {
        Self::from_int(a)
    }
}

impl Add for EisensteinInt {
    type Output = Self;
    #[inline]
    fn add(self, o: Self) -> Self {
        Self::new(add_checked(self.a, o.a), add_checked(self.b, o.b))
    }
}

impl Sub for EisensteinInt {
    type Output = Self;
    #[inline]
    fn sub(self, o: Self) -> Self {
        Self::new(sub_checked(self.a, o.a), sub_checked(self.b, o.b))
    }
}

impl Neg for EisensteinInt {
    type Output = Self;
    #[inline]
    fn neg(self) -> Self {
        Self::new(-self.a, -self.b)
    }
}

impl Mul for EisensteinInt {
    type Output = Self;
    #[inline]
    fn mul(self, o: Self) -> Self {
        // (a + bω)(c + dω) = (ac − bd) + (ad + bc − bd)ω
        let ac = mul_checked(self.a, o.a);
        let bd = mul_checked(self.b, o.b);
        let ad = mul_checked(self.a, o.b);
        let bc = mul_checked(self.b, o.a);
        Self::new(sub_checked(ac, bd), sub_checked(add_checked(ad, bc), bd))
    }
}

impl AddAssign for EisensteinInt {
    fn add_assign(&mut self, o: Self) {
        *self = *self + o;
    }
}

impl SubAssign for EisensteinInt {
    fn sub_assign(&mut self, o: Self) {
        *self = *self - o;
    }
}

impl MulAssign for EisensteinInt {
    fn mul_assign(&mut self, o: Self) {
        *self = *self * o;
    }
}

impl Sum for EisensteinInt {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::ZERO, |acc, x| acc + x)
    }
}

impl Product for EisensteinInt {
    fn product<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::ONE, |acc, x| acc * x)
    }
}

/// Always `a+bw` / `a-bw`, both coefficients present.
impl fmt::Display for EisensteinInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b < 0 {
            write!(f, "{}-{}w", self.a, self.b.unsigned_abs())
        } else {
            write!(f, "{}+{}w", self.a, self.b)
        }
    }
}

/// Accepts `a+bw`, `a-bw`, `a`, `bw`, `w`, `-w`, `a+w`. Whitespace is ignored.
impl FromStr for EisensteinInt {
    type Err = AlgebraError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || AlgebraError::Parse(s.to_string());
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if t.is_empty() {
            return Err(bad());
        }
        let Some(body) = t.strip_suffix('w') else {
            return t.parse::<i64>().map(Self::from_int).map_err(|_| bad());
        };
        // split `body` into real part and ω coefficient at the last sign not in front
        let split = body.char_indices().filter(|&(i, c)| i > 0 && (c == '+' || c == '-')).map(|(i, _)| i).next_back();
        let (re, im) = match split {
            Some(i) => (&body[..i], &body[i..]),
            None => ("", body),
        };
        let a = if re.is_empty() { 0 } else { re.parse::<i64>().map_err(|_| bad())? };
        let b = match im {
            "" | "+" => 1,
            "-" => -1,
            other => other.trim_start_matches('+').parse::<i64>().map_err(|_| bad())?,
        };
        Ok(Self::new(a, b))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const W: EisensteinInt = EisensteinInt::OMEGA;

    #[test]
    fn omega_squared() {
        assert_eq!(W * W, EisensteinInt::new(-1, -1));
        assert_eq!(W * W + W + EisensteinInt::ONE, EisensteinInt::ZERO);
        assert_eq!(W.pow(3), EisensteinInt::ONE);
    }

    #[test]
    fn norm_and_conj() {
        assert_eq!(EisensteinInt::LAMBDA.norm(), 3);
        assert_eq!(EisensteinInt::new(2, 1).conj(), EisensteinInt::new(1, -1));
        assert_eq!(W.conj(), W * W);
        for u in EisensteinInt::units() {
            assert!(u.is_unit());
        }
    }

    #[test]
    fn lambda_squared_is_associate_of_three() {
        let l2 = EisensteinInt::LAMBDA * EisensteinInt::LAMBDA;
        let q = EisensteinInt::from_int(3).div_exact(l2).unwrap();
        assert!(q.is_unit());
        // 3 = −ω²λ²
        assert_eq!(-(W * W) * l2, EisensteinInt::from_int(3));
    }

    #[test]
    fn valuations() {
        assert_eq!(EisensteinInt::ZERO.lambda_valuation(), Valuation::Infinite);
        assert_eq!(EisensteinInt::from_int(3).lambda_valuation(), Valuation::Finite(2));
        assert_eq!(EisensteinInt::LAMBDA.lambda_valuation(), Valuation::Finite(1));
        assert_eq!(EisensteinInt::ONE.lambda_valuation(), Valuation::Finite(0));
        assert_eq!((W - EisensteinInt::ONE).lambda_valuation(), Valuation::Finite(1));
        assert_eq!(EisensteinInt::from_int(9).lambda_valuation(), Valuation::Finite(4));
    }

    #[test]
    fn parse_and_display() {
        for s in ["1+0w", "-1-1w", "0+2w", "7-3w"] {
            assert_eq!(s.parse::<EisensteinInt>().unwrap().to_string(), s);
        }
        assert_eq!("w".parse::<EisensteinInt>().unwrap(), W);
        assert_eq!("-w".parse::<EisensteinInt>().unwrap(), -W);
        assert_eq!("2+w".parse::<EisensteinInt>().unwrap(), EisensteinInt::new(2, 1));
        assert_eq!("-3".parse::<EisensteinInt>().unwrap(), EisensteinInt::from_int(-3));
        assert_eq!("4w".parse::<EisensteinInt>().unwrap(), EisensteinInt::new(0, 4));
        assert!("1+x".parse::<EisensteinInt>().is_err());
        assert!("".parse::<EisensteinInt>().is_err());
    }

    #[test]
    fn complex_embedding() {
        let w = W.to_complex();
        assert!((w * w * w - Complex64::new(1.0, 0.0)).norm() < 1e-14);
        let x = EisensteinInt::new(3, -2);
        assert!((x.to_complex().norm_sqr() - x.norm() as f64).abs() < 1e-12);
    }
}
