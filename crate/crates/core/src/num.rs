//! Scalar abstractions.
//!
//! The exact geometry is generic over [`ExactInt`], implemented for `i64`,
//! `i128` (bounded to magnitude 2^126) and arbitrary precision `BigInt`.
//! Every operation goes through the checked helpers here so that a bounded
//! scalar fails loudly instead of wrapping. The statistical-query lab is
//! generic over [`Real`], i.e. `f32` or `f64`.

use std::fmt::{Debug, Display};
use std::hash::Hash;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{
    CheckedAdd, CheckedDiv, CheckedMul, CheckedSub, Float, FromPrimitive, Signed,
    ToPrimitive, Zero,
};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("integer overflow: result exceeds the scalar bound")]
    Overflow,
    #[error("division by zero")]
    DivisionByZero,
}

/// Exact signed integer scalar.
pub trait ExactInt:
    Clone
    + Debug
    + Display
    + FromStr
    + Hash
    + Ord
    + Integer
    + Signed
    + CheckedAdd
    + CheckedSub
    + CheckedMul
    + CheckedDiv
    + FromPrimitive
    + ToPrimitive
    + Send
    + Sync
    + 'static
{
    /// Whether the value respects the scalar's magnitude bound.
    fn within_bound(&self) -> bool;

    fn int(v: i64) -> Self {
        <Self as FromPrimitive>::from_i64(v).expect("every exact scalar holds i64")
    }

    fn to_bigint(&self) -> BigInt;

    fn from_bigint(v: &BigInt) -> Result<Self, ArithError>;
}

impl ExactInt for i64 {
    fn within_bound(&self) -> bool {
        *self != i64::MIN
    }

    fn to_bigint(&self) -> BigInt {
        BigInt::from(*self)
    }

    fn from_bigint(v: &BigInt) -> Result<Self, ArithError> {
        v.to_i64().filter(|x| x.within_bound()).ok_or(ArithError::Overflow)
    }
}

/// Magnitude bound for `i128` scalars: 2^126.
pub const I128_BOUND: i128 = 1i128 << 126;

impl ExactInt for i128 {
    fn within_bound(&self) -> bool {
        (-I128_BOUND..=I128_BOUND).contains(self)
    }

    fn to_bigint(&self) -> BigInt {
        BigInt::from(*self)
    }

    fn from_bigint(v: &BigInt) -> Result<Self, ArithError> {
        v.to_i128().filter(|x| x.within_bound()).ok_or(ArithError::Overflow)
    }
}

impl ExactInt for BigInt {
    fn within_bound(&self) -> bool {
        true
    }

    fn to_bigint(&self) -> BigInt {
        self.clone()
    }

    fn from_bigint(v: &BigInt) -> Result<Self, ArithError> {
        Ok(v.clone())
    }
}

fn bounded<T: ExactInt>(v: Option<T>) -> Result<T, ArithError> {
    match v {
        Some(v) if v.within_bound() => Ok(v),
        _ => Err(ArithError::Overflow),
    }
}

pub fn add<T: ExactInt>(a: &T, b: &T) -> Result<T, ArithError> {
    bounded(a.checked_add(b))
}

pub fn sub<T: ExactInt>(a: &T, b: &T) -> Result<T, ArithError> {
    bounded(a.checked_sub(b))
}

pub fn mul<T: ExactInt>(a: &T, b: &T) -> Result<T, ArithError> {
    bounded(a.checked_mul(b))
}

pub fn neg<T: ExactInt>(a: &T) -> Result<T, ArithError> {
    sub(&T::zero(), a)
}

pub fn pow<T: ExactInt>(base: &T, exp: u32) -> Result<T, ArithError> {
    let mut acc = T::one();
    for _ in 0..exp {
        acc = mul(&acc, base)?;
    }
    Ok(acc)
}

pub fn dot<T: ExactInt>(a: &[T], b: &[T]) -> Result<T, ArithError> {
    debug_assert_eq!(a.len(), b.len());
    a.iter()
        .zip(b)
        .try_fold(T::zero(), |acc, (x, y)| add(&acc, &mul(x, y)?))
}

/// Non-negative gcd of a slice; zero for an all-zero slice.
pub fn gcd_all<T: ExactInt>(values: &[T]) -> T {
    values.iter().fold(T::zero(), |g, v| g.gcd(v))
}

pub fn from_usize<T: ExactInt>(v: usize) -> Result<T, ArithError> {
    T::from_usize(v).filter(|x| x.within_bound()).ok_or(ArithError::Overflow)
}

/// Exact rational over an [`ExactInt`]; always kept in lowest terms with a
/// positive denominator.
pub type Rational<T> = Ratio<T>;

fn rat_bounded<T: ExactInt>(v: Option<Ratio<T>>) -> Result<Ratio<T>, ArithError> {
    match v {
        Some(r) if r.numer().within_bound() && r.denom().within_bound() => Ok(r),
        _ => Err(ArithError::Overflow),
    }
}

pub fn rat<T: ExactInt>(num: T, den: T) -> Result<Ratio<T>, ArithError> {
    if den.is_zero() {
        return Err(ArithError::DivisionByZero);
    }
    // Ratio::new reduces with gcd and fixes the sign without overflow for
    // in-bound inputs.
    rat_bounded(Some(Ratio::new(num, den)))
}

pub fn rat_int<T: ExactInt>(v: T) -> Ratio<T> {
    Ratio::from_integer(v)
}

pub fn radd<T: ExactInt>(a: &Ratio<T>, b: &Ratio<T>) -> Result<Ratio<T>, ArithError> {
    rat_bounded(a.checked_add(b))
}

pub fn rsub<T: ExactInt>(a: &Ratio<T>, b: &Ratio<T>) -> Result<Ratio<T>, ArithError> {
    rat_bounded(a.checked_sub(b))
}

pub fn rmul<T: ExactInt>(a: &Ratio<T>, b: &Ratio<T>) -> Result<Ratio<T>, ArithError> {
    rat_bounded(a.checked_mul(b))
}

pub fn rdiv<T: ExactInt>(a: &Ratio<T>, b: &Ratio<T>) -> Result<Ratio<T>, ArithError> {
    if b.is_zero() {
        return Err(ArithError::DivisionByZero);
    }
    rat_bounded(a.checked_div(b))
}

pub fn rsum<'a, T: ExactInt>(
    values: impl IntoIterator<Item = &'a Ratio<T>>,
) -> Result<Ratio<T>, ArithError> {
    values
        .into_iter()
        .try_fold(Ratio::zero(), |acc, v| radd(&acc, v))
}

pub fn rat_to_f64<T: ExactInt>(r: &Ratio<T>) -> f64 {
    let n = r.numer().to_f64().unwrap_or(f64::NAN);
    let d = r.denom().to_f64().unwrap_or(f64::NAN);
    n / d
}

/// Clears denominators of a rational vector: returns the integer vector
/// `lcm(denominators) * values`.
pub fn clear_denominators<T: ExactInt>(values: &[Ratio<T>]) -> Result<Vec<T>, ArithError> {
    let lcm = values.iter().fold(T::one(), |l, v| l.lcm(v.denom()));
    if !lcm.within_bound() {
        return Err(ArithError::Overflow);
    }
    values
        .iter()
        .map(|v| {
            let factor = lcm.clone() / v.denom().clone();
            mul(v.numer(), &factor)
        })
        .collect()
}

/// Floating-point scalar used by the statistical-query lab.
pub trait Real: Float + FromPrimitive + Debug + Display + Send + Sync + 'static {
    /// Slack allowed on unit-norm checks.
    fn norm_tolerance() -> Self {
        let eight = Self::from_f64(8.0).unwrap();
        Self::from_f64(1e-12).unwrap().max(Self::epsilon() * eight)
    }

    fn lit(v: f64) -> Self {
        Self::from_f64(v).unwrap()
    }
}

impl Real for f32 {}
impl Real for f64 {}
