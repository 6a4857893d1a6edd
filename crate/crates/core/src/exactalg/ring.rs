use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

/// Arbitrary-precision rational number, always stored in lowest terms.
pub type Rat = BigRational;

/// `n / d` as a [`Rat`]. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// The integer `n` as a [`Rat`].
pub fn ri(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Renders `3`, `-1/2`, ... (no spaces), the form used in JSON output.
pub fn rat_to_string(q: &Rat) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// A commutative ring whose elements know how to produce their own zero and
/// one. Polynomials need the "like" constructors because their zero carries
/// a variable list.
pub trait Ring:
    Clone + PartialEq + Debug + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> + Neg<Output = Self>
{
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero_elem(&self) -> bool;
}

/// A coefficient ring with context-free constants and an embedding of ℚ.
pub trait Scalar: Ring {
    fn zero_val() -> Self;
    fn one_val() -> Self;
    fn from_rat(q: Rat) -> Self;
}

impl Ring for Rat {
    fn zero_like(&self) -> Self {
        Rat::zero()
    }
    fn one_like(&self) -> Self {
        Rat::one()
    }
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
}

impl Scalar for Rat {
    fn zero_val() -> Self {
        <Rat as Zero>::zero()
    }
    fn one_val() -> Self {
        <Rat as One>::one()
    }
    fn from_rat(q: Rat) -> Self {
        q
    }
}

/// Elementary symmetric polynomial `e_k` of `values`, by the usual
/// one-pass recurrence. `e_0 = 1`.
pub fn elementary_symmetric<R: Ring>(values: &[R], k: usize) -> Option<R> {
    let first = values.first()?;
    let zero = first.zero_like();
    let mut e = vec![zero; k + 1];
    e[0] = first.one_like();
    for v in values {
        for j in (1..=k).rev() {
            e[j] = e[j].clone() + e[j - 1].clone() * v.clone();
        }
    }
    Some(e.swap_remove(k))
}
