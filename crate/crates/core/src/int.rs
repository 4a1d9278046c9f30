use std::fmt::{Debug, Display};
use std::hash::Hash;

use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_traits::{FromPrimitive, Signed, ToPrimitive};

use crate::sequences::FibView;

/// Largest `n` accepted by the `i128` fast path. Every intermediate product
/// in the engine stays below `2^127` for inputs up to this bound with
/// coefficients up to `2^20`.
pub(crate) const FAST_LIMIT: i128 = 1 << 40;

/// Integer types the walk engine runs on.
///
/// `i128` is the fast path for scans (inputs below `2^40`); [`BigInt`] handles
/// everything else. Results are identical between the two.
pub trait WalkInt:
    Integer
    + Signed
    + Clone
    + Hash
    + Debug
    + Display
    + FromPrimitive
    + ToPrimitive
    + Send
    + Sync
    + 'static
{
    /// Whether `n` is small enough for this representation to process without
    /// overflow.
    fn accepts(n: &Self) -> bool;

    fn from_big(v: &BigInt) -> Option<Self>;

    fn to_big(&self) -> BigInt;

    fn lift(v: u64) -> Self;

    /// Number of bits in `|self|`.
    fn bit_len(&self) -> u64;

    /// `⌊√self⌋` for non-negative values.
    fn isqrt(&self) -> Self;

    #[doc(hidden)]
    fn from_fib(view: &FibView<'_>, k: usize) -> Self;
}

impl WalkInt for i128 {
    fn accepts(n: &Self) -> bool {
        n.abs() < FAST_LIMIT
    }

    fn from_big(v: &BigInt) -> Option<Self> {
        v.to_i128()
    }

    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }

    fn lift(v: u64) -> Self {
        v as i128
    }

    fn bit_len(&self) -> u64 {
        (128 - self.unsigned_abs().leading_zeros()) as u64
    }

    fn isqrt(&self) -> Self {
        Roots::sqrt(self)
    }

    fn from_fib(view: &FibView<'_>, k: usize) -> Self {
        match view.small.get(k) {
            Some(v) => *v,
            None => panic!("g_{k} does not fit the i128 fast path"),
        }
    }
}

impl WalkInt for BigInt {
    fn accepts(_: &Self) -> bool {
        true
    }

    fn from_big(v: &BigInt) -> Option<Self> {
        Some(v.clone())
    }

    fn to_big(&self) -> BigInt {
        self.clone()
    }

    fn lift(v: u64) -> Self {
        BigInt::from(v)
    }

    fn bit_len(&self) -> u64 {
        self.bits()
    }

    fn isqrt(&self) -> Self {
        Roots::sqrt(self)
    }

    fn from_fib(view: &FibView<'_>, k: usize) -> Self {
        view.big[k].clone()
    }
}
