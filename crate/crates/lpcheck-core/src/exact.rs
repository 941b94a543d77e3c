//! Exact rational arithmetic helpers.
//!
//! Frequency profiles keep their breakpoints as arbitrary-precision rationals
//! so that partition identities can be asserted with tolerance zero. Every
//! finite `f64` is a dyadic rational, so conversion from floats is lossless.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Signed, ToPrimitive, Zero};

/// Exact rational scalar used for breakpoint coordinates and values.
pub type Rat = BigRational;

/// The rational `n`.
pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// The rational `2^e`, for any sign of `e`.
pub fn pow2(e: i32) -> Rat {
    let one = BigInt::from(1);
    if e >= 0 {
        Rat::from_integer(one << e as usize)
    } else {
        Rat::new(one.clone(), one << (-e) as usize)
    }
}

/// The dyadic rational `m * 2^e`.
pub fn dyadic(m: i64, e: i32) -> Rat {
    rat_int(m) * pow2(e)
}

/// Exact conversion of a finite float. Panics on NaN or infinity, which never
/// denote a frequency.
pub fn rat_from_f64(x: f64) -> Rat {
    Rat::from_f64(x).expect("finite float expected")
}

/// Nearest-double rendering of an exact rational.
pub fn rat_to_f64(x: &Rat) -> f64 {
    x.to_f64().expect("rational within f64 range")
}

/// True when `x` is zero.
pub fn rat_is_zero(x: &Rat) -> bool {
    x.is_zero()
}

/// Absolute value.
pub fn rat_abs(x: &Rat) -> Rat {
    x.abs()
}
