//! Exact rational scalars, the coefficient field for everything else.
//!
//! `Rat` is an arbitrary-precision rational kept in lowest terms with a
//! positive denominator. Serialized form is `"a/b"`, with `"/1"` omitted,
//! which is exactly what `Display`/`FromStr` on the underlying type do.

use std::str::FromStr;

use num_bigint::BigInt;

use crate::error::{Error, Result};

pub type Rat = num_rational::BigRational;

/// Integer as an exact rational.
pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// `n/d` in lowest terms. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Parse `"a/b"` or `"a"`.
pub fn parse_rat(s: &str) -> Result<Rat> {
    Rat::from_str(s.trim()).map_err(|e| Error::InvalidInput(format!("bad rational `{s}`: {e}")))
}
