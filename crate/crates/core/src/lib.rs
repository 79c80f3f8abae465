//! Exact-arithmetic toolkit for locally decodable index codes.
//!
//! A single-unicast broadcast problem is described by a directed side
//! information graph: receiver `i` demands message `x_i` and already knows
//! the messages `x_j` for `j` in its out-neighborhood `K_i`. A linear index
//! code broadcasts `c = xᵀL` and each receiver queries only a subset `R_i`
//! of the codeword positions. Two figures of merit compete with each other:
//! the broadcast rate `β = ℓ/M` and the locality `r = max_i |R_i|/M`.
//!
//! The crate provides
//! - finite-field scalars ([`gfield`]) and dense exact linear algebra
//!   ([`fmatrix`]),
//! - the graph model and its derived structures ([`sigraph`]),
//! - the code representation with validation, decoding, locality
//!   accounting and code surgery ([`indexcode`]),
//! - every achievability scheme as a concrete code emitter
//!   ([`constructions`]),
//! - independent brute-force references: minrank, colorings, exhaustive
//!   decodability, covering radius and closed-form trade-off curves
//!   ([`oracles`]).
//!
//! All rational quantities are exact ([`Rat`] is an arbitrary-precision
//! rational); no floating point is used anywhere.

pub mod constructions;
pub mod fmatrix;
pub mod gfield;
pub mod indexcode;
pub mod lp;
pub mod oracles;
pub mod sigraph;

/// Exact rational number used for rates, localities and LP solutions.
pub type Rat = num_rational::BigRational;

use num_bigint::BigInt;

/// Rational from a numerator/denominator pair. Panics on zero denominator.
pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

/// Rational from an integer.
pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Rational from a usize.
pub fn rat_usize(n: usize) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Formats a rational as `p/q`, or just `p` when the denominator is one.
pub fn fmt_rat(x: &Rat) -> String {
    if x.denom() == &BigInt::from(1) {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Float approximation of a rational, for rendering only.
pub fn rat_to_f64(x: &Rat) -> f64 {
    use num_traits::ToPrimitive;
    x.to_f64().unwrap_or(f64::NAN)
}

/// Numerator and denominator as machine integers, when they fit.
pub fn rat_parts_usize(x: &Rat) -> Option<(usize, usize)> {
    let num = usize::try_from(x.numer()).ok()?;
    let den = usize::try_from(x.denom()).ok()?;
    Some((num, den))
}

/// Parses `p/q` or `p` into a rational.
pub fn parse_rat(s: &str) -> Option<Rat> {
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let p: i64 = p.trim().parse().ok()?;
            let q: i64 = q.trim().parse().ok()?;
            if q == 0 {
                return None;
            }
            Some(rat(p, q))
        }
        None => {
            let p: i64 = s.parse().ok()?;
            Some(rat_int(p))
        }
    }
}

pub use fmatrix::{FMatrix, FVector};
pub use gfield::{Felt, Field};
pub use indexcode::{IndexCode, LocalityProfile, ValidationReport};
pub use sigraph::{SideInfoGraph, UndirectedGraph};

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_formatting_round_trips() {
        assert_eq!(fmt_rat(&rat(4, 3)), "4/3");
        assert_eq!(fmt_rat(&rat(6, 3)), "2");
        assert_eq!(parse_rat("7/6"), Some(rat(7, 6)));
        assert_eq!(parse_rat("3"), Some(rat_int(3)));
        assert_eq!(parse_rat("1/0"), None);
    }
}
