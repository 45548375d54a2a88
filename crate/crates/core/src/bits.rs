//! Helpers for rendering packed bit vectors.
//!
//! Bit `i` of a word is rendered at column `i`, so the leftmost character is
//! bit 0. This matches the qubit-1-leftmost layout used for Pauli strings.

use crate::error::ParseError;

/// Renders the low `len` bits of `bits` as a `0`/`1` string, bit 0 first.
pub fn to_bitstring(bits: u64, len: usize) -> String {
    (0..len)
        .map(|i| if bits >> i & 1 == 1 { '1' } else { '0' })
        .collect()
}

/// Renders the low `len` bits as a parenthesised tuple, e.g. `(1,0,0)`.
pub fn to_tuple(bits: u64, len: usize) -> String {
    let inner: Vec<&str> = (0..len)
        .map(|i| if bits >> i & 1 == 1 { "1" } else { "0" })
        .collect();
    format!("({})", inner.join(","))
}

/// Parses a `0`/`1` string (bit 0 first) of exactly `len` characters.
pub fn parse_bitstring(s: &str, len: usize) -> Result<u64, ParseError> {
    let s = s.trim();
    if s.chars().count() != len {
        return Err(ParseError::Length {
            expected: len,
            found: s.chars().count(),
        });
    }
    let mut bits = 0u64;
    for (i, c) in s.chars().enumerate() {
        match c {
            '0' => {}
            '1' => bits |= 1 << i,
            other => return Err(ParseError::Character(other)),
        }
    }
    Ok(bits)
}

/// Mask with the low `len` bits set.
pub const fn low_mask(len: usize) -> u64 {
    if len >= 64 {
        u64::MAX
    } else {
        (1u64 << len) - 1
    }
}
