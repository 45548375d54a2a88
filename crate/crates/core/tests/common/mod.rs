//! Reference computations written directly from the check matrices, without
//! going through the library's syndrome or coset code.

#![allow(dead_code)]

/// Steane check matrix, qubit 1 leftmost.
pub const STEANE_H: [&str; 3] = ["1011100", "0101110", "0010111"];

pub fn row_bits(row: &str) -> u64 {
    row.bytes()
        .enumerate()
        .filter(|(_, c)| *c == b'1')
        .fold(0, |acc, (i, _)| acc | 1 << i)
}

pub fn steane_rows() -> [u64; 3] {
    STEANE_H.map(row_bits)
}

fn parity(v: u64) -> u64 {
    (v.count_ones() & 1) as u64
}

/// Syndrome of a 7-bit Z pattern; bit `i` is the overlap parity with row `i`.
pub fn steane_syndrome(z: u64) -> u8 {
    steane_rows()
        .iter()
        .enumerate()
        .fold(0, |acc, (i, r)| acc | (parity(z & r) as u8) << i)
}

pub fn span(rows: &[u64]) -> Vec<u64> {
    let mut out = vec![0u64];
    for &r in rows {
        let more: Vec<u64> = out.iter().map(|v| v ^ r).collect();
        out.extend(more);
    }
    out
}

/// Two block parities describe the same coset when they differ by the
/// parity pattern of a second-level stabilizer.
pub fn parity_equivalent(p1: u8, p2: u8) -> bool {
    span(&steane_rows()).contains(&((p1 ^ p2) as u64))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Profile {
    pub s1: u32,
    pub s2: u8,
    pub tau: u8,
    pub parity: u8,
}

/// First-level syndrome, second-level syndrome, block triviality and block
/// parity of a 49-qubit Z pattern.
pub fn profile(e: u64) -> Profile {
    let mut p = Profile {
        s1: 0,
        s2: 0,
        tau: 0,
        parity: 0,
    };
    for b in 0..7 {
        let chunk = e >> (7 * b) & 0x7f;
        let s = steane_syndrome(chunk);
        p.s1 |= (s as u32) << (3 * b);
        p.tau |= ((s != 0) as u8) << b;
        p.parity |= (parity(chunk) as u8) << b;
    }
    p.s2 = steane_syndrome(p.parity as u64);
    p
}

/// A Z pattern is a stabilizer of the 49-qubit code exactly when it has no
/// syndrome at either level and even weight (the logical operator `Z^49` is
/// odd).
pub fn is_concat_stabilizer(e: u64) -> bool {
    let p = profile(e);
    p.s1 == 0 && p.s2 == 0 && e.count_ones() % 2 == 0
}

/// The 24 Z-type generators of the 49-qubit code.
pub fn concat_z_generators() -> Vec<u64> {
    let rows = steane_rows();
    let mut gens = Vec::new();
    for b in 0..7 {
        for r in rows {
            gens.push(r << (7 * b));
        }
    }
    for r in rows {
        let blocks = (0..7).filter(|b| r >> b & 1 == 1);
        gens.push(blocks.fold(0, |acc, b| acc | 0x7f << (7 * b)));
    }
    gens
}

/// Lowest-weight element of the stabilizer coset of `e` (first found), by
/// walking all `2^24` stabilizers in Gray-code order.
pub fn brute_min_rep(e: u64) -> u64 {
    let gens = concat_z_generators();
    let mut v = e;
    let mut best = v;
    for m in 1..1u32 << gens.len() {
        v ^= gens[m.trailing_zeros() as usize];
        if v.count_ones() < best.count_ones() {
            best = v;
        }
    }
    best
}

pub fn brute_min_weight(e: u64) -> u32 {
    brute_min_rep(e).count_ones()
}

/// Rows of the printed Golay check matrix.
pub fn golay_rows() -> Vec<u64> {
    wpec_core::codes::GOLAY_MATRIX
        .iter()
        .map(|r| row_bits(r))
        .collect()
}

pub fn golay_syndrome(rows: &[u64], e: u64) -> u16 {
    rows.iter()
        .enumerate()
        .fold(0, |acc, (i, r)| acc | (parity(e & r) as u16) << i)
}
