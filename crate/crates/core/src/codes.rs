//! Builders for the cyclic Steane code, the two-level concatenated Steane
//! code and the cyclic Golay code, plus syndrome and coset utilities.
//!
//! All three codes are CSS codes whose X- and Z-type generators share the
//! same support pattern. Generator `i` of a family maps to syndrome bit `i`.

use std::fmt;

use crate::bits::{low_mask, to_bitstring, to_tuple};
use crate::error::{PauliError, WpecError};
use crate::pauli::{PauliOp, BLOCKS, BLOCK_LEN, CONCAT_LEN};

/// Supports of the cyclic Steane generators `XIXXXII`, `IXIXXXI`, `IIXIXXX`.
pub const STEANE_ROWS: [u8; 3] = [0b001_1101, 0b011_1010, 0b111_0100];

/// Logical-Z representative used by the decoders, `ZZIZIII`.
pub const STEANE_LOGICAL_REP: u8 = 0b000_1011;

/// Printed Golay parity-check matrix, one row per line.
pub const GOLAY_MATRIX: [&str; 11] = [
    "11111001001010000000000",
    "01111100100101000000000",
    "00111110010010100000000",
    "00011111001001010000000",
    "00001111100100101000000",
    "00000111110010010100000",
    "00000011111001001010000",
    "00000001111100100101000",
    "00000000111110010010100",
    "00000000011111001001010",
    "00000000001111100100101",
];

/// Exponents of the Golay check polynomial `h(x)`.
pub const GOLAY_CHECK_POLYNOMIAL: [u32; 8] = [12, 10, 7, 4, 3, 2, 1, 0];

pub const GOLAY_LEN: usize = 23;

const fn steane_syndrome_const(pattern: u8) -> u8 {
    let mut s = 0u8;
    let mut i = 0;
    while i < 3 {
        if (pattern & STEANE_ROWS[i]).count_ones() & 1 == 1 {
            s |= 1 << i;
        }
        i += 1;
    }
    s
}

const fn steane_stabilizers_const() -> [u8; 8] {
    let mut out = [0u8; 8];
    let mut m = 0;
    while m < 8 {
        let mut acc = 0u8;
        let mut i = 0;
        while i < 3 {
            if m >> i & 1 == 1 {
                acc ^= STEANE_ROWS[i];
            }
            i += 1;
        }
        out[m] = acc;
        m += 1;
    }
    out
}

/// The eight elements of the Steane Z-stabilizer group as 7-bit patterns.
pub const STEANE_STABILIZERS: [u8; 8] = steane_stabilizers_const();

const fn syndrome_table() -> [u8; 128] {
    let mut t = [0u8; 128];
    let mut p = 0;
    while p < 128 {
        t[p] = steane_syndrome_const(p as u8);
        p += 1;
    }
    t
}

/// Lowest-weight element of `pattern * S` over the Steane Z-stabilizers,
/// ties broken by the smaller stabilizer index.
const fn coset_min_table() -> [u8; 128] {
    let mut t = [0u8; 128];
    let mut p = 0;
    while p < 128 {
        let mut best = p as u8;
        let mut m = 1;
        while m < 8 {
            let cand = p as u8 ^ STEANE_STABILIZERS[m];
            if cand.count_ones() < best.count_ones() {
                best = cand;
            }
            m += 1;
        }
        t[p] = best;
        p += 1;
    }
    t
}

/// X-syndrome of a 7-bit Z pattern (bit `i` against generator `i`).
pub const STEANE_SYNDROME: [u8; 128] = syndrome_table();
pub const STEANE_COSET_MIN: [u8; 128] = coset_min_table();

/// Block masks of the second-level generators (bit `b` = block `b`).
pub const LEVEL2_BLOCK_ROWS: [u8; 3] = STEANE_ROWS;

/// Expands a 7-bit block pattern into a 49-qubit word with every qubit of the
/// selected blocks set.
pub fn blocks_to_qubits(blocks: u8) -> u64 {
    (0..BLOCKS)
        .filter(|b| blocks >> b & 1 == 1)
        .fold(0, |acc, b| acc | low_mask(BLOCK_LEN) << (b * BLOCK_LEN))
}

#[inline]
pub(crate) fn block_chunk(e: u64, b: usize) -> u8 {
    (e >> (b * BLOCK_LEN) & 0x7f) as u8
}

/// Per-error quantities of a Z-type error on the concatenated code.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ZProfile {
    /// First-level syndrome; bit `3b + i` is generator `i` on block `b`.
    pub s1: u32,
    pub s2: u8,
    pub tau: u8,
    pub parity: u8,
}

/// First-level syndrome, second-level syndrome, block triviality and block
/// parity of a 49-bit Z pattern.
#[inline]
pub fn z_profile(e: u64) -> ZProfile {
    let mut s1 = 0u32;
    let mut tau = 0u8;
    let mut parity = 0u8;
    for b in 0..BLOCKS {
        let chunk = block_chunk(e, b);
        let s = STEANE_SYNDROME[chunk as usize];
        s1 |= (s as u32) << (3 * b);
        tau |= ((s != 0) as u8) << b;
        parity |= ((chunk.count_ones() & 1) as u8) << b;
    }
    ZProfile {
        s1,
        s2: STEANE_SYNDROME[parity as usize],
        tau,
        parity,
    }
}

/// Minimum-weight element of `e * S` over all Z-type stabilizers of the
/// concatenated code, searched hierarchically: one pass per second-level
/// generator subset, each block minimised independently.
pub fn concat_min_weight_rep(e: u64) -> u64 {
    let mut best = e;
    let mut best_weight = u32::MAX;
    for m in 0..8 {
        let flipped = e ^ blocks_to_qubits(STEANE_STABILIZERS[m]);
        let mut rep = 0u64;
        for b in 0..BLOCKS {
            let chunk = STEANE_COSET_MIN[block_chunk(flipped, b) as usize];
            rep |= (chunk as u64) << (b * BLOCK_LEN);
        }
        let w = rep.count_ones();
        if w < best_weight {
            best_weight = w;
            best = rep;
        }
    }
    best
}

pub fn concat_min_weight(e: u64) -> u32 {
    concat_min_weight_rep(e).count_ones()
}

/// Minimum weight over the stabilizer coset and the logical-Z coset, i.e. the
/// distance from `e` to the nearest operator that maps codewords to
/// codewords.
pub fn concat_min_weight_mod_logical(e: u64) -> u32 {
    concat_min_weight(e).min(concat_min_weight(e ^ low_mask(CONCAT_LEN)))
}

/// Bit vector of generator anticommutation indicators.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Syndrome {
    bits: u64,
    len: usize,
}

impl Syndrome {
    pub fn new(bits: u64, len: usize) -> Self {
        Syndrome {
            bits: bits & low_mask(len),
            len,
        }
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn is_trivial(&self) -> bool {
        self.bits == 0
    }

    pub fn get(&self, i: usize) -> bool {
        self.bits >> i & 1 == 1
    }

    /// Splits into the first `at` bits and the remainder.
    pub fn split(&self, at: usize) -> (Syndrome, Syndrome) {
        (
            Syndrome::new(self.bits, at),
            Syndrome::new(self.bits >> at, self.len - at),
        )
    }

    pub fn to_tuple_string(&self) -> String {
        to_tuple(self.bits, self.len)
    }
}

impl fmt::Display for Syndrome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&to_bitstring(self.bits, self.len))
    }
}

impl fmt::Debug for Syndrome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Syndrome({self})")
    }
}

/// Bit `i` is set when block `i` has a nontrivial first-level syndrome.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BlockTriviality(pub u8);

impl fmt::Display for BlockTriviality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&to_tuple(self.0 as u64, BLOCKS))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BlockStructure {
    pub blocks: usize,
    pub block_len: usize,
    /// Number of first-level generators per Pauli type.
    pub first_level: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabilizerCode {
    pub name: &'static str,
    pub n: usize,
    pub k: usize,
    pub d: usize,
    pub x_gens: Vec<PauliOp>,
    pub z_gens: Vec<PauliOp>,
    pub logical_x: PauliOp,
    pub logical_z: PauliOp,
    pub block_structure: Option<BlockStructure>,
}

fn steane_row(i: usize) -> u64 {
    STEANE_ROWS[i] as u64
}

/// The cyclic `[[7,1,3]]` Steane code.
pub fn steane_code() -> StabilizerCode {
    StabilizerCode {
        name: "steane",
        n: 7,
        k: 1,
        d: 3,
        x_gens: (0..3).map(|i| PauliOp::x_type(7, steane_row(i))).collect(),
        z_gens: (0..3).map(|i| PauliOp::z_type(7, steane_row(i))).collect(),
        logical_x: PauliOp::x_type(7, 0x7f),
        logical_z: PauliOp::z_type(7, 0x7f),
        block_structure: None,
    }
}

/// The `[[49,1,9]]` code: 21 first-level generators per type (generator `i`
/// of block `b` at index `3b + i`) followed by the three second-level ones.
pub fn concatenated_49() -> StabilizerCode {
    let mut x_gens = Vec::with_capacity(24);
    let mut z_gens = Vec::with_capacity(24);
    for b in 0..BLOCKS {
        for i in 0..3 {
            let bits = steane_row(i) << (b * BLOCK_LEN);
            x_gens.push(PauliOp::x_type(CONCAT_LEN, bits));
            z_gens.push(PauliOp::z_type(CONCAT_LEN, bits));
        }
    }
    for row in LEVEL2_BLOCK_ROWS {
        let bits = blocks_to_qubits(row);
        x_gens.push(PauliOp::x_type(CONCAT_LEN, bits));
        z_gens.push(PauliOp::z_type(CONCAT_LEN, bits));
    }
    let all = low_mask(CONCAT_LEN);
    StabilizerCode {
        name: "concat49",
        n: CONCAT_LEN,
        k: 1,
        d: 9,
        x_gens,
        z_gens,
        logical_x: PauliOp::x_type(CONCAT_LEN, all),
        logical_z: PauliOp::z_type(CONCAT_LEN, all),
        block_structure: Some(BlockStructure {
            blocks: BLOCKS,
            block_len: BLOCK_LEN,
            first_level: 21,
        }),
    }
}

/// Rows of the Golay check matrix generated from `h(x)`: the first row holds
/// the coefficients of `h` in ascending degree, each further row is the
/// previous one shifted right by one position.
pub fn golay_rows_from_check_polynomial() -> Vec<u32> {
    let first: u32 = GOLAY_CHECK_POLYNOMIAL
        .iter()
        .fold(0, |acc, &e| acc | 1 << e);
    (0..11).map(|i| first << i).collect()
}

pub fn golay_printed_rows() -> Vec<u32> {
    GOLAY_MATRIX
        .iter()
        .map(|r| crate::bits::parse_bitstring(r, GOLAY_LEN).expect("printed Golay row") as u32)
        .collect()
}

/// The cyclic `[[23,1,7]]` Golay code.
///
/// Panics if the rows generated from the check polynomial disagree with the
/// printed matrix.
pub fn golay_code() -> StabilizerCode {
    let rows = golay_rows_from_check_polynomial();
    assert_eq!(
        rows,
        golay_printed_rows(),
        "Golay rows generated from h(x) do not match the printed matrix"
    );
    let all = low_mask(GOLAY_LEN);
    StabilizerCode {
        name: "golay",
        n: GOLAY_LEN,
        k: 1,
        d: 7,
        x_gens: rows
            .iter()
            .map(|&r| PauliOp::x_type(GOLAY_LEN, r as u64))
            .collect(),
        z_gens: rows
            .iter()
            .map(|&r| PauliOp::z_type(GOLAY_LEN, r as u64))
            .collect(),
        logical_x: PauliOp::x_type(GOLAY_LEN, all),
        logical_z: PauliOp::z_type(GOLAY_LEN, all),
        block_structure: None,
    }
}

/// Golay X-syndrome of a 23-bit Z pattern.
#[inline]
pub fn golay_syndrome_bits(rows: &[u32], e: u32) -> u16 {
    rows.iter().enumerate().fold(0, |acc, (i, r)| {
        acc | (((r & e).count_ones() & 1) as u16) << i
    })
}

impl StabilizerCode {
    fn check_len(&self, e: &PauliOp) -> Result<(), PauliError> {
        if e.num_qubits() != self.n {
            return Err(PauliError::WrongLength {
                expected: self.n,
                found: e.num_qubits(),
            });
        }
        Ok(())
    }

    fn anticommutation(gens: &[PauliOp], e: &PauliOp) -> Syndrome {
        let bits = gens.iter().enumerate().fold(0u64, |acc, (i, g)| {
            acc | ((!g.commutes_with(e)) as u64) << i
        });
        Syndrome::new(bits, gens.len())
    }

    /// Anticommutation with the X-type generators (detects Z errors).
    pub fn x_syndrome(&self, e: &PauliOp) -> Result<Syndrome, PauliError> {
        self.check_len(e)?;
        Ok(Self::anticommutation(&self.x_gens, e))
    }

    /// Anticommutation with the Z-type generators (detects X errors).
    pub fn z_syndrome(&self, e: &PauliOp) -> Result<Syndrome, PauliError> {
        self.check_len(e)?;
        Ok(Self::anticommutation(&self.z_gens, e))
    }

    /// Full syndrome `(s_x, s_z)`.
    pub fn syndrome(&self, e: &PauliOp) -> Result<(Syndrome, Syndrome), PauliError> {
        Ok((self.x_syndrome(e)?, self.z_syndrome(e)?))
    }

    /// `(first-level, second-level)` X-syndrome for the concatenated code.
    pub fn leveled_x_syndrome(&self, e: &PauliOp) -> Result<(Syndrome, Syndrome), WpecError> {
        let bs = self.blocks()?;
        Ok(self.x_syndrome(e)?.split(bs.first_level))
    }

    pub fn leveled_z_syndrome(&self, e: &PauliOp) -> Result<(Syndrome, Syndrome), WpecError> {
        let bs = self.blocks()?;
        Ok(self.z_syndrome(e)?.split(bs.first_level))
    }

    fn blocks(&self) -> Result<BlockStructure, WpecError> {
        self.block_structure
            .ok_or_else(|| WpecError::NotConcatenated(self.name.to_string()))
    }

    pub fn generators(&self) -> impl Iterator<Item = &PauliOp> {
        self.x_gens.iter().chain(self.z_gens.iter())
    }

    /// Whether a Z-type operator lies in the Z-stabilizer group, by GF(2)
    /// elimination against the Z generators.
    pub fn is_z_stabilizer(&self, e: &PauliOp) -> bool {
        if !e.is_z_type() || e.num_qubits() != self.n {
            return false;
        }
        in_row_space(self.z_gens.iter().map(|g| g.z_bits()), e.z_bits())
    }

    pub fn is_x_stabilizer(&self, e: &PauliOp) -> bool {
        if !e.is_x_type() || e.num_qubits() != self.n {
            return false;
        }
        in_row_space(self.x_gens.iter().map(|g| g.x_bits()), e.x_bits())
    }

    /// Block triviality of a Z-type error on the concatenated code.
    pub fn block_triviality(&self, e: &PauliOp) -> Result<BlockTriviality, WpecError> {
        self.require_concat_z(e)?;
        Ok(BlockTriviality(z_profile(e.z_bits()).tau))
    }

    /// Minimum-weight representative of `e` modulo the Z-stabilizer group.
    pub fn min_weight_coset_rep(&self, e: &PauliOp) -> Result<PauliOp, WpecError> {
        self.require_concat_z(e)?;
        Ok(PauliOp::z_type(
            CONCAT_LEN,
            concat_min_weight_rep(e.z_bits()),
        ))
    }

    fn require_concat_z(&self, e: &PauliOp) -> Result<(), WpecError> {
        self.blocks()?;
        self.check_len(e)?;
        if !e.is_z_type() {
            return Err(PauliError::NotZType(e.to_string()).into());
        }
        Ok(())
    }

    /// Generator listing, one `name: string` line per generator.
    pub fn generator_table(&self) -> String {
        let mut out = String::new();
        let first = self
            .block_structure
            .map_or(self.x_gens.len(), |b| b.first_level);
        for (kind, gens) in [("x", &self.x_gens), ("z", &self.z_gens)] {
            for (i, g) in gens.iter().enumerate() {
                let label = if i < first {
                    format!("g^{kind}_{}", i + 1)
                } else {
                    format!("~g^{kind}_{}", i - first + 1)
                };
                out.push_str(&format!("{label}: {g}\n"));
            }
        }
        out.push_str(&format!("logical_x: {}\n", self.logical_x));
        out.push_str(&format!("logical_z: {}\n", self.logical_z));
        out
    }
}

/// GF(2) membership test of `v` in the span of `rows`.
pub fn in_row_space(rows: impl IntoIterator<Item = u64>, v: u64) -> bool {
    let mut basis: Vec<u64> = Vec::new();
    for r in rows {
        let mut r = r;
        for &b in &basis {
            r = r.min(r ^ b);
        }
        if r != 0 {
            basis.push(r);
            basis.sort_unstable_by(|a, b| b.cmp(a));
        }
    }
    let mut v = v;
    for &b in &basis {
        v = v.min(v ^ b);
    }
    v == 0
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> PauliOp {
        s.parse().unwrap()
    }

    #[test]
    fn steane_generators_match_cyclic_form() {
        let c = steane_code();
        assert_eq!(c.x_gens[0], p("XIXXXII"));
        assert_eq!(c.x_gens[1], p("IXIXXXI"));
        assert_eq!(c.x_gens[1], c.x_gens[0].cyclic_shift());
        assert_eq!(c.z_gens[2], p("IIZIZZZ"));
        for g in c.generators() {
            for h in c.generators() {
                assert!(g.commutes_with(h));
            }
            assert!(g.commutes_with(&c.logical_x) && g.commutes_with(&c.logical_z));
        }
        assert!(!c.logical_x.commutes_with(&c.logical_z));
    }

    #[test]
    fn steane_syndromes() {
        let c = steane_code();
        assert_eq!(
            c.x_syndrome(&p("ZIIIIII")).unwrap().to_tuple_string(),
            "(1,0,0)"
        );
        assert_eq!(
            c.x_syndrome(&p("IIIIIIZ")).unwrap().to_tuple_string(),
            "(0,0,1)"
        );
        assert!(c.x_syndrome(&p("ZIZZZII")).unwrap().is_trivial());
        assert!(c.x_syndrome(&p("ZZ")).is_err());
    }

    #[test]
    fn steane_is_perfect() {
        let mut seen = [false; 8];
        for q in 0..7 {
            let s = STEANE_SYNDROME[1 << q] as usize;
            assert!(s != 0 && !seen[s]);
            seen[s] = true;
        }
    }

    #[test]
    fn concatenated_code_structure() {
        let c = concatenated_49();
        assert_eq!(c.x_gens.len() + c.z_gens.len(), 48);
        assert_eq!(c.x_gens[21].weight(), 28);
        let g1 = c.z_gens[21].z_bits();
        for b in 0..7 {
            let expect = if [0, 2, 3, 4].contains(&b) { 0x7f } else { 0 };
            assert_eq!(block_chunk(g1, b), expect);
        }
        for g in c.generators() {
            for h in c.generators() {
                assert!(g.commutes_with(h));
            }
        }
    }

    #[test]
    fn fast_profile_matches_generic_syndrome() {
        let c = concatenated_49();
        let e = p(&format!(
            "{}{}",
            "IZZZZZZ",
            "IIIIIIIZIZZZIIZZZZZZZ".repeat(2)
        ));
        let (s1, s2) = c.leveled_x_syndrome(&e).unwrap();
        let prof = z_profile(e.z_bits());
        assert_eq!(prof.s1 as u64, s1.bits());
        assert_eq!(prof.s2 as u64, s2.bits());
    }

    #[test]
    fn block_triviality_examples() {
        let c = concatenated_49();
        assert_eq!(
            c.block_triviality(&PauliOp::identity(49)).unwrap(),
            BlockTriviality(0)
        );
        // PIZZZII with m = 2
        let e = PauliOp::z_type(49, 0b110_0000 | blocks_to_qubits(0b001_1100));
        assert_eq!(c.block_triviality(&e).unwrap(), BlockTriviality(1));
        assert_eq!(
            c.block_triviality(&c.z_gens[21]).unwrap(),
            BlockTriviality(0)
        );
        assert!(c.block_triviality(&c.x_gens[0]).is_err());
        assert!(steane_code().block_triviality(&p("ZIIIIII")).is_err());
    }

    #[test]
    fn min_weight_examples() {
        let c = concatenated_49();
        assert_eq!(c.min_weight_coset_rep(&c.z_gens[0]).unwrap().weight(), 0);
        assert_eq!(c.min_weight_coset_rep(&c.z_gens[21]).unwrap().weight(), 0);
        let e = PauliOp::z_type(49, 0x7f);
        assert_eq!(c.min_weight_coset_rep(&e).unwrap().weight(), 3);
    }

    #[test]
    fn golay_rows() {
        let rows = golay_rows_from_check_polynomial();
        assert_eq!(rows, golay_printed_rows());
        assert!(rows.iter().all(|r| r.count_ones() == 8));
        let c = golay_code();
        assert_eq!(c.x_gens[0].to_string(), "XXXXXIIXIIXIXIIIIIIIIII");
        for g in c.generators() {
            for h in c.generators() {
                assert!(g.commutes_with(h));
            }
            assert!(g.commutes_with(&c.logical_z) && g.commutes_with(&c.logical_x));
        }
    }

    #[test]
    fn stabilizer_membership() {
        let c = steane_code();
        assert!(c.is_z_stabilizer(&p("ZZZIIZI")));
        assert!(!c.is_z_stabilizer(&p("ZZIZIII")));
        assert!(!c.is_z_stabilizer(&p("XIXXXII")));
        assert!(c.is_x_stabilizer(&p("XIXXXII")));
    }
}
