//! Weight-parity error correction.
//!
//! Two Z-type errors on the Steane (or Golay) code with the same syndrome are
//! logically equivalent exactly when their weights have the same parity, so a
//! decoder that knows the parity can always pick a correction in the right
//! logical class, whatever the weight of the error.

use std::fmt;

use crate::bits::{low_mask, parse_bitstring, to_bitstring, to_tuple};
use crate::codes::{
    golay_printed_rows, golay_syndrome_bits, Syndrome, GOLAY_LEN, STEANE_LOGICAL_REP,
    STEANE_STABILIZERS, STEANE_SYNDROME,
};
use crate::error::{ParseError, PauliError, WpecError};
use crate::pauli::{PauliOp, BLOCKS, BLOCK_LEN};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum WeightParity {
    Even,
    Odd,
}

impl WeightParity {
    pub fn of(p: &PauliOp) -> Self {
        Self::from_bit(p.weight() & 1 == 1)
    }

    pub fn from_bit(odd: bool) -> Self {
        if odd {
            WeightParity::Odd
        } else {
            WeightParity::Even
        }
    }

    pub fn is_odd(self) -> bool {
        self == WeightParity::Odd
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LogicalClass {
    LogicalI,
    LogicalZ,
}

/// Per-block weight parities of a 49-qubit Z error; bit `i` is block `i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BlockParity(pub u8);

/// The eight block-parity patterns produced by multiplying with products of
/// the second-level Z generators.
const PARITY_SPAN: [u8; 8] = STEANE_STABILIZERS;

impl BlockParity {
    pub const ALL_ODD: BlockParity = BlockParity(0x7f);

    pub fn bit(self, block: usize) -> WeightParity {
        WeightParity::from_bit(self.0 >> block & 1 == 1)
    }

    /// Canonical representative of the equivalence class (smallest member).
    pub fn class(self) -> u8 {
        PARITY_SPAN
            .iter()
            .map(|s| self.0 ^ s)
            .min()
            .unwrap_or(self.0)
    }

    pub fn equivalent(self, other: BlockParity) -> bool {
        block_parity_equivalent(self, other)
    }
}

impl fmt::Display for BlockParity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&to_tuple(self.0 as u64, BLOCKS))
    }
}

/// Whether two block parities differ by the parity pattern of some product
/// of second-level generators. First-level generators have even weight on
/// every block and never change a block parity.
pub fn block_parity_equivalent(p1: BlockParity, p2: BlockParity) -> bool {
    PARITY_SPAN.contains(&((p1.0 ^ p2.0) & 0x7f))
}

fn require_steane_z(m: &PauliOp) -> Result<(), WpecError> {
    if m.num_qubits() != BLOCK_LEN {
        return Err(PauliError::WrongLength {
            expected: BLOCK_LEN,
            found: m.num_qubits(),
        }
        .into());
    }
    if !m.is_z_type() {
        return Err(PauliError::NotZType(m.to_string()).into());
    }
    Ok(())
}

pub fn steane_x_syndrome(m: &PauliOp) -> u8 {
    STEANE_SYNDROME[(m.z_bits() & 0x7f) as usize]
}

/// Logical class of a Z-type operator that commutes with every X generator.
pub fn classify_logical(m: &PauliOp) -> Result<LogicalClass, WpecError> {
    require_steane_z(m)?;
    if steane_x_syndrome(m) != 0 {
        return Err(WpecError::NotInCentralizer(m.to_string()));
    }
    Ok(if m.weight() % 2 == 0 {
        LogicalClass::LogicalI
    } else {
        LogicalClass::LogicalZ
    })
}

/// Logical equivalence of two Z errors with equal Steane syndrome.
pub fn equivalent_steane(e1: &PauliOp, e2: &PauliOp) -> Result<bool, WpecError> {
    require_steane_z(e1)?;
    require_steane_z(e2)?;
    let (s1, s2) = (steane_x_syndrome(e1), steane_x_syndrome(e2));
    if s1 != s2 {
        return Err(WpecError::SyndromeMismatch(
            to_bitstring(s1 as u64, 3),
            to_bitstring(s2 as u64, 3),
        ));
    }
    Ok(e1.weight_parity() == e2.weight_parity())
}

/// Lookup tables for the Steane and Golay weight-parity decoders.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorrectionTable {
    wt1: [u8; 8],
    wt2: [u8; 8],
    golay_rows: Vec<u32>,
    golay_min: Vec<u32>,
}

const TABLE_HEADER: &str = "# wpec correction table v1";

/// Builds the Steane weight-1/weight-2 tables and the Golay minimum-weight
/// table.
///
/// For weight 2 the first pair `(a, b)`, `a < b`, in increasing qubit order
/// is kept. The Golay table enumerates every Z error of weight at most 3;
/// two such errors sharing a syndrome would contradict perfectness and are
/// reported as an error.
pub fn build_correction_table() -> Result<CorrectionTable, WpecError> {
    let mut wt1 = [0u8; 8];
    let mut wt2 = [0u8; 8];
    for q in 0..BLOCK_LEN {
        let s = STEANE_SYNDROME[1 << q] as usize;
        if s == 0 || wt1[s] != 0 {
            return Err(WpecError::Table(format!(
                "weight-1 syndrome clash on qubit {}",
                q + 1
            )));
        }
        wt1[s] = 1 << q;
    }
    for a in 0..BLOCK_LEN {
        for b in a + 1..BLOCK_LEN {
            let pat = (1u8 << a) | (1 << b);
            let s = STEANE_SYNDROME[pat as usize] as usize;
            if s != 0 && wt2[s] == 0 {
                wt2[s] = pat;
            }
        }
    }
    if (1..8).any(|s| wt1[s] == 0 || wt2[s] == 0) {
        return Err(WpecError::Table("Steane table incomplete".into()));
    }

    let golay_rows = golay_printed_rows();
    let mut golay_min = vec![u32::MAX; 1 << 11];
    let mut place = |e: u32| -> Result<(), WpecError> {
        let s = golay_syndrome_bits(&golay_rows, e) as usize;
        if golay_min[s] != u32::MAX {
            return Err(WpecError::Table(format!(
                "Golay syndrome {} reached by {} and {}",
                to_bitstring(s as u64, 11),
                PauliOp::z_type(GOLAY_LEN, golay_min[s] as u64),
                PauliOp::z_type(GOLAY_LEN, e as u64)
            )));
        }
        golay_min[s] = e;
        Ok(())
    };
    place(0)?;
    for a in 0..GOLAY_LEN {
        place(1 << a)?;
    }
    for a in 0..GOLAY_LEN {
        for b in a + 1..GOLAY_LEN {
            place((1 << a) | (1 << b))?;
        }
    }
    for a in 0..GOLAY_LEN {
        for b in a + 1..GOLAY_LEN {
            for c in b + 1..GOLAY_LEN {
                place((1 << a) | (1 << b) | (1 << c))?;
            }
        }
    }
    if golay_min.contains(&u32::MAX) {
        return Err(WpecError::Table(
            "Golay table does not cover every syndrome".into(),
        ));
    }
    Ok(CorrectionTable {
        wt1,
        wt2,
        golay_rows,
        golay_min,
    })
}

impl CorrectionTable {
    /// Weight-1 Z operator with the given nontrivial syndrome.
    pub fn wt1(&self, s: &Syndrome) -> Option<PauliOp> {
        let s = s.bits() as usize & 7;
        (s != 0).then(|| PauliOp::z_type(BLOCK_LEN, self.wt1[s] as u64))
    }

    pub fn wt2(&self, s: &Syndrome) -> Option<PauliOp> {
        let s = s.bits() as usize & 7;
        (s != 0).then(|| PauliOp::z_type(BLOCK_LEN, self.wt2[s] as u64))
    }

    pub fn golay_min(&self, s: &Syndrome) -> PauliOp {
        PauliOp::z_type(GOLAY_LEN, self.golay_min[s.bits() as usize & 0x7ff] as u64)
    }

    pub fn golay_syndrome(&self, e: &PauliOp) -> Syndrome {
        Syndrome::new(
            golay_syndrome_bits(&self.golay_rows, e.z_bits() as u32) as u64,
            11,
        )
    }

    /// Steane correction pattern for a 3-bit syndrome and parity, as 7 bits.
    #[inline]
    pub fn steane_bits(&self, s: u8, odd: bool) -> u8 {
        match (s & 7, odd) {
            (0, false) => 0,
            (0, true) => STEANE_LOGICAL_REP,
            (s, true) => self.wt1[s as usize],
            (s, false) => self.wt2[s as usize],
        }
    }

    #[inline]
    pub fn golay_bits(&self, s: u16, odd: bool) -> u32 {
        let min = self.golay_min[s as usize & 0x7ff];
        if (min.count_ones() & 1 == 1) == odd {
            min
        } else {
            min ^ low_mask(GOLAY_LEN) as u32
        }
    }

    /// Versioned text form: one line per syndrome, `family syndrome operator`.
    pub fn to_text(&self) -> String {
        let mut out = String::from(TABLE_HEADER);
        out.push('\n');
        for (family, table) in [("steane-wt1", &self.wt1), ("steane-wt2", &self.wt2)] {
            for s in 1..8 {
                out.push_str(&format!(
                    "{family} {} {}\n",
                    to_bitstring(s as u64, 3),
                    PauliOp::z_type(BLOCK_LEN, table[s] as u64)
                ));
            }
        }
        for (s, e) in self.golay_min.iter().enumerate() {
            out.push_str(&format!(
                "golay-min {} {}\n",
                to_bitstring(s as u64, 11),
                PauliOp::z_type(GOLAY_LEN, *e as u64)
            ));
        }
        out
    }

    /// Parses [`Self::to_text`] output, re-checking every stored operator
    /// against its syndrome key.
    pub fn from_text(text: &str) -> Result<CorrectionTable, ParseError> {
        let mut lines = text.lines().enumerate();
        match lines.next() {
            Some((_, h)) if h.trim() == TABLE_HEADER => {}
            _ => {
                return Err(ParseError::Line {
                    line: 1,
                    message: "missing table header".into(),
                })
            }
        }
        let mut wt1 = [0u8; 8];
        let mut wt2 = [0u8; 8];
        let golay_rows = golay_printed_rows();
        let mut golay_min = vec![u32::MAX; 1 << 11];
        for (i, line) in lines {
            let err = |message: String| ParseError::Line {
                line: i + 1,
                message,
            };
            let fields: Vec<&str> = line.split_whitespace().collect();
            let [family, syn, op] = fields[..] else {
                return Err(err("expected three fields".into()));
            };
            let op: PauliOp = op.parse().map_err(|e: ParseError| err(e.to_string()))?;
            if !op.is_z_type() {
                return Err(err("operator is not Z-type".into()));
            }
            match family {
                "steane-wt1" | "steane-wt2" => {
                    let s = parse_bitstring(syn, 3).map_err(|e| err(e.to_string()))? as usize;
                    let pat = op.z_bits() as u8;
                    let want = if family == "steane-wt1" { 1 } else { 2 };
                    if op.num_qubits() != BLOCK_LEN
                        || STEANE_SYNDROME[pat as usize] as usize != s
                        || pat.count_ones() != want
                    {
                        return Err(err("entry does not match its syndrome".into()));
                    }
                    if want == 1 {
                        wt1[s] = pat
                    } else {
                        wt2[s] = pat
                    }
                }
                "golay-min" => {
                    let s = parse_bitstring(syn, 11).map_err(|e| err(e.to_string()))? as usize;
                    let e = op.z_bits() as u32;
                    if op.num_qubits() != GOLAY_LEN
                        || golay_syndrome_bits(&golay_rows, e) as usize != s
                        || e.count_ones() > 3
                    {
                        return Err(err("entry does not match its syndrome".into()));
                    }
                    golay_min[s] = e;
                }
                other => return Err(err(format!("unknown family {other}"))),
            }
        }
        if (1..8).any(|s| wt1[s] == 0 || wt2[s] == 0) || golay_min.contains(&u32::MAX) {
            return Err(ParseError::Line {
                line: 0,
                message: "table is incomplete".into(),
            });
        }
        Ok(CorrectionTable {
            wt1,
            wt2,
            golay_rows,
            golay_min,
        })
    }
}

/// Weight-parity correction on one Steane block.
pub fn wpec_steane(s_x: &Syndrome, w: WeightParity, table: &CorrectionTable) -> PauliOp {
    PauliOp::z_type(
        BLOCK_LEN,
        table.steane_bits(s_x.bits() as u8, w.is_odd()) as u64,
    )
}

/// Weight-parity correction on the Golay code: the minimum-weight coset
/// leader when its parity matches, otherwise the leader times `Z^23`.
pub fn wpec_golay(s_x: &Syndrome, w: WeightParity, table: &CorrectionTable) -> PauliOp {
    PauliOp::z_type(
        GOLAY_LEN,
        table.golay_bits(s_x.bits() as u16, w.is_odd()) as u64,
    )
}

/// Blockwise weight-parity correction on the concatenated code: block `b`
/// gets the Steane correction for syndrome bits `3b..3b+3` of `s1` and parity
/// bit `b`. Returns the 49-bit Z pattern.
pub fn wpec_blocks(table: &CorrectionTable, s1: u32, parity: BlockParity) -> u64 {
    (0..BLOCKS).fold(0u64, |acc, b| {
        let s = (s1 >> (3 * b) & 7) as u8;
        let bits = table.steane_bits(s, parity.0 >> b & 1 == 1) as u64;
        acc | bits << (b * BLOCK_LEN)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> PauliOp {
        s.parse().unwrap()
    }

    fn syn3(s: &str) -> Syndrome {
        Syndrome::new(parse_bitstring(s, 3).unwrap(), 3)
    }

    #[test]
    fn classify_examples() {
        assert_eq!(
            classify_logical(&PauliOp::identity(7)).unwrap(),
            LogicalClass::LogicalI
        );
        assert_eq!(
            classify_logical(&p("ZIZZZII")).unwrap(),
            LogicalClass::LogicalI
        );
        assert_eq!(
            classify_logical(&p("ZZZZZZZ")).unwrap(),
            LogicalClass::LogicalZ
        );
        assert!(matches!(
            classify_logical(&p("ZIIIIII")),
            Err(WpecError::NotInCentralizer(_))
        ));
        assert!(classify_logical(&p("XIIIIII")).is_err());
    }

    #[test]
    fn equivalence_examples() {
        assert!(equivalent_steane(&p("ZIZZZII"), &PauliOp::identity(7)).unwrap());
        assert!(equivalent_steane(&p("ZZZZZZZ"), &p("ZZIZIII")).unwrap());
        assert!(!equivalent_steane(&p("ZZZZZZZ"), &PauliOp::identity(7)).unwrap());
        assert!(equivalent_steane(&p("ZIIIIII"), &PauliOp::identity(7)).is_err());
    }

    #[test]
    fn table_examples() {
        let t = build_correction_table().unwrap();
        assert_eq!(t.wt1(&syn3("100")).unwrap(), p("ZIIIIII"));
        assert_eq!(t.wt2(&syn3("100")).unwrap(), p("IZIZIII"));
        assert!(t.wt1(&syn3("000")).is_none());
        let e = PauliOp::z_on(23, &[0, 1, 2]);
        assert_eq!(t.golay_min(&t.golay_syndrome(&e)), e);
    }

    #[test]
    fn steane_wpec_examples() {
        let t = build_correction_table().unwrap();
        assert_eq!(
            wpec_steane(&syn3("000"), WeightParity::Even, &t),
            PauliOp::identity(7)
        );
        assert_eq!(
            wpec_steane(&syn3("000"), WeightParity::Odd, &t),
            p("ZZIZIII")
        );
        assert_eq!(
            wpec_steane(&syn3("100"), WeightParity::Odd, &t),
            p("ZIIIIII")
        );
        assert_eq!(
            wpec_steane(&syn3("100"), WeightParity::Even, &t),
            p("IZIZIII")
        );
    }

    #[test]
    fn golay_wpec_examples() {
        let t = build_correction_table().unwrap();
        let trivial = Syndrome::new(0, 11);
        assert_eq!(
            wpec_golay(&trivial, WeightParity::Even, &t),
            PauliOp::identity(23)
        );
        let z1 = PauliOp::z_on(23, &[0]);
        let s = t.golay_syndrome(&z1);
        assert_eq!(wpec_golay(&s, WeightParity::Odd, &t), z1);
        let even = wpec_golay(&s, WeightParity::Even, &t);
        assert_eq!(even, PauliOp::z_type(23, low_mask(23) & !1));
        assert_eq!(even.weight(), 22);
    }

    #[test]
    fn block_parity_examples() {
        let p1 = BlockParity(0b001_1101);
        assert!(block_parity_equivalent(p1, BlockParity(0)));
        assert!(block_parity_equivalent(p1, p1));
        assert!(!block_parity_equivalent(BlockParity(1), BlockParity(0)));
        let classes: std::collections::BTreeSet<u8> =
            (0..128).map(|b| BlockParity(b).class()).collect();
        assert_eq!(classes.len(), 16);
    }

    #[test]
    fn table_text_round_trip() {
        let t = build_correction_table().unwrap();
        let text = t.to_text();
        assert_eq!(text.lines().count(), 1 + 14 + 2048);
        assert_eq!(CorrectionTable::from_text(&text).unwrap(), t);
        let broken = text.replacen("steane-wt1 100 ZIIIIII", "steane-wt1 100 IZIIIII", 1);
        assert!(CorrectionTable::from_text(&broken).is_err());
    }
}
