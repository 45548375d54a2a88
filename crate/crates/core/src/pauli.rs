//! Phaseless Pauli operators in binary symplectic form.
//!
//! An operator on `n <= 64` qubits is a pair of packed words: bit `i` of
//! `x` (resp. `z`) is set when qubit `i + 1` carries an `X` (resp. `Z`)
//! component, so `Y` sets both. Phases are never tracked: syndromes, weight
//! parities and logical classes do not depend on them.

use std::fmt;
use std::str::FromStr;

use crate::bits::low_mask;
use crate::error::{ParseError, PauliError};

/// Number of qubits in a Steane block.
pub const BLOCK_LEN: usize = 7;
/// Number of blocks (and qubits) of the two-level concatenated Steane code.
pub const BLOCKS: usize = 7;
pub const CONCAT_LEN: usize = BLOCK_LEN * BLOCKS;

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PauliOp {
    n: usize,
    x: u64,
    z: u64,
}

impl PauliOp {
    pub fn identity(n: usize) -> Self {
        assert!(n <= 64, "packed operators hold at most 64 qubits");
        PauliOp { n, x: 0, z: 0 }
    }

    /// Builds an operator from raw X and Z words. Bits above `n` are dropped.
    pub fn from_bits(n: usize, x: u64, z: u64) -> Self {
        assert!(n <= 64, "packed operators hold at most 64 qubits");
        let mask = low_mask(n);
        PauliOp {
            n,
            x: x & mask,
            z: z & mask,
        }
    }

    pub fn z_type(n: usize, z: u64) -> Self {
        Self::from_bits(n, 0, z)
    }

    pub fn x_type(n: usize, x: u64) -> Self {
        Self::from_bits(n, x, 0)
    }

    /// `Z` on each listed qubit (0-based).
    pub fn z_on(n: usize, qubits: &[usize]) -> Self {
        Self::z_type(n, qubits.iter().fold(0, |acc, &q| acc | 1 << q))
    }

    pub fn x_on(n: usize, qubits: &[usize]) -> Self {
        Self::x_type(n, qubits.iter().fold(0, |acc, &q| acc | 1 << q))
    }

    pub fn num_qubits(&self) -> usize {
        self.n
    }

    pub fn x_bits(&self) -> u64 {
        self.x
    }

    pub fn z_bits(&self) -> u64 {
        self.z
    }

    /// Number of qubits acted on non-trivially.
    pub fn weight(&self) -> u32 {
        (self.x | self.z).count_ones()
    }

    pub fn weight_parity(&self) -> u32 {
        self.weight() & 1
    }

    pub fn is_identity(&self) -> bool {
        self.x == 0 && self.z == 0
    }

    pub fn is_z_type(&self) -> bool {
        self.x == 0
    }

    pub fn is_x_type(&self) -> bool {
        self.z == 0
    }

    /// Symplectic inner product test.
    ///
    /// Panics when the operators act on different numbers of qubits.
    pub fn commutes_with(&self, other: &PauliOp) -> bool {
        assert_eq!(
            self.n, other.n,
            "commutation of operators of different length"
        );
        ((self.x & other.z).count_ones() + (self.z & other.x).count_ones()) % 2 == 0
    }

    pub fn try_multiply(&self, other: &PauliOp) -> Result<PauliOp, PauliError> {
        if self.n != other.n {
            return Err(PauliError::LengthMismatch(self.n, other.n));
        }
        Ok(PauliOp {
            n: self.n,
            x: self.x ^ other.x,
            z: self.z ^ other.z,
        })
    }

    /// Phaseless product. Panics on a length mismatch; see [`Self::try_multiply`].
    pub fn multiply(&self, other: &PauliOp) -> PauliOp {
        match self.try_multiply(other) {
            Ok(p) => p,
            Err(e) => panic!("{e}"),
        }
    }

    /// Restriction of a 49-qubit operator to one 7-qubit block.
    pub fn restrict(&self, block: BlockIndex) -> Result<PauliOp, PauliError> {
        if self.n != CONCAT_LEN {
            return Err(PauliError::WrongLength {
                expected: CONCAT_LEN,
                found: self.n,
            });
        }
        let shift = block.first_qubit();
        Ok(PauliOp::from_bits(
            BLOCK_LEN,
            self.x >> shift,
            self.z >> shift,
        ))
    }

    /// Places a 7-qubit operator on one block of 49 qubits.
    pub fn embed(&self, block: BlockIndex) -> Result<PauliOp, PauliError> {
        if self.n != BLOCK_LEN {
            return Err(PauliError::WrongLength {
                expected: BLOCK_LEN,
                found: self.n,
            });
        }
        let shift = block.first_qubit();
        Ok(PauliOp::from_bits(
            CONCAT_LEN,
            self.x << shift,
            self.z << shift,
        ))
    }

    /// Cyclic shift by one position towards higher qubit indices.
    pub fn cyclic_shift(&self) -> PauliOp {
        let rot = |w: u64| {
            let top = w >> (self.n - 1) & 1;
            ((w << 1) | top) & low_mask(self.n)
        };
        PauliOp {
            n: self.n,
            x: rot(self.x),
            z: rot(self.z),
        }
    }
}

impl std::ops::Mul for PauliOp {
    type Output = PauliOp;

    fn mul(self, rhs: PauliOp) -> PauliOp {
        self.multiply(&rhs)
    }
}

impl fmt::Display for PauliOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.n {
            let c = match (self.x >> i & 1, self.z >> i & 1) {
                (0, 0) => 'I',
                (1, 0) => 'X',
                (0, 1) => 'Z',
                _ => 'Y',
            };
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for PauliOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PauliOp({self})")
    }
}

impl FromStr for PauliOp {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let n = s.chars().count();
        if n > 64 {
            return Err(ParseError::Length {
                expected: 64,
                found: n,
            });
        }
        let (mut x, mut z) = (0u64, 0u64);
        for (i, c) in s.chars().enumerate() {
            match c {
                'I' => {}
                'X' => x |= 1 << i,
                'Z' => z |= 1 << i,
                'Y' => {
                    x |= 1 << i;
                    z |= 1 << i;
                }
                other => return Err(ParseError::Character(other)),
            }
        }
        Ok(PauliOp { n, x, z })
    }
}

/// One of the seven 7-qubit blocks of a 49-qubit operator (0-based).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BlockIndex(u8);

impl BlockIndex {
    pub fn new(index: usize) -> Option<Self> {
        (index < BLOCKS).then_some(BlockIndex(index as u8))
    }

    pub fn all() -> impl Iterator<Item = BlockIndex> {
        (0..BLOCKS as u8).map(BlockIndex)
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn first_qubit(self) -> usize {
        self.index() * BLOCK_LEN
    }

    /// Mask of the block's qubits within a 49-bit word.
    pub fn mask(self) -> u64 {
        low_mask(BLOCK_LEN) << self.first_qubit()
    }
}

impl fmt::Display for BlockIndex {
    /// Blocks are reported 1-based.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0 + 1)
    }
}
