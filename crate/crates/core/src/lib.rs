//! Weight-parity error correction (WPEC) for the cyclic Steane code, the
//! `[[49,1,9]]` concatenated Steane code and the cyclic Golay code, together
//! with exhaustive fault enumeration that checks the fault-tolerance of the
//! two-ancilla error-correction protocol for the concatenated code.

pub mod bits;
pub mod circuit;
pub mod claims;
pub mod codes;
pub mod error;
pub mod par;
pub mod pauli;
pub mod protocol;
pub mod verifier;
pub mod wpec;

pub use codes::{concatenated_49, golay_code, steane_code, StabilizerCode, Syndrome};
pub use error::{CircuitError, ParseError, PauliError, ProtocolError, WpecError};
pub use pauli::{BlockIndex, PauliOp};
pub use wpec::{
    block_parity_equivalent, build_correction_table, classify_logical, equivalent_steane,
    wpec_blocks, wpec_golay, wpec_steane, BlockParity, CorrectionTable, LogicalClass, WeightParity,
};
