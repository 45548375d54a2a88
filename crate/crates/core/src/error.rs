use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("expected {expected} characters, found {found}")]
    Length { expected: usize, found: usize },
    #[error("unexpected character {0:?}")]
    Character(char),
    #[error("line {line}: {message}")]
    Line { line: usize, message: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PauliError {
    #[error("operator lengths differ ({0} vs {1})")]
    LengthMismatch(usize, usize),
    #[error("operator on {0} qubits exceeds the 64-qubit packed representation")]
    TooLong(usize),
    #[error("expected a Z-type operator, got {0}")]
    NotZType(String),
    #[error("expected an operator on {expected} qubits, got {found}")]
    WrongLength { expected: usize, found: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WpecError {
    #[error(transparent)]
    Pauli(#[from] PauliError),
    #[error("operator {0} does not commute with every X-type generator")]
    NotInCentralizer(String),
    #[error("syndromes differ: {0} vs {1}")]
    SyndromeMismatch(String, String),
    #[error("code {0} has no block structure")]
    NotConcatenated(String),
    #[error("correction table invariant broken: {0}")]
    Table(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CircuitError {
    #[error("step {step} is out of range for a circuit with {len} steps")]
    InvalidPosition { step: usize, len: usize },
    #[error("step {0} is not a CNOT")]
    NotAGate(usize),
    #[error("circuit has no flag qubit")]
    NoFlag,
    #[error("generator index {0} out of range")]
    Generator(usize),
    #[error("{0}")]
    Inconsistent(String),
}

#[derive(Debug, Error)]
pub enum ProtocolError {
    #[error("outcome bundles failed to stabilise within {0} rounds")]
    NoTermination(usize),
    #[error(transparent)]
    Circuit(#[from] CircuitError),
    #[error(transparent)]
    Parse(#[from] ParseError),
}
