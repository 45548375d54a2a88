//! Pauli-frame simulation of the repeated-round error-correction protocol on
//! the `[[49,1,9]]` code, and its decoder.
//!
//! A round measures the second-level Z generators, the second-level X
//! generators, the first-level Z generators and the first-level X generators,
//! in that order. Z-type data errors come from faults in Z-generator circuits
//! and are seen by X-generator measurements; X-type errors mirror this. Each
//! sector is tracked as a 49-bit pattern; the X sector reuses the Z-sector
//! circuits and lookup table by CSS symmetry.

use std::fmt;
use std::fmt::Write as _;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bits::{low_mask, parse_bitstring, to_bitstring};
use crate::circuit::{CircuitFamily, CircuitId, FaultLocation, LEVEL1_CIRCUITS, LEVEL2_CIRCUITS};
use crate::codes::{concat_min_weight, z_profile, STEANE_LOGICAL_REP, STEANE_SYNDROME};
use crate::error::{CircuitError, ParseError, ProtocolError};
use crate::par::Exec;
use crate::pauli::{PauliOp, BLOCKS, BLOCK_LEN, CONCAT_LEN};
use crate::verifier::{Condition, LookupTable, TableLookup};
use crate::wpec::{wpec_blocks, BlockParity, CorrectionTable};

/// Bundles must repeat this many times in a row.
pub const REPEATS: usize = 4;
/// Rounds that suffice for at most three faults.
pub const ROUND_LIMIT: usize = 16;
/// Give up after this many rounds.
pub const HARD_CAP: usize = 64;
/// Wait epochs: before each of the four segments, and after the last one.
pub const EPOCHS: usize = 5;

const LOGICAL: u64 = low_mask(CONCAT_LEN);

/// Type of the data error a fault produces.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sector {
    Z,
    X,
}

impl Sector {
    fn index(self) -> usize {
        match self {
            Sector::Z => 0,
            Sector::X => 1,
        }
    }

    fn other(self) -> Sector {
        match self {
            Sector::Z => Sector::X,
            Sector::X => Sector::Z,
        }
    }

    /// Segment whose second-level circuits create errors of this sector.
    fn level2_segment(self) -> usize {
        self.index()
    }

    fn level1_segment(self) -> usize {
        2 + self.index()
    }

    /// Segments that measure this sector's syndromes.
    fn level2_detect(self) -> usize {
        self.other().level2_segment()
    }

    fn level1_detect(self) -> usize {
        self.other().level1_segment()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FaultKind {
    Wait {
        qubit: usize,
        epoch: usize,
    },
    Level1 {
        circuit: usize,
        location: FaultLocation,
    },
    Level2 {
        circuit: usize,
        location: FaultLocation,
    },
    /// Flag readout flip on first-level circuit `bit`.
    Flag {
        bit: usize,
    },
    /// Readout flip of syndrome bit `bit`: `0..21` first level, `21..24`
    /// second level.
    Syndrome {
        bit: usize,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ScheduledFault {
    /// 1-based.
    pub round: usize,
    pub sector: Sector,
    pub kind: FaultKind,
}

impl fmt::Display for ScheduledFault {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ", self.round)?;
        let s = match self.sector {
            Sector::Z => "Z",
            Sector::X => "X",
        };
        match self.kind {
            FaultKind::Wait { qubit, epoch } => write!(f, "W {s} {} {epoch}", qubit + 1),
            FaultKind::Level1 { circuit, location } => {
                write!(f, "G1 {s} {} {location}", circuit + 1)
            }
            FaultKind::Level2 { circuit, location } => {
                write!(f, "G2 {s} {} {location}", circuit + 1)
            }
            FaultKind::Flag { bit } => write!(f, "F {s} {}", bit + 1),
            FaultKind::Syndrome { bit } => write!(f, "S {s} {}", bit + 1),
        }
    }
}

/// Faults to inject, one per line: `round kind sector args`.
///
/// ```text
/// # round kind sector args
/// 2 G2 Z 1 gate:2:IZ
/// 3 W Z 15 0
/// 3 G1 X 4 gate:3:ZZ
/// 4 F Z 7
/// 5 S X 22
/// ```
///
/// `W` takes a qubit (1..49) and a wait epoch (0..4, epoch `k < 4` is just
/// before segment `k`, epoch 4 ends the round); `G1`/`G2` take a circuit
/// (1..21 / 1..3) and a fault location; `F` a flag bit (1..21); `S` a
/// syndrome bit (1..21 first level, 22..24 second level). The sector is the
/// type of the data error produced, so `F Z` and `S Z` act on `f_x` and the
/// syndromes that detect Z errors.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Schedule {
    pub faults: Vec<ScheduledFault>,
}

impl Schedule {
    pub fn to_text(&self) -> String {
        self.faults.iter().map(|f| format!("{f}\n")).collect()
    }

    pub fn last_round(&self) -> usize {
        self.faults.iter().map(|f| f.round).max().unwrap_or(0)
    }
}

impl FromStr for Schedule {
    type Err = ParseError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let mut faults = Vec::new();
        for (n, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |message: &str| ParseError::Line {
                line: n + 1,
                message: message.to_string(),
            };
            let fields: Vec<&str> = line.split_whitespace().collect();
            if fields.len() < 4 {
                return Err(err("expected `round kind sector args`"));
            }
            let num = |i: usize, lo: usize, hi: usize| -> Result<usize, ParseError> {
                let v: usize = fields
                    .get(i)
                    .ok_or_else(|| err("missing argument"))?
                    .parse()
                    .map_err(|_| err("expected a number"))?;
                if v < lo || v > hi {
                    return Err(err(&format!("{v} outside {lo}..={hi}")));
                }
                Ok(v)
            };
            let round = num(0, 1, HARD_CAP)?;
            let sector = match fields[2] {
                "Z" | "z" => Sector::Z,
                "X" | "x" => Sector::X,
                _ => return Err(err("sector must be Z or X")),
            };
            let location = |i: usize| -> Result<FaultLocation, ParseError> {
                fields
                    .get(i)
                    .ok_or_else(|| err("missing location"))?
                    .parse()
                    .map_err(|e: String| err(&e))
            };
            let (kind, arity) = match fields[1] {
                "W" => (
                    FaultKind::Wait {
                        qubit: num(3, 1, CONCAT_LEN)? - 1,
                        epoch: num(4, 0, EPOCHS - 1)?,
                    },
                    5,
                ),
                "G1" => (
                    FaultKind::Level1 {
                        circuit: num(3, 1, LEVEL1_CIRCUITS)? - 1,
                        location: location(4)?,
                    },
                    5,
                ),
                "G2" => (
                    FaultKind::Level2 {
                        circuit: num(3, 1, LEVEL2_CIRCUITS)? - 1,
                        location: location(4)?,
                    },
                    5,
                ),
                "F" => (
                    FaultKind::Flag {
                        bit: num(3, 1, LEVEL1_CIRCUITS)? - 1,
                    },
                    4,
                ),
                "S" => (
                    FaultKind::Syndrome {
                        bit: num(3, 1, LEVEL1_CIRCUITS + LEVEL2_CIRCUITS)? - 1,
                    },
                    4,
                ),
                _ => return Err(err("kind must be W, G1, G2, F or S")),
            };
            if fields.len() != arity {
                return Err(err(&format!("expected {arity} fields")));
            }
            faults.push(ScheduledFault {
                round,
                sector,
                kind,
            });
        }
        Ok(Schedule { faults })
    }
}

/// Outcomes of one full round. `x` quantities come from X-generator
/// measurements and detect Z errors; `z` quantities mirror them.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct OutcomeBundle {
    pub s_x: u32,
    pub s_z: u32,
    pub s_tilde_x: u8,
    pub s_tilde_z: u8,
    pub tau_x: u8,
    pub tau_z: u8,
    /// Cumulative flag vectors.
    pub f_x: u32,
    pub f_z: u32,
}

fn triviality(s: u32) -> u8 {
    (0..BLOCKS).fold(0, |acc, b| acc | (((s >> (3 * b) & 7) != 0) as u8) << b)
}

impl OutcomeBundle {
    fn side(&self, sector: Sector) -> (u32, u8, u8, u32) {
        match sector {
            Sector::Z => (self.s_x, self.s_tilde_x, self.tau_x, self.f_x),
            Sector::X => (self.s_z, self.s_tilde_z, self.tau_z, self.f_z),
        }
    }

    /// Bundle of a noiseless round on data errors `(z, x)` with the given
    /// cumulative flags.
    pub fn of_errors(z: u64, x: u64, f_x: u32, f_z: u32) -> Self {
        let (pz, px) = (z_profile(z), z_profile(x));
        OutcomeBundle {
            s_x: pz.s1,
            s_z: px.s1,
            s_tilde_x: pz.s2,
            s_tilde_z: px.s2,
            tau_x: pz.tau,
            tau_z: px.tau,
            f_x,
            f_z,
        }
    }

    /// Five labelled bit-string lines.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "s_x: {}", to_bitstring(self.s_x as u64, 21));
        let _ = writeln!(out, "s_z: {}", to_bitstring(self.s_z as u64, 21));
        let _ = writeln!(
            out,
            "s_tilde: {}",
            to_bitstring((self.s_tilde_x as u64) | (self.s_tilde_z as u64) << 3, 6)
        );
        let _ = writeln!(
            out,
            "tau: {}",
            to_bitstring((self.tau_x as u64) | (self.tau_z as u64) << 7, 14)
        );
        let _ = writeln!(
            out,
            "f: {}",
            to_bitstring((self.f_x as u64) | (self.f_z as u64) << 21, 42)
        );
        out
    }
}

impl FromStr for OutcomeBundle {
    type Err = ParseError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let mut fields: [Option<u64>; 5] = [None; 5];
        const LABELS: [(&str, usize); 5] = [
            ("s_x", 21),
            ("s_z", 21),
            ("s_tilde", 6),
            ("tau", 14),
            ("f", 42),
        ];
        for (n, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let err = |message: String| ParseError::Line {
                line: n + 1,
                message,
            };
            let (label, value) = line
                .split_once(':')
                .ok_or_else(|| err("expected `label: bits`".into()))?;
            let i = LABELS
                .iter()
                .position(|(l, _)| *l == label.trim())
                .ok_or_else(|| err(format!("unknown label {:?}", label.trim())))?;
            if fields[i].is_some() {
                return Err(err(format!("duplicate label {}", LABELS[i].0)));
            }
            fields[i] = Some(parse_bitstring(value, LABELS[i].1).map_err(|e| err(e.to_string()))?);
        }
        let mut v = [0u64; 5];
        for (i, f) in fields.iter().enumerate() {
            v[i] = f.ok_or_else(|| ParseError::Line {
                line: 0,
                message: format!("missing {}", LABELS[i].0),
            })?;
        }
        Ok(OutcomeBundle {
            s_x: v[0] as u32,
            s_z: v[1] as u32,
            s_tilde_x: (v[2] & 7) as u8,
            s_tilde_z: (v[2] >> 3) as u8,
            tau_x: (v[3] & 0x7f) as u8,
            tau_z: (v[3] >> 7) as u8,
            f_x: (v[4] & 0x1f_ffff) as u32,
            f_z: (v[4] >> 21) as u32,
        })
    }
}

/// Pauli frame of the data block plus the round history.
#[derive(Clone, Debug)]
pub struct ProtocolState<'a> {
    family: &'a CircuitFamily,
    /// Z-sector and X-sector data errors.
    pub data: [u64; 2],
    pub flags: [u32; 2],
    pub round_log: Vec<OutcomeBundle>,
    pub schedule: Schedule,
    /// Scheduled faults that have been injected so far.
    pub applied: Vec<ScheduledFault>,
}

impl<'a> ProtocolState<'a> {
    pub fn new(family: &'a CircuitFamily, input_z: u64, input_x: u64, schedule: Schedule) -> Self {
        ProtocolState {
            family,
            data: [input_z & LOGICAL, input_x & LOGICAL],
            flags: [0; 2],
            round_log: Vec::new(),
            schedule,
            applied: Vec::new(),
        }
    }

    pub fn data_error(&self) -> PauliOp {
        PauliOp::from_bits(CONCAT_LEN, self.data[1], self.data[0])
    }

    /// Simulates the next round and appends its bundle.
    pub fn run_round(&mut self) -> Result<OutcomeBundle, ProtocolError> {
        let round = self.round_log.len() + 1;
        let now: Vec<ScheduledFault> = self
            .schedule
            .faults
            .iter()
            .filter(|f| f.round == round)
            .copied()
            .collect();
        let mut s1 = [0u32; 2];
        let mut s2 = [0u8; 2];
        let mut s1_flip = [0u32; 2];
        let mut s2_flip = [0u8; 2];
        let mut round_flags = [0u32; 2];

        for f in &now {
            let i = f.sector.index();
            match f.kind {
                FaultKind::Flag { bit } => round_flags[i] ^= 1 << bit,
                FaultKind::Syndrome { bit } if bit < LEVEL1_CIRCUITS => s1_flip[i] ^= 1 << bit,
                FaultKind::Syndrome { bit } => s2_flip[i] ^= 1 << (bit - LEVEL1_CIRCUITS),
                _ => {}
            }
        }

        for segment in 0..EPOCHS {
            self.apply_waits(&now, segment);
            if segment == 4 {
                break;
            }
            for sector in [Sector::Z, Sector::X] {
                let i = sector.index();
                if segment == sector.level2_detect() {
                    s2[i] = z_profile(self.data[i]).s2;
                }
                if segment == sector.level1_detect() {
                    s1[i] = z_profile(self.data[i]).s1;
                }
            }
            for f in &now {
                let i = f.sector.index();
                let (c, location) = match f.kind {
                    FaultKind::Level1 { circuit, location }
                        if segment == f.sector.level1_segment() =>
                    {
                        let c = self.family.level1.get(circuit);
                        (c.ok_or(CircuitError::Generator(circuit))?, location)
                    }
                    FaultKind::Level2 { circuit, location }
                        if segment == f.sector.level2_segment() =>
                    {
                        let c = self.family.level2.get(circuit);
                        (c.ok_or(CircuitError::Generator(circuit))?, location)
                    }
                    _ => continue,
                };
                let p = c.propagate(location)?;
                self.data[i] ^= p.data;
                if let (true, Some(bit)) = (p.flag, c.flag_bit()) {
                    round_flags[i] ^= 1 << bit;
                }
                if p.syndrome_flip {
                    // the circuit measures a generator of the other sector
                    let o = f.sector.other().index();
                    match c.id() {
                        CircuitId::Level1(j) => s1_flip[o] ^= 1 << j,
                        CircuitId::Level2(j) => s2_flip[o] ^= 1 << j,
                    }
                }
            }
        }

        for i in 0..2 {
            self.flags[i] ^= round_flags[i];
        }
        let sx = s1[0] ^ s1_flip[0];
        let sz = s1[1] ^ s1_flip[1];
        let bundle = OutcomeBundle {
            s_x: sx,
            s_z: sz,
            s_tilde_x: s2[0] ^ s2_flip[0],
            s_tilde_z: s2[1] ^ s2_flip[1],
            tau_x: triviality(sx),
            tau_z: triviality(sz),
            f_x: self.flags[0],
            f_z: self.flags[1],
        };
        self.applied.extend(now);
        self.round_log.push(bundle);
        Ok(bundle)
    }

    fn apply_waits(&mut self, now: &[ScheduledFault], epoch: usize) {
        for f in now {
            if let FaultKind::Wait { qubit, epoch: e } = f.kind {
                if e == epoch {
                    self.data[f.sector.index()] ^= 1 << qubit;
                }
            }
        }
    }

    /// Repeats rounds until the last [`REPEATS`] bundles agree. Returns the
    /// final bundle and the number of rounds.
    pub fn run_until_stable(&mut self) -> Result<(OutcomeBundle, usize), ProtocolError> {
        loop {
            let b = self.run_round()?;
            let n = self.round_log.len();
            if n >= REPEATS && self.round_log[n - REPEATS..].iter().all(|x| *x == b) {
                return Ok((b, n));
            }
            if n >= HARD_CAP {
                return Err(ProtocolError::NoTermination(n));
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DecodePath {
    Table(Condition),
    /// No partition for `(s~, tau)`.
    Missing,
    /// A partition exists but no record matches `(s_x, f_x)`.
    Unmatched,
}

impl DecodePath {
    pub fn is_fallback(&self) -> bool {
        !matches!(self, DecodePath::Table(_))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SideDecode {
    /// 49-bit pattern of the correction in this sector.
    pub correction: u64,
    pub parity: BlockParity,
    pub path: DecodePath,
    /// Block that received the extra logical operator on the fallback path.
    pub step3_block: Option<usize>,
}

/// Decodes one sector from `(s, s~, tau, f)`.
pub fn decode_side(
    table: &LookupTable,
    correction: &CorrectionTable,
    s: u32,
    s_tilde: u8,
    tau: u8,
    f: u32,
) -> SideDecode {
    let (parity, path) = match table.lookup(s_tilde, tau, s, f) {
        TableLookup::Parity(p, c) => (p, DecodePath::Table(c)),
        TableLookup::Missing => (BlockParity::ALL_ODD, DecodePath::Missing),
        TableLookup::Unmatched => (BlockParity::ALL_ODD, DecodePath::Unmatched),
    };
    let mut bits = wpec_blocks(correction, s, parity);
    let mut step3_block = None;
    if path.is_fallback() {
        let residual = s_tilde ^ STEANE_SYNDROME[(parity.0 & 0x7f) as usize];
        if residual != 0 {
            let b = (0..BLOCKS)
                .find(|&b| STEANE_SYNDROME[1 << b] == residual)
                .expect("every nonzero syndrome is a column");
            bits ^= (STEANE_LOGICAL_REP as u64) << (b * BLOCK_LEN);
            step3_block = Some(b);
        }
    }
    SideDecode {
        correction: bits,
        parity,
        path,
        step3_block,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Decoded {
    pub z: SideDecode,
    pub x: SideDecode,
}

impl Decoded {
    /// Full correction: Z part from the Z sector, X part from the X sector.
    pub fn correction(&self) -> PauliOp {
        PauliOp::from_bits(CONCAT_LEN, self.x.correction, self.z.correction)
    }
}

pub fn decode_bundle(
    b: &OutcomeBundle,
    table: &LookupTable,
    correction: &CorrectionTable,
) -> Decoded {
    let side = |sector| {
        let (s, st, tau, f) = b.side(sector);
        decode_side(table, correction, s, st, tau, f)
    };
    Decoded {
        z: side(Sector::Z),
        x: side(Sector::X),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Trial {
    pub input_z: u64,
    pub input_x: u64,
    pub schedule: Schedule,
}

impl Trial {
    /// Number of qubits carrying an input error.
    pub fn input_weight(&self) -> usize {
        (self.input_z | self.input_x).count_ones() as usize
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrialOutcome {
    pub rounds: usize,
    pub v1: usize,
    pub v2: usize,
    /// Stabilizer-reduced weights of the residual per sector, and of the
    /// residual times the logical operator.
    pub residual: [(u32, u32); 2],
    pub fallback: bool,
    pub condition1: Option<bool>,
    pub condition2: bool,
}

/// Runs the protocol on one trial and checks both conditions with `t`.
pub fn run_trial(
    family: &CircuitFamily,
    table: &LookupTable,
    correction: &CorrectionTable,
    trial: &Trial,
    t: usize,
) -> Result<TrialOutcome, ProtocolError> {
    let mut state =
        ProtocolState::new(family, trial.input_z, trial.input_x, trial.schedule.clone());
    let (bundle, rounds) = state.run_until_stable()?;
    let decoded = decode_bundle(&bundle, table, correction);
    let rz = state.data[0] ^ decoded.z.correction;
    let rx = state.data[1] ^ decoded.x.correction;
    let residual = [rz, rx].map(|r| (concat_min_weight(r), concat_min_weight(r ^ LOGICAL)));
    let v1 = trial.input_weight();
    let v2 = state.applied.len();
    // ideal decoding returns the input codeword when the residual is closer
    // to the stabilizer coset than to the logical one
    let condition1 = (v1 + v2 <= t).then(|| residual.iter().all(|(s, l)| s < l));
    let distance: u32 = residual.iter().map(|(s, l)| *s.min(l)).sum();
    let condition2 = v2 > t || distance as usize <= v2;
    Ok(TrialOutcome {
        rounds,
        v1,
        v2,
        residual,
        fallback: decoded.z.path.is_fallback() || decoded.x.path.is_fallback(),
        condition1,
        condition2,
    })
}

/// Seeded generator of random trials with at most `max_faults` faults.
pub struct TrialGenerator {
    rng: ChaCha8Rng,
    family: CircuitFamily,
    pub max_faults: usize,
    /// Largest input-error weight drawn.
    pub max_input_weight: usize,
    /// Faults land in rounds `1..=max_round`.
    pub max_round: usize,
}

impl TrialGenerator {
    pub fn new(seed: u64, family: &CircuitFamily, max_faults: usize) -> Self {
        TrialGenerator {
            rng: ChaCha8Rng::seed_from_u64(seed),
            family: family.clone(),
            max_faults,
            max_input_weight: 12,
            max_round: 12,
        }
    }

    fn random_error(&mut self, weight: usize) -> u64 {
        let mut e = 0u64;
        while (e.count_ones() as usize) < weight {
            e |= 1 << self.rng.random_range(0..CONCAT_LEN);
        }
        e
    }

    fn random_fault(&mut self) -> ScheduledFault {
        let round = self.rng.random_range(1..=self.max_round);
        let sector = if self.rng.random_bool(0.5) {
            Sector::Z
        } else {
            Sector::X
        };
        let flags = self.family.config.flags;
        let kind = loop {
            match self.rng.random_range(0..5) {
                0 => {
                    break FaultKind::Wait {
                        qubit: self.rng.random_range(0..CONCAT_LEN),
                        epoch: self.rng.random_range(0..EPOCHS),
                    }
                }
                1 => {
                    let circuit = self.rng.random_range(0..LEVEL1_CIRCUITS);
                    let locs = self.family.level1[circuit].fault_locations();
                    let location = locs[self.rng.random_range(0..locs.len())];
                    break FaultKind::Level1 { circuit, location };
                }
                2 => {
                    let circuit = self.rng.random_range(0..LEVEL2_CIRCUITS);
                    let locs = self.family.level2[circuit].fault_locations();
                    let location = locs[self.rng.random_range(0..locs.len())];
                    break FaultKind::Level2 { circuit, location };
                }
                3 if flags => {
                    break FaultKind::Flag {
                        bit: self.rng.random_range(0..LEVEL1_CIRCUITS),
                    }
                }
                4 => {
                    break FaultKind::Syndrome {
                        bit: self.rng.random_range(0..LEVEL1_CIRCUITS + LEVEL2_CIRCUITS),
                    }
                }
                _ => {}
            }
        };
        ScheduledFault {
            round,
            sector,
            kind,
        }
    }

    pub fn next_trial(&mut self) -> Trial {
        let faults = self.rng.random_range(0..=self.max_faults);
        // half the trials stay within the correctable budget
        let budget = if self.rng.random_bool(0.5) {
            self.max_faults.saturating_sub(faults)
        } else {
            self.max_input_weight
        };
        let weight = self.rng.random_range(0..=budget);
        let mut input_z = 0;
        let mut input_x = 0;
        let mixed = self.random_error(weight);
        for q in 0..CONCAT_LEN {
            if mixed >> q & 1 == 1 {
                match self.rng.random_range(0..3) {
                    0 => input_z |= 1 << q,
                    1 => input_x |= 1 << q,
                    _ => {
                        input_z |= 1 << q;
                        input_x |= 1 << q;
                    }
                }
            }
        }
        let mut schedule = Schedule {
            faults: (0..faults).map(|_| self.random_fault()).collect(),
        };
        schedule.faults.sort_by_key(|f| f.round);
        Trial {
            input_z,
            input_x,
            schedule,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FtecFailure {
    pub trial: Trial,
    pub outcome: Option<TrialOutcome>,
    pub reason: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FtecReport {
    pub trials: usize,
    pub condition1_checked: usize,
    pub fallbacks: usize,
    pub max_rounds: usize,
    pub failures: Vec<FtecFailure>,
}

impl FtecReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "trials {}", self.trials);
        let _ = writeln!(out, "condition1-checked {}", self.condition1_checked);
        let _ = writeln!(out, "fallback-decodes {}", self.fallbacks);
        let _ = writeln!(out, "max-rounds {}", self.max_rounds);
        let _ = writeln!(out, "failures {}", self.failures.len());
        for f in &self.failures {
            let _ = writeln!(
                out,
                "failure {}: input Z={} X={}",
                f.reason,
                to_bitstring(f.trial.input_z, CONCAT_LEN),
                to_bitstring(f.trial.input_x, CONCAT_LEN)
            );
            for line in f.trial.schedule.to_text().lines() {
                let _ = writeln!(out, "  {line}");
            }
        }
        let _ = writeln!(
            out,
            "result {}",
            if self.passed() { "pass" } else { "fail" }
        );
        out
    }
}

/// Runs every trial and checks the two conditions with threshold `t`, and
/// that no run needs more than [`ROUND_LIMIT`] rounds.
pub fn check_ftec_conditions(
    family: &CircuitFamily,
    table: &LookupTable,
    correction: &CorrectionTable,
    trials: &[Trial],
    t: usize,
    exec: Exec,
) -> FtecReport {
    let outcomes = exec.map(trials, |trial| {
        run_trial(family, table, correction, trial, t)
    });
    let mut report = FtecReport {
        trials: trials.len(),
        ..Default::default()
    };
    for (trial, outcome) in trials.iter().zip(outcomes) {
        let fail = |reason: String, outcome: Option<TrialOutcome>| FtecFailure {
            trial: trial.clone(),
            outcome,
            reason,
        };
        match outcome {
            Err(e) => report.failures.push(fail(e.to_string(), None)),
            Ok(o) => {
                report.max_rounds = report.max_rounds.max(o.rounds);
                report.fallbacks += o.fallback as usize;
                if o.condition1.is_some() {
                    report.condition1_checked += 1;
                }
                let reason = if o.v2 <= t && o.rounds > ROUND_LIMIT {
                    Some(format!("{} rounds", o.rounds))
                } else if o.condition1 == Some(false) {
                    Some(format!("condition 1 (v1={}, v2={})", o.v1, o.v2))
                } else if !o.condition2 {
                    Some(format!(
                        "condition 2 (v2={}, residual {:?})",
                        o.v2, o.residual
                    ))
                } else {
                    None
                };
                if let Some(r) = reason {
                    report.failures.push(fail(r, Some(o)));
                }
            }
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::{CircuitConfig, GatePauli};

    #[test]
    fn quiet_run_takes_four_rounds() {
        let family = CircuitFamily::new(CircuitConfig::PROTOCOL);
        let mut state = ProtocolState::new(&family, 0, 0, Schedule::default());
        let (b, n) = state.run_until_stable().unwrap();
        assert_eq!(b, OutcomeBundle::default());
        assert_eq!(n, 4);
    }

    #[test]
    fn full_block_input_error() {
        let family = CircuitFamily::new(CircuitConfig::PROTOCOL);
        let mut state = ProtocolState::new(&family, 0x7f, 0, Schedule::default());
        let b = state.run_round().unwrap();
        assert_eq!(b.s_tilde_x, 0b001);
        assert_eq!(b.tau_x, 0);
        assert_eq!(b.s_x, 0);
    }

    #[test]
    fn flag_fault_changes_only_f() {
        let family = CircuitFamily::new(CircuitConfig::PROTOCOL);
        let schedule: Schedule = "2 F Z 5".parse().unwrap();
        let mut state = ProtocolState::new(&family, 0, 0, schedule);
        let b1 = state.run_round().unwrap();
        let b2 = state.run_round().unwrap();
        assert_eq!(b2.f_x, 1 << 4);
        assert_eq!(OutcomeBundle { f_x: 0, ..b2 }, b1);
    }

    #[test]
    fn schedule_text_round_trip() {
        let text = "2 G2 Z 1 gate:2:IZ\n3 W X 15 4\n3 G1 X 4 prep-flag\n4 F Z 7\n5 S X 22\n";
        let s: Schedule = text.parse().unwrap();
        assert_eq!(s.to_text(), text);
        assert_eq!(
            s.faults[0].kind,
            FaultKind::Level2 {
                circuit: 0,
                location: FaultLocation::Gate {
                    step: 1,
                    pauli: GatePauli::IZ
                }
            }
        );
        assert!("1 Q Z 3".parse::<Schedule>().is_err());
        assert!("1 W Z 50 0".parse::<Schedule>().is_err());
        assert!("1 W Z 5".parse::<Schedule>().is_err());
    }

    #[test]
    fn bundle_text_round_trip() {
        let b = OutcomeBundle::of_errors(1 << 14, 1 << 3 | 1 << 40, 5, 1 << 20);
        let back: OutcomeBundle = b.to_text().parse().unwrap();
        assert_eq!(back, b);
        assert!("s_x: 0".parse::<OutcomeBundle>().is_err());
    }
}
