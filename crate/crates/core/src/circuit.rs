//! Syndrome-extraction circuits for the concatenated code and Z-type fault
//! propagation through them.
//!
//! A Z-type generator is measured with data qubits as CNOT controls and the
//! syndrome ancilla as target. A `Z` on the ancilla therefore copies onto the
//! data qubit of every later CNOT, while a `Z` on a data qubit stays put.
//! First-level circuits carry one flag qubit coupled to the ancilla by two
//! CNOTs (flag as control), placed after the first and before the last data
//! CNOT; an ancilla `Z` between them flips the X-basis flag readout.

use std::collections::HashSet;
use std::fmt;

use crate::codes::{blocks_to_qubits, LEVEL2_BLOCK_ROWS, STEANE_ROWS};
use crate::error::CircuitError;
use crate::pauli::{BlockIndex, PauliOp, BLOCKS, BLOCK_LEN, CONCAT_LEN};

/// Number of first-level generators of one Pauli type (and flag bits).
pub const LEVEL1_CIRCUITS: usize = 21;
pub const LEVEL2_CIRCUITS: usize = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CnotOrdering {
    /// Interleaved across blocks: first qubit of every support block, then
    /// the second, and so on.
    Permuted,
    /// Block by block, qubits in increasing order.
    Normal,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CircuitConfig {
    pub ordering: CnotOrdering,
    pub flags: bool,
}

impl CircuitConfig {
    /// Permuted second-level circuits and flagged first-level circuits.
    pub const PROTOCOL: CircuitConfig = CircuitConfig {
        ordering: CnotOrdering::Permuted,
        flags: true,
    };
    /// Normal ordering and no flags; used as a negative control.
    pub const UNPROTECTED: CircuitConfig = CircuitConfig {
        ordering: CnotOrdering::Normal,
        flags: false,
    };
}

impl Default for CircuitConfig {
    fn default() -> Self {
        Self::PROTOCOL
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CircuitId {
    /// First-level generator `j` (0-based): generator `j % 3` on block `j / 3`.
    Level1(usize),
    Level2(usize),
}

impl fmt::Display for CircuitId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CircuitId::Level1(j) => write!(f, "g{}", j + 1),
            CircuitId::Level2(j) => write!(f, "~g{}", j + 1),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Step {
    Data(usize),
    Flag,
}

/// Z-type Pauli left on the (control, target) pair after a CNOT.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GatePauli {
    ZI,
    IZ,
    ZZ,
}

impl GatePauli {
    pub const ALL: [GatePauli; 3] = [GatePauli::ZI, GatePauli::IZ, GatePauli::ZZ];

    fn control(self) -> bool {
        matches!(self, GatePauli::ZI | GatePauli::ZZ)
    }

    fn target(self) -> bool {
        matches!(self, GatePauli::IZ | GatePauli::ZZ)
    }
}

impl fmt::Display for GatePauli {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FaultLocation {
    AncillaPrep,
    FlagPrep,
    Gate { step: usize, pauli: GatePauli },
    AncillaMeasure,
    FlagMeasure,
}

impl fmt::Display for FaultLocation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FaultLocation::AncillaPrep => f.write_str("prep-anc"),
            FaultLocation::FlagPrep => f.write_str("prep-flag"),
            FaultLocation::Gate { step, pauli } => write!(f, "gate:{}:{pauli}", step + 1),
            FaultLocation::AncillaMeasure => f.write_str("meas-anc"),
            FaultLocation::FlagMeasure => f.write_str("meas-flag"),
        }
    }
}

impl std::str::FromStr for FaultLocation {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "prep-anc" => Ok(FaultLocation::AncillaPrep),
            "prep-flag" => Ok(FaultLocation::FlagPrep),
            "meas-anc" => Ok(FaultLocation::AncillaMeasure),
            "meas-flag" => Ok(FaultLocation::FlagMeasure),
            _ => {
                let mut parts = s.split(':');
                let (Some("gate"), Some(step), Some(pauli), None) =
                    (parts.next(), parts.next(), parts.next(), parts.next())
                else {
                    return Err(format!("unknown fault location {s:?}"));
                };
                let step: usize = step.parse().map_err(|_| format!("bad step in {s:?}"))?;
                if step == 0 {
                    return Err("gate steps are 1-based".into());
                }
                let pauli = match pauli {
                    "ZI" => GatePauli::ZI,
                    "IZ" => GatePauli::IZ,
                    "ZZ" => GatePauli::ZZ,
                    other => return Err(format!("unknown gate Pauli {other:?}")),
                };
                Ok(FaultLocation::Gate {
                    step: step - 1,
                    pauli,
                })
            }
        }
    }
}

/// Effect of one fault after propagation to the end of its circuit.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Propagated {
    /// Z pattern left on the 49 data qubits.
    pub data: u64,
    pub flag: bool,
    pub syndrome_flip: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtractionCircuit {
    id: CircuitId,
    target: PauliOp,
    steps: Vec<Step>,
}

impl ExtractionCircuit {
    /// Circuit for second-level Z generator `generator` (0-based).
    pub fn level2(generator: usize, ordering: CnotOrdering) -> Result<Self, CircuitError> {
        let row = *LEVEL2_BLOCK_ROWS
            .get(generator)
            .ok_or(CircuitError::Generator(generator))?;
        let blocks: Vec<usize> = (0..BLOCKS).filter(|b| row >> b & 1 == 1).collect();
        let order: Vec<usize> = match ordering {
            CnotOrdering::Permuted => (0..BLOCK_LEN)
                .flat_map(|q| blocks.iter().map(move |b| b * BLOCK_LEN + q))
                .collect(),
            CnotOrdering::Normal => blocks
                .iter()
                .flat_map(|b| (0..BLOCK_LEN).map(move |q| b * BLOCK_LEN + q))
                .collect(),
        };
        Ok(ExtractionCircuit {
            id: CircuitId::Level2(generator),
            target: PauliOp::z_type(CONCAT_LEN, blocks_to_qubits(row)),
            steps: order.into_iter().map(Step::Data).collect(),
        })
    }

    /// Circuit for first-level generator `generator` (0-based) on `block`.
    pub fn level1(block: BlockIndex, generator: usize, flags: bool) -> Result<Self, CircuitError> {
        let row = *STEANE_ROWS
            .get(generator)
            .ok_or(CircuitError::Generator(generator))?;
        let qubits: Vec<usize> = (0..BLOCK_LEN)
            .filter(|q| row >> q & 1 == 1)
            .map(|q| block.first_qubit() + q)
            .collect();
        let mut steps: Vec<Step> = qubits.iter().map(|&q| Step::Data(q)).collect();
        if flags {
            let last = steps.len() - 1;
            steps.insert(last, Step::Flag);
            steps.insert(1, Step::Flag);
        }
        Ok(ExtractionCircuit {
            id: CircuitId::Level1(3 * block.index() + generator),
            target: PauliOp::z_on(CONCAT_LEN, &qubits),
            steps,
        })
    }

    pub fn id(&self) -> CircuitId {
        self.id
    }

    pub fn target(&self) -> &PauliOp {
        &self.target
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn has_flag(&self) -> bool {
        self.steps.contains(&Step::Flag)
    }

    /// Data qubits (0-based) in CNOT order.
    pub fn cnot_order(&self) -> Vec<usize> {
        self.steps
            .iter()
            .filter_map(|s| match s {
                Step::Data(q) => Some(*q),
                Step::Flag => None,
            })
            .collect()
    }

    /// Step indices of the two flag CNOTs.
    pub fn flag_cnot_positions(&self) -> Option<(usize, usize)> {
        let mut it = self
            .steps
            .iter()
            .enumerate()
            .filter(|(_, s)| **s == Step::Flag)
            .map(|(i, _)| i);
        Some((it.next()?, it.next()?))
    }

    pub fn ancilla_count(&self) -> usize {
        1 + self.has_flag() as usize
    }

    /// Bit of the 21-bit flag vector written by this circuit.
    pub fn flag_bit(&self) -> Option<usize> {
        match self.id {
            CircuitId::Level1(j) if self.has_flag() => Some(j),
            _ => None,
        }
    }

    /// Every fault location, in a fixed order.
    pub fn fault_locations(&self) -> Vec<FaultLocation> {
        let mut locs = vec![FaultLocation::AncillaPrep];
        if self.has_flag() {
            locs.push(FaultLocation::FlagPrep);
        }
        for step in 0..self.steps.len() {
            for pauli in GatePauli::ALL {
                locs.push(FaultLocation::Gate { step, pauli });
            }
        }
        locs.push(FaultLocation::AncillaMeasure);
        if self.has_flag() {
            locs.push(FaultLocation::FlagMeasure);
        }
        locs
    }

    /// Pushes a Z-type fault through the rest of the circuit.
    pub fn propagate(&self, location: FaultLocation) -> Result<Propagated, CircuitError> {
        let mut out = Propagated::default();
        let mut anc = false;
        let mut flag = false;
        let start = match location {
            FaultLocation::AncillaPrep => {
                anc = true;
                0
            }
            FaultLocation::FlagPrep => {
                if !self.has_flag() {
                    return Err(CircuitError::NoFlag);
                }
                flag = true;
                0
            }
            FaultLocation::Gate { step, pauli } => {
                let s = *self.steps.get(step).ok_or(CircuitError::InvalidPosition {
                    step,
                    len: self.steps.len(),
                })?;
                if pauli.control() {
                    match s {
                        Step::Data(q) => out.data ^= 1 << q,
                        Step::Flag => flag = true,
                    }
                }
                anc = pauli.target();
                step + 1
            }
            FaultLocation::AncillaMeasure => {
                out.syndrome_flip = true;
                self.steps.len()
            }
            FaultLocation::FlagMeasure => {
                if !self.has_flag() {
                    return Err(CircuitError::NoFlag);
                }
                flag = true;
                self.steps.len()
            }
        };
        if anc {
            for s in &self.steps[start..] {
                match s {
                    Step::Data(q) => out.data ^= 1 << q,
                    Step::Flag => flag = !flag,
                }
            }
        }
        out.flag = flag;
        Ok(out)
    }

    /// One line: circuit id followed by its steps, data qubits 1-based and
    /// flag CNOTs as `F`.
    pub fn describe(&self) -> String {
        let steps: Vec<String> = self
            .steps
            .iter()
            .map(|s| match s {
                Step::Data(q) => (q + 1).to_string(),
                Step::Flag => "F".to_string(),
            })
            .collect();
        format!("{}: {}", self.id, steps.join(" "))
    }
}

/// The 24 Z-type extraction circuits of one measurement round.
#[derive(Clone, Debug)]
pub struct CircuitFamily {
    pub config: CircuitConfig,
    pub level1: Vec<ExtractionCircuit>,
    pub level2: Vec<ExtractionCircuit>,
}

impl CircuitFamily {
    pub fn new(config: CircuitConfig) -> Self {
        let level1 = BlockIndex::all()
            .flat_map(|b| (0..3).map(move |g| (b, g)))
            .map(|(b, g)| ExtractionCircuit::level1(b, g, config.flags).expect("valid generator"))
            .collect();
        let level2 = (0..LEVEL2_CIRCUITS)
            .map(|g| ExtractionCircuit::level2(g, config.ordering).expect("valid generator"))
            .collect();
        CircuitFamily {
            config,
            level1,
            level2,
        }
    }

    pub fn circuit(&self, id: CircuitId) -> &ExtractionCircuit {
        match id {
            CircuitId::Level1(j) => &self.level1[j],
            CircuitId::Level2(j) => &self.level2[j],
        }
    }

    pub fn describe(&self) -> String {
        self.level2
            .iter()
            .chain(&self.level1)
            .map(|c| c.describe() + "\n")
            .collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FaultType {
    /// Wait-time (and input) error on one data qubit.
    W,
    /// Fault inside a first-level extraction circuit.
    G1,
    /// Fault inside a second-level extraction circuit.
    G2,
    /// Flag readout flip.
    F,
    /// Syndrome readout flip.
    S,
}

impl fmt::Display for FaultType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FaultOrigin {
    Wait {
        qubit: usize,
    },
    Circuit {
        circuit: CircuitId,
        location: FaultLocation,
    },
    FlagFlip {
        bit: usize,
    },
    /// Bit `0..21` is a first-level syndrome bit, `21..24` second-level.
    SyndromeFlip {
        bit: usize,
    },
}

impl fmt::Display for FaultOrigin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FaultOrigin::Wait { qubit } => write!(f, "W q{}", qubit + 1),
            FaultOrigin::Circuit { circuit, location } => write!(f, "{circuit} {location}"),
            FaultOrigin::FlagFlip { bit } => write!(f, "F f{}", bit + 1),
            FaultOrigin::SyndromeFlip { bit } => write!(f, "S s{}", bit + 1),
        }
    }
}

/// Data-error and flag-vector contribution of a fault or fault combination.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Effect {
    pub data: u64,
    pub flags: u32,
}

impl Effect {
    #[inline]
    pub fn combine(self, other: Effect) -> Effect {
        Effect {
            data: self.data ^ other.data,
            flags: self.flags ^ other.flags,
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.data == 0 && self.flags == 0
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Fault {
    pub fault_type: FaultType,
    pub origin: FaultOrigin,
    pub effect: Effect,
    pub syndrome_flip: Option<usize>,
}

impl Fault {
    pub fn error(&self) -> PauliOp {
        PauliOp::z_type(CONCAT_LEN, self.effect.data)
    }
}

/// Names one fault set: `F^{G1}_{i,j}`, `F^{G2}_{i,j}`, `F^W_i`, `F^F_i`, `F^S_i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FaultSetLabel {
    pub fault_type: FaultType,
    /// Circuit index for `G1` (0..21) and `G2` (0..3).
    pub circuit: Option<usize>,
    pub faults: usize,
}

impl fmt::Display for FaultSetLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.circuit {
            Some(j) => write!(f, "F^{}_{{{},{}}}", self.fault_type, self.faults, j + 1),
            None => write!(f, "F^{}_{}", self.fault_type, self.faults),
        }
    }
}

/// All distinct effects of `faults` faults from one source.
#[derive(Clone, Debug)]
pub struct FaultSet {
    pub label: FaultSetLabel,
    pub effects: Vec<Effect>,
}

/// Single faults of every type, deduplicated by effect within each type.
///
/// Types are kept apart because fault-number bookkeeping counts them
/// separately; within a type two faults with the same effect are
/// interchangeable. Faults with no effect at all are dropped.
#[derive(Clone, Debug)]
pub struct FaultCatalog {
    pub config: CircuitConfig,
    pub g1: Vec<Fault>,
    pub g2: Vec<Fault>,
    pub w: Vec<Fault>,
    pub f: Vec<Fault>,
    pub s: Vec<Fault>,
    /// Distinct single-fault effects per first-level circuit.
    pub per_level1: Vec<Vec<Fault>>,
    pub per_level2: Vec<Vec<Fault>>,
}

fn circuit_faults(c: &ExtractionCircuit, fault_type: FaultType) -> Vec<Fault> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for location in c.fault_locations() {
        let p = c.propagate(location).expect("enumerated location");
        let effect = Effect {
            data: p.data,
            flags: match (p.flag, c.flag_bit()) {
                (true, Some(bit)) => 1 << bit,
                _ => 0,
            },
        };
        if effect.is_trivial() || !seen.insert(effect) {
            continue;
        }
        out.push(Fault {
            fault_type,
            origin: FaultOrigin::Circuit {
                circuit: c.id(),
                location,
            },
            effect,
            syndrome_flip: None,
        });
    }
    out
}

fn dedup(faults: impl IntoIterator<Item = Fault>) -> Vec<Fault> {
    let mut seen = HashSet::new();
    faults
        .into_iter()
        .filter(|f| seen.insert(f.effect))
        .collect()
}

impl FaultCatalog {
    pub fn build(family: &CircuitFamily) -> Self {
        let per_level1: Vec<Vec<Fault>> = family
            .level1
            .iter()
            .map(|c| circuit_faults(c, FaultType::G1))
            .collect();
        let per_level2: Vec<Vec<Fault>> = family
            .level2
            .iter()
            .map(|c| circuit_faults(c, FaultType::G2))
            .collect();
        let w = (0..CONCAT_LEN)
            .map(|q| Fault {
                fault_type: FaultType::W,
                origin: FaultOrigin::Wait { qubit: q },
                effect: Effect {
                    data: 1 << q,
                    flags: 0,
                },
                syndrome_flip: None,
            })
            .collect();
        let f = if family.config.flags {
            (0..LEVEL1_CIRCUITS)
                .map(|bit| Fault {
                    fault_type: FaultType::F,
                    origin: FaultOrigin::FlagFlip { bit },
                    effect: Effect {
                        data: 0,
                        flags: 1 << bit,
                    },
                    syndrome_flip: None,
                })
                .collect()
        } else {
            Vec::new()
        };
        let s = (0..LEVEL1_CIRCUITS + LEVEL2_CIRCUITS)
            .map(|bit| Fault {
                fault_type: FaultType::S,
                origin: FaultOrigin::SyndromeFlip { bit },
                effect: Effect::default(),
                syndrome_flip: Some(bit),
            })
            .collect();
        FaultCatalog {
            config: family.config,
            g1: dedup(per_level1.iter().flatten().copied()),
            g2: dedup(per_level2.iter().flatten().copied()),
            w,
            f,
            s,
            per_level1,
            per_level2,
        }
    }

    pub fn of_type(&self, t: FaultType) -> &[Fault] {
        match t {
            FaultType::W => &self.w,
            FaultType::G1 => &self.g1,
            FaultType::G2 => &self.g2,
            FaultType::F => &self.f,
            FaultType::S => &self.s,
        }
    }

    /// Distinct effects of `label.faults` faults drawn (with repetition)
    /// from the named source. `F_0` holds only the empty fault.
    pub fn fault_set(&self, label: FaultSetLabel) -> FaultSet {
        let singles: Vec<Effect> = match (label.fault_type, label.circuit) {
            (FaultType::G1, Some(j)) => self.per_level1[j].iter().map(|f| f.effect).collect(),
            (FaultType::G2, Some(j)) => self.per_level2[j].iter().map(|f| f.effect).collect(),
            (t, _) => self.of_type(t).iter().map(|f| f.effect).collect(),
        };
        let mut current: HashSet<Effect> = HashSet::from([Effect::default()]);
        let mut layer: Vec<(Effect, usize)> = vec![(Effect::default(), 0)];
        for _ in 0..label.faults {
            let mut next = Vec::new();
            for &(e, start) in &layer {
                for (i, s) in singles.iter().enumerate().skip(start) {
                    next.push((e.combine(*s), i));
                }
            }
            current = next.iter().map(|(e, _)| *e).collect();
            layer = next;
        }
        let mut effects: Vec<Effect> = current.into_iter().collect();
        effects.sort_unstable();
        FaultSet { label, effects }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn block(i: usize) -> BlockIndex {
        BlockIndex::new(i).unwrap()
    }

    #[test]
    fn permuted_level2_order() {
        let c = ExtractionCircuit::level2(0, CnotOrdering::Permuted).unwrap();
        let order = c.cnot_order();
        assert_eq!(order.len(), 28);
        // support blocks 1,3,4,5 visited round-robin
        assert_eq!(&order[..5], &[0, 14, 21, 28, 1]);
        assert_eq!(c.ancilla_count(), 1);
        assert!(c.flag_cnot_positions().is_none());
        let mut sorted = order.clone();
        sorted.sort_unstable();
        assert_eq!(PauliOp::z_on(49, &sorted), *c.target());
    }

    #[test]
    fn level1_layout() {
        let c = ExtractionCircuit::level1(block(0), 0, true).unwrap();
        assert_eq!(c.cnot_order(), vec![0, 2, 3, 4]);
        assert_eq!(c.flag_cnot_positions(), Some((1, 4)));
        assert_eq!(c.ancilla_count(), 2);
        assert_eq!(c.flag_bit(), Some(0));
        let c = ExtractionCircuit::level1(block(4), 2, true).unwrap();
        assert_eq!(c.flag_bit(), Some(14));
        assert_eq!(c.describe(), "g15: 31 F 33 34 F 35");
    }

    #[test]
    fn normal_order_ancilla_fault_gives_consecutive_form() {
        let c = ExtractionCircuit::level2(0, CnotOrdering::Normal).unwrap();
        // support blocks 1,3,4,5; an ancilla Z after the 21st CNOT covers block 5
        let p = c
            .propagate(FaultLocation::Gate {
                step: 20,
                pauli: GatePauli::IZ,
            })
            .unwrap();
        assert_eq!(p.data, crate::codes::blocks_to_qubits(0b1_0000));
        let p = c
            .propagate(FaultLocation::Gate {
                step: 19,
                pauli: GatePauli::ZZ,
            })
            .unwrap();
        assert_eq!(
            p.data,
            0b11 << 26 | crate::codes::blocks_to_qubits(0b1_0000)
        );
    }

    #[test]
    fn simple_propagation_cases() {
        let c = ExtractionCircuit::level2(0, CnotOrdering::Permuted).unwrap();
        let last = c.steps().len() - 1;
        let p = c
            .propagate(FaultLocation::Gate {
                step: last,
                pauli: GatePauli::ZI,
            })
            .unwrap();
        assert_eq!(p.data.count_ones(), 1);
        assert!(!p.flag);
        let p = c.propagate(FaultLocation::AncillaMeasure).unwrap();
        assert_eq!(
            p,
            Propagated {
                data: 0,
                flag: false,
                syndrome_flip: true
            }
        );
        assert!(c.propagate(FaultLocation::FlagPrep).is_err());
        assert!(c
            .propagate(FaultLocation::Gate {
                step: 99,
                pauli: GatePauli::ZI
            })
            .is_err());
    }

    #[test]
    fn flag_catches_weight_two_errors() {
        let c = ExtractionCircuit::level1(block(0), 0, true).unwrap();
        for loc in c.fault_locations() {
            let p = c.propagate(loc).unwrap();
            let reduced = crate::codes::STEANE_COSET_MIN[(p.data & 0x7f) as usize];
            if reduced.count_ones() >= 2 {
                assert!(p.flag, "{loc} leaves {} unflagged", p.data);
            }
        }
    }

    #[test]
    fn fault_sets() {
        let fam = CircuitFamily::new(CircuitConfig::PROTOCOL);
        let cat = FaultCatalog::build(&fam);
        let empty = cat.fault_set(FaultSetLabel {
            fault_type: FaultType::G2,
            circuit: Some(0),
            faults: 0,
        });
        assert_eq!(empty.effects, vec![Effect::default()]);
        let w1 = cat.fault_set(FaultSetLabel {
            fault_type: FaultType::W,
            circuit: None,
            faults: 1,
        });
        assert_eq!(w1.effects.len(), 49);
        assert_eq!(cat.f.len(), 21);
        assert!(cat.g1.iter().all(|f| f.fault_type == FaultType::G1));
        let two = cat.fault_set(FaultSetLabel {
            fault_type: FaultType::G1,
            circuit: Some(3),
            faults: 2,
        });
        assert!(two.effects.contains(&Effect::default()));
    }

    #[test]
    fn location_text_round_trip() {
        let c = ExtractionCircuit::level1(block(2), 1, true).unwrap();
        for loc in c.fault_locations() {
            assert_eq!(loc.to_string().parse::<FaultLocation>().unwrap(), loc);
        }
    }
}
