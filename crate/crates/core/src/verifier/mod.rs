//! Exhaustive fault-combination checks for the concatenated-code protocol.
//!
//! Fault effects compose by XOR, so a combination of faults drawn from the
//! same source is a multiset of that source's distinct single effects. Every
//! enumeration here works on such multisets and keeps, for each distinct
//! outcome, the lexicographically smallest fault multiset that produced it.

mod appendix_a;
mod appendix_b;
mod table1;

pub use appendix_a::{
    build_lookup_table, verify_uniqueness, Condition, LookupTable, Partition, Record, TableLookup,
    UniquenessReport, Violation,
};
pub use appendix_b::{run_appendix_b, sigma, AppendixBReport, MarkedCombination, PostAnalysis};
pub use table1::{reproduce_table1, Table1Row, TABLE1_GOLDEN};

use std::collections::HashMap;
use std::fmt;

use crate::circuit::{Effect, FaultCatalog, FaultType};

/// Numbers of faults of each type in a combination.
///
/// Single-round checks use `g1a` as the plain `G1` count and leave `g1b`
/// and `s` at zero.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FaultNumberCombination {
    pub g1a: u8,
    pub g1b: u8,
    pub g2: u8,
    pub w: u8,
    pub f: u8,
    pub s: u8,
}

impl FaultNumberCombination {
    pub fn total(&self) -> usize {
        (self.g1a + self.g1b + self.g2 + self.w + self.f + self.s) as usize
    }

    /// All `(vG1, vG2, vW, vF)` with sum at most `max_faults`.
    pub fn single_round(max_faults: usize) -> Vec<Self> {
        let m = max_faults as u8;
        let mut out = Vec::new();
        for g1a in 0..=m {
            for g2 in 0..=m - g1a {
                for w in 0..=m - g1a - g2 {
                    for f in 0..=m - g1a - g2 - w {
                        out.push(FaultNumberCombination {
                            g1a,
                            g2,
                            w,
                            f,
                            ..Default::default()
                        });
                    }
                }
            }
        }
        out
    }

    /// All `(vG1a, vG1b, vG2, vW, vF, vS)` with sum at most `max_faults`.
    pub fn split_round(max_faults: usize) -> Vec<Self> {
        let m = max_faults as u8;
        let mut out = Vec::new();
        for g1a in 0..=m {
            for g1b in 0..=m - g1a {
                for g2 in 0..=m - g1a - g1b {
                    let used = g1a + g1b + g2;
                    for w in 0..=m - used {
                        for f in 0..=m - used - w {
                            for s in 0..=m - used - w - f {
                                out.push(FaultNumberCombination {
                                    g1a,
                                    g1b,
                                    g2,
                                    w,
                                    f,
                                    s,
                                });
                            }
                        }
                    }
                }
            }
        }
        out
    }

    pub fn short(&self) -> String {
        format!("({},{},{},{})", self.g1a, self.g2, self.w, self.f)
    }

    pub fn long(&self) -> String {
        format!(
            "({},{},{},{},{},{})",
            self.g1a, self.g1b, self.g2, self.w, self.f, self.s
        )
    }
}

impl fmt::Display for FaultNumberCombination {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.long())
    }
}

const TYPE_CODES: [FaultType; 5] = [
    FaultType::G1,
    FaultType::G2,
    FaultType::W,
    FaultType::F,
    FaultType::S,
];

fn type_code(t: FaultType) -> u64 {
    TYPE_CODES.iter().position(|&c| c == t).unwrap_or(0) as u64
}

/// Up to four fault references packed 13 bits each, in canonical order.
/// Zero is the empty combination; smaller means fewer or earlier faults.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PackedFaults(pub u64);

impl PackedFaults {
    const SLOT: u32 = 13;

    pub fn push(self, t: FaultType, index: usize) -> Self {
        debug_assert!(index < 1024);
        let code = 1 + (type_code(t) << 10 | index as u64);
        PackedFaults(self.0 << Self::SLOT | code)
    }

    pub fn len(&self) -> usize {
        self.iter().count()
    }

    pub fn is_empty(&self) -> bool {
        self.0 == 0
    }

    /// Faults in the order they were pushed.
    pub fn iter(&self) -> impl Iterator<Item = (FaultType, usize)> {
        let mut codes = Vec::new();
        let mut v = self.0;
        while v != 0 {
            codes.push((v & ((1 << Self::SLOT) - 1)) - 1);
            v >>= Self::SLOT;
        }
        codes
            .into_iter()
            .rev()
            .map(|c| (TYPE_CODES[(c >> 10) as usize], (c & 1023) as usize))
    }

    pub fn describe(&self, catalog: &FaultCatalog) -> String {
        if self.is_empty() {
            return "none".into();
        }
        self.iter()
            .map(|(t, i)| match catalog.of_type(t).get(i) {
                Some(f) => format!("{t} {}", f.origin),
                None => format!("{t} #{i}"),
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }

    /// Combined effect, or `None` if an index is out of range.
    pub fn effect(&self, catalog: &FaultCatalog) -> Option<Effect> {
        self.iter().try_fold(Effect::default(), |acc, (t, i)| {
            catalog.of_type(t).get(i).map(|f| acc.combine(f.effect))
        })
    }
}

/// Distinct effects of `k` singles drawn with repetition, each paired with
/// the smallest index multiset reaching it, in order of first appearance.
pub(crate) fn multisets(singles: &[Effect], k: usize) -> Vec<(Effect, [u16; 3])> {
    let mut seen: HashMap<Effect, ()> = HashMap::new();
    let mut out = Vec::new();
    let mut keep = |e: Effect, idx: [u16; 3]| {
        if seen.insert(e, ()).is_none() {
            out.push((e, idx));
        }
    };
    const NONE: u16 = u16::MAX;
    let n = singles.len();
    match k {
        0 => keep(Effect::default(), [NONE; 3]),
        1 => {
            for i in 0..n {
                keep(singles[i], [i as u16, NONE, NONE]);
            }
        }
        2 => {
            for i in 0..n {
                for j in i..n {
                    keep(singles[i].combine(singles[j]), [i as u16, j as u16, NONE]);
                }
            }
        }
        3 => {
            for i in 0..n {
                for j in i..n {
                    let ij = singles[i].combine(singles[j]);
                    for l in j..n {
                        keep(ij.combine(singles[l]), [i as u16, j as u16, l as u16]);
                    }
                }
            }
        }
        _ => panic!("at most 3 faults per source"),
    }
    out
}

pub(crate) fn pack(mut acc: PackedFaults, t: FaultType, idx: &[u16; 3]) -> PackedFaults {
    for &i in idx.iter().take_while(|&&i| i != u16::MAX) {
        acc = acc.push(t, i as usize);
    }
    acc
}

/// Per-type lists of distinct multisets of size `0..=max_faults`.
pub(crate) struct MultisetCache {
    lists: HashMap<(FaultType, usize), Vec<(Effect, [u16; 3])>>,
}

impl MultisetCache {
    pub(crate) fn new(catalog: &FaultCatalog, types: &[FaultType], max_faults: usize) -> Self {
        let mut lists = HashMap::new();
        for &t in types {
            let singles: Vec<Effect> = catalog.of_type(t).iter().map(|f| f.effect).collect();
            for k in 0..=max_faults {
                lists.insert((t, k), multisets(&singles, k));
            }
        }
        MultisetCache { lists }
    }

    pub(crate) fn get(&self, t: FaultType, k: usize) -> &[(Effect, [u16; 3])] {
        &self.lists[&(t, k)]
    }
}
