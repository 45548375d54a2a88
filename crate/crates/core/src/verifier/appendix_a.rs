//! Lookup table of outcome records for up to `max_faults` faults that all
//! happen before a fault-free final round, and the parity-uniqueness check on it.

use std::fmt::Write as _;
use std::ops::Range;

use crate::bits::{parse_bitstring, to_bitstring};
use crate::circuit::{CircuitConfig, FaultCatalog, FaultType};
use crate::codes::z_profile;
use crate::error::ParseError;
use crate::par::Exec;
use crate::wpec::BlockParity;

use super::{pack, FaultNumberCombination, MultisetCache, PackedFaults};

const CHUNK: usize = 1 << 16;
const TABLE_HEADER: &str = "# wpec lookup table v1";

/// One distinct outcome: `s~(3) tau(7) s_x(21) f_x(21) p_x(7)` packed high
/// to low, so sorting groups records by `(s~, tau)` and then by `(s_x, f_x)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Record {
    pub key: u64,
    /// Smallest fault multiset seen with this outcome (empty when loaded
    /// from text).
    pub rep: PackedFaults,
}

impl Record {
    pub fn from_parts(s_x: u32, s_tilde: u8, tau: u8, f: u32, p: u8) -> Self {
        let key = (s_tilde as u64 & 7) << 56
            | (tau as u64 & 0x7f) << 49
            | (s_x as u64 & 0x1f_ffff) << 28
            | (f as u64 & 0x1f_ffff) << 7
            | (p as u64 & 0x7f);
        Record {
            key,
            rep: PackedFaults::default(),
        }
    }

    #[inline]
    pub(crate) fn key_of(data: u64, flags: u32) -> u64 {
        let z = z_profile(data);
        (z.s2 as u64) << 56
            | (z.tau as u64) << 49
            | (z.s1 as u64) << 28
            | (flags as u64) << 7
            | z.parity as u64
    }

    pub fn s_tilde(&self) -> u8 {
        (self.key >> 56 & 7) as u8
    }

    pub fn tau(&self) -> u8 {
        (self.key >> 49 & 0x7f) as u8
    }

    pub fn s_x(&self) -> u32 {
        (self.key >> 28 & 0x1f_ffff) as u32
    }

    pub fn f(&self) -> u32 {
        (self.key >> 7 & 0x1f_ffff) as u32
    }

    pub fn parity(&self) -> BlockParity {
        BlockParity((self.key & 0x7f) as u8)
    }

    fn partition_key(&self) -> u64 {
        self.key >> 49
    }

    fn lookup_key(&self) -> u64 {
        self.key >> 7
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Condition {
    /// Every record of the partition has an equivalent block parity.
    Condition1,
    /// Records with inequivalent parities are told apart by `(s_x, f_x)`.
    Condition2,
    /// Neither holds.
    Violation,
}

impl Condition {
    pub fn tag(&self) -> &'static str {
        match self {
            Condition::Condition1 => "condition1",
            Condition::Condition2 => "condition2",
            Condition::Violation => "violation",
        }
    }
}

/// Records sharing one `(s~_x, tau_x)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Partition {
    pub s_tilde: u8,
    pub tau: u8,
    pub range: Range<usize>,
    pub condition: Condition,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub s_tilde: u8,
    pub tau: u8,
    pub first: Record,
    pub second: Record,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TableLookup {
    Parity(BlockParity, Condition),
    /// The `(s~, tau)` partition exists but no record matches `(s_x, f_x)`.
    Unmatched,
    Missing,
}

#[derive(Clone, Debug)]
pub struct LookupTable {
    records: Vec<Record>,
    partitions: Vec<Partition>,
    violations: Vec<Violation>,
    /// `(fault numbers, distinct fault combinations enumerated)`.
    pub counts: Vec<(FaultNumberCombination, u64)>,
}

/// Enumerates every fault combination with at most `max_faults` faults of
/// types `G1`, `G2`, `W` and `F` and collects the distinct outcome records.
pub fn build_lookup_table(catalog: &FaultCatalog, max_faults: usize, exec: Exec) -> LookupTable {
    let types = [FaultType::G1, FaultType::G2, FaultType::W, FaultType::F];
    let cache = MultisetCache::new(catalog, &types, max_faults);
    let combos = FaultNumberCombination::single_round(max_faults);

    let mut counts = Vec::new();
    let mut jobs: Vec<(FaultNumberCombination, Range<usize>)> = Vec::new();
    for c in &combos {
        let n = cache.get(FaultType::G1, c.g1a as usize).len()
            * cache.get(FaultType::G2, c.g2 as usize).len()
            * cache.get(FaultType::W, c.w as usize).len()
            * cache.get(FaultType::F, c.f as usize).len();
        counts.push((*c, n as u64));
        let mut start = 0;
        while start < n {
            let end = (start + CHUNK).min(n);
            jobs.push((*c, start..end));
            start = end;
        }
    }

    let parts = exec.map(&jobs, |(c, range)| {
        let lists = [
            (FaultType::G1, cache.get(FaultType::G1, c.g1a as usize)),
            (FaultType::G2, cache.get(FaultType::G2, c.g2 as usize)),
            (FaultType::W, cache.get(FaultType::W, c.w as usize)),
            (FaultType::F, cache.get(FaultType::F, c.f as usize)),
        ];
        let mut out = Vec::with_capacity(range.len());
        for flat in range.clone() {
            let mut rest = flat;
            let mut idx = [0usize; 4];
            for k in (0..4).rev() {
                let len = lists[k].1.len();
                idx[k] = rest % len;
                rest /= len;
            }
            let mut effect = crate::circuit::Effect::default();
            let mut rep = PackedFaults::default();
            for k in 0..4 {
                let (t, list) = lists[k];
                let (e, members) = &list[idx[k]];
                effect = effect.combine(*e);
                rep = pack(rep, t, members);
            }
            out.push(Record {
                key: Record::key_of(effect.data, effect.flags),
                rep,
            });
        }
        out.sort_unstable();
        out.dedup_by_key(|r| r.key);
        out
    });

    let mut records: Vec<Record> = parts.into_iter().flatten().collect();
    records.sort_unstable();
    records.dedup_by_key(|r| r.key);
    let mut table = LookupTable::from_records(records);
    table.counts = counts;
    table
}

impl LookupTable {
    /// Builds partitions from records; sorts and deduplicates first.
    pub fn from_records(mut records: Vec<Record>) -> Self {
        records.sort_unstable();
        records.dedup_by_key(|r| r.key);
        let mut partitions = Vec::new();
        let mut violations = Vec::new();
        let mut start = 0;
        while start < records.len() {
            let pk = records[start].partition_key();
            let end = start + records[start..].partition_point(|r| r.partition_key() == pk);
            let slice = &records[start..end];
            let class = slice[0].parity().class();
            let condition = if slice.iter().all(|r| r.parity().class() == class) {
                Condition::Condition1
            } else {
                let before = violations.len();
                let mut g = 0;
                while g < slice.len() {
                    let lk = slice[g].lookup_key();
                    let ge = g + slice[g..].partition_point(|r| r.lookup_key() == lk);
                    let c0 = slice[g].parity().class();
                    if let Some(other) = slice[g..ge].iter().find(|r| r.parity().class() != c0) {
                        violations.push(Violation {
                            s_tilde: slice[g].s_tilde(),
                            tau: slice[g].tau(),
                            first: slice[g],
                            second: *other,
                        });
                    }
                    g = ge;
                }
                if violations.len() == before {
                    Condition::Condition2
                } else {
                    Condition::Violation
                }
            };
            partitions.push(Partition {
                s_tilde: slice[0].s_tilde(),
                tau: slice[0].tau(),
                range: start..end,
                condition,
            });
            start = end;
        }
        LookupTable {
            records,
            partitions,
            violations,
            counts: Vec::new(),
        }
    }

    pub fn records(&self) -> &[Record] {
        &self.records
    }

    pub fn partitions(&self) -> &[Partition] {
        &self.partitions
    }

    pub fn violations(&self) -> &[Violation] {
        &self.violations
    }

    pub fn partition(&self, s_tilde: u8, tau: u8) -> Option<&Partition> {
        let pk = (s_tilde as u64) << 7 | tau as u64;
        self.partitions
            .binary_search_by_key(&pk, |p| (p.s_tilde as u64) << 7 | p.tau as u64)
            .ok()
            .map(|i| &self.partitions[i])
    }

    /// Block parity selected by the table for an outcome, as the decoder
    /// uses it.
    pub fn lookup(&self, s_tilde: u8, tau: u8, s_x: u32, f: u32) -> TableLookup {
        let Some(part) = self.partition(s_tilde, tau) else {
            return TableLookup::Missing;
        };
        let slice = &self.records[part.range.clone()];
        if part.condition == Condition::Condition1 {
            return TableLookup::Parity(slice[0].parity(), part.condition);
        }
        let lk = Record::from_parts(s_x, s_tilde, tau, f, 0).lookup_key();
        let i = slice.partition_point(|r| r.lookup_key() < lk);
        match slice.get(i) {
            Some(r) if r.lookup_key() == lk => TableLookup::Parity(r.parity(), part.condition),
            _ => TableLookup::Unmatched,
        }
    }

    fn condition_of(&self, index: usize) -> Condition {
        let p = self.partitions.partition_point(|p| p.range.end <= index);
        self.partitions[p].condition
    }

    /// Line format `s_x s~_x tau_x f_x p_x condition`, canonical order.
    pub fn to_text(&self) -> String {
        let mut out = String::with_capacity(self.records.len() * 72 + 64);
        out.push_str(TABLE_HEADER);
        out.push('\n');
        let mut p = 0;
        for (i, r) in self.records.iter().enumerate() {
            while self.partitions[p].range.end <= i {
                p += 1;
            }
            let _ = writeln!(
                out,
                "{} {} {} {} {} {}",
                to_bitstring(r.s_x() as u64, 21),
                to_bitstring(r.s_tilde() as u64, 3),
                to_bitstring(r.tau() as u64, 7),
                to_bitstring(r.f() as u64, 21),
                to_bitstring(r.parity().0 as u64, 7),
                self.partitions[p].condition.tag()
            );
        }
        out
    }

    /// Parses [`Self::to_text`] output and checks every condition tag
    /// against the recomputed partition.
    pub fn from_text(text: &str) -> Result<Self, ParseError> {
        let mut records = Vec::new();
        let mut tags = Vec::new();
        for (n, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let err = |message: String| ParseError::Line {
                line: n + 1,
                message,
            };
            let fields: Vec<&str> = line.split_whitespace().collect();
            if fields.len() != 6 {
                return Err(err(format!("expected 6 fields, found {}", fields.len())));
            }
            let bits = |i: usize, len: usize| {
                parse_bitstring(fields[i], len).map_err(|e| err(e.to_string()))
            };
            let r = Record::from_parts(
                bits(0, 21)? as u32,
                bits(1, 3)? as u8,
                bits(2, 7)? as u8,
                bits(3, 21)? as u32,
                bits(4, 7)? as u8,
            );
            let tag = match fields[5] {
                "condition1" => Condition::Condition1,
                "condition2" => Condition::Condition2,
                "violation" => Condition::Violation,
                other => return Err(err(format!("unknown condition {other:?}"))),
            };
            records.push(r);
            tags.push((r.key, tag, n + 1));
        }
        let table = LookupTable::from_records(records);
        for (key, tag, line) in tags {
            let i = table.records.partition_point(|r| r.key < key);
            if table.condition_of(i) != tag {
                return Err(ParseError::Line {
                    line,
                    message: format!("condition tag {} does not match the records", tag.tag()),
                });
            }
        }
        Ok(table)
    }
}

#[derive(Clone, Debug)]
pub struct UniquenessReport {
    pub config: CircuitConfig,
    pub max_faults: usize,
    pub counts: Vec<(FaultNumberCombination, u64)>,
    pub records: usize,
    pub partitions: usize,
    pub condition1: usize,
    pub condition2: usize,
    pub violating_partitions: usize,
    pub violations: Vec<Violation>,
}

impl UniquenessReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    /// Plain-text report; at most `witnesses` violations are spelled out.
    pub fn to_text(&self, catalog: &FaultCatalog, witnesses: usize) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "appendix-a ordering={:?} flags={} max-faults={}",
            self.config.ordering, self.config.flags, self.max_faults
        );
        for (c, n) in &self.counts {
            let _ = writeln!(out, "combinations (vG1,vG2,vW,vF)={} {}", c.short(), n);
        }
        let total: u64 = self.counts.iter().map(|(_, n)| n).sum();
        let _ = writeln!(out, "total-combinations {total}");
        let _ = writeln!(out, "records {}", self.records);
        let _ = writeln!(out, "partitions {}", self.partitions);
        let _ = writeln!(out, "condition1 {}", self.condition1);
        let _ = writeln!(out, "condition2 {}", self.condition2);
        let _ = writeln!(out, "violating-partitions {}", self.violating_partitions);
        let _ = writeln!(out, "violations {}", self.violations.len());
        for v in self.violations.iter().take(witnesses) {
            let _ = writeln!(
                out,
                "violation s~={} tau={} s_x={} f={}: p={} [{}] vs p={} [{}]",
                to_bitstring(v.s_tilde as u64, 3),
                to_bitstring(v.tau as u64, 7),
                to_bitstring(v.first.s_x() as u64, 21),
                to_bitstring(v.first.f() as u64, 21),
                v.first.parity(),
                v.first.rep.describe(catalog),
                v.second.parity(),
                v.second.rep.describe(catalog),
            );
        }
        let _ = writeln!(
            out,
            "result {}",
            if self.passed() { "pass" } else { "fail" }
        );
        out
    }
}

/// Parity-uniqueness verdict over a built table.
pub fn verify_uniqueness(
    table: &LookupTable,
    config: CircuitConfig,
    max_faults: usize,
) -> UniquenessReport {
    let count = |c: Condition| table.partitions.iter().filter(|p| p.condition == c).count();
    UniquenessReport {
        config,
        max_faults,
        counts: table.counts.clone(),
        records: table.records.len(),
        partitions: table.partitions.len(),
        condition1: count(Condition::Condition1),
        condition2: count(Condition::Condition2),
        violating_partitions: count(Condition::Violation),
        violations: table.violations.clone(),
    }
}
