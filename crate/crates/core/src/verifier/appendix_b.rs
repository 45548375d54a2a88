//! Relaxed-condition scan for faults after the last correct round, and the
//! exact follow-up check of every combination it marks.
//!
//! `G1` and `G2` faults are enumerated explicitly. Faults labelled `a`
//! (first-level faults before the final `g^x` measurements, and all
//! second-level faults) feed the syndrome; faults labelled `b` (first-level
//! faults during or after them) only add to the final error. Wait, flag and
//! syndrome faults enter through their counts alone.

use std::fmt::Write as _;
use std::ops::Range;

use crate::circuit::{FaultCatalog, FaultType};
use crate::codes::{concat_min_weight, concat_min_weight_rep, z_profile};
use crate::par::Exec;
use crate::pauli::{PauliOp, BLOCKS, BLOCK_LEN, CONCAT_LEN};

use super::{pack, FaultNumberCombination, MultisetCache, PackedFaults};

const CHUNK: usize = 1 << 15;

/// Sum of the `7 - v_w` smallest per-block Hamming weights of the
/// first-level syndrome of `e_a`.
pub fn sigma(e_a: u64, v_w: usize) -> u32 {
    let s1 = z_profile(e_a).s1;
    let mut w: [u32; BLOCKS] = std::array::from_fn(|b| (s1 >> (3 * b) & 7).count_ones());
    w.sort_unstable();
    w[..BLOCKS.saturating_sub(v_w)].iter().sum()
}

#[inline]
fn sigma_from_weights(sorted: &[u32; BLOCKS], v_w: usize) -> u32 {
    sorted[..BLOCKS.saturating_sub(v_w)].iter().sum()
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct MarkedCombination {
    pub counts: FaultNumberCombination,
    pub e_a: u64,
    pub e_b: u64,
    /// Flags raised by the `a` and `b` faults (`f_x` and `f_z` halves).
    pub flags_a: u32,
    pub flags_b: u32,
    pub rep_a: PackedFaults,
    pub rep_b: PackedFaults,
}

impl MarkedCombination {
    fn flag_weight(&self) -> u32 {
        self.flags_a.count_ones() + self.flags_b.count_ones()
    }

    /// Lowest-weight stabilizer-equivalent form of `E_a E_b`.
    pub fn reduced_error(&self) -> u64 {
        concat_min_weight_rep(self.e_a ^ self.e_b)
    }

    /// Nontrivial blocks of the reduced error, e.g. `1:ZIIIIII 3:ZIIIIII`.
    pub fn block_pattern(&self) -> String {
        let e = PauliOp::z_type(CONCAT_LEN, self.reduced_error());
        (0..BLOCKS)
            .filter_map(|b| {
                let chunk = e.z_bits() >> (b * BLOCK_LEN) & 0x7f;
                (chunk != 0).then(|| format!("{}:{}", b + 1, PauliOp::z_type(BLOCK_LEN, chunk)))
            })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

/// Outcome of placing the wait faults of a marked combination explicitly.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PostAnalysis {
    /// Placements (qubit and before/after the final `g^x` measurements)
    /// examined.
    pub placements: u64,
    /// Placements whose final first-level syndrome can be hidden by the
    /// syndrome-fault budget.
    pub consistent: u64,
    /// Largest stabilizer-reduced weight over consistent placements.
    pub max_weight: Option<u32>,
    pub harmful: bool,
}

/// Places each of the `v_W` wait faults on every qubit, before or after the
/// final `g^x` measurements, and asks whether any placement both reproduces
/// a trivial outcome bundle and leaves an error heavier than `max_faults`.
pub fn post_analyze(m: &MarkedCombination, max_faults: usize) -> PostAnalysis {
    let v_w = m.counts.w as usize;
    let v_s = m.counts.s as u32;
    let options = 2 * CONCAT_LEN;
    let mut result = PostAnalysis {
        placements: 0,
        consistent: 0,
        max_weight: None,
        harmful: false,
    };
    let flags_ok = m.flag_weight() <= m.counts.f as u32;
    let mut idx = vec![0usize; v_w];
    loop {
        let (mut before, mut after) = (0u64, 0u64);
        for &i in &idx {
            if i < CONCAT_LEN {
                before ^= 1 << i;
            } else {
                after ^= 1 << (i - CONCAT_LEN);
            }
        }
        result.placements += 1;
        let s1 = z_profile(m.e_a ^ before).s1;
        if flags_ok && s1.count_ones() <= v_s {
            result.consistent += 1;
            let w = concat_min_weight(m.e_a ^ m.e_b ^ before ^ after);
            result.max_weight = Some(result.max_weight.map_or(w, |x| x.max(w)));
            if w as usize > max_faults {
                result.harmful = true;
            }
        }
        // next multiset (non-decreasing indices)
        let mut k = v_w;
        loop {
            if k == 0 {
                return result;
            }
            k -= 1;
            if idx[k] + 1 < options {
                idx[k] += 1;
                let v = idx[k];
                for j in &mut idx[k + 1..] {
                    *j = v;
                }
                break;
            }
        }
    }
}

#[derive(Clone, Debug)]
pub struct AppendixBReport {
    pub max_faults: usize,
    /// `(fault numbers, combinations evaluated, marked)`.
    pub counts: Vec<(FaultNumberCombination, u64, u64)>,
    pub marked: Vec<(MarkedCombination, PostAnalysis)>,
}

impl AppendixBReport {
    pub fn harmful(&self) -> usize {
        self.marked.iter().filter(|(_, p)| p.harmful).count()
    }

    pub fn passed(&self) -> bool {
        self.harmful() == 0
    }

    pub fn to_text(&self, catalog: &FaultCatalog) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "appendix-b max-faults={}", self.max_faults);
        for (c, n, k) in &self.counts {
            let _ = writeln!(
                out,
                "evaluated (vG1a,vG1b,vG2,vW,vF,vS)={} {} marked {}",
                c.long(),
                n,
                k
            );
        }
        for (m, p) in &self.marked {
            let _ = writeln!(
                out,
                "marked {} a=[{}] b=[{}] pattern {} placements {} consistent {} max-weight {} {}",
                m.counts.long(),
                m.rep_a.describe(catalog),
                m.rep_b.describe(catalog),
                m.block_pattern(),
                p.placements,
                p.consistent,
                p.max_weight.map_or("-".to_string(), |w| w.to_string()),
                if p.harmful { "harmful" } else { "harmless" }
            );
        }
        let _ = writeln!(
            out,
            "summary {} marked, {} harmful",
            self.marked.len(),
            self.harmful()
        );
        let _ = writeln!(
            out,
            "result {}",
            if self.passed() { "pass" } else { "fail" }
        );
        out
    }
}

struct Job {
    g1a: usize,
    g1b: usize,
    g2: usize,
    range: Range<usize>,
}

/// Scans all fault number combinations with at most `max_faults` faults,
/// marks those meeting all three relaxed conditions and post-analyzes each.
pub fn run_appendix_b(catalog: &FaultCatalog, max_faults: usize, exec: Exec) -> AppendixBReport {
    let cache = MultisetCache::new(catalog, &[FaultType::G1, FaultType::G2], max_faults);
    let combos = FaultNumberCombination::split_round(max_faults);

    let mut jobs = Vec::new();
    let mut triples: Vec<(usize, usize, usize)> = combos
        .iter()
        .map(|c| (c.g1a as usize, c.g1b as usize, c.g2 as usize))
        .collect();
    triples.dedup();
    let mut sizes = std::collections::HashMap::new();
    for &(g1a, g1b, g2) in &triples {
        let n = cache.get(FaultType::G1, g1a).len()
            * cache.get(FaultType::G1, g1b).len()
            * cache.get(FaultType::G2, g2).len();
        sizes.insert((g1a, g1b, g2), n as u64);
        let mut start = 0;
        while start < n {
            let end = (start + CHUNK).min(n);
            jobs.push(Job {
                g1a,
                g1b,
                g2,
                range: start..end,
            });
            start = end;
        }
    }

    let found = exec.map(&jobs, |job| {
        let la = cache.get(FaultType::G1, job.g1a);
        let lb = cache.get(FaultType::G1, job.g1b);
        let l2 = cache.get(FaultType::G2, job.g2);
        let budget = max_faults - (job.g1a + job.g1b + job.g2);
        let mut out = Vec::new();
        for flat in job.range.clone() {
            let i2 = flat % l2.len();
            let ib = flat / l2.len() % lb.len();
            let ia = flat / l2.len() / lb.len();
            let (ea, ma) = &la[ia];
            let (eb, mb) = &lb[ib];
            let (e2, m2) = &l2[i2];
            let e_a = ea.data ^ e2.data;
            let flags_a = ea.flags ^ e2.flags;
            let h = flags_a.count_ones() + eb.flags.count_ones();
            let s1 = z_profile(e_a).s1;
            let mut w: [u32; BLOCKS] = std::array::from_fn(|b| (s1 >> (3 * b) & 7).count_ones());
            w.sort_unstable();
            let mut weight = None;
            for v_w in 0..=budget {
                for v_f in 0..=budget - v_w {
                    if h > v_f as u32 {
                        continue;
                    }
                    for v_s in 0..=budget - v_w - v_f {
                        if sigma_from_weights(&w, v_w) > v_s as u32 {
                            continue;
                        }
                        let wt = *weight.get_or_insert_with(|| concat_min_weight(e_a ^ eb.data));
                        if wt as usize + v_w <= max_faults {
                            continue;
                        }
                        let rep_a = pack(
                            pack(PackedFaults::default(), FaultType::G1, ma),
                            FaultType::G2,
                            m2,
                        );
                        out.push(MarkedCombination {
                            counts: FaultNumberCombination {
                                g1a: job.g1a as u8,
                                g1b: job.g1b as u8,
                                g2: job.g2 as u8,
                                w: v_w as u8,
                                f: v_f as u8,
                                s: v_s as u8,
                            },
                            e_a,
                            e_b: eb.data,
                            flags_a,
                            flags_b: eb.flags,
                            rep_a,
                            rep_b: pack(PackedFaults::default(), FaultType::G1, mb),
                        });
                    }
                }
            }
        }
        out
    });

    let mut marked: Vec<MarkedCombination> = found.into_iter().flatten().collect();
    marked.sort_unstable_by(|x, y| {
        (
            x.counts, x.e_a, x.e_b, x.flags_a, x.flags_b, x.rep_a, x.rep_b,
        )
            .cmp(&(
                y.counts, y.e_a, y.e_b, y.flags_a, y.flags_b, y.rep_a, y.rep_b,
            ))
    });
    marked.dedup_by(|x, y| {
        (x.counts, x.e_a, x.e_b, x.flags_a, x.flags_b)
            == (y.counts, y.e_a, y.e_b, y.flags_a, y.flags_b)
    });

    let counts = combos
        .iter()
        .map(|c| {
            let n = sizes[&(c.g1a as usize, c.g1b as usize, c.g2 as usize)];
            let k = marked.iter().filter(|m| m.counts == *c).count() as u64;
            (*c, n, k)
        })
        .collect();
    let analyses = exec.map(&marked, |m| post_analyze(m, max_faults));
    AppendixBReport {
        max_faults,
        counts,
        marked: marked.into_iter().zip(analyses).collect(),
    }
}
