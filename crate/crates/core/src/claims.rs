//! Exhaustive checks of the weight-parity facts the decoders rely on.

use std::collections::HashSet;
use std::fmt::Write as _;

use crate::bits::low_mask;
use crate::codes::{
    concat_min_weight, concat_min_weight_rep, golay_code, golay_printed_rows, steane_code,
    z_profile, GOLAY_LEN, STEANE_STABILIZERS,
};
use crate::par::Exec;
use crate::pauli::{PauliOp, BLOCK_LEN, CONCAT_LEN};
use crate::wpec::{
    classify_logical, equivalent_steane, wpec_blocks, wpec_golay, wpec_steane, BlockParity,
    CorrectionTable, LogicalClass, WeightParity,
};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClaimCheck {
    pub name: &'static str,
    pub checked: u64,
    pub failures: u64,
    pub detail: String,
}

impl ClaimCheck {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

pub fn report_text(checks: &[ClaimCheck]) -> String {
    let mut out = String::new();
    for c in checks {
        let _ = writeln!(
            out,
            "{} checked {} failures {} {}{}",
            c.name,
            c.checked,
            c.failures,
            if c.passed() { "pass" } else { "fail" },
            if c.detail.is_empty() {
                String::new()
            } else {
                format!(" ({})", c.detail)
            }
        );
    }
    let ok = checks.iter().all(ClaimCheck::passed);
    let _ = writeln!(out, "result {}", if ok { "pass" } else { "fail" });
    out
}

fn span(rows: &[u64]) -> HashSet<u64> {
    let mut set = HashSet::from([0u64]);
    for &r in rows {
        let more: Vec<u64> = set.iter().map(|v| v ^ r).collect();
        set.extend(more);
    }
    set
}

/// Centralizer structure, the equal-syndrome equivalence criterion, and
/// decoder soundness on all 128 Z errors of the Steane code.
pub fn steane_checks(table: &CorrectionTable) -> Vec<ClaimCheck> {
    let code = steane_code();
    let all: Vec<PauliOp> = (0..128u64).map(|z| PauliOp::z_type(BLOCK_LEN, z)).collect();
    let syn = |e: &PauliOp| code.x_syndrome(e).expect("7 qubits");

    let centralizer: Vec<&PauliOp> = all.iter().filter(|e| syn(e).is_trivial()).collect();
    let mut even_i = 0;
    let mut odd_z = 0;
    let mut bad = 0;
    for e in &centralizer {
        match (classify_logical(e), e.weight() % 2, code.is_z_stabilizer(e)) {
            (Ok(LogicalClass::LogicalI), 0, true) => even_i += 1,
            (Ok(LogicalClass::LogicalZ), 1, false) => odd_z += 1,
            _ => bad += 1,
        }
    }
    let fact1 = ClaimCheck {
        name: "steane-centralizer",
        checked: 128,
        failures: bad
            + (centralizer.len() != 16) as u64
            + (even_i != 8) as u64
            + (odd_z != 8) as u64,
        detail: format!(
            "{} centralizer, {even_i} even logical-I, {odd_z} odd logical-Z",
            centralizer.len()
        ),
    };

    let mut pairs = 0;
    let mut failures = 0;
    for a in &all {
        for b in &all {
            if syn(a) != syn(b) {
                continue;
            }
            pairs += 1;
            let same_coset = code.is_z_stabilizer(&(*a * *b));
            if equivalent_steane(a, b).ok() != Some(same_coset) {
                failures += 1;
            }
        }
    }
    let claim1 = ClaimCheck {
        name: "steane-equal-syndrome-pairs",
        checked: pairs,
        failures,
        detail: String::new(),
    };

    let failures = all
        .iter()
        .filter(|e| {
            let c = wpec_steane(&syn(e), WeightParity::of(e), table);
            !code.is_z_stabilizer(&(**e * c))
        })
        .count() as u64;
    let sound = ClaimCheck {
        name: "steane-wpec",
        checked: 128,
        failures,
        detail: String::new(),
    };
    vec![fact1, claim1, sound]
}

/// Parity structure of the Golay stabilizer group and decoder soundness on
/// all `2^23` Z errors.
pub fn golay_checks(table: &CorrectionTable, exec: Exec) -> Vec<ClaimCheck> {
    let code = golay_code();
    let rows: Vec<u64> = golay_printed_rows().into_iter().map(u64::from).collect();
    let stabilizers = span(&rows);
    let all = low_mask(GOLAY_LEN);
    let odd_stab = stabilizers
        .iter()
        .filter(|s| s.count_ones() % 2 == 1)
        .count() as u64;
    let even_logical = stabilizers
        .iter()
        .filter(|s| (*s ^ all).count_ones() % 2 == 0)
        .count() as u64;
    let parity = ClaimCheck {
        name: "golay-parity",
        checked: 2 * stabilizers.len() as u64,
        failures: odd_stab + even_logical + (stabilizers.len() != 2048) as u64,
        detail: format!("{} stabilizers", stabilizers.len()),
    };

    let chunks: Vec<u32> = (0..1u32 << 11).collect();
    let per_chunk = exec.map(&chunks, |&hi| {
        let mut fails = 0u64;
        for lo in 0..1u32 << 12 {
            let e = PauliOp::z_type(GOLAY_LEN, (hi << 12 | lo) as u64);
            let s = table.golay_syndrome(&e);
            let c = wpec_golay(&s, WeightParity::of(&e), table);
            if !stabilizers.contains(&(e * c).z_bits()) {
                fails += 1;
            }
        }
        fails
    });
    let sound = ClaimCheck {
        name: "golay-wpec",
        checked: 1 << 23,
        failures: per_chunk.iter().sum(),
        detail: String::new(),
    };
    let generators_ok = code.z_gens.len() == 11 && code.z_gens.iter().all(|g| g.weight() == 8);
    let gens = ClaimCheck {
        name: "golay-generators",
        checked: 11,
        failures: (!generators_ok) as u64,
        detail: String::new(),
    };
    vec![gens, parity, sound]
}

/// Block-parity classes, the hierarchical coset search against brute force
/// on a fixed set of errors, and blockwise decoding with the true parity.
pub fn concat_checks(table: &CorrectionTable, exec: Exec) -> Vec<ClaimCheck> {
    let classes: HashSet<u8> = (0..128u8).map(|p| BlockParity(p).class()).collect();
    let class_sizes_ok = classes
        .iter()
        .all(|&c| (0..128u8).filter(|&p| BlockParity(p).class() == c).count() == 8);
    let parity_classes = ClaimCheck {
        name: "concat-parity-classes",
        checked: 128,
        failures: (classes.len() != 16 || !class_sizes_ok) as u64,
        detail: format!("{} classes", classes.len()),
    };

    let code = crate::codes::concatenated_49();
    let stab_rows: Vec<u64> = code.z_gens.iter().map(|g| g.z_bits()).collect();
    let samples: Vec<u64> = sample_errors(8);
    let brute = exec.map(&samples, |&e| {
        // Gray-code walk over all 2^24 stabilizers
        let mut v = e;
        let mut best = v.count_ones();
        for m in 1..1u32 << stab_rows.len() {
            v ^= stab_rows[m.trailing_zeros() as usize];
            best = best.min(v.count_ones());
        }
        best
    });
    let failures = samples
        .iter()
        .zip(&brute)
        .filter(|(e, b)| concat_min_weight(**e) != **b)
        .count() as u64;
    let coset = ClaimCheck {
        name: "concat-coset-search",
        checked: samples.len() as u64,
        failures,
        detail: String::new(),
    };

    let errors = sample_errors(4096);
    let failures = errors
        .iter()
        .filter(|&&e| {
            let z = z_profile(e);
            let c = wpec_blocks(table, z.s1, BlockParity(z.parity));
            concat_min_weight_rep(e ^ c) != 0
        })
        .count() as u64;
    let blocks = ClaimCheck {
        name: "concat-blockwise-wpec",
        checked: errors.len() as u64,
        failures,
        detail: String::new(),
    };
    let stab_ok = STEANE_STABILIZERS.iter().all(|&s| s.count_ones() % 2 == 0);
    let span_check = ClaimCheck {
        name: "concat-level2-span-even",
        checked: 8,
        failures: (!stab_ok) as u64,
        detail: String::new(),
    };
    vec![parity_classes, span_check, coset, blocks]
}

/// Deterministic pseudo-random 49-bit patterns of assorted weights.
fn sample_errors(n: usize) -> Vec<u64> {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(49);
    (0..n)
        .map(|i| {
            let weight = i % CONCAT_LEN;
            let mut e = 0u64;
            while (e.count_ones() as usize) < weight {
                e |= 1 << rng.random_range(0..CONCAT_LEN);
            }
            e
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::wpec::build_correction_table;

    #[test]
    fn steane_suite_passes() {
        let table = build_correction_table().unwrap();
        let checks = steane_checks(&table);
        assert!(
            checks.iter().all(ClaimCheck::passed),
            "{}",
            report_text(&checks)
        );
        assert_eq!(checks[1].checked, 128 * 16);
    }
}
