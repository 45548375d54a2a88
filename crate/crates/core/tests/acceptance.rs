//! Acceptance criteria, one line each. Runs without the libtest harness so
//! the lines always reach the output.

mod common;

use std::collections::BTreeMap;
use std::time::Instant;

use common::*;
use wpec_core::circuit::{CircuitConfig, CircuitFamily, FaultCatalog};
use wpec_core::claims::{golay_checks, steane_checks};
use wpec_core::codes::GOLAY_LEN;
use wpec_core::par::Exec;
use wpec_core::pauli::{PauliOp, BLOCK_LEN, CONCAT_LEN};
use wpec_core::protocol::{
    check_ftec_conditions, decode_bundle, ProtocolState, Schedule, TrialGenerator, ROUND_LIMIT,
};
use wpec_core::verifier::{
    build_lookup_table, reproduce_table1, run_appendix_b, verify_uniqueness,
    FaultNumberCombination, LookupTable,
};
use wpec_core::wpec::{
    build_correction_table, classify_logical, equivalent_steane, wpec_golay, wpec_steane,
    CorrectionTable, LogicalClass, WeightParity,
};
use wpec_core::Syndrome;

type Check = fn() -> Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn correction_table() -> CorrectionTable {
    build_correction_table().expect("correction table")
}

fn parallel() -> Exec {
    Exec::Parallel { workers: 0 }
}

/// The thirteen reference rows, typed in independently of the library.
const TABLE_I: [&str; 13] = [
    "PIZZZII 7 (0,0,0) (0,0,0,0,0,0,0) (1,0,1,1,1,0,0)",
    "PIZZZII 2,4,6 (1,0,0) (1,0,0,0,0,0,0) (0,0,1,1,1,0,0)",
    "PIZZZII 1,3,5 (0,0,0) (1,0,0,0,0,0,0) (1,0,1,1,1,0,0)",
    "IIPZZII 7 (1,0,0) (0,0,0,0,0,0,0) (0,0,1,1,1,0,0)",
    "IIPZZII 2,4,6 (0,0,1) (0,0,1,0,0,0,0) (0,0,0,1,1,0,0)",
    "IIPZZII 1,3,5 (1,0,0) (0,0,1,0,0,0,0) (0,0,1,1,1,0,0)",
    "IIIPZII 7 (0,0,1) (0,0,0,0,0,0,0) (0,0,0,1,1,0,0)",
    "IIIPZII 2,4,6 (1,1,1) (0,0,0,1,0,0,0) (0,0,0,0,1,0,0)",
    "IIIPZII 1,3,5 (0,0,1) (0,0,0,1,0,0,0) (0,0,0,1,1,0,0)",
    "IIIIPII 7 (1,1,1) (0,0,0,0,0,0,0) (0,0,0,0,1,0,0)",
    "IIIIPII 2,4,6 (0,0,0) (0,0,0,0,1,0,0) (0,0,0,0,0,0,0)",
    "IIIIPII 1,3,5 (1,1,1) (0,0,0,0,1,0,0) (0,0,0,0,1,0,0)",
    "IIIIIII - (0,0,0) (0,0,0,0,0,0,0) (0,0,0,0,0,0,0)",
];

fn tuple(bits: u64, len: usize) -> String {
    let parts: Vec<String> = (0..len).map(|i| (bits >> i & 1).to_string()).collect();
    format!("({})", parts.join(","))
}

/// Each reference row recomputed from its error form: `P` is Z on the last
/// `m` qubits of a block, `Z` the whole block.
fn table_i_from_forms() -> Result<(), String> {
    for line in TABLE_I {
        let f: Vec<&str> = line.split_whitespace().collect();
        let ms: Vec<usize> = if f[1] == "-" {
            vec![0]
        } else {
            f[1].split(',').map(|m| m.parse().unwrap()).collect()
        };
        for m in ms {
            let mut e = 0u64;
            for (b, c) in f[0].chars().enumerate() {
                let chunk = match c {
                    'Z' => 0x7f,
                    'P' => ((1u64 << m) - 1) << (BLOCK_LEN - m),
                    _ => 0,
                };
                e |= chunk << (b * BLOCK_LEN);
            }
            let p = profile(e);
            let got = format!(
                "{} {} {}",
                tuple(p.s2 as u64, 3),
                tuple(p.tau as u64, 7),
                tuple(p.parity as u64, 7)
            );
            let want = f[2..].join(" ");
            ensure(got == want, || {
                format!("{} m={m}: oracle gives {got}", f[0])
            })?;
        }
    }
    Ok(())
}

fn criterion1() -> Result<String, String> {
    table_i_from_forms()?;
    let (rows, text) = reproduce_table1().map_err(|e| e.to_string())?;
    let want: String = TABLE_I.iter().map(|l| format!("{l}\n")).collect();
    ensure(text == want, || format!("rows differ:\n{text}"))?;
    Ok(format!("{} rows bit-identical", rows.len()))
}

fn criterion2() -> Result<String, String> {
    let stabilizers = span(&steane_rows());
    let all: Vec<u64> = (0..128).collect();
    let centralizer: Vec<u64> = all
        .iter()
        .copied()
        .filter(|&z| steane_syndrome(z) == 0)
        .collect();
    let even = centralizer
        .iter()
        .filter(|z| z.count_ones() % 2 == 0)
        .count();
    let odd = centralizer.len() - even;
    ensure(centralizer.len() == 16 && even == 8 && odd == 8, || {
        format!("centralizer {} even {even} odd {odd}", centralizer.len())
    })?;
    for &z in &centralizer {
        let class = classify_logical(&PauliOp::z_type(BLOCK_LEN, z)).map_err(|e| e.to_string())?;
        let want = if stabilizers.contains(&z) {
            LogicalClass::LogicalI
        } else {
            LogicalClass::LogicalZ
        };
        ensure(class == want, || format!("{z:07b} classified {class:?}"))?;
        ensure(
            stabilizers.contains(&z) == (z.count_ones() % 2 == 0),
            || format!("{z:07b} breaks the parity split"),
        )?;
    }
    let mut pairs = 0;
    for &a in &all {
        for &b in &all {
            if steane_syndrome(a) != steane_syndrome(b) {
                continue;
            }
            pairs += 1;
            let same_coset = stabilizers.contains(&(a ^ b));
            let same_parity = (a ^ b).count_ones() % 2 == 0;
            let lib = equivalent_steane(
                &PauliOp::z_type(BLOCK_LEN, a),
                &PauliOp::z_type(BLOCK_LEN, b),
            )
            .map_err(|e| e.to_string())?;
            ensure(same_coset == same_parity && lib == same_coset, || {
                format!("pair {a:07b} {b:07b}")
            })?;
        }
    }
    ensure(pairs == 2048, || format!("{pairs} equal-syndrome pairs"))?;
    let lib = steane_checks(&correction_table());
    ensure(lib.iter().all(|c| c.passed()), || {
        "library steane suite failed".into()
    })?;
    Ok(format!(
        "16 centralizer (8 even, 8 odd), {pairs} equal-syndrome pairs"
    ))
}

fn criterion3() -> Result<String, String> {
    let table = correction_table();
    let steane_fail = (0..128u64)
        .filter(|&z| {
            let e = PauliOp::z_type(BLOCK_LEN, z);
            let s = Syndrome::new(steane_syndrome(z) as u64, 3);
            let c = wpec_steane(&s, WeightParity::of(&e), &table);
            let r = z ^ c.z_bits();
            !(steane_syndrome(r) == 0 && r.count_ones() % 2 == 0)
        })
        .count();
    ensure(steane_fail == 0, || {
        format!("{steane_fail} Steane failures")
    })?;

    let rows = golay_rows();
    let highs: Vec<u64> = (0..1u64 << 11).collect();
    let fails: u64 = parallel()
        .map(&highs, |&hi| {
            let mut n = 0;
            for lo in 0..1u64 << 12 {
                let z = hi << 12 | lo;
                let e = PauliOp::z_type(GOLAY_LEN, z);
                let c = wpec_golay(&table.golay_syndrome(&e), WeightParity::of(&e), &table);
                let r = z ^ c.z_bits();
                // centralizer elements of even weight are stabilizers
                if golay_syndrome(&rows, r) != 0 || r.count_ones() % 2 == 1 {
                    n += 1;
                }
            }
            n
        })
        .iter()
        .sum();
    ensure(fails == 0, || format!("{fails} Golay failures"))?;
    Ok("128 Steane and 8388608 Golay Z errors corrected into the stabilizer group".into())
}

fn criterion4() -> Result<String, String> {
    let stabilizers = span(&golay_rows());
    let mut distinct = stabilizers.clone();
    distinct.sort_unstable();
    distinct.dedup();
    ensure(distinct.len() == 2048, || {
        format!("{} distinct stabilizers", distinct.len())
    })?;
    let all = (1u64 << GOLAY_LEN) - 1;
    let odd_stab = stabilizers
        .iter()
        .filter(|s| s.count_ones() % 2 == 1)
        .count();
    let even_logical = stabilizers
        .iter()
        .filter(|s| (*s ^ all).count_ones() % 2 == 0)
        .count();
    ensure(odd_stab == 0 && even_logical == 0, || {
        format!("{odd_stab} odd stabilizers, {even_logical} even logicals")
    })?;
    let lib = golay_checks(&correction_table(), parallel());
    ensure(
        lib.iter()
            .find(|c| c.name == "golay-parity")
            .is_some_and(|c| c.passed()),
        || "library parity check failed".into(),
    )?;
    Ok("2048 stabilizers even, 2048 logical-Z coset elements odd".into())
}

/// Recomputes every record from its fault representative and re-derives
/// the uniqueness verdict from the records alone.
fn audit_table(catalog: &FaultCatalog, table: &LookupTable) -> Result<usize, String> {
    for r in table.records() {
        let eff = r
            .rep
            .effect(catalog)
            .ok_or("record without representative")?;
        let p = profile(eff.data);
        ensure(
            p.s1 == r.s_x()
                && p.s2 == r.s_tilde()
                && p.tau == r.tau()
                && p.parity == r.parity().0
                && eff.flags == r.f(),
            || {
                format!(
                    "record {:x} disagrees with [{}]",
                    r.key,
                    r.rep.describe(catalog)
                )
            },
        )?;
    }
    let mut groups: BTreeMap<(u8, u8), BTreeMap<(u32, u32), Vec<u8>>> = BTreeMap::new();
    for r in table.records() {
        groups
            .entry((r.s_tilde(), r.tau()))
            .or_default()
            .entry((r.s_x(), r.f()))
            .or_default()
            .push(r.parity().0);
    }
    let mut violations = 0;
    for sub in groups.values() {
        let first = sub.values().next().unwrap()[0];
        if sub.values().flatten().all(|&p| parity_equivalent(p, first)) {
            continue;
        }
        for ps in sub.values() {
            if ps.iter().any(|&p| !parity_equivalent(p, ps[0])) {
                violations += 1;
            }
        }
    }
    ensure(groups.len() == table.partitions().len(), || {
        "partition count differs".into()
    })?;
    ensure(violations == table.violations().len(), || {
        format!(
            "oracle finds {violations} violations, library {}",
            table.violations().len()
        )
    })?;
    Ok(violations)
}

fn criterion5() -> Result<String, String> {
    let catalog = FaultCatalog::build(&CircuitFamily::new(CircuitConfig::PROTOCOL));
    let mut detail = Vec::new();
    for max in [2, 3] {
        let table = build_lookup_table(&catalog, max, parallel());
        let violations = audit_table(&catalog, &table)?;
        let report = verify_uniqueness(&table, CircuitConfig::PROTOCOL, max);
        ensure(violations == 0 && report.passed(), || {
            format!("{violations} violations at {max} faults")
        })?;
        detail.push(format!(
            "max {max}: {} records, {} partitions, 0 violations",
            report.records, report.partitions
        ));
    }
    Ok(detail.join("; "))
}

fn criterion6() -> Result<String, String> {
    let catalog = FaultCatalog::build(&CircuitFamily::new(CircuitConfig::PROTOCOL));
    for max in [1, 2] {
        let r = run_appendix_b(&catalog, max, parallel());
        ensure(r.harmful() == 0 && r.marked.is_empty(), || {
            format!(
                "max {max}: {} marked, {} harmful",
                r.marked.len(),
                r.harmful()
            )
        })?;
    }
    let r = run_appendix_b(&catalog, 3, parallel());
    ensure(r.marked.len() == 6, || format!("{} marked", r.marked.len()))?;
    let expected = FaultNumberCombination {
        g2: 1,
        w: 2,
        ..Default::default()
    };
    for (m, post) in &r.marked {
        ensure(m.counts == expected, || {
            format!("marked {}", m.counts.long())
        })?;
        ensure(m.flags_a == 0 && m.flags_b == 0, || {
            "marked combination raised a flag".into()
        })?;
        let e = m.e_a ^ m.e_b;
        let reduced = brute_min_rep(e);
        let chunks: Vec<u64> = (0..7)
            .map(|b| reduced >> (7 * b) & 0x7f)
            .filter(|&c| c != 0)
            .collect();
        ensure(
            chunks.len() == 2 && chunks.iter().all(|&c| c == 1 || c == 1 << 6),
            || format!("pattern {}", m.block_pattern()),
        )?;
        // every wait-fault placement, redone from scratch: both faults
        // before or after the final measurements, on any qubit
        let mut worst = 0;
        let mut consistent = 0;
        for i in 0..2 * CONCAT_LEN {
            for j in i..2 * CONCAT_LEN {
                let (mut before, mut after) = (0u64, 0u64);
                for k in [i, j] {
                    if k < CONCAT_LEN {
                        before ^= 1 << k;
                    } else {
                        after ^= 1 << (k - CONCAT_LEN);
                    }
                }
                if profile(m.e_a ^ before).s1 != 0 {
                    continue;
                }
                consistent += 1;
                worst = worst.max(brute_min_weight(e ^ before ^ after));
            }
        }
        ensure(
            consistent == post.consistent && worst <= 3 && !post.harmful,
            || format!("oracle: {consistent} consistent placements, worst weight {worst}"),
        )?;
    }
    Ok("6 marked, all (vG1a,vG1b,vG2,vW,vF,vS)=(0,0,1,2,0,0), 0 harmful; 0 marked at 1 and 2 faults".into())
}

fn criterion7() -> Result<String, String> {
    let catalog = FaultCatalog::build(&CircuitFamily::new(CircuitConfig::UNPROTECTED));
    let table = build_lookup_table(&catalog, 3, parallel());
    ensure(!table.violations().is_empty(), || "no violations".into())?;
    let v = &table.violations()[0];
    let a = v
        .first
        .rep
        .effect(&catalog)
        .ok_or("missing representative")?;
    let b = v
        .second
        .rep
        .effect(&catalog)
        .ok_or("missing representative")?;
    let (pa, pb) = (profile(a.data), profile(b.data));
    ensure(
        pa.s1 == pb.s1 && pa.s2 == pb.s2 && pa.tau == pb.tau && a.flags == b.flags,
        || "witness outcomes differ".into(),
    )?;
    ensure(!parity_equivalent(pa.parity, pb.parity), || {
        "witness parities agree".into()
    })?;
    Ok(format!(
        "{} violations; witness [{}] vs [{}]",
        table.violations().len(),
        v.first.rep.describe(&catalog),
        v.second.rep.describe(&catalog)
    ))
}

fn criterion8() -> Result<String, String> {
    let family = CircuitFamily::new(CircuitConfig::PROTOCOL);
    let catalog = FaultCatalog::build(&family);
    let table = build_lookup_table(&catalog, 3, parallel());
    let ct = correction_table();

    let mut inputs = vec![0u64];
    for a in 0..CONCAT_LEN {
        inputs.push(1 << a);
        for b in a + 1..CONCAT_LEN {
            inputs.push(1 << a | 1 << b);
            for c in b + 1..CONCAT_LEN {
                inputs.push(1 << a | 1 << b | 1 << c);
            }
        }
    }
    let results = parallel().map(&inputs, |&z| {
        let mut state = ProtocolState::new(&family, z, 0, Schedule::default());
        let (bundle, rounds) = state.run_until_stable().map_err(|e| e.to_string())?;
        let d = decode_bundle(&bundle, &table, &ct);
        let ok = is_concat_stabilizer(state.data[0] ^ d.z.correction)
            && state.data[1] ^ d.x.correction == 0;
        Ok::<_, String>((ok, rounds))
    });
    let mut max_rounds = 0;
    for (z, r) in inputs.iter().zip(results) {
        let (ok, rounds) = r?;
        ensure(ok, || format!("input {z:049b} not corrected"))?;
        max_rounds = max_rounds.max(rounds);
    }

    let mut generator = TrialGenerator::new(2026, &family, 3);
    let trials: Vec<_> = (0..10_000).map(|_| generator.next_trial()).collect();
    let report = check_ftec_conditions(&family, &table, &ct, &trials, 3, parallel());
    ensure(report.passed(), || report.to_text())?;
    ensure(
        report.max_rounds <= ROUND_LIMIT && max_rounds <= ROUND_LIMIT,
        || format!("{} rounds", report.max_rounds.max(max_rounds)),
    )?;
    Ok(format!(
        "{} inputs of weight <= 3 corrected; 10000 sampled schedules pass both conditions \
         ({} condition-1 checks, {} fallbacks); max {} rounds",
        inputs.len(),
        report.condition1_checked,
        report.fallbacks,
        report.max_rounds.max(max_rounds)
    ))
}

fn criterion9() -> Result<String, String> {
    let catalog = FaultCatalog::build(&CircuitFamily::new(CircuitConfig::PROTOCOL));
    let a = reproduce_table1().map_err(|e| e.to_string())?.1;
    let b = reproduce_table1().map_err(|e| e.to_string())?.1;
    ensure(a == b, || "table I output differs between runs".into())?;
    let runs: Vec<(String, String, String)> = [Exec::Sequential, Exec::Parallel { workers: 4 }]
        .into_iter()
        .map(|exec| {
            let table = build_lookup_table(&catalog, 3, exec);
            let report =
                verify_uniqueness(&table, CircuitConfig::PROTOCOL, 3).to_text(&catalog, 20);
            let b = run_appendix_b(&catalog, 3, exec).to_text(&catalog);
            (table.to_text(), report, b)
        })
        .collect();
    ensure(runs[0].0 == runs[1].0, || "lookup table differs".into())?;
    ensure(runs[0].1 == runs[1].1, || {
        "lookup-table report differs".into()
    })?;
    ensure(runs[0].2 == runs[1].2, || {
        "relaxed-scan report differs".into()
    })?;
    Ok(format!(
        "1 and 4 workers: table I, {}-byte lookup table and both verifier reports identical",
        runs[0].0.len()
    ))
}

fn main() {
    let criteria: [(&str, Check, Option<f64>); 9] = [
        ("table-i-reproduction", criterion1, Some(1.0)),
        ("steane-centralizer-and-equivalence", criterion2, Some(1.0)),
        ("wpec-soundness", criterion3, Some(300.0)),
        ("golay-parity-structure", criterion4, Some(1.0)),
        ("appendix-a-parity-uniqueness", criterion5, None),
        ("appendix-b-marking", criterion6, None),
        ("negative-control", criterion7, None),
        ("protocol-ftec-properties", criterion8, None),
        ("determinism-across-workers", criterion9, None),
    ];
    let mut failed = 0;
    for (i, (name, check, limit)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let mut result = check();
        let secs = start.elapsed().as_secs_f64();
        if let (Ok(_), Some(limit)) = (&result, limit) {
            if secs > limit {
                result = Err(format!("took {secs:.2} s, limit {limit} s"));
            }
        }
        match result {
            Ok(detail) => println!("criterion {} {name}: PASS ({detail}; {secs:.2} s)", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {} {name}: FAIL ({detail}; {secs:.2} s)", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} of {} criteria pass",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
