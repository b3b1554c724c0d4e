//! Compares sampled maximal `C_5`-free graphs against `C_7` blowups of the same order.

use c2k1::oracles::{conjecture_scan, Sample, ScanStatus};

fn main() -> c2k1::Result<()> {
    let report = conjecture_scan(2, 10, &Sample::Random { samples: 40, seed: 1 })?;
    println!(
        "{} blowup size vectors ({})",
        report.blowup_classes, report.blowup_order
    );
    for r in report.records.iter().filter(|r| !r.bipartite) {
        let best = r
            .best
            .as_ref()
            .map(|b| format!("{:?} e={} d2={}", b.sizes, b.edges, b.d2));
        println!(
            "{:<12} e={:>2} d2={} {:?} best {}",
            r.id,
            r.edges,
            r.d2,
            r.status,
            best.unwrap_or_default()
        );
    }
    let flagged = report
        .records
        .iter()
        .filter(|r| r.status == ScanStatus::NotDominated)
        .count();
    println!(
        "{flagged} of {} samples not dominated; invariant failures: {:?}",
        report.records.len(),
        report.invariant_failures
    );
    Ok(())
}
