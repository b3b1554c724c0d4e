//! Saturates a construction and compares the two orderings.

use c2k1::bounds::{meets_sqrt_edge_bound, sqrt_edge_threshold};
use c2k1::constructions::{gka_minimal, saturate, GkaParams, SaturationPolicy};
use c2k1::cycles::is_maximal_cycle_free;

fn main() -> c2k1::Result<()> {
    let p = GkaParams::new(2, "1/2".parse()?, 144)?;
    let (g, _) = gka_minimal(&p)?;
    for policy in [SaturationPolicy::Lexicographic, SaturationPolicy::Random { seed: 7 }] {
        let (s, trace) = saturate(&g, p.cycle_len(), policy)?;
        println!(
            "{policy:?}: +{} edges in {} passes, {} rejections, e = {}, maximal = {}",
            trace.added.len(),
            trace.passes,
            trace.rejected.len(),
            s.edge_count(),
            is_maximal_cycle_free(&s, p.cycle_len())
        );
        let t = sqrt_edge_threshold(144, p.k, p.alpha, 2);
        println!(
            "  e >= n^2/4 - 2 sqrt(k alpha) n^(3/2) = {}: {}",
            t.lower,
            meets_sqrt_edge_bound(s.edge_count() as u64, 144, p.k, p.alpha, 2)
        );
    }
    Ok(())
}
