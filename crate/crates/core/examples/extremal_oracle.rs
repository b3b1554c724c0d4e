//! Exhaustive extremal numbers for small orders.

use c2k1::oracles::max_edges_cycle_free;

fn main() -> c2k1::Result<()> {
    for len in [3, 5] {
        for n in 5..=9 {
            let r = max_edges_cycle_free(n, len)?;
            println!(
                "ex({n}, C{len}) = {:>2}  ({} labelled optima, classes {:?})",
                r.max_edges, r.labelled_optima, r.witnesses
            );
        }
    }
    Ok(())
}
