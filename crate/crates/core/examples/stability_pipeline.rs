//! Runs the decomposition on a nearly complete bipartite graph and prints the bound checks.

use c2k1::constructions::{saturate, turan_bipartite, SaturationPolicy};
use c2k1::stability::decompose;

fn main() -> c2k1::Result<()> {
    let n = 60;
    let t = turan_bipartite(n);
    let removed: Vec<_> = t.edges().step_by(97).take(5).collect();
    let g = t.without_edges(removed)?;
    let (g, _) = saturate(&g, 5, SaturationPolicy::Lexicographic)?;

    let r = decompose(&g, 2)?;
    println!("outcome {:?}", r.outcome);
    println!(
        "peeled {} vertices, {} extraction steps, final {} + {}",
        r.removed, r.extraction_steps, r.final_left, r.final_right
    );
    for b in &r.bounds {
        println!(
            "  {:<48} {} {} {}: {}",
            b.name, b.measured, b.relation, b.bound, b.holds
        );
    }
    Ok(())
}
