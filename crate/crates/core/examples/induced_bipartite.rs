//! Largest induced complete bipartite subgraph, vertexwise and by class.

use c2k1::constructions::{gka_minimal, GkaParams};
use c2k1::oracles::{max_classwise_complete_bipartite, max_induced_complete_bipartite};
use c2k1::Graph;

fn main() -> c2k1::Result<()> {
    let g = Graph::cycle(8)?;
    let (size, sides) = max_induced_complete_bipartite(&g)?;
    println!(
        "C8: {size} vertices, {:?} / {:?}",
        sides.left.to_vec(),
        sides.right.to_vec()
    );

    let p = GkaParams::new(2, "1/2".parse()?, 144)?;
    let (g, layout) = gka_minimal(&p)?;
    let r = max_classwise_complete_bipartite(&g, &layout)?;
    println!(
        "G_2,1/2(144): {} vertices from classes {:?} vs {:?}",
        r.value, r.left, r.right
    );
    Ok(())
}
