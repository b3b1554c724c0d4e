//! Building graphs, graph6 round trips, exact max-cut and `D_2`.

use c2k1::graph::{d2, maxcut_exact};
use c2k1::{graph6, Graph};

fn main() -> c2k1::Result<()> {
    let petersen = Graph::new(
        10,
        [
            (0, 1),
            (1, 2),
            (2, 3),
            (3, 4),
            (4, 0),
            (0, 5),
            (1, 6),
            (2, 7),
            (3, 8),
            (4, 9),
            (5, 7),
            (7, 9),
            (9, 6),
            (6, 8),
            (8, 5),
        ],
    )?;
    let code = graph6::encode(&petersen);
    println!(
        "petersen: n={} e={} graph6={code}",
        petersen.order(),
        petersen.edge_count()
    );
    assert_eq!(graph6::decode(&code)?, petersen);

    let (cut, sides) = maxcut_exact(&petersen)?;
    println!(
        "max cut {cut}, sides {:?} / {:?}",
        sides.left.to_vec(),
        sides.right.to_vec()
    );
    println!("D2 = {} edges to delete before it is bipartite", d2(&petersen)?);

    let c7 = Graph::cycle(7)?;
    println!("C7: D2 = {}", d2(&c7)?);
    Ok(())
}
