//! Fixed-length path and cycle search with witnesses.

use c2k1::constructions::turan_bipartite;
use c2k1::cycles::{creates_cycle_on_addition, exists_path_of_length, find_cycle_of_length, is_maximal_cycle_free};
use c2k1::Graph;

fn main() -> c2k1::Result<()> {
    let g = Graph::cycle(9)?;
    match exists_path_of_length(&g, 0, 4, 4) {
        Some(p) => println!("0 ~ 4 in 4 steps: {:?}", p.vertices),
        None => println!("no 4-edge path from 0 to 4"),
    }
    println!("C5 in C9? {:?}", find_cycle_of_length(&g, 5).map(|c| c.vertices));

    // Adding a chord 0-4 to C9 closes a 5-cycle through 0..4.
    if let Some(w) = creates_cycle_on_addition(&g, 0, 4, 5)? {
        println!("chord 0-4 would close {:?} into a C5", w.vertices);
    }

    let t = turan_bipartite(10);
    println!("K_5,5 maximal C5-free: {}", is_maximal_cycle_free(&t, 5));
    Ok(())
}
