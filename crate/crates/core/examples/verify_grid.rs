//! Sweeps a small parameter grid the same way `c2k1 verify` does.

use c2k1::harness::verify_grid;

fn main() -> c2k1::Result<()> {
    let alphas = ["1/4".parse()?, "1/2".parse()?];
    for row in verify_grid(&[2, 3], &alphas, &[144, 200])? {
        println!(
            "k={} alpha={} n={}: e={} maximal={} bounds_apply={} pass={}",
            row.k, row.alpha, row.n, row.saturated_edges, row.maximal, row.bounds_apply, row.pass
        );
    }
    Ok(())
}
