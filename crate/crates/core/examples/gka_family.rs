//! Constructs the minimal member of `G_{k,α}(n)` and checks it clause by clause.

use c2k1::constructions::{gka_minimal, verify_membership, GkaParams};
use c2k1::cycles::is_cycle_free;

fn main() -> c2k1::Result<()> {
    let p = GkaParams::new(2, "1/2".parse()?, 144)?;
    let sizes = p.sizes()?;
    println!(
        "t = {}, |X_i| = |Y_i| = {}, gadget paths on {} vertices",
        sizes.t, sizes.block, sizes.path
    );

    let (g, layout) = gka_minimal(&p)?;
    println!("n = {}, e = {}", g.order(), g.edge_count());
    println!(
        "X = {} vertices, Y = {}, Z = {}",
        layout.x_side().len(),
        layout.y_side().len(),
        layout.z_side().len()
    );

    let m = verify_membership(&g, &layout, &p);
    println!(
        "member: {}, clauses {:?}",
        m.is_member(),
        m.surviving().iter().map(|c| c.roman()).collect::<Vec<_>>()
    );
    println!("C{}-free: {}", p.cycle_len(), is_cycle_free(&g, p.cycle_len()));
    Ok(())
}
