//! Graded pieces of a bound quiver algebra and its projectives.
//!
//!     cargo run --example pieces

use gradedrep::fixtures::{fix_a, fix_c};
use gradedrep::GradedModule;

fn main() -> gradedrep::Result<()> {
    let a = fix_a();
    let q = a.quiver();
    println!("FIX-A: loop a at 1, b: 1 -> 2, relation ba = 0");
    for i in 0..4 {
        for x in 0..q.vertex_count() {
            for y in 0..q.vertex_count() {
                let basis = a.piece_basis(i, x, y)?;
                if !basis.is_empty() {
                    let names: Vec<String> = basis.iter().map(|p| q.format_path(p)).collect();
                    println!("  e_{} L_{i} e_{} = k{{{}}}", q.label(y), q.label(x), names.join(", "));
                }
            }
        }
    }
    // P_1 is infinite; realize it on a window.
    let p1 = GradedModule::projective(&a, 0, 0, Some((0, 4)))?;
    println!("P_1 on [0,4]: {} (edges {:?})", p1.dims_string(), p1.edges());

    let c = fix_c();
    println!("FIX-C: degree-2 piece from 1 to 4 has dim {}", c.piece_dim(2, 0, 3));
    for x in 0..c.vertex_count() {
        let p = GradedModule::projective(&c, x, 0, None)?;
        println!("  P_{}: {}", c.quiver().label(x), p.dims_string());
    }
    Ok(())
}
