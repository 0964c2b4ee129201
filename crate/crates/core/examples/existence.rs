//! Existence report for almost split sequences and triangles.
//!
//!     cargo run --example existence

use gradedrep::criteria::{existence_report, Caps};
use gradedrep::fixtures::{fix_b, fix_c_ray, fix_d};

fn main() -> gradedrep::Result<()> {
    for (name, alg, assume) in [("FIX-B", fix_b(), false), ("FIX-C with an open ray", fix_c_ray(), false), ("FIX-D", fix_d(), true)] {
        println!("== {name}");
        print!("{}", existence_report(&alg, Caps::uniform(10), assume)?.table());
    }
    Ok(())
}
