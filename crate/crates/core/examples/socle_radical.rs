//! Radical, top and socle, and the pure-element bases behind covers and
//! envelopes.
//!
//!     cargo run --example socle_radical

use gradedrep::fixtures::{fix_a, fix_c};
use gradedrep::presentations::{soc_basis, top_basis};
use gradedrep::GradedModule;

fn main() -> gradedrep::Result<()> {
    let a = fix_a();
    let p1 = GradedModule::projective(&a, 0, 0, Some((0, 6)))?;
    let (soc, _) = p1.socle()?;
    println!("soc P_1 (FIX-A, window [0,6]): {}", soc.dims_string());
    for e in soc_basis(&p1)? {
        println!("  pure socle element at ({}, {})", e.degree, a.quiver().label(e.vertex));
    }
    let (rad, _) = p1.radical()?;
    println!("rad P_1: {}", rad.dims_string());
    println!("top P_1: {}", p1.top()?.module.dims_string());

    let c = fix_c();
    let p = GradedModule::projective(&c, 0, 0, None)?;
    let (r, _) = p.radical()?;
    let tops: Vec<String> = top_basis(&r)?
        .iter()
        .map(|e| format!("({}, {})", e.degree, c.quiver().label(e.vertex)))
        .collect();
    println!("top basis of rad P_1 over FIX-C: {}", tops.join(" "));
    Ok(())
}
