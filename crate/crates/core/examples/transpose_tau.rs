//! Transpose and the Auslander-Reiten translates.
//!
//!     cargo run --example transpose_tau

use gradedrep::artheory::{tau, tau_inverse, transpose};
use gradedrep::fixtures::{fix_b, fix_c};
use gradedrep::GradedModule;

fn main() -> gradedrep::Result<()> {
    let b = fix_b();
    let s1 = GradedModule::simple(&b, 0, 0);
    let tr = transpose(&s1)?;
    println!("Tr S_1 over the opposite of FIX-B: {}", tr.module.dims_string());
    let t = tau(&s1)?;
    println!("tau S_1 = {}", t.module.dims_string());
    println!("tau^- tau S_1 = {}", tau_inverse(&t.module)?.module.dims_string());

    let p1 = GradedModule::projective(&b, 0, 0, None)?;
    let t = tau(&p1)?;
    println!("tau P_1 is zero: {} ({})", t.module.is_zero(), t.warning.unwrap_or_default());

    let c = fix_c();
    let (m, _) = GradedModule::projective(&c, 0, 0, None)?.radical()?;
    let m = m.trimmed();
    let tr = transpose(&m)?;
    let trtr = transpose(&tr.module)?;
    println!("rad P_1 over FIX-C: {}", m.dims_string());
    println!("Tr Tr (rad P_1):    {}", trtr.module.dims_string());
    Ok(())
}
