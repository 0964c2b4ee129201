//! Covers, envelopes, minimal presentations and graded projective and
//! injective dimensions.
//!
//!     cargo run --example resolutions

use gradedrep::fixtures::{fix_c, fix_d, fix_d_closed};
use gradedrep::presentations::{
    graded_dimension, injective_envelope, minimal_presentation, projective_cover, resolution, Kind,
};
use gradedrep::GradedModule;

fn show(alg: &gradedrep::GradedAlgebra, s: &[(usize, i64)]) -> String {
    if s.is_empty() {
        return "0".into();
    }
    s.iter().map(|&(a, t)| format!("P_{}<{t}>", alg.quiver().label(a))).collect::<Vec<_>>().join(" + ")
}

fn main() -> gradedrep::Result<()> {
    let c = fix_c();
    let s1 = GradedModule::simple(&c, 0, 0);
    let pres = minimal_presentation(&s1)?;
    println!("FIX-C: {} -> {} -> S_1, minimal = {}", show(&c, &pres.p1), show(&c, &pres.p0), pres.is_minimal());
    let res = resolution(&s1, Kind::Proj, 10)?;
    for (k, step) in res.steps.iter().enumerate() {
        println!("  P^{}: {}", -(k as i64), show(&c, &step.summands));
    }
    println!("  pd S_1 = {}", res.dimension);

    let p1 = GradedModule::projective(&c, 0, 0, None)?;
    let (rad, _) = p1.radical()?;
    let cover = projective_cover(&rad, None)?;
    println!("cover of rad P_1: {} (kernel in radical: {})", show(&c, &cover.summands), cover.kernel_in_radical()?);
    let env = injective_envelope(&s1, None)?;
    println!("envelope of S_1 has socle in image: {}", env.socle_in_image()?);

    for (name, alg) in [("FIX-D", fix_d()), ("FIX-D, closed", fix_d_closed())] {
        println!("{name}:");
        for n in 0..alg.vertex_count() {
            let pd = graded_dimension(&alg, n, Kind::Proj, 10)?;
            let id = graded_dimension(&alg, n, Kind::Inj, 10)?;
            println!("  S_{n}: pd {pd}, id {id}");
        }
    }
    Ok(())
}
