//! Hom spaces, endomorphism algebras, indecomposability, stable Hom and
//! Ext¹.
//!
//!     cargo run --example homs_ext

use gradedrep::fixtures::{fix_b, string_module, string_square};
use gradedrep::homs::{end_algebra, ext1, ghom, is_strongly_indecomposable, stable_hom_dims};
use gradedrep::GradedModule;

fn main() -> gradedrep::Result<()> {
    let b = fix_b();
    let p1 = GradedModule::projective(&b, 0, 0, None)?;
    let s1 = GradedModule::simple(&b, 0, 0);
    let s2 = GradedModule::simple(&b, 1, -1);
    println!("dim Hom(P_1, S_1) = {}", ghom(&p1, &s1)?.dim());
    println!("dim Hom(S_1, S_2) = {}", ghom(&s1, &s2)?.dim());
    let st = stable_hom_dims(&s1, &s1)?;
    println!("stable End(S_1): underline {} overline {}", st.underline, st.overline);
    println!("dim Ext1(S_1, S_2<-1>) = {}", ext1(&s1, &s2)?.dim());
    println!("dim Ext1(S_1, S_2) = {}", ext1(&s1, &GradedModule::simple(&b, 1, 0))?.dim());

    let alg = string_square();
    let c = string_module(&alg);
    let end = end_algebra(&c)?;
    println!("string module: dim End = {}, dim rad End = {}", end.dim(), end.radical_dim());
    println!("indecomposable: {}", is_strongly_indecomposable(&c)?.label());
    let sum = GradedModule::direct_sum(&alg, &[&c, &c])?;
    println!("C + C indecomposable: {}", is_strongly_indecomposable(&sum.module)?.label());
    Ok(())
}
