//! The Nakayama functor on maps between sums of shifted projectives.
//!
//!     cargo run --example nakayama

use gradedrep::artheory::{nakayama, nakayama_inverse};
use gradedrep::fixtures::fix_b;
use gradedrep::homs::ghom;
use gradedrep::presentations::PMap;
use gradedrep::GradedModule;

fn main() -> gradedrep::Result<()> {
    let b = fix_b();
    // P[a]: P_2<-1> -> P_1.
    let p = PMap { alg: b.clone(), source: vec![(1, -1)], target: vec![(0, 0)], entries: vec![vec![Some(b.arrow_element(0))]] };
    let i = nakayama(&p);
    let f = p.realize((-2, 2))?;
    let g = i.realize((-2, 2))?;
    println!("P[a] injective: {}, I[a] surjective: {}", f.is_injective(), g.is_surjective());
    println!("I[a]: {} -> {}", g.source.dims_string(), g.target.dims_string());
    println!("nu^- nu is the identity on data: {}", nakayama_inverse(&i) == p);

    let s2 = GradedModule::simple(&b, 1, -1);
    for a in 0..2 {
        for s in -2..=2 {
            let pa = GradedModule::projective(&b, a, s, None)?;
            let ia = GradedModule::injective(&b, a, s, None)?;
            println!(
                "P_{}<{s}>: dim Hom(P, S_2<-1>) = {}, dim Hom(S_2<-1>, nu P) = {}",
                a + 1,
                ghom(&pa, &s2)?.dim(),
                ghom(&s2, &ia)?.dim()
            );
        }
    }
    Ok(())
}
