//! The two AR-formula dimension identities over a small sweep.
//!
//!     cargo run --example ar_formula

use gradedrep::artheory::{ar_formula_with, translate, translate_inverse};
use gradedrep::fixtures::{fix_c, random_monomial};
use gradedrep::{Field, GradedAlgebra, GradedModule};

fn sweep(name: &str, alg: &GradedAlgebra) -> gradedrep::Result<()> {
    let n = alg.vertex_count();
    let (mut pairs, mut bad) = (0, 0);
    for a in 0..n {
        let m = GradedModule::simple(alg, a, 0);
        let tm = translate(&m)?.module;
        let tim = translate_inverse(&m)?.module;
        for x in 0..n {
            for s in -2..=2 {
                let xm = GradedModule::simple(alg, x, s);
                let r = ar_formula_with(&m, &xm, &tm, &tim)?;
                pairs += 1;
                if !(r.first_holds() && r.second_holds()) {
                    bad += 1;
                    println!("  mismatch at S_{a}, S_{x}<{s}>: {r:?}");
                }
            }
        }
    }
    println!("{name}: {pairs} pairs, {bad} mismatches");
    Ok(())
}

fn main() -> gradedrep::Result<()> {
    sweep("FIX-C", &fix_c())?;
    for seed in 0..3 {
        sweep(&format!("random monomial algebra #{seed}"), &random_monomial(seed, Field::Rational))?;
    }
    Ok(())
}
