//! Construct and verify almost split sequences.
//!
//!     cargo run --example almost_split

use gradedrep::artheory::{almost_split_sequence, Direction};
use gradedrep::fixtures::{fix_b, string_module, string_square};
use gradedrep::GradedModule;

fn report(label: &str, seq: &gradedrep::artheory::AlmostSplitSequence) {
    println!("{label}");
    println!("  0 -> {} -> {} -> {} -> 0", seq.left.dims_string(), seq.middle.dims_string(), seq.right.dims_string());
    let c = &seq.certificate;
    println!(
        "  exact {} nonsplit {} socle {:?} left is tau {} ends {:?}: {}",
        c.exact,
        c.nonsplit,
        c.socle,
        c.left_is_tau,
        c.indecomposable_ends,
        if c.pass() { "pass".to_string() } else { format!("fail {:?}", c.failures) }
    );
}

fn main() -> gradedrep::Result<()> {
    let b = fix_b();
    let s1 = GradedModule::simple(&b, 0, 0);
    report("FIX-B, ending at S_1", &almost_split_sequence(&s1, Direction::Ending)?);
    let s2 = GradedModule::simple(&b, 1, -1);
    report("FIX-B, starting at S_2<-1>", &almost_split_sequence(&s2, Direction::Starting)?);

    let alg = string_square();
    let c = string_module(&alg);
    report("string module over the square (End(C) has a radical)", &almost_split_sequence(&c, Direction::Ending)?);

    let p1 = GradedModule::projective(&b, 0, 0, None)?;
    match almost_split_sequence(&p1, Direction::Ending) {
        Err(e) => println!("ending at P_1 is refused: {e}"),
        Ok(_) => println!("unexpected sequence ending at a projective"),
    }
    Ok(())
}
