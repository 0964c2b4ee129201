//! Load a problem file, realize its modules and run its task list through
//! the command-line layer.
//!
//!     cargo run --example problem_files

use gradedrep::io::Problem;

fn main() -> gradedrep::Result<()> {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/fix_b.json");
    let p = Problem::load(path)?;
    for name in p.modules.keys() {
        println!("{name}: {}", p.module(name)?.dims_string());
    }
    let text = p.to_canonical();
    println!("canonical form is stable: {}", Problem::from_str(&text)?.to_canonical() == text);
    let code = gradedrep::cli::main_with_args(["gradedrep", "tasks", "--problem", path]);
    println!("tasks exit code {code}");
    Ok(())
}
