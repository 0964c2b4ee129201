fn main() {
    std::process::exit(gradedrep::cli::main_with_args(std::env::args_os()));
}
