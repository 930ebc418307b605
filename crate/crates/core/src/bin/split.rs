fn main() {
    std::process::exit(equisplit::cli::main_with(std::env::args_os()));
}
