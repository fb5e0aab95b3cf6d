fn main() {
    std::process::exit(bwo_core::cli::main_with_args(std::env::args_os()));
}
