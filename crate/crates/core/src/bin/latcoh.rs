fn main() {
    std::process::exit(latcoh::cli::main_with_args(std::env::args_os()));
}
