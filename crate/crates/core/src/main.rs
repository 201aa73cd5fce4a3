fn main() {
    std::process::exit(itruth::cli::main_with_args(std::env::args_os()));
}
