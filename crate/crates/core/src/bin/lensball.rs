fn main() {
    std::process::exit(lensball::cli::main_with_args(std::env::args_os()));
}
