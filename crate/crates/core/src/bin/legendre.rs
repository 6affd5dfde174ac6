fn main() {
    std::process::exit(legendre_core::cli::run(std::env::args_os()));
}
