fn main() {
    std::process::exit(cayley_spectra::cli::run(std::env::args_os()));
}
