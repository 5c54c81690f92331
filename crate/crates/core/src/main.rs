fn main() {
    std::process::exit(rumorsim::cli::run_cli(std::env::args().skip(1)));
}
