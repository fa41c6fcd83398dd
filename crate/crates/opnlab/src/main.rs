fn main() {
    std::process::exit(opnlab::cli::run_from_args());
}
