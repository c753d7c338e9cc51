fn main() {
    std::process::exit(faraday::cli::run(std::env::args()));
}
