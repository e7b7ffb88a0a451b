fn main() {
    std::process::exit(narxiv::cli::run(std::env::args().collect()));
}
