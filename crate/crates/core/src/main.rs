fn main() {
    std::process::exit(starid::cli::run());
}
