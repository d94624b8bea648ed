fn main() {
    std::process::exit(pbwbasis::cli::run());
}
