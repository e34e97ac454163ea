fn main() {
    std::process::exit(sccdga::cli::run());
}
