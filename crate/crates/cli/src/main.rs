fn main() {
    std::process::exit(nimpos_cli::run());
}
