fn main() {
    std::process::exit(qent_cli::run());
}
