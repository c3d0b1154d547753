fn main() {
    std::process::exit(vsbound::cli::run());
}
