fn main() {
    std::process::exit(veridict::cli::run());
}
