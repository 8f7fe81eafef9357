fn main() {
    std::process::exit(berkdyn::cli::main());
}
