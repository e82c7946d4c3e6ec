fn main() {
    std::process::exit(potts_sp::cli::main());
}
