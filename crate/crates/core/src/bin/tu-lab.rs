fn main() {
    std::process::exit(tu_lab::cli::main());
}
