fn main() {
    std::process::exit(affine_dunkl::cli::main());
}
