fn main() {
    std::process::exit(pls_geometry::cli::run(std::env::args_os()));
}
