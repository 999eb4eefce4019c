fn main() {
    std::process::exit(safescreen::cli::run(std::env::args_os()));
}
