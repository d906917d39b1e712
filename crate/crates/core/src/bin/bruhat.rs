fn main() {
    std::process::exit(bruhat::cli::run(std::env::args_os()));
}
