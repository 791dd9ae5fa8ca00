fn main() {
    std::process::exit(frobsum::cli::run(std::env::args_os()));
}
