fn main() {
    std::process::exit(sweedler_rb::cli::run(std::env::args_os()));
}
