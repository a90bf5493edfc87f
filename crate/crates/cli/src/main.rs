fn main() {
    std::process::exit(softtop_cli::run(std::env::args_os()));
}
