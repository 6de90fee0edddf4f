fn main() {
    std::process::exit(halfgap_cli::run(std::env::args_os()));
}
