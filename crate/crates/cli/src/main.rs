fn main() {
    std::process::exit(cacc_cli::run(std::env::args_os()));
}
