fn main() {
    std::process::exit(spinring_cli::run(std::env::args_os()));
}
