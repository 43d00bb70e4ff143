fn main() {
    std::process::exit(cmlp_cli::run(std::env::args_os()));
}
