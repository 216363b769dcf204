fn main() {
    std::process::exit(sextic_cli::run(std::env::args_os()));
}
