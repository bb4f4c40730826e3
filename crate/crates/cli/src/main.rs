fn main() {
    std::process::exit(symdes_cli::run(std::env::args_os()));
}
