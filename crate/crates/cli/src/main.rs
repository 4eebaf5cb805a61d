fn main() {
    std::process::exit(schwarz_cli::cli::cli_main(std::env::args_os()));
}
