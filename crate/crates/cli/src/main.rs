fn main() {
    std::process::exit(rees_cli::run(std::env::args_os()));
}
