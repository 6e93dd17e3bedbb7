fn main() {
    std::process::exit(motivic_cli::run(std::env::args_os()));
}
