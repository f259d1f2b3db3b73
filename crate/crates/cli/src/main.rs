fn main() {
    std::process::exit(symorb_cli::run(std::env::args_os()));
}
