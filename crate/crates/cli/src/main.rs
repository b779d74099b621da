fn main() {
    std::process::exit(fxi_cli::execute(std::env::args_os()));
}
