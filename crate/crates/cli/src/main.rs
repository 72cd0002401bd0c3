fn main() {
    std::process::exit(hilbert_cli::run(std::env::args_os()));
}
