fn main() {
    std::process::exit(arq::cli::run(std::env::args_os()));
}
