fn main() {
    std::process::exit(goeritz::cli::run(std::env::args_os()));
}
