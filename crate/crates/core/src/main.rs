fn main() {
    std::process::exit(orbicalc::cli::main_with_args(std::env::args_os()));
}
