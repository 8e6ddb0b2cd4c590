fn main() {
    std::process::exit(pretzel_cli::main_with_args(std::env::args_os()));
}
