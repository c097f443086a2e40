fn main() {
    std::process::exit(curvehull::cli::main_with_args(std::env::args_os()));
}
