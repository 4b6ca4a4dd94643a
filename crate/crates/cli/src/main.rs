fn main() {
    std::process::exit(tropvertex_cli::main_with_args(std::env::args_os()));
}
