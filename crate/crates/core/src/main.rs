fn main() {
    std::process::exit(ale_expansion::cli::main_with_args(std::env::args_os()));
}
