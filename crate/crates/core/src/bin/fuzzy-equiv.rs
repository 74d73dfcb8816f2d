fn main() {
    std::process::exit(fuzzy_equiv::cli::main_with_args(
        std::env::args_os().skip(1),
    ));
}
