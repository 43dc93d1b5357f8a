fn main() {
    std::process::exit(circular_balance::cli::main_with_args(std::env::args_os()));
}
