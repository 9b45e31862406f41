fn main() {
    std::process::exit(lexis::cli::main_exit_code());
}
