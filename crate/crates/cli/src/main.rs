fn main() {
    std::process::exit(gfl_cli::main_with(std::env::args_os()));
}
