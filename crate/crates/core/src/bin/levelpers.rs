fn main() {
    std::process::exit(levelpers::cli::main_with(std::env::args_os()));
}
