fn main() {
    std::process::exit(ptdhopf::cli::main_with(std::env::args_os()));
}
