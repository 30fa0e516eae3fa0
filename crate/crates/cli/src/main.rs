fn main() {
    std::process::exit(aut_tool::main_with_args(std::env::args_os()));
}
