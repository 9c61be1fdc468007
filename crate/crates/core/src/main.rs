fn main() {
    std::process::exit(mackey_field::cli::run(std::env::args_os()));
}
