fn main() {
    std::process::exit(tagkit_cli::run(std::env::args_os()));
}
