fn main() {
    std::process::exit(quintic::run(std::env::args_os()));
}
