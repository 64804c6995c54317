fn main() {
    std::process::exit(debloat::cli::run(std::env::args_os()));
}
