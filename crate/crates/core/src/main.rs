fn main() {
    std::process::exit(caloric::cli::run(std::env::args_os()));
}
