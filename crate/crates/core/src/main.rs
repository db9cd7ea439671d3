fn main() {
    std::process::exit(hermfrac::bench::cli::run(std::env::args_os()));
}
