fn main() {
    std::process::exit(geomutate::cli::run(std::env::args_os()));
}
