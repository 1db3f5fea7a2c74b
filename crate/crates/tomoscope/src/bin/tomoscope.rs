fn main() {
    std::process::exit(tomoscope::cli::run(std::env::args_os()));
}
