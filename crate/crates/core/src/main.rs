fn main() {
    std::process::exit(octopus_lab::cli::run(std::env::args_os()));
}
