fn main() {
    std::process::exit(theta_relations::cli::run(std::env::args_os()));
}
