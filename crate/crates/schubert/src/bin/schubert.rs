fn main() { std::process::exit(schubert::cli::run()); }
