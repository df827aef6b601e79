fn main() {
    std::process::exit(surfgraph::io::cli::main_with_env());
}
