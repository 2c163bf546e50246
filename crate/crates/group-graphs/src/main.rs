fn main() {
    std::process::exit(group_graphs::cli::run());
}
