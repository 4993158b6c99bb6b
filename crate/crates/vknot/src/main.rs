fn main() {
    std::process::exit(vknot::cli::run());
}
