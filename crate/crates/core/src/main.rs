fn main() {
    std::process::exit(critgroup::cli::main_entry());
}
