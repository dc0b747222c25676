fn main() {
    std::process::exit(surplus_vc::cli::main_from_env());
}
