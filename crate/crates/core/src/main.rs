fn main() {
    std::process::exit(mwrg::cli::parse_and_dispatch(std::env::args_os()));
}
