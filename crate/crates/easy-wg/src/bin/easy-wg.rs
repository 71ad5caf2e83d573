fn main() {
    std::process::exit(easy_wg::cli::run(std::env::args_os()));
}
