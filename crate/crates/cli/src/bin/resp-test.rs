fn main() {
    std::process::exit(resp_cli::run_resp_test(std::env::args_os()));
}
