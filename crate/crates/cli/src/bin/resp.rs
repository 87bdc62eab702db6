fn main() {
    std::process::exit(resp_cli::run_resp(std::env::args_os()));
}
