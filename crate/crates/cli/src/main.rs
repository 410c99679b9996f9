fn main() {
    std::process::exit(heatcorr_cli::run(std::env::args_os()));
}
