fn main() {
    std::process::exit(wavesing_cli::run(std::env::args_os()));
}
