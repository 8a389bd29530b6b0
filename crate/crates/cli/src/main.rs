fn main() {
    std::process::exit(corona_spectra_cli::run(std::env::args_os()));
}
