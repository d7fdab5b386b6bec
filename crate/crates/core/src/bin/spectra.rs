fn main() {
    std::process::exit(spectra_core::cli::dispatch(std::env::args_os()));
}
