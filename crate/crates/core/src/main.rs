fn main() {
    if let Err(e) = evac_core::cli::configure_threads() {
        eprintln!("error: {}", e.message);
        std::process::exit(e.code);
    }
    std::process::exit(evac_core::cli::run(std::env::args_os()));
}
