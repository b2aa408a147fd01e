use clap::Parser;

fn main() {
    let cli = qshare::cli::Cli::parse();
    if let Err(e) = qshare::cli::dispatch(cli) {
        eprintln!("error: {e}");
        std::process::exit(e.exit_code());
    }
}
