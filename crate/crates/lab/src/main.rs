use clap::Parser;

fn main() {
    let cli = boussinesq_lab::cli::Cli::parse();
    if let Err(e) = boussinesq_lab::cli::run(&cli) {
        eprintln!("{e}");
        std::process::exit(e.exit_code());
    }
}
