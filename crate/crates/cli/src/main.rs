use clap::Parser;

fn main() {
    let cli = extfinite_cli::Cli::parse();
    std::process::exit(extfinite_cli::main_with(&cli));
}
