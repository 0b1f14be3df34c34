use clap::Parser;

fn main() {
    let cli = qcodes::cli::Cli::parse();
    std::process::exit(qcodes::cli::run(cli));
}
