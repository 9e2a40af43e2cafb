use clap::Parser;

fn main() {
    let cli = dqplate::cli::Cli::parse();
    std::process::exit(dqplate::cli::run(cli));
}
