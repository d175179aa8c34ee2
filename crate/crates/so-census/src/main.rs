use clap::Parser;

mod cli;

fn main() {
    let app = cli::Cli::parse();
    std::process::exit(app.run());
}
