use clap::Parser;

fn main() {
    let cli = hankel_sobolev::cli::Cli::parse();
    std::process::exit(hankel_sobolev::cli::run(cli));
}
