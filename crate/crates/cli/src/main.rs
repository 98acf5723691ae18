use clap::Parser;
use mvkit_cli::{run, Cli};

fn main() {
    let cli = Cli::parse();
    let (text, code) = run(&cli);
    // failures still print their document so scripted callers can parse it
    print!("{text}");
    if code != 0 {
        eprintln!("mvkit: {} failed with exit code {code}", cli.command.name());
    }
    std::process::exit(code);
}
