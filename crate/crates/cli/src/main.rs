use clap::Parser;

use deform_cli::{run, Cli, Format};

fn main() {
    let argv: Vec<String> = std::env::args().collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) => e.exit(),
    };
    let (report, code) = run(&cli, &argv);
    match cli.format {
        Format::Json => println!("{}", report.to_json()),
        Format::Text => print!("{}", report.to_text()),
    }
    eprintln!("{}", report.summary());
    std::process::exit(code);
}
