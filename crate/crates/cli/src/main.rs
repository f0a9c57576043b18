use std::process::ExitCode;

fn main() -> ExitCode {
    let config = match swarmlab_cli::parse_cli(std::env::args_os()) {
        Ok(c) => c,
        Err(e) => e.exit(),
    };
    match swarmlab_cli::execute(&config, std::io::stdout().lock()) {
        Ok(outputs) => {
            println!("wrote {} and {}", outputs.traces.display(), outputs.summary.display());
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
