use std::io::Read;
use std::process::ExitCode;

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let mut stdin = String::new();
    // subcommands that read graph6 from stdin do so only when no file is given
    if fanfree_cli::wants_stdin(&args) {
        if std::io::stdin().read_to_string(&mut stdin).is_err() {
            eprintln!("error: could not read stdin");
            return ExitCode::from(2);
        }
    }
    let outcome = fanfree_cli::run(&args, &stdin);
    print!("{}", outcome.stdout);
    if !outcome.stderr.is_empty() {
        eprint!("{}", outcome.stderr);
    }
    ExitCode::from(outcome.exit_code)
}
