use std::io::Write;

fn main() {
    let mut stdout = std::io::stdout();
    let code = qforge_cli::commands::run_command(std::env::args_os(), &mut stdout);
    let _ = stdout.flush();
    std::process::exit(code);
}
