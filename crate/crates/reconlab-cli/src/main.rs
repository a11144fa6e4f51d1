use std::io::{self, Write};
use std::process::ExitCode;

use reconlab_cli::{configure_thread_pool, run_command};

fn main() -> ExitCode {
    let mut stderr = io::stderr().lock();
    configure_thread_pool(&mut stderr);
    let args: Vec<String> = std::env::args().skip(1).collect();
    let argv: Vec<&str> = args.iter().map(String::as_str).collect();
    let mut stdout = io::stdout().lock();
    let code = run_command(&argv, &mut stdout, &mut stderr);
    let _ = stdout.flush();
    ExitCode::from(code as u8)
}
