use std::io;
use std::process::ExitCode;

fn main() -> ExitCode {
    let code = bis_keys::cli::run(
        std::env::args_os(),
        &mut io::stdout().lock(),
        &mut io::stderr(),
    );
    ExitCode::from(code as u8)
}
