use std::process::ExitCode;

fn main() -> ExitCode {
    let mut out = std::io::stdout();
    let code = nearfact::cli::run(std::env::args().skip(1), &mut out);
    ExitCode::from(code as u8)
}
