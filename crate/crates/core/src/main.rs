use std::io;
use std::path::PathBuf;
use std::process::ExitCode;

use approx_codec::cli::{run, CONFIG_ENV};

fn main() -> ExitCode {
    let env_config = std::env::var_os(CONFIG_ENV)
        .filter(|v| !v.is_empty())
        .map(PathBuf::from);
    let code = run(std::env::args_os(), env_config, &mut io::stdout().lock(), &mut io::stderr().lock());
    ExitCode::from(code as u8)
}
