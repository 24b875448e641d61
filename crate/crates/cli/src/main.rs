use std::io::{self, Write};

fn main() {
    env_logger::Builder::from_env(env_logger::Env::new().filter_or("FEWNOMIAL_LOG", "warn")).init();
    // Unlocked handles: worker threads log to stderr while commands run.
    let mut out = io::stdout();
    let mut err = io::stderr();
    let code = fewnomial_cli::run(std::env::args_os(), &mut out, &mut err);
    let _ = out.flush();
    std::process::exit(code);
}
