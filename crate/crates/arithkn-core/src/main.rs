use std::io::{self, Write};
use std::process;

fn main() {
    let stdout = io::stdout();
    let stderr = io::stderr();
    let mut out = io::BufWriter::new(stdout.lock());
    let mut err = stderr.lock();
    let code = arithkn_core::cli::run_streaming(std::env::args_os().skip(1), &mut out, &mut err);
    let _ = out.flush();
    process::exit(code);
}
