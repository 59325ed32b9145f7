use std::io::{self, Write};

fn main() {
    let out = mukai_cli::run(std::env::args_os(), &mut io::stdin().lock());
    let _ = io::stdout().write_all(out.stdout.as_bytes());
    let _ = io::stderr().write_all(out.stderr.as_bytes());
    std::process::exit(out.code);
}
