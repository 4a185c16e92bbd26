use std::io::Write;

fn main() {
    qgadget_cli::configure_threads();
    let out = qgadget_cli::run(std::env::args_os());
    print!("{}", out.stdout);
    eprint!("{}", out.stderr);
    let _ = std::io::stdout().flush();
    std::process::exit(out.code);
}
