use std::io::Write;

fn main() {
    let argv: Vec<String> = std::env::args().collect();
    let (code, out) = subordlab::cli::run_command(&argv);
    let mut stdout = std::io::stdout().lock();
    if code == 3 {
        eprint!("{out}");
    } else {
        let _ = stdout.write_all(out.as_bytes());
    }
    let _ = stdout.flush();
    std::process::exit(code);
}
