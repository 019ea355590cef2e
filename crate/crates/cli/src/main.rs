use std::io::Write;

fn main() {
    let (code, text) = quadbundle_cli::run(std::env::args_os());
    let mut out: Box<dyn Write> = if code == 1 { Box::new(std::io::stderr()) } else { Box::new(std::io::stdout()) };
    let _ = out.write_all(text.as_bytes());
    std::process::exit(code);
}
