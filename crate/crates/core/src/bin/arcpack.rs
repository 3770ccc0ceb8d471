fn main() {
    let outcome = arcpack::cli::run(std::env::args_os());
    for line in &outcome.diagnostics {
        eprintln!("{}", line.trim_end());
    }
    if !outcome.payload.is_empty() {
        println!("{}", outcome.payload.trim_end());
    }
    std::process::exit(outcome.exit_code);
}
