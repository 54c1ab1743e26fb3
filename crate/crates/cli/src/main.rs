fn main() {
    let (code, out) = splitcount_cli::run(std::env::args_os());
    if code == splitcount_cli::EXIT_USAGE {
        eprintln!("{}", out.trim_end());
    } else {
        println!("{}", out.trim_end());
    }
    std::process::exit(code);
}
