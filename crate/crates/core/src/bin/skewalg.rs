fn main() {
    let (code, out) = skewalg::cli::run(std::env::args_os());
    if !out.is_empty() {
        if code == 0 {
            println!("{out}");
        } else {
            eprintln!("{out}");
        }
    }
    std::process::exit(code);
}
