fn main() {
    let code = fracfem::cli::run(std::env::args_os(), &mut std::io::stdout().lock());
    std::process::exit(code);
}
