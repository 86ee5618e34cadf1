fn main() {
    let stdin = &mut std::io::stdin().lock();
    let stdout = &mut std::io::stdout().lock();
    let stderr = &mut std::io::stderr().lock();
    std::process::exit(lclm_cli::run(std::env::args_os(), stdin, stdout, stderr));
}
