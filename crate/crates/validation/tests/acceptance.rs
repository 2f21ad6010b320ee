fn main() {
    let failed = qbell_validation::run_all(&mut std::io::stdout().lock());
    if failed > 0 {
        std::process::exit(1);
    }
}
