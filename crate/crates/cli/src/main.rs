fn main() {
    let outcome = mck_cli::run(std::env::args());
    println!("{}", outcome.stdout);
    std::process::exit(outcome.code);
}
