fn main() {
    let outcome = ddh::cli::run(std::env::args_os());
    if outcome.code <= 1 {
        print!("{}", outcome.output);
    } else {
        eprint!("{}", outcome.output);
    }
    std::process::exit(outcome.code);
}
