//! Runs command-line subcommands against a session file.

fn main() {
    let session = concat!(env!("CARGO_MANIFEST_DIR"), "/sessions/worked.toml");
    let commands: &[&[&str]] = &[
        &["reduce", "--set", "R", "--poly", "d1^2 x1"],
        &["lift", "--system", "S", "--point", "a", "--solver", "exact:deg=2"],
        &["prolong", "--set", "L"],
        &["check-structure", "--samples", "5"],
        &["check-axiom3", "--lambda", "L", "--gamma", "G", "--witness", "a"],
    ];
    for args in commands {
        let mut argv = vec!["ddh", "--session", session];
        argv.extend_from_slice(args);
        let out = ddh::cli::run(&argv);
        println!("$ ddh {} (exit {})", args.join(" "), out.code);
        print!("{}", out.output);
    }
}
