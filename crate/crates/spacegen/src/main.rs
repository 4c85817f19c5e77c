mod curves;
mod emit;
mod ex1;
mod ex2;
mod ex3;
mod extract;
mod dense;
mod dims;
mod eigensplit;
mod eisenstein;
mod etaq;
mod mspace;

use std::path::PathBuf;

fn fixtures_dir() -> PathBuf {
    // workspace root relative to the crate
    let mut p = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    p.pop();
    p.pop();
    p.join("fixtures")
}

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let which = args.first().map(String::as_str).unwrap_or("all");
    let out = fixtures_dir();
    match which {
        "ex1" => ex1::run(&out),
        "ex2" => ex2::run(&out),
        "ex3" => ex3::run(&out),
        "all" => {
            ex1::run(&out);
            ex2::run(&out);
            ex3::run(&out);
        }
        other => {
            eprintln!("unknown subcommand {other}; expected ex1 | ex2 | ex3 | all");
            std::process::exit(1);
        }
    }
}
