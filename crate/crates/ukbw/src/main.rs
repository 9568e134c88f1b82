use std::io::{stderr, stdout};

fn main() {
    let code = ukbw::cli::run_cli(std::env::args_os(), &mut stdout(), &mut stderr());
    std::process::exit(code);
}
