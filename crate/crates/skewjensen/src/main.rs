use std::process::exit;

fn main() {
    exit(skewjensen::cli::cli_main(std::env::args()));
}
