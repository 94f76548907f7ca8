use regular_partitions::cli;

fn main() {
    let code = cli::run(std::env::args().skip(1));
    std::process::exit(code);
}
