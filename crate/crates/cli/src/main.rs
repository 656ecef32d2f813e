fn main() {
    let args: Vec<String> = std::env::args().collect();
    std::process::exit(gasing_cli::run(&args));
}
