fn main() {
    std::process::exit(lorsol::cli::run(std::env::args()) as i32);
}
