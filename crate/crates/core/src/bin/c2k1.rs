fn main() {
    std::process::exit(c2k1::harness::run_from(std::env::args_os()));
}
