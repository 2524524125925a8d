fn main() {
    std::process::exit(qrk::run());
}
