fn main() {
    // CLI wired up once the compute stack lands.
    eprintln!("siltbench: not yet wired");
    std::process::exit(2);
}
