fn main() {
    hmf5::cli_main();
}
