fn main() -> std::process::ExitCode {
    recotree::cli::main()
}
