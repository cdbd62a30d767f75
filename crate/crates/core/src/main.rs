fn main() -> std::process::ExitCode {
    nkstar::cli::main()
}
