fn main() -> std::process::ExitCode {
    cyclobar::cli::main_with(std::env::args_os())
}
