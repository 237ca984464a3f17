fn main() -> std::process::ExitCode {
    descentlab::main_with_args(std::env::args_os())
}
