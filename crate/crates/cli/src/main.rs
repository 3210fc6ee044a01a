fn main() {
    std::process::exit(bvtrace_cli::run(std::env::args_os()));
}
