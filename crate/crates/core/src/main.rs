fn main() {
    std::process::exit(so3gl::cli::main_with_args(std::env::args_os()));
}
