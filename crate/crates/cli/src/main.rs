fn main() {
    std::process::exit(stokes_hbim_cli::main_with_args(std::env::args_os()));
}
