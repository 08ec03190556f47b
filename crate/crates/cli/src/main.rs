fn main() {
    let outcome = szbeal_cli::run_args(std::env::args_os(), &mut std::io::stdin().lock());
    std::process::exit(szbeal_cli::emit(&outcome));
}
