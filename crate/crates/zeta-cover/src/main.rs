//! Thin shim: all behaviour lives in [`zeta_cover::cli`].

fn main() {
    std::process::exit(zeta_cover::cli::run(std::env::args_os()));
}
