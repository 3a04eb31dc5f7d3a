fn main() {
    let code = mosaic_select::run(std::env::args_os().collect());
    std::process::exit(code);
}
