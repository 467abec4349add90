fn main() {
    env_logger::init();
    std::process::exit(stretchfold::cli::run(std::env::args_os()));
}
