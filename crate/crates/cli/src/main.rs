fn main() {
    std::process::exit(qudit_sorter_cli::run(std::env::args_os()));
}
