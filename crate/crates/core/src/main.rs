use std::io;

use mvtsp::memprobe::CountingAlloc;

#[global_allocator]
static ALLOC: CountingAlloc = CountingAlloc;

fn main() {
    env_logger::Builder::from_env(env_logger::Env::new().filter_or("MVTSP_LOG", "warn")).init();
    let code = mvtsp::cli::run(std::env::args_os(), &mut io::stdout().lock(), &mut io::stderr());
    std::process::exit(code);
}
